#include "spinscale/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "spinscale/rng.hpp"

namespace spinscale {

std::string to_string(ConfigKind kind) {
    switch (kind) {
        case ConfigKind::poisson: return "poisson";
        case ConfigKind::hardcore: return "hardcore";
        case ConfigKind::lattice: return "lattice";
        case ConfigKind::explicit_points: return "explicit";
    }
    throw std::logic_error("unknown ConfigKind");
}

ConfigKind config_kind_from_string(const std::string& name) {
    if (name == "poisson") return ConfigKind::poisson;
    if (name == "hardcore") return ConfigKind::hardcore;
    if (name == "lattice") return ConfigKind::lattice;
    if (name == "explicit") return ConfigKind::explicit_points;
    throw std::invalid_argument("unknown configuration kind: " + name);
}

Configuration::Configuration(int dim, double box_halfwidth, std::vector<double> coords,
                             ConfigKind kind, std::uint64_t seed)
    : dim_(dim), box_halfwidth_(box_halfwidth), coords_(std::move(coords)), kind_(kind),
      seed_(seed) {
    if (dim_ < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(box_halfwidth_ > 0)) throw std::invalid_argument("box_halfwidth must be > 0");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::invalid_argument("coordinate count not divisible by dim");
    const std::size_t n = coords_.size() / dim_;
    radii_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (int k = 0; k < dim_; ++k) {
            const double c = coords_[i * dim_ + k];
            if (!std::isfinite(c) || std::abs(c) > box_halfwidth_)
                throw std::invalid_argument("site outside the box");
            s += c * c;
        }
        radii_[i] = std::sqrt(s);
    }
    // duplicates are rejected; sort index views lexicographically
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(
            coords_.begin() + a * dim_, coords_.begin() + (a + 1) * dim_,
            coords_.begin() + b * dim_, coords_.begin() + (b + 1) * dim_);
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 1; i < n; ++i) {
        if (!less(order[i - 1], order[i]))
            throw std::invalid_argument("duplicate site positions");
    }
}

double Configuration::distance(int i, int j) const {
    double s = 0;
    for (int k = 0; k < dim_; ++k) {
        const double d = coords_[static_cast<std::size_t>(i) * dim_ + k] -
                         coords_[static_cast<std::size_t>(j) * dim_ + k];
        s += d * d;
    }
    return std::sqrt(s);
}

std::string Configuration::to_json() const {
    nlohmann::json j;
    j["dim"] = dim_;
    j["box_halfwidth"] = box_halfwidth_;
    j["seed"] = seed_;
    j["kind"] = to_string(kind_);
    auto points = nlohmann::json::array();
    for (int i = 0; i < site_count(); ++i) {
        auto p = position(i);
        points.push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["points"] = std::move(points);
    return j.dump(2);
}

Configuration Configuration::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int dim = j.at("dim").get<int>();
    std::vector<double> coords;
    for (const auto& p : j.at("points")) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("point dimension mismatch in JSON");
        for (const auto& c : p) coords.push_back(c.get<double>());
    }
    return Configuration(dim, j.at("box_halfwidth").get<double>(), std::move(coords),
                         config_kind_from_string(j.at("kind").get<std::string>()),
                         j.at("seed").get<std::uint64_t>());
}

namespace {

std::vector<double> poisson_points(int dim, double box_halfwidth, double intensity,
                                   rng::Stream& stream) {
    if (intensity < 0) throw std::invalid_argument("intensity must be >= 0");
    const double volume = std::pow(2.0 * box_halfwidth, dim);
    const std::uint64_t count = stream.poisson(intensity * volume);
    std::vector<double> coords;
    coords.reserve(count * dim);
    for (std::uint64_t i = 0; i < count; ++i)
        for (int k = 0; k < dim; ++k)
            coords.push_back(stream.uniform(-box_halfwidth, box_halfwidth));
    return coords;
}

}  // namespace

ConfigPtr sample_poisson(int dim, double box_halfwidth, double intensity, std::uint64_t seed) {
    rng::Stream stream(rng::derive_seed(seed, "poisson"));
    auto coords = poisson_points(dim, box_halfwidth, intensity, stream);
    return std::make_shared<const Configuration>(dim, box_halfwidth, std::move(coords),
                                                 ConfigKind::poisson, seed);
}

ConfigPtr sample_hardcore(int dim, double box_halfwidth, double intensity, double hc_radius,
                          std::uint64_t seed) {
    if (!(hc_radius > 0)) throw std::invalid_argument("hc_radius must be > 0");
    rng::Stream stream(rng::derive_seed(seed, "hardcore"));
    auto coords = poisson_points(dim, box_halfwidth, intensity, stream);
    const std::size_t n = coords.size() / dim;
    std::vector<double> marks(n);
    for (auto& m : marks) m = stream.uniform();
    auto dist = [&](std::size_t i, std::size_t j) {
        double s = 0;
        for (int k = 0; k < dim; ++k) {
            const double d = coords[i * dim + k] - coords[j * dim + k];
            s += d * d;
        }
        return std::sqrt(s);
    };
    std::vector<double> kept;
    for (std::size_t i = 0; i < n; ++i) {
        bool survives = true;
        for (std::size_t j = 0; j < n && survives; ++j) {
            if (j != i && marks[j] < marks[i] && dist(i, j) < hc_radius) survives = false;
        }
        if (survives)
            kept.insert(kept.end(), coords.begin() + i * dim, coords.begin() + (i + 1) * dim);
    }
    return std::make_shared<const Configuration>(dim, box_halfwidth, std::move(kept),
                                                 ConfigKind::hardcore, seed);
}

ConfigPtr lattice_configuration(int dim, double box_halfwidth, double spacing) {
    if (!(spacing > 0)) throw std::invalid_argument("spacing must be > 0");
    const int per_side = static_cast<int>(std::floor(box_halfwidth / spacing));
    const int width = 2 * per_side + 1;
    std::vector<double> coords;
    std::vector<int> idx(dim, 0);
    const long long total = static_cast<long long>(std::pow(width, dim));
    for (long long c = 0; c < total; ++c) {
        long long rest = c;
        for (int k = 0; k < dim; ++k) {
            idx[k] = static_cast<int>(rest % width) - per_side;
            rest /= width;
        }
        for (int k = 0; k < dim; ++k) coords.push_back(idx[k] * spacing);
    }
    return std::make_shared<const Configuration>(dim, box_halfwidth, std::move(coords),
                                                 ConfigKind::lattice, 0);
}

ConfigPtr explicit_configuration(int dim, double box_halfwidth, std::vector<double> coords) {
    return std::make_shared<const Configuration>(dim, box_halfwidth, std::move(coords),
                                                 ConfigKind::explicit_points, 0);
}

NeighborStructure build_neighbors(const ConfigPtr& config, double r) {
    if (!(r > 0)) throw std::invalid_argument("interaction radius must be > 0");
    const auto& cfg = *config;
    const int n_sites = cfg.site_count();
    const int dim = cfg.dim();

    // cell lists with cell size >= r
    const double cell = r;
    const int cells_per_dim =
        std::max(1, static_cast<int>(std::ceil(2.0 * cfg.box_halfwidth() / cell)));
    auto cell_coord = [&](double x) {
        int c = static_cast<int>(std::floor((x + cfg.box_halfwidth()) / cell));
        return std::clamp(c, 0, cells_per_dim - 1);
    };
    auto cell_index = [&](std::span<const double> pos) {
        long long ix = 0;
        for (int k = dim - 1; k >= 0; --k) ix = ix * cells_per_dim + cell_coord(pos[k]);
        return ix;
    };
    std::unordered_map<long long, std::vector<int>> cells;
    for (int i = 0; i < n_sites; ++i) cells[cell_index(cfg.position(i))].push_back(i);

    NeighborStructure ns;
    ns.config = config;
    ns.r = r;
    ns.adjacency.resize(n_sites);
    ns.n.resize(n_sites);
    ns.big_n.resize(n_sites);

    // enumerate the 3^dim cell offsets once
    long long n_offsets = 1;
    for (int k = 0; k < dim; ++k) n_offsets *= 3;
    std::vector<std::vector<int>> offsets(n_offsets, std::vector<int>(dim));
    for (long long o = 0; o < n_offsets; ++o) {
        long long rest = o;
        for (int k = 0; k < dim; ++k) {
            offsets[o][k] = static_cast<int>(rest % 3) - 1;
            rest /= 3;
        }
    }

    for (int i = 0; i < n_sites; ++i) {
        auto pos = cfg.position(i);
        auto& adj = ns.adjacency[i];
        for (long long o = 0; o < n_offsets; ++o) {
            long long ix = 0;
            bool valid = true;
            for (int k = dim - 1; k >= 0; --k) {
                const int c = cell_coord(pos[k]) + offsets[o][k];
                if (c < 0 || c >= cells_per_dim) {
                    valid = false;
                    break;
                }
                ix = ix * cells_per_dim + c;
            }
            if (!valid) continue;
            auto it = cells.find(ix);
            if (it == cells.end()) continue;
            for (int j : it->second) {
                if (j != i && cfg.distance(i, j) < r) adj.push_back(j);
            }
        }
        std::sort(adj.begin(), adj.end());
        ns.n[i] = static_cast<int>(adj.size());
    }
    for (int y = 0; y < n_sites; ++y) {
        long long total = 0;
        for (int x : ns.adjacency[y]) total += ns.n[x];
        ns.big_n[y] = total;
    }
    return ns;
}

RegularityFit regularity_fit(const NeighborStructure& ns, const Configuration& config, double q) {
    if (!(q > 2)) throw std::invalid_argument("regularity exponent q must be > 2");
    RegularityFit fit;
    fit.q = q;
    const double rd = std::pow(ns.r, config.dim());
    for (int i = 0; i < config.site_count(); ++i) {
        const double nx = ns.n[i];
        const double ratio = nx / std::pow(1.0 + config.radius(i), 1.0 / q);
        if (ratio > fit.a_fit) {
            fit.a_fit = ratio;
            fit.worst_site = i;
        }
        const double log_ratio = nx / ((1.0 + std::log1p(config.radius(i))) * rd);
        fit.c_log_fit = std::max(fit.c_log_fit, log_ratio);
    }
    return fit;
}

}  // namespace spinscale
