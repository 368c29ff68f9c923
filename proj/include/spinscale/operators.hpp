#pragma once

#include <cstdint>
#include <vector>

#include "spinscale/scale.hpp"

namespace spinscale {

/// Extremal kernel K(x,y) = a e^{-(beta^*/p)|x-y|} (1+|y|)^delta on R^1.
struct KernelSpec {
    double a = 1.0;
    double beta_sup = 0;  // beta^*, must exceed the ambient alpha^*
    double delta = 0;     // growth exponent along the diagonal
    double p = 2.0;

    double eval(double x, double y) const;
};

/// Function values on the uniform grid x_i = -x_max + i h, i = 0..n-1.
struct GridFunction {
    double x_max = 1.0;
    std::vector<double> values;

    double h() const { return 2.0 * x_max / (static_cast<int>(values.size()) - 1); }
    double node(int i) const { return -x_max + i * h(); }
    int size() const { return static_cast<int>(values.size()); }
};

// Trapezoidal quadrature of Au(x) = int K(x,y) u(y) dy at every node.
GridFunction kernel_apply(const KernelSpec& spec, const GridFunction& u);

// (sum_i h |u(x_i)|^p e^{-alpha |x_i|})^{1/p}
double weighted_lp_norm(const GridFunction& u, double alpha, double p);

/// Truncation of the infinite matrix A_kj = a e^{-(beta^*/p)|k-j|} (1+|j|)^delta.
struct MatrixSpec {
    double a = 1.0;
    double beta_sup = 0;
    double delta = 0;
    double p = 2.0;
    int k_max = 1;  // indices run over -k_max..k_max

    double entry(int k, int j) const;
    int size() const { return 2 * k_max + 1; }
};

// Dense truncated matrix-vector product; u indexed -k_max..k_max as u[j+k_max].
std::vector<double> matrix_apply(const MatrixSpec& spec, const std::vector<double>& u);

double weighted_lp_seq_norm(const std::vector<double>& u, int k_max, double alpha, double p);

struct SingularitySample {
    double alpha = 0;
    double beta = 0;
    double ratio_max = 0;
};

struct SingularityReport {
    double q_emp = 0;
    double q_pred = 0;  // (p-1)/(p delta)
    double slope = 0;
    double c_fit = 0;  // smallest C with ratio <= C (beta-alpha)^{-1/q_pred} over the sweep
    std::vector<SingularitySample> sweep;
};

SingularityReport singularity_fit(const KernelSpec& spec, const ScaleInterval& scale,
                                  int n_samples, std::uint64_t seed);
SingularityReport singularity_fit(const MatrixSpec& spec, const ScaleInterval& scale,
                                  int n_samples, std::uint64_t seed);

}  // namespace spinscale
