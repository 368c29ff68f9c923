#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace spinscale {

// 17 significant digits: round-trips any double, bit-stable across platforms.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> columns) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) body_ += ',';
            body_ += columns[i];
        }
        body_ += '\n';
        width_ = columns.size();
    }

    void add_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += '\n';
    }

    const std::string& body() const { return body_; }

  private:
    std::string body_;
    std::size_t width_;
};

}  // namespace spinscale
