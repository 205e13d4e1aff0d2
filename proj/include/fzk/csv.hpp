// CSV emission: comma separators, header row, '.' decimal point, no locale
// dependence. Doubles are printed with %.17g so a re-run that produces the same
// bits produces the same text.
#ifndef FZK_CSV_HPP
#define FZK_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fzk {

// file-system level failures, kept distinct from numerical/runtime errors so the
// CLI can map them to their own exit code
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string csv_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_cell(long long v) { return std::to_string(v); }
inline std::string csv_cell(long v) { return std::to_string(v); }
inline std::string csv_cell(int v) { return std::to_string(v); }
inline std::string csv_cell(unsigned long long v) { return std::to_string(v); }
inline std::string csv_cell(unsigned long v) { return std::to_string(v); }
inline std::string csv_cell(unsigned int v) { return std::to_string(v); }
inline std::string csv_cell(const std::string& v) { return v; }
inline std::string csv_cell(const char* v) { return v; }

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : out_(path, std::ios::trunc), width_(header.size()) {
        if (!out_) throw IoError("cannot open " + path + " for writing");
        write_row(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_)
            throw std::invalid_argument("csv row width does not match the header");
        write_row(cells);
    }

    template <class... Ts>
    void row(const Ts&... vals) {
        row(std::vector<std::string>{csv_cell(vals)...});
    }

    std::size_t rows() const { return rows_; }

private:
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
        if (!out_) throw IoError("short write to csv");
        ++rows_;
    }

    std::ofstream out_;
    std::size_t width_;
    std::size_t rows_ = 0;
};

}  // namespace fzk

#endif
