#ifndef CIM_CSV_HPP
#define CIM_CSV_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cim {

// Deterministic CSV emission; every file opens with a schema comment line
// and a header row. Doubles are printed with %.17g so identical runs are
// byte-identical.

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path, const std::string& schema = "cim-csv v1")
        : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path);
        out_ << "# " << schema << "\n";
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out_ << (i ? "," : "") << cols[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& vals) {
        char buf[32];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << "\n";
    }

    void raw_row(const std::vector<std::string>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            out_ << (i ? "," : "") << vals[i];
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

inline std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace cim

#endif
