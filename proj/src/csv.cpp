#include "kitelab/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace kitelab {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string csv_int(long v) { return std::to_string(v); }

CsvFile::CsvFile(const std::filesystem::path& path, const std::string& schema,
                 const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
    if (!out_) {
        throw std::runtime_error("cannot open output file " + path.string());
    }
    out_ << "# schema: " << schema << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    }
    out_ << "\n";
}

void CsvFile::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_) {
        throw std::logic_error("CSV row width does not match the header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
    }
    out_ << "\n";
}

}  // namespace kitelab
