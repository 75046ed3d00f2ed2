#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace kitelab {

// CSV emission with a pinned numeric format: every floating-point cell is
// rendered with %.9g so outputs are byte-stable across platforms and runs.
std::string csv_num(double v);
std::string csv_int(long v);

class CsvFile {
  public:
    // Writes "# schema: <schema>" and the header row immediately.
    CsvFile(const std::filesystem::path& path, const std::string& schema,
            const std::vector<std::string>& columns);

    void row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
    std::size_t n_columns_;
};

}  // namespace kitelab
