#ifndef MOLLER_CSV_HPP
#define MOLLER_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace moller {

/// RFC-style quoting: wrap in quotes when the cell contains commas, quotes or
/// newlines, doubling embedded quotes.
std::string csv_quote(const std::string& cell);

/// Shortest round-trippable decimal rendering of a double.
std::string csv_double(double v);

class CsvFile {
  public:
    explicit CsvFile(const std::filesystem::path& path);
    void write_row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
};

} // namespace moller

#endif
