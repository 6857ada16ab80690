#include "moller/csv.hpp"
#include "moller/errors.hpp"

#include <cstdio>

namespace moller {

std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvFile::CsvFile(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw config_error("cannot open CSV output file: " + path.string());
}

void CsvFile::write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_quote(cells[i]);
    }
    out_ << '\n';
}

} // namespace moller
