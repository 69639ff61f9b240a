#include "fidgauss/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fidgauss {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const Matrix& m,
               const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    if (!header.empty()) {
        if (m.cols() > 0 && static_cast<Index>(header.size()) != m.cols())
            throw DimensionMismatch("write_csv: header width does not match matrix");
        for (std::size_t j = 0; j < header.size(); ++j)
            out << (j ? "," : "") << header[j];
        out << '\n';
    }
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path.string());
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

bool parse_cell(const std::string& s, double& out) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno == 0;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open for reading: " + path.string());
    CsvTable table;
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (std::size_t j = 0; j < cells.size(); ++j)
            if (!parse_cell(cells[j], row[j])) { numeric = false; break; }
        if (first) {
            first = false;
            width = cells.size();
            if (!numeric) {
                table.header = cells;
                continue;
            }
        }
        if (!numeric)
            throw Error("non-numeric cell in data row of " + path.string());
        if (cells.size() != width)
            throw Error("ragged row in " + path.string());
        rows.push_back(std::move(row));
    }
    table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.empty() ? width : rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return table;
}

}  // namespace fidgauss
