#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fidgauss/types.hpp"

namespace fidgauss {

// CSV helpers used by every command.  Doubles are written with %.17g so a
// read-back reproduces the exact bit pattern; files written twice from the
// same data are byte-identical.

std::string format_double(double v);

void write_csv(const std::filesystem::path& path, const Matrix& m,
               const std::vector<std::string>& header);

struct CsvTable {
    std::vector<std::string> header;  // empty when the file has no header row
    Matrix values;                    // 0 x 0 when the file holds no data rows
};

// Reads a numeric CSV.  A first row containing any non-numeric cell is
// treated as a header.  Throws Error on ragged rows or unreadable files.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace fidgauss
