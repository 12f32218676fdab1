#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace vqrsim {

struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line_no = 0;
};

// Reads a whole CSV file. The first row must match `header` exactly and every
// data row must have the same field count. Quoted fields with embedded commas
// and doubled quotes are supported; records do not span lines.
std::vector<CsvRow> read_csv(const std::filesystem::path& file,
                             const std::vector<std::string>& header);

void write_csv(const std::filesystem::path& file,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Field parsers that raise ParseError naming the file, line and field.
int parse_int(const std::string& field, const std::filesystem::path& file,
              std::size_t line, const char* what);
double parse_double(const std::string& field, const std::filesystem::path& file,
                    std::size_t line, const char* what);
bool parse_bool(const std::string& field, const std::filesystem::path& file,
                std::size_t line, const char* what);

}  // namespace vqrsim
