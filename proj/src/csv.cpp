#include "vqrsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vqrsim/errors.hpp"

namespace vqrsim {

namespace {

std::string location(const std::filesystem::path& file, std::size_t line) {
    return file.string() + ":" + std::to_string(line);
}

std::vector<std::string> split_line(const std::string& line,
                                    const std::filesystem::path& file,
                                    std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    fields.reserve(8);
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
        ++i;
    }
    if (quoted)
        throw ParseError(location(file, line_no) + ": unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::vector<CsvRow> read_csv(const std::filesystem::path& file,
                             const std::vector<std::string>& header) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + file.string());

    std::vector<CsvRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split_line(line, file, line_no);
        if (!saw_header) {
            if (fields != header) {
                std::ostringstream msg;
                msg << location(file, line_no) << ": expected header '";
                for (std::size_t i = 0; i < header.size(); ++i)
                    msg << (i ? "," : "") << header[i];
                msg << "'";
                throw ParseError(msg.str());
            }
            saw_header = true;
            continue;
        }
        if (fields.size() != header.size())
            throw ParseError(location(file, line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        rows.push_back(CsvRow{std::move(fields), line_no});
    }
    if (!saw_header)
        throw ParseError(file.string() + ": missing header row");
    return rows;
}

namespace {

std::string csv_quote(const std::string& f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos)
        return f;
    std::string out = "\"";
    for (char c : f) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

void write_csv(const std::filesystem::path& file,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw Error("cannot write " + file.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << csv_quote(header[i]);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_quote(row[i]);
        out << '\n';
    }
    if (!out)
        throw Error("write failed: " + file.string());
}

int parse_int(const std::string& field, const std::filesystem::path& file,
              std::size_t line, const char* what) {
    int value = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ParseError(location(file, line) + ": bad integer for " + what + ": '" +
                         field + "'");
    return value;
}

double parse_double(const std::string& field, const std::filesystem::path& file,
                    std::size_t line, const char* what) {
    double value = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ParseError(location(file, line) + ": bad number for " + what + ": '" +
                         field + "'");
    return value;
}

bool parse_bool(const std::string& field, const std::filesystem::path& file,
                std::size_t line, const char* what) {
    if (field == "1" || field == "true")
        return true;
    if (field == "0" || field == "false")
        return false;
    throw ParseError(location(file, line) + ": bad boolean for " + what + ": '" +
                     field + "'");
}

}  // namespace vqrsim
