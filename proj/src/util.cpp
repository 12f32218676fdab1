#include "vqrsim/util.hpp"

#include <charconv>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace vqrsim {

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string format_exact(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double round_g6(double v) {
    return std::strtod(format_g6(v).c_str(), nullptr);
}

std::string sanitize_token(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out;
}

}  // namespace vqrsim
