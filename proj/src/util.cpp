#include "cooc/util.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cooc/error.hpp"

namespace cooc {

std::vector<std::string_view> split(std::string_view text, char delim) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> tokenize(std::string_view text) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return text.substr(b, e - b);
}

std::string_view first_token(std::string_view text) {
    auto t = trim(text);
    size_t pos = 0;
    while (pos < t.size() && !std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    return t.substr(0, pos);
}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end) return false;
    return std::isfinite(out);
}

std::string fnv1a_hex(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= content.size()) {
        size_t pos = content.find('\n', start);
        if (pos == std::string::npos) {
            if (start < content.size()) lines.emplace_back(content.substr(start));
            break;
        }
        std::string line = content.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = pos + 1;
    }
    return lines;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorKind::Io, "write failed: " + path.string());
}

} // namespace cooc
