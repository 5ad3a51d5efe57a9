#include "imce/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace imce {

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && begin != end;
}

}  // namespace

IntervalSample read_interval_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    IntervalSample s;
    s.provenance = "file:" + path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": expected 'lower,upper'");
        }
        double lo, hi;
        const bool ok = parse_double(line.substr(0, comma), lo) &&
                        parse_double(line.substr(comma + 1), hi);
        if (!ok) {
            if (lineno == 1) continue;  // header row
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": malformed row");
        }
        if (lo > hi) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": lower > upper");
        }
        s.items.emplace_back(lo, hi);
    }
    if (s.empty()) throw std::runtime_error(path + ": no observations");
    return s;
}

void write_interval_csv(const std::string& path, const IntervalSample& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "lower,upper\n";
    for (const auto& x : s.items) out << x.lower << "," << x.upper << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::uint64_t fingerprint_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    return h;
}

}  // namespace imce
