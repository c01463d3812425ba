// CSV in and out for sampled functions, atomic file writes.
#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "frac/core_numerics.hpp"

namespace frac {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string g17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Header `x,value`; a non-finite node is preceded by `# flagged x=<x>`.
inline std::string format_csv(const SampledFunction& u) {
    std::string out = "x,value\n";
    for (std::size_t j = 0; j < u.size(); ++j) {
        const std::string x = detail::g17(u.grid.x(j));
        if (u.is_flagged(j)) out += "# flagged x=" + x + "\n";
        out += x + "," + detail::g17(u[j]) + "\n";
    }
    return out;
}

/// Inverse of format_csv. Nodes must be uniform.
inline SampledFunction parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> xs, vs;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "x,value") throw IoError("csv header must be 'x,value'");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("csv line " + std::to_string(lineno) + " lacks a comma");
        try {
            std::size_t k1 = 0, k2 = 0;
            const std::string xs_ = line.substr(0, comma), vs_ = line.substr(comma + 1);
            const double x = std::stod(xs_, &k1);
            const double v = std::stod(vs_, &k2);
            if (k1 != xs_.size() || k2 != vs_.size()) throw std::invalid_argument("trailing");
            xs.push_back(x);
            vs.push_back(v);
        } catch (const std::logic_error&) {
            throw IoError("csv line " + std::to_string(lineno) + " is not numeric");
        }
    }
    if (!header) throw IoError("csv is empty");
    if (xs.size() < 3) throw IoError("csv needs at least 3 rows");
    Grid g(xs.front(), xs.back(), static_cast<int>(xs.size()) - 1);
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (std::abs(xs[j] - g.x(j)) > 1e-9 * g.length()) throw IoError("csv nodes are not uniformly spaced");
    for (double v : vs)
        if (std::isnan(v)) throw IoError("csv contains nan");
    return SampledFunction(g, std::move(vs));
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Writes to a sibling temporary, then renames over the target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto '" + path + "'");
    }
}

inline SampledFunction read_csv(const std::string& path) { return parse_csv(read_file(path)); }

inline void write_csv(const std::string& path, const SampledFunction& u) { write_file_atomic(path, format_csv(u)); }

}  // namespace frac
