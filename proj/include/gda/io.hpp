#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gda/generators.hpp"
#include "gda/graph.hpp"

namespace gda {

namespace detail {

inline std::string strip(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = line.find_last_not_of(" \t\r\n");
    return line.substr(first, last - first + 1);
}

inline bool skippable(const std::string& stripped) {
    return stripped.empty() || stripped[0] == '#';
}

[[noreturn]] inline void parse_fail(const std::string& path, int lineno, const std::string& what) {
    throw Error(path + ":" + std::to_string(lineno) + ": " + what);
}

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Reads a weighted edge list: a "n m" header line, then m lines "i j w"
/// with 0-based endpoints. Blank lines and lines starting with '#' are
/// ignored anywhere in the file.
inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);

    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip(line);
        if (detail::skippable(body)) continue;
        std::istringstream ss(body);
        if (n < 0) {
            if (!(ss >> n >> m) || !(ss >> std::ws).eof())
                detail::parse_fail(path, lineno, "expected header 'n m'");
            if (n < 0 || m < 0) detail::parse_fail(path, lineno, "negative size in header");
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        long long i, j;
        double w;
        if (!(ss >> i >> j >> w) || !(ss >> std::ws).eof())
            detail::parse_fail(path, lineno, "expected edge line 'i j w'");
        if (static_cast<long long>(edges.size()) == m)
            detail::parse_fail(path, lineno, "more edges than the header announced");
        edges.push_back({static_cast<int>(i), static_cast<int>(j), w});
    }
    if (n < 0) throw Error(path + ": missing 'n m' header");
    if (static_cast<long long>(edges.size()) != m)
        throw Error(path + ": header announced " + std::to_string(m) + " edges, found " +
                    std::to_string(edges.size()));
    try {
        return build_graph(static_cast<int>(n), std::move(edges));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

inline void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << g.n() << ' ' << g.m() << '\n';
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << ' ' << detail::fmt_double(e.w) << '\n';
    if (!out) throw Error("write failed for " + path);
}

/// Coordinate sidecar: one "i x y" line per node that has a position.
inline std::vector<Coord> load_coords(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<Coord> coords(static_cast<std::size_t>(n), Coord{0.0, 0.0});
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip(line);
        if (detail::skippable(body)) continue;
        std::istringstream ss(body);
        long long i;
        double x, y;
        if (!(ss >> i >> x >> y) || !(ss >> std::ws).eof())
            detail::parse_fail(path, lineno, "expected coordinate line 'i x y'");
        if (i < 0 || i >= n) detail::parse_fail(path, lineno, "node index out of range");
        if (seen[static_cast<std::size_t>(i)])
            detail::parse_fail(path, lineno, "duplicate coordinates for node " + std::to_string(i));
        seen[static_cast<std::size_t>(i)] = 1;
        coords[static_cast<std::size_t>(i)] = {x, y};
    }
    return coords;
}

inline void save_coords(const std::string& path, const std::vector<Coord>& coords) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (std::size_t i = 0; i < coords.size(); ++i)
        out << i << ' ' << detail::fmt_double(coords[i][0]) << ' '
            << detail::fmt_double(coords[i][1]) << '\n';
    if (!out) throw Error("write failed for " + path);
}

/// Signal file: one value per line, node order.
inline std::vector<double> load_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip(line);
        if (detail::skippable(body)) continue;
        std::istringstream ss(body);
        double v;
        if (!(ss >> v) || !(ss >> std::ws).eof())
            detail::parse_fail(path, lineno, "expected a single value");
        values.push_back(v);
    }
    return values;
}

inline void save_signal(const std::string& path, std::span<const double> values) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (double v : values) out << detail::fmt_double(v) << '\n';
    if (!out) throw Error("write failed for " + path);
}

/// Sampling-set file: a metadata header, then the selected nodes one per
/// line in selection order.
struct SamplingFile {
    double t_hat = 0.0;
    bool valid = false;
    double certified_lb = 0.0;
    std::vector<int> sample_set;
};

inline SamplingFile load_sampling_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    SamplingFile out;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip(line);
        if (body.empty()) continue;
        if (body[0] == '#') {
            int valid_flag = 0;
            if (std::sscanf(body.c_str(), "# T_hat=%lf valid=%d certified_lb=%lf", &out.t_hat,
                            &valid_flag, &out.certified_lb) == 3) {
                out.valid = valid_flag != 0;
                have_header = true;
            }
            continue;
        }
        std::istringstream ss(body);
        long long i;
        if (!(ss >> i) || !(ss >> std::ws).eof())
            detail::parse_fail(path, lineno, "expected a node index");
        out.sample_set.push_back(static_cast<int>(i));
    }
    if (!have_header) throw Error(path + ": missing sampling-set header");
    return out;
}

inline void save_sampling_set(const std::string& path, const SamplingFile& f) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# T_hat=" << detail::fmt_double(f.t_hat) << " valid=" << (f.valid ? 1 : 0)
        << " certified_lb=" << detail::fmt_double(f.certified_lb) << '\n';
    for (int i : f.sample_set) out << i << '\n';
    if (!out) throw Error("write failed for " + path);
}

} // namespace gda
