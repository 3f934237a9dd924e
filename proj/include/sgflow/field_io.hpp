// Plain-text field dumps: header "nx ny h", then row-major node values.
// Values are written with 17 significant digits so a read-back is bit exact.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sgflow/field.hpp"

namespace sgf {

namespace detail {
inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline Grid read_header(std::istream& in, const std::string& path) {
    int nx = 0, ny = 0;
    double h = 0.0;
    if (!(in >> nx >> ny >> h)) throw std::runtime_error("field read: bad header in " + path);
    Grid g = make_grid(nx, ny);
    if (std::abs(g.h - h) > 1e-12 * std::max(1.0, std::abs(h)))
        throw std::runtime_error("field read: header spacing inconsistent in " + path);
    return g;
}
}  // namespace detail

inline void write_field(const ScalarField& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << s.grid.nx << " " << s.grid.ny << " " << detail::fmt_full(s.grid.h) << "\n";
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < s.grid.nx; ++i)
            out << detail::fmt_full(s(i, j)) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_field(const VectorField& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << v.grid.nx << " " << v.grid.ny << " " << detail::fmt_full(v.grid.h) << "\n";
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i) {
            const int n = v.grid.id(i, j);
            out << detail::fmt_full(v.x[n]) << " " << detail::fmt_full(v.y[n]) << "\n";
        }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline ScalarField read_scalar_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    ScalarField s(detail::read_header(in, path));
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < s.grid.nx; ++i)
            if (!(in >> s(i, j))) throw std::runtime_error("field read: truncated file " + path);
    return s;
}

inline VectorField read_vector_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    VectorField v(detail::read_header(in, path));
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i) {
            const int n = v.grid.id(i, j);
            if (!(in >> v.x[n] >> v.y[n]))
                throw std::runtime_error("field read: truncated file " + path);
        }
    return v;
}

}  // namespace sgf
