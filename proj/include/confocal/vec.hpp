#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "confocal/error.hpp"

namespace confocal {

using Vec = std::vector<double>;
/// Columns of a matrix / list of frame vectors.
using Cols = std::vector<Vec>;

inline void check_same_dim(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "vector dimensions differ");
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline Vec add(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

/// a + s*b
inline Vec axpy(const Vec& a, double s, const Vec& b) {
    check_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0) throw Error(ErrorKind::InvalidInput, "cannot normalize zero vector");
    return scale(a, 1.0 / n);
}

inline double distance(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec cross3(const Vec& a, const Vec& b) {
    if (a.size() != 3 || b.size() != 3)
        throw Error(ErrorKind::DimensionMismatch, "cross product requires 3-vectors");
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// World vector of frame coordinates: sum_j coords[j] * frame[j].
inline Vec frame_apply(const Cols& frame, const Vec& coords) {
    if (frame.size() != coords.size())
        throw Error(ErrorKind::DimensionMismatch, "frame/coordinate dimensions differ");
    Vec r(frame.empty() ? 0 : frame[0].size(), 0.0);
    for (std::size_t j = 0; j < frame.size(); ++j)
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += coords[j] * frame[j][i];
    return r;
}

/// Coordinates of a world vector in an orthonormal frame.
inline Vec frame_coords(const Cols& frame, const Vec& world) {
    Vec r(frame.size());
    for (std::size_t j = 0; j < frame.size(); ++j) r[j] = dot(frame[j], world);
    return r;
}

/// Determinant of a square matrix given as rows, by partial-pivot elimination.
inline double det(Cols rows) {
    std::size_t n = rows.size();
    double d = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(rows[r][c]) > std::fabs(rows[p][c])) p = r;
        if (rows[p][c] == 0.0) return 0.0;
        if (p != c) {
            std::swap(rows[p], rows[c]);
            d = -d;
        }
        d *= rows[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = rows[r][c] / rows[c][c];
            for (std::size_t k = c; k < n; ++k) rows[r][k] -= f * rows[c][k];
        }
    }
    return d;
}

} // namespace confocal
