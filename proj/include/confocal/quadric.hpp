#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "confocal/error.hpp"
#include "confocal/numerics.hpp"
#include "confocal/rng.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// Central quadric sum_i x_i^2 / s_i = 1 with nonzero signed squared
/// semi-axes s_i.  Equal entries are permitted here; confocal systems
/// impose strictness separately.
struct CentralQuadric {
    Vec signed_sq_axes;

    explicit CentralQuadric(Vec axes) : signed_sq_axes(std::move(axes)) {
        if (signed_sq_axes.empty())
            throw Error(ErrorKind::InvalidInput, "quadric needs at least one axis");
        for (double s : signed_sq_axes)
            if (s == 0.0) throw Error(ErrorKind::InvalidInput, "signed squared semi-axis is zero");
    }

    int dim() const { return static_cast<int>(signed_sq_axes.size()); }

    bool is_ellipsoid() const {
        return std::all_of(signed_sq_axes.begin(), signed_sq_axes.end(),
                           [](double s) { return s > 0; });
    }
};

/// Hyperplane <h, x> = 1.
struct Hyperplane {
    Vec h;

    explicit Hyperplane(Vec coeffs) : h(std::move(coeffs)) {
        if (norm_sq(h) == 0.0) throw Error(ErrorKind::InvalidInput, "hyperplane coefficients are zero");
    }
};

/// n conjugate semi-diameter endpoints of an ellipsoid, as columns.
struct ConjugateSystem {
    Cols diameters;
};

/// sum x_i^2 / s_i - 1; negative inside an ellipsoid, positive outside.
inline double evaluate(const CentralQuadric& q, const Vec& x) {
    if (q.dim() != static_cast<int>(x.size()))
        throw Error(ErrorKind::DimensionMismatch, "point dimension differs from quadric");
    double s = -1.0;
    for (int i = 0; i < q.dim(); ++i) s += x[i] * x[i] / q.signed_sq_axes[i];
    return s;
}

/// Gradient direction (x_i / s_i) at a surface point.
inline Vec normal_at(const CentralQuadric& q, const Vec& x, double tol = 1e-8) {
    if (std::fabs(evaluate(q, x)) > tol)
        throw Error(ErrorKind::OffSurface, "point does not satisfy the quadric equation");
    Vec n(x.size());
    for (int i = 0; i < q.dim(); ++i) n[i] = x[i] / q.signed_sq_axes[i];
    return n;
}

/// Tangent hyperplane sum_i (x'_i / s_i) x_i = 1 at a surface point.
inline Hyperplane tangent_hyperplane_at(const CentralQuadric& q, const Vec& x, double tol = 1e-8) {
    return Hyperplane(normal_at(q, x, tol));
}

/// Conjugacy of two diameters of an ellipsoid: sum e_i f_i / s_i = 0,
/// tested relative to the magnitudes of e, f and the smallest axis.
inline bool is_conjugate_pair(const CentralQuadric& q, const Vec& e, const Vec& f,
                              double tol = 1e-10) {
    if (!q.is_ellipsoid())
        throw Error(ErrorKind::NotAnEllipsoid, "conjugacy is defined for ellipsoids");
    double s = 0;
    for (int i = 0; i < q.dim(); ++i) s += e[i] * f[i] / q.signed_sq_axes[i];
    double smin = *std::min_element(q.signed_sq_axes.begin(), q.signed_sq_axes.end());
    return std::fabs(s) <= tol * norm(e) * norm(f) / smin;
}

/// Conjugate system X = A Q: a random orthonormal frame scaled by the
/// semi-axes columnwise.  Columns land on the ellipsoid and are pairwise
/// conjugate by construction.
inline ConjugateSystem random_conjugate_system(const CentralQuadric& q, Rng& rng) {
    if (!q.is_ellipsoid())
        throw Error(ErrorKind::NotAnEllipsoid, "conjugate systems require an ellipsoid");
    int n = q.dim();
    Cols frame = random_orthonormal(n, rng);
    ConjugateSystem sys;
    sys.diameters.reserve(n);
    for (int j = 0; j < n; ++j) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = std::sqrt(q.signed_sq_axes[i]) * frame[j][i];
        sys.diameters.push_back(std::move(x));
    }
    return sys;
}

/// k-th Apollonius invariant: the sum over all k-element subsets I of the
/// diameters of det Gram(x^I).  Independent of the choice of conjugate
/// system; equals e_k of the squared semi-axes.
inline double apollonius_invariant(const ConjugateSystem& sys, int k) {
    int n = static_cast<int>(sys.diameters.size());
    if (k < 1 || k > n)
        throw Error(ErrorKind::IndexOutOfRange, "invariant index must be in 1..n");

    Cols gram(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            gram[i][j] = gram[j][i] = dot(sys.diameters[i], sys.diameters[j]);

    double total = 0;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        Cols minor(k, Vec(k));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) minor[r][c] = gram[idx[r]][idx[c]];
        total += det(minor);

        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return total;
}

/// Pole of the hyperplane <h, x> = 1 with respect to an ellipsoid:
/// xi_i = h_i s_i.
inline Vec pole_of_hyperplane(const CentralQuadric& q, const Hyperplane& plane) {
    if (!q.is_ellipsoid())
        throw Error(ErrorKind::NotAnEllipsoid, "polarity here is taken about an ellipsoid");
    if (q.dim() != static_cast<int>(plane.h.size()))
        throw Error(ErrorKind::DimensionMismatch, "hyperplane dimension differs from quadric");
    Vec pole(plane.h.size());
    for (int i = 0; i < q.dim(); ++i) pole[i] = plane.h[i] * q.signed_sq_axes[i];
    return pole;
}

} // namespace confocal
