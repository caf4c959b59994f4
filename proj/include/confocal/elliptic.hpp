#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "confocal/error.hpp"
#include "confocal/numerics.hpp"
#include "confocal/quadric.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// Confocal family C(lambda): sum_i x_i^2 / (a_i^2 - lambda) = 1, anchored
/// at a base ellipsoid with strictly decreasing positive squared semi-axes.
struct ConfocalSystem {
    Vec base_sq_axes;

    explicit ConfocalSystem(Vec axes) : base_sq_axes(std::move(axes)) {
        if (base_sq_axes.size() < 2)
            throw Error(ErrorKind::InvalidInput, "confocal system needs dimension >= 2");
        for (std::size_t i = 0; i < base_sq_axes.size(); ++i) {
            if (base_sq_axes[i] <= 0)
                throw Error(ErrorKind::InvalidInput, "squared semi-axes must be positive");
            if (i > 0 && !(base_sq_axes[i - 1] > base_sq_axes[i]))
                throw Error(ErrorKind::InvalidInput, "squared semi-axes must decrease strictly");
        }
    }

    int dim() const { return static_cast<int>(base_sq_axes.size()); }
    double a1_sq() const { return base_sq_axes.front(); }
    double an_sq() const { return base_sq_axes.back(); }
};

/// Family member C(lambda); lambda may not sit on a focal membrane a_i^2.
inline CentralQuadric confocal_quadric(const ConfocalSystem& sys, double lambda,
                                       double tol = 1e-9) {
    for (double a2 : sys.base_sq_axes)
        if (std::fabs(a2 - lambda) <= tol * sys.a1_sq())
            throw Error(ErrorKind::OnFocalMembrane, "lambda coincides with a squared semi-axis");
    Vec axes(sys.base_sq_axes);
    for (double& a2 : axes) a2 -= lambda;
    return CentralQuadric(std::move(axes));
}

/// Focal quadric C_k: the degenerate member lambda = a_k^2, living in the
/// hyperplane x_k = 0 with signed squared semi-axes a_i^2 - a_k^2, i != k.
struct FocalQuadric {
    int axis_index;            // 1-based index k of the collapsed axis
    CentralQuadric quadric;    // (n-1)-dimensional, coordinates i != k in order
};

inline FocalQuadric focal_quadric(const ConfocalSystem& sys, int k) {
    if (k < 2 || k > sys.dim())
        throw Error(ErrorKind::IndexOutOfRange,
                    "focal quadric index must be in 2..n (k=1 has no real points)");
    Vec axes;
    axes.reserve(sys.dim() - 1);
    for (int i = 0; i < sys.dim(); ++i)
        if (i != k - 1) axes.push_back(sys.base_sq_axes[i] - sys.base_sq_axes[k - 1]);
    return FocalQuadric{k, CentralQuadric(std::move(axes))};
}

/// Embed a point of the (n-1)-dimensional focal quadric into R^n (x_k = 0).
inline Vec embed_focal_point(const FocalQuadric& fq, const Vec& reduced) {
    if (static_cast<int>(reduced.size()) != fq.quadric.dim())
        throw Error(ErrorKind::DimensionMismatch, "focal point has wrong dimension");
    Vec x(reduced.size() + 1, 0.0);
    std::size_t r = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (static_cast<int>(i) != fq.axis_index - 1) x[i] = reduced[r++];
    return x;
}

/// The n confocal parameters through a point, sorted ascending, together
/// with the point itself.
struct EllipticCoordinates {
    Vec lambdas;
    Vec point;
};

namespace detail {

/// f(lambda) = sum_i x_i^2 prod_{j != i} (a_j^2 - lambda) - prod_i (a_i^2 - lambda),
/// whose n real roots are the confocal parameters through x.
inline double confocal_poly(const Vec& a2, const Vec& x, double lambda) {
    std::size_t n = a2.size();
    double prod = 1.0;
    for (double v : a2) prod *= v - lambda;
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) p *= a2[j] - lambda;
        s += x[i] * x[i] * p;
    }
    return s - prod;
}

/// Sum of term magnitudes of the same expression; the scale against which a
/// rounding-level residual at a root must be judged.
inline double confocal_poly_abs(const Vec& a2, const Vec& x, double lambda) {
    std::size_t n = a2.size();
    double prod = 1.0;
    for (double v : a2) prod *= std::fabs(v - lambda);
    double s = prod;
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) p *= std::fabs(a2[j] - lambda);
        s += x[i] * x[i] * p;
    }
    return s;
}

inline double confocal_poly_deriv(const Vec& a2, const Vec& x, double lambda) {
    std::size_t n = a2.size();
    auto dprod = [&](std::size_t skip) {
        // derivative of prod_{j != skip} (a_j^2 - lambda); skip = n: full product
        double s = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == skip) continue;
            double p = -1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != skip && j != k) p *= a2[j] - lambda;
            s += p;
        }
        return s;
    };
    double d = -dprod(n);
    for (std::size_t i = 0; i < n; ++i) d += x[i] * x[i] * dprod(i);
    return d;
}

/// Largest coefficient magnitude of the expanded polynomial, used as the
/// scale for residual checks.
inline double confocal_poly_scale(const Vec& a2, const Vec& x) {
    std::size_t n = a2.size();
    auto mul_linear = [](const Vec& poly, double c) {
        // poly(t) * (c - t), ascending powers
        Vec out(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            out[k] += c * poly[k];
            out[k + 1] -= poly[k];
        }
        return out;
    };
    Vec total{0.0};
    for (std::size_t i = 0; i <= n; ++i) {
        Vec term{i == n ? -1.0 : x[i] * x[i]};
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) term = mul_linear(term, a2[j]);
        if (total.size() < term.size()) total.resize(term.size(), 0.0);
        for (std::size_t k = 0; k < term.size(); ++k) total[k] += term[k];
    }
    double m = 0;
    for (double c : total) m = std::max(m, std::fabs(c));
    return m;
}

} // namespace detail

/// Elliptic coordinates of a point with all coordinates off the principal
/// planes (|x_i| >= eps_axis_rel * a_1).  The n roots interlace the squared
/// semi-axes: lambda^1 < a_n^2 < lambda^2 < ... < lambda^n < a_1^2.
inline EllipticCoordinates elliptic_coordinates(const ConfocalSystem& sys, const Vec& x,
                                                double eps_axis_rel = 1e-8) {
    const Vec& a2 = sys.base_sq_axes;
    int n = sys.dim();
    if (static_cast<int>(x.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, "point dimension differs from system");
    double a1 = std::sqrt(sys.a1_sq());
    for (double xi : x)
        if (std::fabs(xi) < eps_axis_rel * a1)
            throw Error(ErrorKind::DegeneratePoint,
                        "point lies on a principal plane within the axis guard");

    auto f = [&](double lam) { return detail::confocal_poly(a2, x, lam); };
    double root_tol = 1e-13 * std::max(1.0, sys.a1_sq());

    auto polish = [&](double lam) {
        for (int it = 0; it < 4; ++it) {
            double fv = f(lam);
            if (fv == 0.0) break;
            double dv = detail::confocal_poly_deriv(a2, x, lam);
            if (dv == 0.0) break;
            double next = lam - fv / dv;
            if (!std::isfinite(next) || std::fabs(next - lam) > 1.0) break;
            lam = next;
        }
        return lam;
    };

    Vec lambdas;
    lambdas.reserve(n);
    double lo0 = sys.an_sq() - norm_sq(x) - 1.0 - 0.01 * sys.a1_sq();
    lambdas.push_back(polish(bracketed_root(f, Bracket(lo0, sys.an_sq(), root_tol))));
    for (int k = n - 1; k >= 1; --k)
        lambdas.push_back(polish(bracketed_root(f, Bracket(a2[k], a2[k - 1], root_tol))));

    double scale = detail::confocal_poly_scale(a2, x);
    for (double lam : lambdas)
        if (std::fabs(f(lam)) > 1e-12 * std::max(scale, detail::confocal_poly_abs(a2, x, lam)))
            throw Error(ErrorKind::NonConvergence, "confocal root residual above tolerance");

    return EllipticCoordinates{std::move(lambdas), x};
}

/// Table of signed squared semi-axes of the confocals through a point:
/// entry(i, j) = a_i^2 - lambda^j (axis i, confocal j, both 0-based here).
struct AxesTable {
    Vec base_sq_axes;
    Vec lambdas;
    std::vector<Vec> entries;    // entries[i][j]

    int dim() const { return static_cast<int>(base_sq_axes.size()); }
    double entry(int i, int j) const { return entries[i][j]; }
};

inline AxesTable axes_table(const ConfocalSystem& sys, const EllipticCoordinates& ec) {
    int n = sys.dim();
    if (static_cast<int>(ec.lambdas.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, "coordinate count differs from system");
    AxesTable t;
    t.base_sq_axes = sys.base_sq_axes;
    t.lambdas = ec.lambdas;
    t.entries.assign(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.entries[i][j] = sys.base_sq_axes[i] - ec.lambdas[j];
    return t;
}

/// Recover the point from its axes table: x_i^2 = prod_j entry(i,j) /
/// prod_{k != i} (a_i^2 - a_k^2), with the given coordinate signs.
inline Vec point_from_axes_table(const AxesTable& t, const std::vector<int>& signs,
                                 double tol = 1e-9) {
    int n = t.dim();
    if (static_cast<int>(signs.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, "sign count differs from table dimension");
    Vec x(n);
    for (int i = 0; i < n; ++i) {
        double num = 1.0, mag = 1.0, den = 1.0;
        for (int j = 0; j < n; ++j) {
            num *= t.entry(i, j);
            mag *= std::fabs(t.entry(i, j));
        }
        for (int k = 0; k < n; ++k)
            if (k != i) den *= t.base_sq_axes[i] - t.base_sq_axes[k];
        double sq = num / den;
        double scale = mag / std::fabs(den);
        if (sq < -tol * std::max(scale, 1e-300))
            throw Error(ErrorKind::NegativeSquare, "table is not realizable as a real point");
        x[i] = signs[i] * std::sqrt(std::max(sq, 0.0));
    }
    return x;
}

struct NormCheck {
    double norm_sq;     // |x|^2
    double diag_sum;    // sum_j (a_j^2 - lambda^j)
};

/// |x|^2 equals the trace of the axes table.
inline NormCheck norm_identity_check(const ConfocalSystem& sys, const EllipticCoordinates& ec) {
    double diag = 0;
    for (int j = 0; j < sys.dim(); ++j) diag += sys.base_sq_axes[j] - ec.lambdas[j];
    return NormCheck{norm_sq(ec.point), diag};
}

/// Orthonormal frame of confocal normals at a point, with the support
/// distances p^j of the tangent hyperplanes from the origin.
struct FrameAtPoint {
    Vec origin;            // the point itself
    Cols unit_normals;     // unit_normals[j] is the normal of confocal j
    Vec support;           // p^j = 1 / |grad_j|, all positive
};

inline FrameAtPoint frame_at_point(const ConfocalSystem& sys, const EllipticCoordinates& ec) {
    int n = sys.dim();
    FrameAtPoint fr;
    fr.origin = ec.point;
    fr.unit_normals.reserve(n);
    fr.support.resize(n);
    for (int j = 0; j < n; ++j) {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = ec.point[i] / (sys.base_sq_axes[i] - ec.lambdas[j]);
        double gn = norm(g);
        fr.support[j] = 1.0 / gn;
        fr.unit_normals.push_back(scale(g, 1.0 / gn));
    }
    return fr;
}

inline FrameAtPoint frame_at_point(const ConfocalSystem& sys, const Vec& x,
                                   double eps_axis_rel = 1e-8) {
    return frame_at_point(sys, elliptic_coordinates(sys, x, eps_axis_rel));
}

/// Closed form for the support distances:
/// (p^j)^2 = prod_i (a_i^2 - lambda^j) / prod_{k != j} (lambda^k - lambda^j).
inline Vec support_sq_closed_form(const AxesTable& t) {
    int n = t.dim();
    Vec p2(n);
    for (int j = 0; j < n; ++j) {
        double num = 1.0, den = 1.0;
        for (int i = 0; i < n; ++i) num *= t.entry(i, j);
        for (int k = 0; k < n; ++k)
            if (k != j) den *= t.lambdas[k] - t.lambdas[j];
        p2[j] = num / den;
    }
    return p2;
}

/// Squared semi-axes of the central section of C(lambda^1) parallel to the
/// tangent hyperplane at the point: (rho^1_j)^2 = lambda^j - lambda^1 for
/// j = 2..n, aligned with the confocal normals 2..n.
inline Vec central_section_sq_axes(const EllipticCoordinates& ec) {
    Vec r;
    r.reserve(ec.lambdas.size() - 1);
    for (std::size_t j = 1; j < ec.lambdas.size(); ++j)
        r.push_back(ec.lambdas[j] - ec.lambdas[0]);
    return r;
}

/// Confocal system of quadrics centered at the point whose principal planes
/// are the tangent hyperplanes of the confocals through it.  Quadric i has
/// signed squared semi-axes a_i^2 - lambda^j along the frame; the original
/// center has coordinates -p^j in this frame and lies on every member.
struct DualSystem {
    Vec center;                 // the point x'
    Cols frame;                 // confocal unit normals at x'
    std::vector<Vec> quadric_axes;  // row i: axes of dual quadric i
    Vec origin_coords;          // frame coordinates of the original center
};

inline DualSystem dual_system(const ConfocalSystem& sys, const EllipticCoordinates& ec) {
    AxesTable t = axes_table(sys, ec);
    FrameAtPoint fr = frame_at_point(sys, ec);
    DualSystem d;
    d.center = ec.point;
    d.frame = fr.unit_normals;
    d.quadric_axes = t.entries;
    d.origin_coords = scale(fr.support, -1.0);
    return d;
}

/// Locus of poles of a fixed hyperplane with respect to the confocal family:
/// the line xi_i(lambda) = h_i (a_i^2 - lambda), i.e. base - lambda * h.
struct PoleLine {
    Vec base_point;    // poles at lambda = 0: h_i a_i^2
    Vec direction;     // h

    Vec point_at(double lambda) const { return axpy(base_point, -lambda, direction); }
};

inline PoleLine pole_line(const ConfocalSystem& sys, const Hyperplane& plane) {
    if (static_cast<int>(plane.h.size()) != sys.dim())
        throw Error(ErrorKind::DimensionMismatch, "hyperplane dimension differs from system");
    Vec base(plane.h.size());
    for (int i = 0; i < sys.dim(); ++i) base[i] = plane.h[i] * sys.base_sq_axes[i];
    return PoleLine{std::move(base), plane.h};
}

/// Parameter of the family member tangent to <h, x> = 1:
/// lambda* = (sum h_i^2 a_i^2 - 1) / sum h_i^2.
inline double tangent_confocal_parameter(const ConfocalSystem& sys, const Hyperplane& plane,
                                         double tol = 1e-12) {
    if (static_cast<int>(plane.h.size()) != sys.dim())
        throw Error(ErrorKind::DimensionMismatch, "hyperplane dimension differs from system");
    double s = 0, sa = 0;
    for (int i = 0; i < sys.dim(); ++i) {
        s += plane.h[i] * plane.h[i];
        sa += plane.h[i] * plane.h[i] * sys.base_sq_axes[i];
    }
    double lambda = (sa - 1.0) / s;
    for (double a2 : sys.base_sq_axes)
        if (std::fabs(a2 - lambda) <= tol * sys.a1_sq())
            throw Error(ErrorKind::OnFocalMembrane, "tangent parameter hits a focal membrane");
    return lambda;
}

struct TangencyLocus {
    Vec touch_point;
    double product;    // distance to the plane through O times distance to the line through O
};

/// Touch point of the member C(lambda) with its tangent hyperplane of normal
/// direction h, and the product of its distances to the central hyperplane
/// and the central line determined by h.  The product is independent of
/// lambda.
inline TangencyLocus tangency_locus_product(const ConfocalSystem& sys, const Vec& h,
                                            double lambda, double tol = 1e-12) {
    if (static_cast<int>(h.size()) != sys.dim())
        throw Error(ErrorKind::DimensionMismatch, "direction dimension differs from system");
    double s = 0;
    for (int i = 0; i < sys.dim(); ++i) s += h[i] * h[i] * (sys.base_sq_axes[i] - lambda);
    if (s <= tol)
        throw Error(ErrorKind::NoRealTangency, "no real tangent hyperplane with this normal");
    double rs = std::sqrt(s);
    Vec x(h.size());
    for (int i = 0; i < sys.dim(); ++i) x[i] = (sys.base_sq_axes[i] - lambda) * h[i] / rs;
    double hn = norm(h);
    double d_plane = dot(x, h) / hn;
    double d_line = std::sqrt(std::max(0.0, norm_sq(x) - d_plane * d_plane));
    return TangencyLocus{std::move(x), d_plane * d_line};
}

namespace detail {

inline void check_apollonian_axes(const Vec& sq_axes, const Vec& u) {
    if (sq_axes.size() < 2 || sq_axes.size() != u.size())
        throw Error(ErrorKind::DimensionMismatch, "need matching axes and point of dimension >= 2");
    for (double s : sq_axes)
        if (s <= 0) throw Error(ErrorKind::InvalidInput, "homothet axes must be positive");
    for (std::size_t i = 1; i < sq_axes.size(); ++i)
        if (sq_axes[0] == sq_axes[i])
            throw Error(ErrorKind::InvalidInput, "first squared semi-axis must be distinct");
}

} // namespace detail

/// Point of the pedal curve of normals through u for the homothet family of
/// the ellipsoid with the given squared semi-axes, at curve parameter tau.
/// Poles occur at tau = 1 / (a_1^2 - a_i^2).
inline Vec apollonian_curve_point(const Vec& sq_axes, const Vec& u, double tau,
                                  double tol = 1e-9) {
    detail::check_apollonian_axes(sq_axes, u);
    std::size_t n = sq_axes.size();
    Vec x(n);
    x[0] = sq_axes[0] * u[0] * tau;
    for (std::size_t i = 1; i < n; ++i) {
        double d = sq_axes[0] - sq_axes[i];
        double pole = 1.0 / d;
        if (std::fabs(tau - pole) <= tol * std::fabs(pole))
            throw Error(ErrorKind::PoleParameter, "tau sits on an asymptote pole");
        double y = -sq_axes[i] * u[i] / (d * (d * tau - 1.0));
        x[i] = y - sq_axes[i] * u[i] / d;
    }
    return x;
}

/// Defining system of the curve, normalized per equation; near zero exactly
/// on the curve.
inline double apollonian_curve_residual(const Vec& sq_axes, const Vec& u, const Vec& x) {
    detail::check_apollonian_axes(sq_axes, u);
    double worst = 0;
    for (std::size_t i = 1; i < sq_axes.size(); ++i) {
        double d = sq_axes[0] - sq_axes[i];
        double r = d * x[0] * x[i] + sq_axes[i] * u[i] * x[0] - sq_axes[0] * u[0] * x[i];
        double scale = std::fabs(d * x[0] * x[i]) + std::fabs(sq_axes[i] * u[i] * x[0]) +
                       std::fabs(sq_axes[0] * u[0] * x[i]) + 1e-30;
        worst = std::max(worst, std::fabs(r) / scale);
    }
    return worst;
}

/// Anchor point of the branch asymptote parallel to coordinate axis i
/// (1-based), in the original coordinates.
inline Vec apollonian_asymptote_anchor(const Vec& sq_axes, const Vec& u, int i) {
    detail::check_apollonian_axes(sq_axes, u);
    int n = static_cast<int>(sq_axes.size());
    if (i < 1 || i > n) throw Error(ErrorKind::IndexOutOfRange, "asymptote index must be in 1..n");
    Vec shift(n, 0.0);
    for (int j = 1; j < n; ++j) shift[j] = sq_axes[j] * u[j] / (sq_axes[0] - sq_axes[j]);

    Vec y(n, 0.0);
    if (i > 1) {
        double di = sq_axes[0] - sq_axes[i - 1];
        y[0] = sq_axes[0] * u[0] / di;
        for (int j = 1; j < n; ++j) {
            if (j == i - 1) continue;
            double dj = sq_axes[0] - sq_axes[j];
            double dij = sq_axes[i - 1] - sq_axes[j];
            if (dij == 0)
                throw Error(ErrorKind::InvalidInput, "coincident axes have no separate asymptotes");
            y[j] = -sq_axes[j] * u[j] * di / (dj * dij);
        }
    }
    Vec x(n);
    for (int j = 0; j < n; ++j) x[j] = y[j] - shift[j];
    return x;
}

} // namespace confocal
