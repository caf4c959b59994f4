#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "confocal/elliptic.hpp"
#include "confocal/error.hpp"
#include "confocal/numerics.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// Quadratic cone sum_i xi_i^2 / s_i = 0 in an orthonormal frame attached
/// to the apex; xi are the frame coordinates of x - apex.
struct Cone {
    Vec apex;
    Cols frame;
    Vec signed_sq_axes;

    Cone(Vec apex_, Cols frame_, Vec axes_)
        : apex(std::move(apex_)), frame(std::move(frame_)), signed_sq_axes(std::move(axes_)) {
        std::size_t n = apex.size();
        if (frame.size() != n || signed_sq_axes.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "cone fields have inconsistent dimensions");
        for (std::size_t i = 0; i < n; ++i) {
            if (signed_sq_axes[i] == 0)
                throw Error(ErrorKind::InvalidInput, "cone signed squared semi-axis is zero");
            for (std::size_t j = 0; j <= i; ++j) {
                double d = dot(frame[i], frame[j]) - (i == j ? 1.0 : 0.0);
                if (std::fabs(d) > 1e-10)
                    throw Error(ErrorKind::InvalidInput, "cone frame is not orthonormal");
            }
        }
    }

    int dim() const { return static_cast<int>(apex.size()); }
};

inline double cone_eval(const Cone& c, const Vec& x) {
    Vec xi = frame_coords(c.frame, sub(x, c.apex));
    double s = 0;
    for (int i = 0; i < c.dim(); ++i) s += xi[i] * xi[i] / c.signed_sq_axes[i];
    return s;
}

/// General quadratic surface x^T M x + 2 b^T x + c = 0.
struct QuadraticSurface {
    SymmetricMatrix M;
    Vec b;
    double c;

    double eval(const Vec& x) const {
        int n = M.order();
        double s = c;
        for (int i = 0; i < n; ++i) {
            s += 2.0 * b[i] * x[i];
            for (int j = 0; j < n; ++j) s += x[i] * M.at(i, j) * x[j];
        }
        return s;
    }
};

/// Tangent cone to an ellipsoid from an exterior point, from the polarized
/// form U' U - P^2 with U = x^T D x - 1, D = diag(1/a_i^2):
/// M = U' D - w w^T, b = w = D x', c = -(U' + 1).
inline QuadraticSurface tangent_cone_form(const CentralQuadric& e, const Vec& x, double tol = 1e-12) {
    if (!e.is_ellipsoid())
        throw Error(ErrorKind::NotAnEllipsoid, "tangent cones are taken about an ellipsoid");
    double u = evaluate(e, x);
    if (u <= tol) throw Error(ErrorKind::NotExterior, "apex must be exterior to the ellipsoid");
    int n = e.dim();
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = x[i] / e.signed_sq_axes[i];
    QuadraticSurface q{SymmetricMatrix(n), w, -(u + 1.0)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double m = -w[i] * w[j];
            if (i == j) m += u / e.signed_sq_axes[i];
            q.M.set(i, j, m);
        }
    }
    return q;
}

/// Canonical form of the tangent cone from an exterior point: apex x',
/// frame the confocal normals at x', signed squared semi-axes -lambda^i.
inline Cone tangent_cone_canonical(const ConfocalSystem& sys, const Vec& x,
                                   double eps_axis_rel = 1e-8) {
    EllipticCoordinates ec = elliptic_coordinates(sys, x, eps_axis_rel);
    if (ec.lambdas[0] >= 0)
        throw Error(ErrorKind::NotExterior, "apex must be exterior to the base ellipsoid");
    FrameAtPoint fr = frame_at_point(sys, ec);
    Vec axes(ec.lambdas);
    for (double& l : axes) l = -l;
    return Cone(ec.point, fr.unit_normals, std::move(axes));
}

/// Cone projecting the focal quadric C_k from a point: apex x', frame the
/// confocal normals at x', signed squared semi-axes a_k^2 - lambda^i (row k
/// of the axes table).
inline Cone focal_cone(const ConfocalSystem& sys, const Vec& x, int k,
                       double eps_axis_rel = 1e-8) {
    if (k < 2 || k > sys.dim())
        throw Error(ErrorKind::IndexOutOfRange, "focal cone index must be in 2..n");
    EllipticCoordinates ec = elliptic_coordinates(sys, x, eps_axis_rel);
    FrameAtPoint fr = frame_at_point(sys, ec);
    Vec axes(sys.dim());
    for (int i = 0; i < sys.dim(); ++i) axes[i] = sys.base_sq_axes[k - 1] - ec.lambdas[i];
    return Cone(ec.point, fr.unit_normals, std::move(axes));
}

/// Common edge of a confocal family of cones: direction given in the shared
/// frame, with its squared direction cosines and the sign profile (one
/// global sign is gauge; the first sign is fixed positive).
struct Transversal {
    std::vector<int> sign_profile;
    Vec direction;     // frame coordinates, unit
    Vec sq_cosines;    // nonnegative, sums to 1
};

/// Squared direction cosines shared by n-1 confocal cones, plus the
/// 2^(n-1) sign profiles realizing them as edges.
///
/// sq_cosines_k = prod_j (alpha_k^j)^2 / prod_{i != k} ((alpha_k^1)^2 - (alpha_i^1)^2).
inline std::vector<Transversal> common_edges(const std::vector<Cone>& cones,
                                             double tol_rel = 1e-7, double clamp_tol = 1e-12,
                                             double residual_tol = 1e-8) {
    if (cones.empty()) throw Error(ErrorKind::InvalidInput, "no cones given");
    int n = cones[0].dim();
    if (static_cast<int>(cones.size()) != n - 1)
        throw Error(ErrorKind::DimensionMismatch, "need n-1 cones in dimension n");

    double scale = 0;
    for (const Cone& c : cones)
        for (double a : c.signed_sq_axes) scale = std::max(scale, std::fabs(a));

    for (const Cone& c : cones) {
        if (c.dim() != n) throw Error(ErrorKind::DimensionMismatch, "mixed cone dimensions");
        if (distance(c.apex, cones[0].apex) > 1e-8 * (1.0 + norm(cones[0].apex)))
            throw Error(ErrorKind::InvalidInput, "cones do not share an apex");
        for (int i = 0; i < n; ++i)
            if (std::fabs(dot(c.frame[i], cones[0].frame[i]) - 1.0) > 1e-8)
                throw Error(ErrorKind::InvalidInput, "cones do not share a frame");
    }

    const Vec& first = cones[0].signed_sq_axes;
    for (const Cone& c : cones) {
        double shift = c.signed_sq_axes[0] - first[0];
        for (int i = 1; i < n; ++i)
            if (std::fabs((c.signed_sq_axes[i] - first[i]) - shift) > tol_rel * scale)
                throw Error(ErrorKind::NotConfocal, "cone axes do not differ by a constant shift");
    }
    for (std::size_t a = 0; a < cones.size(); ++a)
        for (std::size_t b = a + 1; b < cones.size(); ++b)
            if (std::fabs(cones[a].signed_sq_axes[0] - cones[b].signed_sq_axes[0]) <
                tol_rel * scale)
                throw Error(ErrorKind::CoincidentParameters, "two cones coincide");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(first[i] - first[j]) < tol_rel * scale)
                throw Error(ErrorKind::CoincidentParameters,
                            "first cone has coincident squared semi-axes");

    Vec q(n);
    for (int k = 0; k < n; ++k) {
        double num = 1.0, den = 1.0;
        for (const Cone& c : cones) num *= c.signed_sq_axes[k];
        for (int i = 0; i < n; ++i)
            if (i != k) den *= first[k] - first[i];
        double v = num / den;
        if (v < -clamp_tol)
            throw Error(ErrorKind::NoRealEdge, "negative squared direction cosine");
        q[k] = std::max(v, 0.0);
    }

    std::vector<Transversal> edges;
    int count = 1 << (n - 1);
    edges.reserve(count);
    for (int m = 0; m < count; ++m) {
        Transversal t;
        t.sq_cosines = q;
        t.sign_profile.assign(n, 1);
        for (int b = 0; b < n - 1; ++b)
            if ((m >> b) & 1) t.sign_profile[b + 1] = -1;
        t.direction.resize(n);
        for (int i = 0; i < n; ++i) t.direction[i] = t.sign_profile[i] * std::sqrt(q[i]);
        t.direction = normalized(t.direction);
        edges.push_back(std::move(t));
    }

    for (const Transversal& t : edges) {
        for (const Cone& c : cones) {
            double r = 0, mag = 0;
            for (int i = 0; i < n; ++i) {
                r += t.direction[i] * t.direction[i] / c.signed_sq_axes[i];
                mag += t.direction[i] * t.direction[i] / std::fabs(c.signed_sq_axes[i]);
            }
            if (std::fabs(r) > residual_tol * std::max(mag, 1e-30))
                throw Error(ErrorKind::NoRealEdge, "edge candidate fails a cone equation");
        }
    }
    return edges;
}

/// The closed-form identity behind the direction cosines: given the first
/// cone's squared semi-axes and the shifts lambda(2..n-1) of the remaining
/// cones, the sum of the n quotients equals one.
inline double identity_sum(const Vec& first_axes, const Vec& lambdas) {
    int n = static_cast<int>(first_axes.size());
    if (static_cast<int>(lambdas.size()) != std::max(0, n - 2))
        throw Error(ErrorKind::DimensionMismatch, "need n-2 shift parameters");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (first_axes[i] == first_axes[j])
                throw Error(ErrorKind::CoincidentParameters, "axes must be pairwise distinct");
    double sum = 0;
    for (int k = 0; k < n; ++k) {
        double num = first_axes[k];
        for (double l : lambdas) num *= first_axes[k] + l;
        double den = 1.0;
        for (int i = 0; i < n; ++i)
            if (i != k) den *= first_axes[k] - first_axes[i];
        sum += num / den;
    }
    return sum;
}

/// Length cut off on a common edge through x' by the hyperplane through the
/// origin parallel to the tangent hyperplane of the first confocal at x'.
/// Equals the major semi-axis sqrt(a_1^2 - lambda^1) of that confocal.
inline double intercept_length(const ConfocalSystem& sys, const Vec& x, const Transversal& edge,
                               double eps_axis_rel = 1e-8) {
    if (static_cast<int>(edge.direction.size()) != sys.dim())
        throw Error(ErrorKind::DimensionMismatch, "edge dimension differs from system");
    EllipticCoordinates ec = elliptic_coordinates(sys, x, eps_axis_rel);
    FrameAtPoint fr = frame_at_point(sys, ec);
    double d1 = edge.direction[0];    // frame component along the first normal
    if (std::fabs(d1) < 1e-12)
        throw Error(ErrorKind::ParallelEdge, "edge is parallel to the intercepting hyperplane");
    return fr.support[0] / std::fabs(d1);
}

/// Apex locus of right cones: true when the cone projecting C_k from x' has
/// two equal (and nondegenerate) signed squared semi-axes, which happens
/// exactly when x' lies on the other focal conic.
inline bool right_cone_locus_check(const ConfocalSystem& sys, const Vec& x, int k = 3,
                                   double tol_eq_rel = 1e-7, double eps_axis_rel = 1e-8) {
    if (sys.dim() != 3)
        throw Error(ErrorKind::DimensionMismatch, "right-cone locus check is three-dimensional");
    if (k < 2 || k > 3)
        throw Error(ErrorKind::IndexOutOfRange, "focal cone index must be in 2..3");
    // Work from the confocal parameters alone: on the locus two of them
    // nearly coincide and the normal frame is not reliable there.
    EllipticCoordinates ec = elliptic_coordinates(sys, x, eps_axis_rel);
    Vec axes(3);
    for (int i = 0; i < 3; ++i) axes[i] = sys.base_sq_axes[k - 1] - ec.lambdas[i];
    double tol_eq = tol_eq_rel * sys.a1_sq();
    double degenerate = 1e-3 * sys.a1_sq();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::fabs(axes[i] - axes[j]) <= tol_eq && std::fabs(axes[i]) > degenerate &&
                std::fabs(axes[j]) > degenerate)
                return true;
    return false;
}

} // namespace confocal
