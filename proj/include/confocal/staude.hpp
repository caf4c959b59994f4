#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "confocal/cone.hpp"
#include "confocal/elliptic.hpp"
#include "confocal/error.hpp"
#include "confocal/numerics.hpp"
#include "confocal/quadric.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// Focal conics of the ellipsoid with semi-axes a > b > c > 0:
/// the focal ellipse in z = 0 and the focal hyperbola in y = 0.
struct FocalConics {
    double a, b, c;

    FocalConics(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        if (!(a > b && b > c && c > 0))
            throw Error(ErrorKind::InvalidInput, "focal conics require a > b > c > 0");
    }

    double ae_sq() const { return a * a - c * c; }    // ellipse major^2, hyperbola focal dist^2
    double be_sq() const { return b * b - c * c; }    // ellipse minor^2
    double ah_sq() const { return a * a - b * b; }    // hyperbola major^2, ellipse focal dist^2

    ConfocalSystem system() const { return ConfocalSystem({a * a, b * b, c * c}); }

    Vec ellipse_point(double u) const {
        return {std::sqrt(ae_sq()) * std::cos(u), std::sqrt(be_sq()) * std::sin(u), 0.0};
    }
    Vec ellipse_tangent(double u) const {
        return {-std::sqrt(ae_sq()) * std::sin(u), std::sqrt(be_sq()) * std::cos(u), 0.0};
    }
    Vec hyperbola_point(double v, int branch) const {
        return {branch * std::sqrt(ah_sq()) * std::cosh(v), 0.0,
                -std::sqrt(be_sq()) * std::sinh(v)};
    }
    Vec hyperbola_tangent(double v, int branch) const {
        return {branch * std::sqrt(ah_sq()) * std::sinh(v), 0.0,
                -std::sqrt(be_sq()) * std::cosh(v)};
    }

    /// Focus of the focal hyperbola on the negative x-axis (a vertex
    /// direction of the focal ellipse).
    Vec hyperbola_focus_neg() const { return {-std::sqrt(ae_sq()), 0.0, 0.0}; }
    /// Focus of the focal ellipse on the positive x-axis (a vertex of the
    /// focal hyperbola).
    Vec ellipse_focus_pos() const { return {std::sqrt(ah_sq()), 0.0, 0.0}; }

    double ellipse_residual(const Vec& x) const {
        double m = x[0] * x[0] / ae_sq() + x[1] * x[1] / be_sq() - 1.0;
        return std::max(std::fabs(m), std::fabs(x[2]) / a);
    }
    double hyperbola_residual(const Vec& x) const {
        double m = x[0] * x[0] / ah_sq() - x[2] * x[2] / be_sq() - 1.0;
        return std::max(std::fabs(m), std::fabs(x[1]) / a);
    }
};

enum class FocalConicKind { Ellipse, HyperbolaPos, HyperbolaNeg };

struct BrokenLineMin {
    Vec conic_point;    // minimizing point Q on the chosen conic
    double param;       // u (ellipse) or v (hyperbola)
    double length;      // |F - Q| + |Q - P|
};

/// Shortest broken line F -> Q -> P over Q on one focal conic, by grid scan
/// plus golden-section refinement.  The hyperbola search is bounded to
/// |v| <= v_max; raise v_max for configurations far from the conics.
inline BrokenLineMin minimize_broken_line(const FocalConics& fc, const Vec& F, const Vec& P,
                                          FocalConicKind kind, int grid = 1024,
                                          double tol = 1e-10, double v_max = 5.0) {
    auto point = [&](double s) {
        switch (kind) {
        case FocalConicKind::Ellipse: return fc.ellipse_point(s);
        case FocalConicKind::HyperbolaPos: return fc.hyperbola_point(s, 1);
        default: return fc.hyperbola_point(s, -1);
        }
    };
    auto f = [&](double s) {
        Vec q = point(s);
        return distance(F, q) + distance(q, P);
    };

    Domain1D dom;
    if (kind == FocalConicKind::Ellipse)
        dom = {0.0, 2.0 * std::acos(-1.0), true};
    else
        dom = {-v_max, v_max, false};
    MinResult r = minimize_1d(f, dom, tol, grid);
    return BrokenLineMin{point(r.arg), r.arg, r.value};
}

/// |H1 E| - |E H2| for two points on one branch of the focal hyperbola and
/// a point of the focal ellipse; independent of the ellipse point.
inline double hh_difference(const FocalConics& fc, const Vec& h1, const Vec& h2, const Vec& e,
                            double tol = 1e-8) {
    if (fc.hyperbola_residual(h1) > tol || fc.hyperbola_residual(h2) > tol)
        throw Error(ErrorKind::OffSurface, "points are not on the focal hyperbola");
    if (fc.ellipse_residual(e) > tol)
        throw Error(ErrorKind::OffSurface, "point is not on the focal ellipse");
    if (h1[0] * h2[0] < 0)
        throw Error(ErrorKind::InvalidInput, "hyperbola points must lie on one branch");
    return distance(h1, e) - distance(e, h2);
}

/// One transversal through P meeting both focal conics: sign profile in the
/// frame of confocal normals at P (first sign fixed negative), unit world
/// direction, signed parameters of the two hits, and the hit points.
struct FocalRadius {
    std::array<int, 3> sign_profile;
    Vec direction;        // world coordinates, unit
    double t;             // parameter of the focal-ellipse hit
    double tau;           // parameter of the focal-hyperbola hit
    Vec ellipse_point;    // P + t * direction
    Vec hyperbola_point;  // P + tau * direction
};

/// The four transversals through P: common edges of the two focal cones at
/// P, gauged so the component along the first confocal normal is negative,
/// ordered by sign profile (-1,1,1), (-1,1,-1), (-1,-1,-1), (-1,-1,1).
inline std::vector<FocalRadius> focal_radii(const FocalConics& fc, const Vec& p,
                                            double eps_axis_rel = 1e-8) {
    ConfocalSystem sys = fc.system();
    EllipticCoordinates ec = elliptic_coordinates(sys, p, eps_axis_rel);
    FrameAtPoint fr = frame_at_point(sys, ec);
    std::vector<Cone> cones{focal_cone(sys, p, 2, eps_axis_rel),
                            focal_cone(sys, p, 3, eps_axis_rel)};
    std::vector<Transversal> edges = common_edges(cones);

    const std::array<std::array<int, 3>, 4> order{{{-1, 1, 1}, {-1, 1, -1}, {-1, -1, -1}, {-1, -1, 1}}};
    std::vector<FocalRadius> radii(4);
    for (const Transversal& e : edges) {
        std::array<int, 3> prof{-e.sign_profile[0], -e.sign_profile[1], -e.sign_profile[2]};
        Vec w = frame_apply(fr.unit_normals, scale(e.direction, -1.0));
        if (std::fabs(w[2]) < 1e-12 || std::fabs(w[1]) < 1e-12)
            throw Error(ErrorKind::NoIntersection,
                        "transversal is parallel to a focal-conic plane");
        FocalRadius r;
        r.sign_profile = prof;
        r.direction = w;
        r.t = -p[2] / w[2];
        r.tau = -p[1] / w[1];
        r.ellipse_point = axpy(p, r.t, w);
        r.hyperbola_point = axpy(p, r.tau, w);
        for (std::size_t k = 0; k < order.size(); ++k)
            if (order[k] == prof) radii[k] = std::move(r);
    }
    return radii;
}

struct StaudeLength {
    double closed_form;    // 2a + sqrt(a^2 - c^2) - sqrt(a^2 - b^2)
    double assembled;      // sum of the two minimized broken lines
    double leg_pe, leg_eg2;    // |PE| and |E G2| at the ellipse minimizer
    double leg_ph, leg_hf1;    // |PH| and |H F1| at the hyperbola minimizer
    Vec ellipse_point;
    Vec hyperbola_point;
    int hyperbola_branch;      // branch of the winning hyperbola minimizer
};

/// String length of the wire model: the shortest broken line F1 H P E G2
/// over H on the focal hyperbola and E on the focal ellipse equals
/// 2a + sqrt(a^2-c^2) - sqrt(a^2-b^2) for every P on the ellipsoid.
inline StaudeLength staude_length(const FocalConics& fc, const Vec& p, double tol_on = 1e-10,
                                  int grid = 1024, double tol = 1e-10) {
    ConfocalSystem sys = fc.system();
    CentralQuadric base(sys.base_sq_axes);
    if (std::fabs(evaluate(base, p)) > tol_on)
        throw Error(ErrorKind::OffSurface, "point is not on the base ellipsoid");

    Vec g2 = fc.ellipse_focus_pos();
    Vec f1 = fc.hyperbola_focus_neg();

    BrokenLineMin em = minimize_broken_line(fc, g2, p, FocalConicKind::Ellipse, grid, tol);
    BrokenLineMin hp = minimize_broken_line(fc, f1, p, FocalConicKind::HyperbolaPos, grid, tol);
    BrokenLineMin hn = minimize_broken_line(fc, f1, p, FocalConicKind::HyperbolaNeg, grid, tol);
    const BrokenLineMin& hm = hp.length <= hn.length ? hp : hn;

    StaudeLength out;
    out.closed_form = 2.0 * fc.a + std::sqrt(fc.ae_sq()) - std::sqrt(fc.ah_sq());
    out.assembled = em.length + hm.length;
    out.leg_pe = distance(p, em.conic_point);
    out.leg_eg2 = distance(em.conic_point, g2);
    out.leg_ph = distance(p, hm.conic_point);
    out.leg_hf1 = distance(hm.conic_point, f1);
    out.ellipse_point = em.conic_point;
    out.hyperbola_point = hm.conic_point;
    out.hyperbola_branch = hp.length <= hn.length ? 1 : -1;
    return out;
}

struct ConicAxes2D {
    std::array<Vec, 2> directions;    // unit, major first
    std::array<double, 2> lengths;    // paired with directions
    bool tie_break = false;           // circle: any orthonormal pair
};

namespace detail {

inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }
inline Vec perp2(const Vec& a) { return {-a[1], a[0]}; }

inline bool axes_fit_pair(const Vec& p, const Vec& q, const Vec& u, const Vec& w, double lu,
                          double lw) {
    for (const Vec* x : {&p, &q}) {
        double cu = dot(*x, u) / lu;
        double cw = dot(*x, w) / lw;
        if (std::fabs(cu * cu + cw * cw - 1.0) > 1e-6) return false;
    }
    return true;
}

} // namespace detail

/// Axes of the ellipse with center O and conjugate semi-diameter endpoints
/// P, Q: M and L sit on the normal through P at distance |OQ|, the axes
/// bisect the angle LOM, and the parallels through P to the bisectors cut
/// the line OM at distances equal to the semi-axis lengths.
inline ConicAxes2D rytz_chasles_2d(const Vec& o, const Vec& pt, const Vec& qt) {
    if (o.size() != 2 || pt.size() != 2 || qt.size() != 2)
        throw Error(ErrorKind::DimensionMismatch, "construction is two-dimensional");
    Vec p = sub(pt, o), q = sub(qt, o);
    double np = norm(p), nq = norm(q);
    if (std::fabs(detail::cross2(p, q)) <= 1e-12 * np * nq)
        throw Error(ErrorKind::DegeneratePair, "conjugate diameters are collinear");

    ConicAxes2D out;
    if (std::fabs(dot(p, q)) <= 1e-9 * np * nq) {
        // A perpendicular conjugate pair already lies along the axes.
        out.directions = {scale(p, 1.0 / np), scale(q, 1.0 / nq)};
        out.lengths = {np, nq};
        out.tie_break = std::fabs(np - nq) <= 1e-9 * std::max(np, nq);
        if (out.lengths[1] > out.lengths[0]) {
            std::swap(out.lengths[0], out.lengths[1]);
            std::swap(out.directions[0], out.directions[1]);
        }
        fix_sign(out.directions[0]);
        fix_sign(out.directions[1]);
        return out;
    }

    Vec rhat = detail::perp2(scale(q, 1.0 / nq));
    Vec m = axpy(p, nq, rhat);
    Vec l = axpy(p, -nq, rhat);
    double s = std::max(np, nq);

    if (norm(m) <= 1e-9 * s || norm(l) <= 1e-9 * s) {
        Vec ph = scale(p, 1.0 / np);
        out.directions = {ph, detail::perp2(ph)};
        out.lengths = {np, nq};
        out.tie_break = true;
        if (out.lengths[1] > out.lengths[0]) {
            std::swap(out.lengths[0], out.lengths[1]);
            std::swap(out.directions[0], out.directions[1]);
        }
        return out;
    }

    Vec u = normalized(add(normalized(m), normalized(l)));
    Vec w = detail::perp2(u);

    auto meet_om = [&](const Vec& dir) {
        double den = detail::cross2(dir, m);
        if (std::fabs(den) <= 1e-12 * norm(m))
            throw Error(ErrorKind::DegeneratePair, "construction line is parallel to OM");
        double alpha = -detail::cross2(p, m) / den;
        return norm(axpy(p, alpha, dir));
    };
    double len_t = meet_om(u);     // |OT|, the semi-axis along w
    double len_p = meet_om(w);     // |OP'|, the semi-axis along u

    double lu = len_p, lw = len_t;
    if (!detail::axes_fit_pair(p, q, u, w, lu, lw)) {
        std::swap(lu, lw);
        if (!detail::axes_fit_pair(p, q, u, w, lu, lw))
            throw Error(ErrorKind::DegeneratePair, "constructed axes do not carry the pair");
    }
    out.directions = {u, w};
    out.lengths = {lu, lw};
    if (out.lengths[1] > out.lengths[0]) {
        std::swap(out.lengths[0], out.lengths[1]);
        std::swap(out.directions[0], out.directions[1]);
    }
    fix_sign(out.directions[0]);
    fix_sign(out.directions[1]);
    return out;
}

struct ConicAxes3D {
    std::array<Vec, 3> directions;    // unit, by decreasing length
    std::array<double, 3> lengths;
};

/// Axes of the ellipsoid with center O and conjugate semi-diameter endpoints
/// P, Q, R.  The frame at P comes from the section through O, Q, R; the two
/// focal cones of the dual system at O intersect in four edges whose sums
/// and differences give the principal directions, and the planes through P
/// parallel to the principal planes cut the semi-axis lengths off the edges.
inline ConicAxes3D chasles_3d(const Vec& o, const Vec& pt, const Vec& qt, const Vec& rt) {
    if (o.size() != 3 || pt.size() != 3 || qt.size() != 3 || rt.size() != 3)
        throw Error(ErrorKind::DimensionMismatch, "construction is three-dimensional");
    Vec p = sub(pt, o), q = sub(qt, o), r = sub(rt, o);
    double vol = std::fabs(det({p, q, r}));
    if (vol <= 1e-9 * norm(p) * norm(q) * norm(r))
        throw Error(ErrorKind::DegenerateTriple, "conjugate diameters are nearly dependent");

    // Frame at P: normal of the section plane OQR plus the section axes.
    Vec n1 = normalized(cross3(q, r));
    Vec e1 = normalized(q);
    Vec e2 = normalized(axpy(r, -dot(e1, r), e1));
    Vec q2{dot(q, e1), dot(q, e2)};
    Vec r2{dot(r, e1), dot(r, e2)};
    ConicAxes2D section = rytz_chasles_2d({0.0, 0.0}, q2, r2);
    if (section.tie_break)
        throw Error(ErrorKind::UnconstructibleConfiguration, "section through O, Q, R is a circle");
    Vec n3 = normalized(frame_apply({e1, e2}, section.directions[0]));    // major
    Vec n2 = normalized(frame_apply({e1, e2}, section.directions[1]));    // minor
    double d2 = section.lengths[1] * section.lengths[1];
    double d3 = section.lengths[0] * section.lengths[0];

    Cols frame{n1, n2, n3};
    Vec eta = frame_coords(frame, scale(p, -1.0));    // O - P in the frame at P

    // The first component is the tangent-plane support and never vanishes;
    // the other two vanish exactly when P sits on a principal plane.
    int zeros = (std::fabs(eta[1]) <= 1e-7 * norm(eta) ? 1 : 0) +
                (std::fabs(eta[2]) <= 1e-7 * norm(eta) ? 1 : 0);
    if (zeros == 2) {
        // P is a vertex: the frame is the axis frame and the section holds
        // the other two semi-axes.
        ConicAxes3D out;
        out.directions = {n1, n3, n2};
        out.lengths = {norm(p), section.lengths[0], section.lengths[1]};
        for (int i = 0; i < 3; ++i) fix_sign(out.directions[i]);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (out.lengths[j] > out.lengths[i]) {
                    std::swap(out.lengths[i], out.lengths[j]);
                    std::swap(out.directions[i], out.directions[j]);
                }
        return out;
    }
    if (zeros == 1)
        throw Error(ErrorKind::UnconstructibleConfiguration,
                    "P lies on a principal plane; edge recovery degenerates");

    std::array<Vec, 4> edge_dirs;
    try {
        double gauge = d3 + std::max(norm_sq(p), 0.5 * d3);
        ConfocalSystem dual({gauge, gauge - d2, gauge - d3});
        Cone c2 = focal_cone(dual, eta, 2);
        Cone c3 = focal_cone(dual, eta, 3);
        std::vector<Transversal> edges = common_edges({c2, c3});
        for (std::size_t i = 0; i < 4; ++i)
            edge_dirs[i] =
                normalized(frame_apply(frame, frame_apply(c2.frame, edges[i].direction)));
    } catch (const Error& err) {
        throw Error(ErrorKind::UnconstructibleConfiguration,
                    std::string("dual focal cones do not intersect cleanly (") + err.what() + ")");
    }

    // Each pair d_1 +/- d_j (j = 2..4) contains one principal direction;
    // the right combination is the mutually orthogonal one.
    std::array<std::array<Vec, 2>, 3> cands;
    for (int j = 0; j < 3; ++j) {
        Vec sum = add(edge_dirs[0], edge_dirs[j + 1]);
        Vec dif = sub(edge_dirs[0], edge_dirs[j + 1]);
        if (norm(sum) < 1e-8 || norm(dif) < 1e-8)
            throw Error(ErrorKind::UnconstructibleConfiguration, "edges coincide");
        cands[j] = {normalized(sum), normalized(dif)};
    }
    std::array<Vec, 3> axes;
    double best = 1e30;
    for (int mask = 0; mask < 8; ++mask) {
        const Vec& w0 = cands[0][mask & 1];
        const Vec& w1 = cands[1][(mask >> 1) & 1];
        const Vec& w2 = cands[2][(mask >> 2) & 1];
        double worst = std::max({std::fabs(dot(w0, w1)), std::fabs(dot(w0, w2)),
                                 std::fabs(dot(w1, w2))});
        if (worst < best) {
            best = worst;
            axes = {w0, w1, w2};
        }
    }
    if (best > 1e-6)
        throw Error(ErrorKind::UnconstructibleConfiguration,
                    "no orthogonal triple among the edge combinations");

    ConicAxes3D out;
    for (int j = 0; j < 3; ++j) {
        double num = dot(axes[j], p);    // plane through P with normal axes[j]
        double acc = 0;
        double lo = 1e300, hi = 0;
        for (const Vec& d : edge_dirs) {
            double den = dot(axes[j], d);
            if (std::fabs(den) < 1e-9)
                throw Error(ErrorKind::UnconstructibleConfiguration,
                            "edge runs parallel to a principal plane");
            double len = std::fabs(num / den);
            acc += len;
            lo = std::min(lo, len);
            hi = std::max(hi, len);
        }
        double len = acc / 4.0;
        if (hi - lo > 1e-6 * (1.0 + len))
            throw Error(ErrorKind::UnconstructibleConfiguration,
                        "edges disagree on an intercept length");
        fix_sign(axes[j]);
        out.directions[j] = axes[j];
        out.lengths[j] = len;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (out.lengths[j] > out.lengths[i]) {
                std::swap(out.lengths[i], out.lengths[j]);
                std::swap(out.directions[i], out.directions[j]);
            }
    return out;
}

} // namespace confocal
