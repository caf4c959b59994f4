#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "confocal/cone.hpp"
#include "confocal/elliptic.hpp"
#include "confocal/error.hpp"
#include "confocal/numerics.hpp"
#include "confocal/quadric.hpp"
#include "confocal/rng.hpp"
#include "confocal/staude.hpp"
#include "confocal/vec.hpp"

namespace confocal {

/// Strictly decreasing positive squared semi-axes with comfortable gaps.
inline Vec random_base_sq_axes(int n, Rng& rng) {
    Vec a2(n);
    double top = 4.0 + 6.0 * rng.uniform();
    a2[0] = top;
    for (int i = 1; i < n; ++i) a2[i] = a2[i - 1] * (0.35 + 0.4 * rng.uniform());
    return a2;
}

/// Point on a central quadric with at least one positive squared axis:
/// coordinates over negative axes are drawn freely, the remaining mass is
/// spread over the positive ones.
inline Vec sample_quadric_point(const CentralQuadric& quad, Rng& rng) {
    int n = quad.dim();
    Vec x(n, 0.0);
    double rhs = 1.0;
    std::vector<int> pos;
    for (int i = 0; i < n; ++i) {
        double s = quad.signed_sq_axes[i];
        if (s > 0) {
            pos.push_back(i);
        } else {
            x[i] = rng.gaussian() * std::sqrt(-s) * 0.7;
            rhs += x[i] * x[i] / (-s);
        }
    }
    if (pos.empty()) throw Error(ErrorKind::InvalidInput, "quadric has no positive axis");
    Vec w(pos.size());
    double tot = 0;
    for (double& v : w) {
        v = 0.05 + rng.uniform();
        tot += v;
    }
    for (std::size_t j = 0; j < pos.size(); ++j) {
        int i = pos[j];
        double mag = std::sqrt(w[j] / tot * rhs * quad.signed_sq_axes[i]);
        x[i] = rng.sign() * mag;
    }
    return x;
}

/// Point with every coordinate bounded away from zero, uniformly scaled to
/// sit strictly outside the base ellipsoid.
inline Vec sample_exterior_point(const ConfocalSystem& sys, Rng& rng) {
    int n = sys.dim();
    Vec x(n);
    for (int i = 0; i < n; ++i) {
        double u = 0.2 + std::fabs(rng.gaussian());
        x[i] = rng.sign() * u * std::sqrt(sys.base_sq_axes[i]);
    }
    double s = 0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i] / sys.base_sq_axes[i];
    double grow = std::sqrt((1.3 + 2.0 * rng.uniform()) / s);
    return scale(x, grow);
}

/// Point on the base ellipsoid with every coordinate bounded away from the
/// coordinate planes.
inline Vec sample_surface_point(const ConfocalSystem& sys, Rng& rng, double min_rel = 0.05) {
    CentralQuadric base(sys.base_sq_axes);
    for (int tries = 0; tries < 256; ++tries) {
        Vec x = sample_quadric_point(base, rng);
        bool ok = true;
        for (int i = 0; i < sys.dim(); ++i)
            if (std::fabs(x[i]) < min_rel * std::sqrt(sys.base_sq_axes[i])) ok = false;
        if (ok) return x;
    }
    throw Error(ErrorKind::NonConvergence, "could not sample a point off the coordinate planes");
}

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double worst_residual = 0.0;
};

struct VerifyOptions {
    unsigned long long seed = 0;
    int max_dim = 6;
    int cases_per_dim = 24;
    std::vector<std::string> only;    // empty: run everything
    bool self_test_fail = false;      // perturb one identity to prove failure detection
};

namespace detail {

class SuiteRun {
  public:
    explicit SuiteRun(std::string name) { result_.name = std::move(name); }

    void check(double residual, double tol) {
        ++result_.cases;
        if (!std::isfinite(residual) || residual > tol) ++result_.failures;
        if (std::isfinite(residual))
            result_.worst_residual = std::max(result_.worst_residual, residual);
        else
            result_.worst_residual = std::numeric_limits<double>::infinity();
    }
    void check_true(bool ok) {
        ++result_.cases;
        if (!ok) ++result_.failures;
    }
    void fail(const std::string&) {
        ++result_.cases;
        ++result_.failures;
    }
    SuiteResult take() { return result_; }

  private:
    SuiteResult result_;
};

inline unsigned long long suite_seed(unsigned long long seed, unsigned long long salt) {
    return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (salt + 1));
}

inline void run_numerics(SuiteRun& run, const VerifyOptions& opt) {
    for (int c = 0; c < 40; ++c) {
        Rng rng = Rng::for_case(suite_seed(opt.seed, 1), c);

        double r1 = -3.0 + rng.uniform() * 2.0;
        double r2 = r1 + 0.5 + rng.uniform() * 2.0;
        double r3 = r2 + 0.5 + rng.uniform() * 2.0;
        auto poly = [&](double x) { return (x - r1) * (x - r2) * (x - r3); };
        double found = bracketed_root(poly, Bracket{(r1 + r2) / 2, (r2 + r3) / 2, 1e-14});
        run.check(std::fabs(found - r2) / std::max(1.0, std::fabs(r2)), 1e-10);

        int n = 3 + rng.uniform_int(3);
        Vec eig(n);
        for (double& v : eig) v = -4.0 + 8.0 * rng.uniform();
        Cols q = random_orthonormal(n, rng);
        SymmetricMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k) s += q[k][i] * eig[k] * q[k][j];
                m.set(i, j, s);
            }
        EigenSystem es = jacobi_eigen(m);
        Vec sorted = eig;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double worst = 0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst,
                             std::fabs(es.eigenvalues[i] - sorted[i]) / std::max(1.0, std::fabs(sorted[i])));
        run.check(worst, 1e-9);

        Cols basis = random_orthonormal(n, rng);
        Cols cols(basis.begin(), basis.end() - 1);
        Vec null = null_space_1d(cols);
        run.check(1.0 - std::fabs(dot(null, basis.back())), 1e-10);

        Vec vals(n);
        for (double& v : vals) v = -2.0 + 4.0 * rng.uniform();
        Vec coeff{1.0};
        for (double v : vals) {
            Vec next(coeff.size() + 1, 0.0);
            for (std::size_t i = 0; i < coeff.size(); ++i) {
                next[i] += coeff[i] * v;
                next[i + 1] += coeff[i];
            }
            coeff = next;
        }
        double worst_e = 0;
        for (int k = 1; k <= n; ++k) {
            double want = coeff[n - k];
            double got = elementary_symmetric(vals, k);
            worst_e = std::max(worst_e, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
        }
        run.check(worst_e, 1e-12);

        double ctr = -1.0 + 2.0 * rng.uniform();
        auto bowl = [&](double x) { return (x - ctr) * (x - ctr) + 0.25; };
        MinResult mr = minimize_1d(bowl, Domain1D{ctr - 3.0, ctr + 5.0, false});
        run.check(std::fabs(mr.arg - ctr), 1e-7);
    }
}

inline void run_apollonius(SuiteRun& run, const VerifyOptions& opt) {
    int c = 0;
    for (int n = 2; n <= opt.max_dim; ++n) {
        for (int rep = 0; rep < opt.cases_per_dim; ++rep) {
            Rng rng = Rng::for_case(suite_seed(opt.seed, 2), c++);
            Vec a2 = random_base_sq_axes(n, rng);
            CentralQuadric quad(a2);
            ConjugateSystem sys = random_conjugate_system(quad, rng);
            double worst = 0;
            for (int k = 1; k <= n; ++k) {
                double want = elementary_symmetric(a2, k);
                double got = apollonius_invariant(sys, k);
                worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
            }
            run.check(worst, 1e-9);

            double diag_sum = 0;
            for (const Vec& d : sys.diameters) diag_sum += norm_sq(d);
            double axis_sum = 0;
            for (double v : a2) axis_sum += v;
            run.check(std::fabs(diag_sum - axis_sum) / axis_sum, 1e-10);
        }
    }
}

inline void run_confocal(SuiteRun& run, const VerifyOptions& opt) {
    int c = 0;
    for (int n = 2; n <= opt.max_dim; ++n) {
        for (int rep = 0; rep < opt.cases_per_dim; ++rep) {
            Rng rng = Rng::for_case(suite_seed(opt.seed, 3), c++);
            ConfocalSystem sys(random_base_sq_axes(n, rng));
            Vec x = sample_exterior_point(sys, rng);

            EllipticCoordinates ec = elliptic_coordinates(sys, x);
            bool interlaced = ec.lambdas[0] < sys.base_sq_axes[n - 1];
            for (int j = 1; j < n; ++j)
                interlaced = interlaced && ec.lambdas[j] > sys.base_sq_axes[n - j] &&
                             ec.lambdas[j] < sys.base_sq_axes[n - j - 1];
            run.check_true(interlaced);

            AxesTable table = axes_table(sys, ec);
            Vec back = point_from_axes_table(table, std::vector<int>(n, 1));
            double worst = 0;
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, std::fabs(back[i] - std::fabs(x[i])) /
                                            std::max(1.0, std::fabs(x[i])));
            if (opt.self_test_fail && c == 1) worst += 1e-3;
            run.check(worst, 1e-9);

            NormCheck nc = norm_identity_check(sys, ec);
            run.check(std::fabs(nc.norm_sq - nc.diag_sum) / std::max(1.0, nc.norm_sq), 1e-9);

            FrameAtPoint fr = frame_at_point(sys, ec);
            double ortho = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    ortho = std::max(ortho, std::fabs(dot(fr.unit_normals[i], fr.unit_normals[j])));
            run.check(ortho, 1e-10);

            double dual_worst = 0;
            for (int i = 0; i < n; ++i) {
                double s = 0;
                for (int j = 0; j < n; ++j)
                    s += fr.support[j] * fr.support[j] / table.entries[i][j];
                dual_worst = std::max(dual_worst, std::fabs(s - 1.0));
            }
            run.check(dual_worst, 1e-9);

            Vec closed = support_sq_closed_form(table);
            double sup_worst = 0;
            for (int j = 0; j < n; ++j)
                sup_worst = std::max(sup_worst, std::fabs(closed[j] - fr.support[j] * fr.support[j]) /
                                                    std::max(1e-12, closed[j]));
            run.check(sup_worst, 1e-9);

            Vec h(n);
            for (double& v : h) v = rng.gaussian() * 0.4;
            if (norm(h) < 1e-3) h[0] = 0.5;
            double lam = sys.base_sq_axes[n - 1] * (0.2 + 0.6 * rng.uniform());
            try {
                TangencyLocus tl = tangency_locus_product(sys, h, lam);
                CentralQuadric member = confocal_quadric(sys, lam);
                run.check(std::fabs(evaluate(member, tl.touch_point)), 1e-9);
                TangencyLocus t0 = tangency_locus_product(sys, h, 0.0);
                run.check(std::fabs(tl.product - t0.product) / std::max(1.0, t0.product), 1e-9);

                double lam_star = tangent_confocal_parameter(sys, Hyperplane{h});
                TangencyLocus ts = tangency_locus_product(sys, h, lam_star);
                double plane_res = -1.0;
                for (int i = 0; i < n; ++i) plane_res += h[i] * ts.touch_point[i];
                run.check(std::fabs(plane_res), 1e-9);
                PoleLine line = pole_line(sys, Hyperplane{h});
                Vec want = line.point_at(lam_star);
                run.check(distance(want, ts.touch_point) / std::max(1.0, norm(want)), 1e-9);
            } catch (const Error&) {
                run.check_true(true);
            }

            Vec u(n);
            for (double& v : u) v = 0.3 + rng.uniform();
            double tau = 0.3 * rng.uniform() / sys.base_sq_axes[0];
            try {
                Vec pt = apollonian_curve_point(sys.base_sq_axes, u, tau);
                run.check(apollonian_curve_residual(sys.base_sq_axes, u, pt), 1e-9);
            } catch (const Error&) {
                run.check_true(true);
            }
        }
    }
}

inline void run_cones(SuiteRun& run, const VerifyOptions& opt) {
    int c = 0;
    for (int n = 3; n <= std::min(opt.max_dim, 5); ++n) {
        for (int rep = 0; rep < opt.cases_per_dim; ++rep) {
            Rng rng = Rng::for_case(suite_seed(opt.seed, 4), c++);
            ConfocalSystem sys(random_base_sq_axes(n, rng));
            Vec apex = sample_exterior_point(sys, rng);

            Cone tc = tangent_cone_canonical(sys, apex);
            QuadraticSurface qs = tangent_cone_form(CentralQuadric(sys.base_sq_axes), apex);
            EllipticCoordinates ec = elliptic_coordinates(sys, apex);
            double off = 0;
            double scale_m = qs.M.max_abs();
            Vec conj_diag(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    double s = 0;
                    for (int r = 0; r < n; ++r)
                        for (int t = 0; t < n; ++t)
                            s += tc.frame[i][r] * qs.M.at(r, t) * tc.frame[j][t];
                    if (i == j)
                        conj_diag[i] = s;
                    else
                        off = std::max(off, std::fabs(s));
                }
            run.check(off / scale_m, 1e-8);
            // The conjugated diagonal times (-lambda^i) is the same constant
            // for every i.
            double ref = conj_diag[0] * (-ec.lambdas[0]);
            double diag_worst = 0;
            for (int i = 1; i < n; ++i)
                diag_worst = std::max(diag_worst, std::fabs(conj_diag[i] * (-ec.lambdas[i]) - ref) /
                                                      std::fabs(ref));
            run.check(diag_worst, 1e-7);

            std::vector<Cone> focal;
            for (int k = 2; k <= n; ++k) focal.push_back(focal_cone(sys, apex, k));
            double member_worst = 0;
            for (int k = 2; k <= n; ++k) {
                FocalQuadric fq = focal_quadric(sys, k);
                Rng sub = Rng::for_case(suite_seed(opt.seed, 40), c * 8 + k);
                Vec yk = sample_quadric_point(fq.quadric, sub);
                Vec y = embed_focal_point(fq, yk);
                member_worst = std::max(member_worst, std::fabs(cone_eval(focal[k - 2], y)));
            }
            run.check(member_worst, 1e-8);

            std::vector<Transversal> edges = common_edges(focal);
            double cone_res = 0, oracle_res = 0, sum_res = 0;
            for (const Transversal& e : edges) {
                double ssum = 0;
                for (double q : e.sq_cosines) ssum += q;
                sum_res = std::max(sum_res, std::fabs(ssum - 1.0));
                for (const Cone& cn : focal) {
                    Vec pt = axpy(cn.apex, 1.0, frame_apply(cn.frame, e.direction));
                    cone_res = std::max(cone_res, std::fabs(cone_eval(cn, pt)));
                }
                Cols cols;
                for (const Cone& cn : focal) {
                    Vec col(n);
                    for (int i = 0; i < n; ++i) col[i] = 1.0 / cn.signed_sq_axes[i];
                    cols.push_back(col);
                }
                Vec nulls = null_space_1d(cols);
                double nsum = 0;
                for (double v : nulls) nsum += v;
                double worst = 0;
                for (int i = 0; i < n; ++i)
                    worst = std::max(worst, std::fabs(nulls[i] / nsum - e.sq_cosines[i]));
                oracle_res = std::max(oracle_res, worst);
            }
            run.check(sum_res, 1e-10);
            run.check(cone_res, 1e-8);
            run.check(oracle_res, 1e-8);

            double t = intercept_length(sys, apex, edges[0]);
            double want_t = std::sqrt(sys.base_sq_axes[0] - ec.lambdas[0]);
            run.check(std::fabs(t - want_t) / want_t, 1e-8);

            Vec first(n);
            for (int i = 0; i < n; ++i) first[i] = -3.0 + 6.0 * rng.uniform();
            Vec shifts(n - 2);
            bool distinct = true;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (std::fabs(first[i] - first[j]) < 1e-3) distinct = false;
            for (int k = 0; k < n - 2; ++k) shifts[k] = 0.5 + 2.0 * rng.uniform() + 3.0 * k;
            if (distinct)
                run.check(std::fabs(identity_sum(first, shifts) - 1.0), 1e-9);
            else
                run.check_true(true);
        }
    }
    ConfocalSystem sys941(Vec{9.0, 4.0, 1.0});
    for (int rep = 0; rep < 8; ++rep) {
        Rng rng = Rng::for_case(suite_seed(opt.seed, 41), rep);
        double v = rng.sign() * (0.2 + 1.3 * rng.uniform());
        double sgn = rng.sign();
        Vec hp{sgn * std::sqrt(5.0) * std::cosh(v), 1e-7, -std::sqrt(3.0) * std::sinh(v)};
        run.check_true(right_cone_locus_check(sys941, hp));
        Vec gen = sample_exterior_point(sys941, rng);
        run.check_true(!right_cone_locus_check(sys941, gen));
    }
}

inline void run_staude(SuiteRun& run, const VerifyOptions& opt) {
    FocalConics fc(3.0, 2.0, 1.0);
    double expect = 2.0 * fc.a + std::sqrt(fc.ae_sq()) - std::sqrt(fc.ah_sq());
    for (int c = 0; c < 6; ++c) {
        Rng rng = Rng::for_case(suite_seed(opt.seed, 5), c);
        Vec p = sample_surface_point(fc.system(), rng);
        StaudeLength sl = staude_length(fc, p);
        run.check(std::fabs(sl.assembled - expect), 1e-6);

        BrokenLineMin em =
            minimize_broken_line(fc, fc.ellipse_focus_pos(), p, FocalConicKind::Ellipse);
        Vec tang = fc.ellipse_tangent(em.param);
        Vec u1 = normalized(sub(fc.ellipse_focus_pos(), em.conic_point));
        Vec u2 = normalized(sub(p, em.conic_point));
        Vec th = normalized(tang);
        double a1 = std::acos(std::min(1.0, std::fabs(dot(u1, th))));
        double a2 = std::acos(std::min(1.0, std::fabs(dot(u2, th))));
        run.check(std::fabs(a1 - a2), 1e-6);

        double v1 = 0.2 + rng.uniform(), v2 = 0.3 + rng.uniform();
        Vec h1 = fc.hyperbola_point(v1, 1), h2 = fc.hyperbola_point(v2, 1);
        double ref = hh_difference(fc, h1, h2, fc.ellipse_point(0.3));
        double spread = 0;
        for (int k = 0; k < 32; ++k) {
            double u = 2.0 * std::acos(-1.0) * (k + 0.5) / 32.0;
            spread = std::max(spread, std::fabs(hh_difference(fc, h1, h2, fc.ellipse_point(u)) - ref));
        }
        run.check(spread, 1e-9);

        std::vector<FocalRadius> radii = focal_radii(fc, p);
        double mem = 0;
        for (const FocalRadius& r : radii) {
            mem = std::max(mem, fc.ellipse_residual(r.ellipse_point));
            mem = std::max(mem, fc.hyperbola_residual(r.hyperbola_point));
        }
        run.check(mem, 1e-8);

        Vec a2d = random_base_sq_axes(2, rng);
        CentralQuadric q2(a2d);
        ConjugateSystem cs2 = random_conjugate_system(q2, rng);
        ConicAxes2D ax2 = rytz_chasles_2d({0.0, 0.0}, cs2.diameters[0], cs2.diameters[1]);
        double worst2 = std::max(std::fabs(ax2.lengths[0] - std::sqrt(a2d[0])) / std::sqrt(a2d[0]),
                                 std::fabs(ax2.lengths[1] - std::sqrt(a2d[1])) / std::sqrt(a2d[1]));
        run.check(worst2, 1e-9);

        Vec a3d = random_base_sq_axes(3, rng);
        CentralQuadric q3(a3d);
        ConjugateSystem cs3 = random_conjugate_system(q3, rng);
        try {
            ConicAxes3D ax3 = chasles_3d({0.0, 0.0, 0.0}, cs3.diameters[0], cs3.diameters[1],
                                         cs3.diameters[2]);
            double worst3 = 0;
            for (int i = 0; i < 3; ++i)
                worst3 = std::max(worst3, std::fabs(ax3.lengths[i] - std::sqrt(a3d[i])) /
                                              std::sqrt(a3d[i]));
            run.check(worst3, 1e-7);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UnconstructibleConfiguration)
                run.check_true(true);
            else
                run.fail(e.what());
        }
    }
}

} // namespace detail

inline std::vector<std::string> verify_suite_names() {
    return {"numerics", "apollonius", "confocal", "cones", "staude"};
}

/// Run the seeded invariant suites; a suite fails when any case exceeds its
/// tolerance.
inline std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
    std::vector<SuiteResult> out;
    auto wanted = [&](const std::string& name) {
        if (opt.only.empty()) return true;
        return std::find(opt.only.begin(), opt.only.end(), name) != opt.only.end();
    };
    for (const std::string& name : verify_suite_names()) {
        if (!wanted(name)) continue;
        detail::SuiteRun run(name);
        if (name == "numerics") detail::run_numerics(run, opt);
        if (name == "apollonius") detail::run_apollonius(run, opt);
        if (name == "confocal") detail::run_confocal(run, opt);
        if (name == "cones") detail::run_cones(run, opt);
        if (name == "staude") detail::run_staude(run, opt);
        out.push_back(run.take());
    }
    return out;
}

} // namespace confocal
