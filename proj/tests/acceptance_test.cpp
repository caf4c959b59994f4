#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "confocal/confocal.hpp"

using namespace confocal;

namespace {

struct Criterion {
    bool pass = true;
    double worst = 0.0;
    std::string note;

    void check(double residual, double tol) {
        worst = std::max(worst, residual);
        if (!(residual <= tol)) pass = false;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            if (note.empty()) note = why;
        }
    }
};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// ---------------------------------------------------------------- criteria

Criterion c01_apollonius() {
    Criterion c;
    for (int n = 2; n <= 6; ++n)
        for (int rep = 0; rep < 100; ++rep) {
            Rng rng = Rng::for_case(101, n * 1000 + rep);
            Vec a2 = random_base_sq_axes(n, rng);
            ConjugateSystem sys = random_conjugate_system(CentralQuadric(a2), rng);
            for (int k = 1; k <= n; ++k)
                c.check(rel_err(apollonius_invariant(sys, k), elementary_symmetric(a2, k)),
                        1e-9);
        }
    return c;
}

Vec random_generic_point(const Vec& a2, Rng& rng) {
    Vec x(a2.size());
    for (std::size_t i = 0; i < a2.size(); ++i)
        x[i] = rng.sign() * (0.1 + 1.5 * rng.uniform()) * std::sqrt(a2[i]);
    return x;
}

Criterion c02_roundtrip() {
    Criterion c;
    for (int n = 2; n <= 6; ++n)
        for (int rep = 0; rep < 200; ++rep) {
            Rng rng = Rng::for_case(102, n * 1000 + rep);
            ConfocalSystem sys(random_base_sq_axes(n, rng));
            Vec x = random_generic_point(sys.base_sq_axes, rng);
            EllipticCoordinates ec = elliptic_coordinates(sys, x);

            c.require(ec.lambdas[0] < sys.an_sq(), "first coordinate below a_n^2");
            for (int j = 1; j < n; ++j) {
                c.require(ec.lambdas[j] > sys.base_sq_axes[n - j],
                          "interlacing lower bound violated");
                c.require(ec.lambdas[j] < sys.base_sq_axes[n - j - 1],
                          "interlacing upper bound violated");
            }

            std::vector<int> signs(n);
            for (int i = 0; i < n; ++i) signs[i] = x[i] < 0 ? -1 : 1;
            Vec back = point_from_axes_table(axes_table(sys, ec), signs);
            for (int i = 0; i < n; ++i)
                c.check(std::fabs(back[i] - x[i]) / std::fabs(x[i]), 1e-9);
        }
    return c;
}

Criterion c03_orthogonality() {
    Criterion c;
    for (int n = 2; n <= 6; ++n)
        for (int rep = 0; rep < 200; ++rep) {
            Rng rng = Rng::for_case(103, n * 1000 + rep);
            ConfocalSystem sys(random_base_sq_axes(n, rng));
            Vec x = random_generic_point(sys.base_sq_axes, rng);
            EllipticCoordinates ec = elliptic_coordinates(sys, x);
            FrameAtPoint fr = frame_at_point(sys, ec);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    c.check(std::fabs(dot(fr.unit_normals[i], fr.unit_normals[j])), 1e-10);
            NormCheck nc = norm_identity_check(sys, ec);
            c.check(std::fabs(nc.norm_sq - nc.diag_sum) / std::max(1.0, nc.norm_sq), 1e-9);
        }
    return c;
}

Criterion c04_dual_membership() {
    Criterion c;
    // hand-checked plane case: supports (1.6, 0.9) against the table rows
    ConfocalSystem plane({4, 1});
    EllipticCoordinates ec = elliptic_coordinates(plane, {std::sqrt(2.0), std::sqrt(2.0) / 2.0});
    Vec p2 = support_sq_closed_form(axes_table(plane, ec));
    c.check(std::fabs(p2[0] - 1.6), 1e-12);
    c.check(std::fabs(p2[1] - 0.9), 1e-12);
    c.check(std::fabs(p2[0] / 4.0 + p2[1] / 1.5 - 1.0), 1e-12);

    for (int n = 2; n <= 6; ++n)
        for (int rep = 0; rep < 100; ++rep) {
            Rng rng = Rng::for_case(104, n * 1000 + rep);
            ConfocalSystem sys(random_base_sq_axes(n, rng));
            Vec x = random_generic_point(sys.base_sq_axes, rng);
            DualSystem d = dual_system(sys, elliptic_coordinates(sys, x));
            for (int i = 0; i < n; ++i) {
                double s = 0;
                for (int j = 0; j < n; ++j)
                    s += d.origin_coords[j] * d.origin_coords[j] / d.quadric_axes[i][j];
                c.check(std::fabs(s - 1.0), 1e-9);
            }
        }
    return c;
}

Criterion c05_identity() {
    Criterion c;
    for (int rep = 0; rep < 500; ++rep) {
        Rng rng = Rng::for_case(105, rep);
        int n = 2 + static_cast<int>(rng.uniform_int(7));    // 2..8
        Vec first(n);
        bool ok = false;
        while (!ok) {
            for (double& v : first) v = rng.gaussian() * 4.0;
            ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (std::fabs(first[i] - first[j]) < 1e-3) ok = false;
        }
        Vec shifts(std::max(0, n - 2));
        for (double& s : shifts) s = rng.gaussian() * 3.0;
        c.check(std::fabs(identity_sum(first, shifts) - 1.0), 1e-9);
    }
    return c;
}

Criterion c06_common_edges() {
    Criterion c;
    for (int n = 3; n <= 5; ++n)
        for (int rep = 0; rep < 40; ++rep) {
            Rng rng = Rng::for_case(106, n * 1000 + rep);
            ConfocalSystem sys(random_base_sq_axes(n, rng));
            Vec x = random_generic_point(sys.base_sq_axes, rng);

            std::vector<Cone> cones;
            for (int k = 2; k <= n; ++k) cones.push_back(focal_cone(sys, x, k));
            std::vector<Transversal> edges = common_edges(cones);
            c.require(static_cast<int>(edges.size()) == (1 << (n - 1)), "edge count");

            const Vec& q = edges[0].sq_cosines;
            double sum = 0;
            for (double v : q) sum += v;
            c.check(std::fabs(sum - 1.0), 1e-10);

            // null-space oracle: rows 1/axes_k per cone, one normal direction
            Cols cols;
            for (const Cone& cn : cones) {
                Vec col(n);
                for (int i = 0; i < n; ++i) col[i] = 1.0 / cn.signed_sq_axes[i];
                cols.push_back(col);
            }
            Vec nulls = null_space_1d(cols);
            double nsum = 0;
            for (double v : nulls) nsum += v;
            for (int i = 0; i < n; ++i) c.check(std::fabs(nulls[i] / nsum - q[i]), 1e-8);

            for (const Transversal& e : edges)
                for (const Cone& cn : cones) {
                    Vec pt = axpy(cn.apex, 1.0, frame_apply(cn.frame, e.direction));
                    c.check(std::fabs(cone_eval(cn, pt)), 1e-8);
                }
        }
    return c;
}

Criterion c07_intercepts() {
    Criterion c;
    for (int rep = 0; rep < 50; ++rep) {
        Rng rng = Rng::for_case(107, rep);
        ConfocalSystem sys(random_base_sq_axes(3, rng));
        Vec x = random_generic_point(sys.base_sq_axes, rng);
        EllipticCoordinates ec = elliptic_coordinates(sys, x);
        double want = std::sqrt(sys.a1_sq() - ec.lambdas[0]);

        std::vector<Cone> cones{focal_cone(sys, x, 2), focal_cone(sys, x, 3)};
        for (const Transversal& e : common_edges(cones))
            c.check(rel_err(intercept_length(sys, x, e), want), 1e-8);
    }
    return c;
}

Criterion c08_tangent_cone() {
    Criterion c;
    int done = 0;
    for (int rep = 0; done < 50 && rep < 500; ++rep) {
        Rng rng = Rng::for_case(108, rep);
        ConfocalSystem sys(random_base_sq_axes(3, rng));
        Vec x = sample_exterior_point(sys, rng);
        bool off_plane = true;
        for (int i = 0; i < 3; ++i)
            if (std::fabs(x[i]) < 1e-6 * std::sqrt(sys.a1_sq())) off_plane = false;
        if (!off_plane) continue;
        ++done;

        CentralQuadric base(sys.base_sq_axes);
        QuadraticSurface form = tangent_cone_form(base, x);
        Cone cone = tangent_cone_canonical(sys, x);

        double norm_m = form.M.max_abs();
        double ref = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        s += cone.frame[i][a] * form.M.at(a, b) * cone.frame[j][b];
                if (i != j)
                    c.check(std::fabs(s) / norm_m, 1e-8);
                else if (i == 0)
                    ref = s * cone.signed_sq_axes[0];
                else
                    c.check(rel_err(s * cone.signed_sq_axes[i], ref), 1e-7);
            }
    }
    c.require(done == 50, "needed 50 exterior apices");
    return c;
}

Criterion c09_right_cones() {
    Criterion c;
    ConfocalSystem sys({9, 4, 1});
    double scale = sys.a1_sq();
    auto min_gap = [&](const Vec& p, int k) {
        EllipticCoordinates ec = elliptic_coordinates(sys, p);
        Vec axes(3);
        for (int i = 0; i < 3; ++i) axes[i] = sys.base_sq_axes[k - 1] - ec.lambdas[i];
        double gap = 1e300;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                gap = std::min(gap, std::fabs(axes[i] - axes[j]));
        return gap;
    };

    for (int rep = 0; rep < 20; ++rep) {
        Rng rng = Rng::for_case(109, rep);
        double v = rng.sign() * (0.2 + 1.3 * rng.uniform());
        Vec p{rng.sign() * std::sqrt(5.0) * std::cosh(v), 1e-7, -std::sqrt(3.0) * std::sinh(v)};
        double gap = min_gap(p, 3);
        c.check(gap / scale, 1e-7);
        c.require(right_cone_locus_check(sys, p, 3), "locus point not flagged");
    }
    double generic_min = 1e300;
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng = Rng::for_case(1090, rep);
        Vec p = random_generic_point(sys.base_sq_axes, rng);
        generic_min = std::min(generic_min, min_gap(p, 3));
        c.require(!right_cone_locus_check(sys, p, 3), "generic point flagged");
    }
    c.require(generic_min > 1e-3 * scale, "generic gap too small");
    return c;
}

Criterion c10_staude() {
    Criterion c;
    FocalConics fc(3, 2, 1);
    double expect = 6.0 + 2.0 * std::sqrt(2.0) - std::sqrt(5.0);
    double lo = 1e300, hi = -1e300;
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng = Rng::for_case(110, rep);
        Vec p = sample_surface_point(fc.system(), rng);
        double len = staude_length(fc, p).assembled;
        lo = std::min(lo, len);
        hi = std::max(hi, len);
        c.check(std::fabs(len - expect), 1e-6);
    }
    c.check(hi - lo, 1e-6);
    return c;
}

Criterion c11_reflection() {
    Criterion c;
    FocalConics fc(3, 2, 1);
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng = Rng::for_case(111, rep);
        Vec p = sample_surface_point(fc.system(), rng);
        BrokenLineMin em =
            minimize_broken_line(fc, fc.ellipse_focus_pos(), p, FocalConicKind::Ellipse);
        Vec tang = normalized(fc.ellipse_tangent(em.param));
        double ain = std::acos(std::fabs(dot(normalized(sub(p, em.conic_point)), tang)));
        double aout = std::acos(
            std::fabs(dot(normalized(sub(fc.ellipse_focus_pos(), em.conic_point)), tang)));
        c.check(std::fabs(ain - aout), 1e-6);
    }
    Rng rng = Rng::for_case(1110, 0);
    for (int rep = 0; rep < 4; ++rep) {
        int branch = rep % 2 == 0 ? 1 : -1;
        Vec h1 = fc.hyperbola_point(rng.sign() * (0.3 + rng.uniform()), branch);
        Vec h2 = fc.hyperbola_point(rng.sign() * (0.3 + rng.uniform()), branch);
        double ref = hh_difference(fc, h1, h2, fc.ellipse_point(0.05));
        for (int s = 0; s < 32; ++s) {
            double t = 2.0 * std::acos(-1.0) * (s + 0.5) / 32.0;
            c.check(std::fabs(hh_difference(fc, h1, h2, fc.ellipse_point(t)) - ref), 1e-9);
        }
    }
    return c;
}

Vec nearest_point_on_ellipsoid(const Vec& sq_axes, const Vec& u) {
    auto g = [&](double sig) {
        double t = -1.0;
        for (std::size_t i = 0; i < sq_axes.size(); ++i) {
            double d = sq_axes[i] + sig;
            t += sq_axes[i] * u[i] * u[i] / (d * d);
        }
        return t;
    };
    double hi = 1.0;
    while (g(hi) > 0 && hi < 1e12) hi *= 2.0;
    double sig = bracketed_root(g, Bracket(0.0, hi, 1e-15));
    Vec x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = sq_axes[i] * u[i] / (sq_axes[i] + sig);
    return x;
}

Criterion c12_apollonian() {
    Criterion c;
    Vec axes{9, 4, 1}, u{1.0, 1.0, 1.0};
    for (int rep = 0; rep < 10; ++rep) {
        double mu = 0.1 + 1.2 * rep / 9.0;
        Vec scaled(axes);
        for (double& s : scaled) s *= mu;
        Vec x = nearest_point_on_ellipsoid(scaled, u);
        c.check(apollonian_curve_residual(axes, u, x), 1e-6);
    }
    Vec center = apollonian_curve_point(axes, u, 0.0);
    for (double v : center) c.check(std::fabs(v), 1e-12);
    Vec end = apollonian_curve_point(axes, u, 1.0 / axes[0]);
    for (int i = 0; i < 3; ++i) c.check(std::fabs(end[i] - u[i]), 1e-12);
    return c;
}

Criterion c13_chasles() {
    Criterion c;
    for (int rep = 0; rep < 50; ++rep) {
        Rng rng = Rng::for_case(113, rep);
        Vec a2 = random_base_sq_axes(2, rng);
        ConjugateSystem sys = random_conjugate_system(CentralQuadric(a2), rng);
        ConicAxes2D ax = rytz_chasles_2d({0, 0}, sys.diameters[0], sys.diameters[1]);

        SymmetricMatrix m(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j <= i; ++j)
                m.set(i, j, sys.diameters[0][i] * sys.diameters[0][j] +
                                sys.diameters[1][i] * sys.diameters[1][j]);
        EigenSystem es = jacobi_eigen(m);
        for (int i = 0; i < 2; ++i) {
            c.check(rel_err(ax.lengths[i], std::sqrt(es.eigenvalues[i])), 1e-9);
            c.check(1.0 - std::fabs(dot(ax.directions[i], es.eigenvectors[i])), 1e-9);
        }
    }

    int done = 0;
    for (int rep = 0; done < 50 && rep < 500; ++rep) {
        Rng rng = Rng::for_case(1130, rep);
        Vec a2 = random_base_sq_axes(3, rng);
        ConjugateSystem sys = random_conjugate_system(CentralQuadric(a2), rng);
        ConicAxes3D ax;
        try {
            ax = chasles_3d({0, 0, 0}, sys.diameters[0], sys.diameters[1], sys.diameters[2]);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UnconstructibleConfiguration) continue;
            throw;
        }
        ++done;

        SymmetricMatrix m(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += sys.diameters[k][i] * sys.diameters[k][j];
                m.set(i, j, s);
            }
        EigenSystem es = jacobi_eigen(m);
        for (int i = 0; i < 3; ++i) {
            c.check(rel_err(ax.lengths[i], std::sqrt(es.eigenvalues[i])), 1e-7);
            c.check(1.0 - std::fabs(dot(ax.directions[i], es.eigenvectors[i])), 1e-7);
        }
    }
    c.require(done == 50, "needed 50 conjugate triples");
    return c;
}

std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(CONFOCAL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Criterion c14_cli() {
    Criterion c;
    auto a = run_cli("elliptic --axes 9,4,1 --point 1,1,0.5");
    auto b = run_cli("elliptic --axes 9,4,1 --point 1,1,0.5");
    c.require(a.first == 0 && b.first == 0, "elliptic command failed");
    c.require(a.second == b.second, "elliptic report not byte-identical");

    auto v1 = run_cli("verify --seed 77 --n 4 --samples 8");
    auto v2 = run_cli("verify --seed 77 --n 4 --samples 8");
    c.require(v1.first == 0, "verify command failed");
    c.require(v1.second == v2.second, "verify report not byte-identical");

    auto full = run_cli("verify");
    c.require(full.first == 0, "full verify suite reported failures");
    return c;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Criterion()> fn;
        double budget_s;
    };
    const std::vector<Entry> entries{
        {"01 apollonius invariants", c01_apollonius, 5.0},
        {"02 elliptic round trip", c02_roundtrip, 10.0},
        {"03 orthogonality and norm identity", c03_orthogonality, 10.0},
        {"04 dual membership", c04_dual_membership, 10.0},
        {"05 identity lemma", c05_identity, 2.0},
        {"06 common edges vs null-space oracle", c06_common_edges, 10.0},
        {"07 intercept lengths", c07_intercepts, 10.0},
        {"08 tangent cone canonicalization", c08_tangent_cone, 10.0},
        {"09 right-cone locus", c09_right_cones, 10.0},
        {"10 staude constant", c10_staude, 30.0},
        {"11 reflection and constant difference", c11_reflection, 10.0},
        {"12 apollonian pedal curve", c12_apollonian, 10.0},
        {"13 chasles axes vs eigen oracle", c13_chasles, 10.0},
        {"14 cli determinism", c14_cli, 30.0},
    };

    bool all = true;
    for (const Entry& e : entries) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = e.fn();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.note = ex.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > e.budget_s) {
            c.pass = false;
            if (c.note.empty()) c.note = "over time budget";
        }
        all = all && c.pass;
        std::printf("[%s] %-38s worst %.3e  %6.2fs%s%s\n", c.pass ? "PASS" : "FAIL", e.name,
                    c.worst, dt, c.note.empty() ? "" : "  ", c.note.c_str());
    }
    if (!all) {
        std::printf("acceptance: FAILED\n");
        return 1;
    }
    std::printf("acceptance: all criteria satisfied\n");
    return 0;
}
