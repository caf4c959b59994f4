#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "confocal/numerics.hpp"
#include "confocal/rng.hpp"
#include "confocal/vec.hpp"

using namespace confocal;
using Catch::Approx;

TEST_CASE("bracketed root finds sqrt(2)") {
    auto f = [](double x) { return x * x - 2.0; };
    double r = bracketed_root(f, Bracket(1.0, 2.0, 1e-14));
    CHECK(std::fabs(r - std::sqrt(2.0)) < 1e-13);
}

TEST_CASE("bracketed root stays inside a one-sided steep bracket") {
    auto f = [](double x) { return std::tanh(50.0 * (x - 0.99)); };
    double r = bracketed_root(f, Bracket(0.0, 1.0, 1e-13));
    CHECK(std::fabs(r - 0.99) < 1e-12);
}

TEST_CASE("bracket construction validates its arguments") {
    CHECK_THROWS_AS(Bracket(2.0, 1.0, 1e-12), Error);
    CHECK_THROWS_AS(Bracket(1.0, 2.0, 0.0), Error);
}

TEST_CASE("bracketed root requires a sign change") {
    auto f = [](double x) { return x * x + 1.0; };
    try {
        bracketed_root(f, Bracket(-1.0, 1.0, 1e-12));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSignChange);
    }
}

TEST_CASE("jacobi solves a 2x2 by hand") {
    SymmetricMatrix m(2);
    m.set(0, 0, 2.0);
    m.set(1, 1, 2.0);
    m.set(1, 0, 1.0);
    EigenSystem es = jacobi_eigen(m);
    CHECK(es.eigenvalues[0] == Approx(3.0).margin(1e-12));
    CHECK(es.eigenvalues[1] == Approx(1.0).margin(1e-12));
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::fabs(dot(es.eigenvectors[0], Vec{s, s})) == Approx(1.0).margin(1e-12));
    CHECK(std::fabs(dot(es.eigenvectors[1], Vec{s, -s})) == Approx(1.0).margin(1e-12));
}

TEST_CASE("jacobi recovers a planted spectrum") {
    Rng rng(20240817);
    const int n = 5;
    Cols frame = random_orthonormal(n, rng);
    Vec planted{9.0, 5.5, 2.0, -1.0, -7.25};

    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0;
            for (int k = 0; k < n; ++k) s += planted[k] * frame[k][i] * frame[k][j];
            m.set(i, j, s);
        }

    EigenSystem es = jacobi_eigen(m);
    for (int k = 0; k < n; ++k) {
        CHECK(es.eigenvalues[k] == Approx(planted[k]).margin(1e-9));
        CHECK(std::fabs(dot(es.eigenvectors[k], frame[k])) == Approx(1.0).margin(1e-9));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            CHECK(std::fabs(dot(es.eigenvectors[i], es.eigenvectors[j])) < 1e-10);
}

TEST_CASE("null space of coordinate planes") {
    Vec v = null_space_1d({{1, 0, 0}, {0, 1, 0}});
    CHECK(v[0] == Approx(0.0).margin(1e-14));
    CHECK(v[1] == Approx(0.0).margin(1e-14));
    CHECK(v[2] == Approx(1.0).margin(1e-14));
}

TEST_CASE("null space matches the cross product up to sign") {
    Vec a{1, 1, 0}, b{0, 1, 1};
    Vec v = null_space_1d({a, b});
    Vec c = normalized(cross3(a, b));
    fix_sign(c);
    for (int i = 0; i < 3; ++i) CHECK(v[i] == Approx(c[i]).margin(1e-12));
    CHECK(std::fabs(dot(v, a)) < 1e-12);
    CHECK(std::fabs(dot(v, b)) < 1e-12);
}

TEST_CASE("null space rejects deficient or misshapen input") {
    try {
        null_space_1d({{1, 1, 0}, {2, 2, 0}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RankDeficient);
    }
    CHECK_THROWS_AS(null_space_1d({{1, 0, 0}}), Error);
}

TEST_CASE("elementary symmetric polynomials of (9, 4, 1)") {
    Vec v{9, 4, 1};
    CHECK(elementary_symmetric(v, 0) == Approx(1.0));
    CHECK(elementary_symmetric(v, 1) == Approx(14.0));
    CHECK(elementary_symmetric(v, 2) == Approx(49.0));
    CHECK(elementary_symmetric(v, 3) == Approx(36.0));
    CHECK_THROWS_AS(elementary_symmetric(v, 4), Error);
    CHECK_THROWS_AS(elementary_symmetric(v, -1), Error);
}

TEST_CASE("elementary symmetric matches polynomial expansion") {
    Vec v{2.5, -1.0, 0.5, 3.0};
    // prod (x + v_i) expanded head-on
    Vec coeff{1.0};
    for (double r : v) {
        Vec next(coeff.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i] * r;
            next[i + 1] += coeff[i];
        }
        coeff = next;
    }
    for (int k = 0; k <= 4; ++k)
        CHECK(elementary_symmetric(v, k) == Approx(coeff[4 - k]).margin(1e-12));
}

TEST_CASE("1-d minimizer finds an interior bowl") {
    auto f = [](double x) { return (x - 0.3) * (x - 0.3); };
    MinResult r = minimize_1d(f, {-1.0, 1.0, false});
    CHECK(r.arg == Approx(0.3).margin(1e-7));
    CHECK(r.value == Approx(0.0).margin(1e-12));
}

TEST_CASE("1-d minimizer honors periodic wrap") {
    const double pi = std::acos(-1.0);
    auto f = [](double x) { return std::cos(x); };
    MinResult r = minimize_1d(f, {0.0, 2.0 * pi, true});
    CHECK(r.arg == Approx(pi).margin(1e-7));
    CHECK(r.value == Approx(-1.0).margin(1e-12));

    // minimum at the seam
    auto g = [&](double x) { return -std::cos(x); };
    MinResult s = minimize_1d(g, {0.0, 2.0 * pi, true});
    CHECK(s.value == Approx(-1.0).margin(1e-12));
}

TEST_CASE("1-d minimizer rejects an empty domain") {
    CHECK_THROWS_AS(minimize_1d([](double x) { return x; }, {1.0, 1.0, false}), Error);
}

TEST_CASE("sign fix flips on the first noticeable component") {
    Vec v{-1e-12, -0.5, 1.0};
    fix_sign(v);
    CHECK(v[1] == Approx(0.5));
    CHECK(v[2] == Approx(-1.0));
}

TEST_CASE("frame transport round-trips") {
    Rng rng(77);
    Cols frame = random_orthonormal(4, rng);
    Vec x = rng.gaussian_vec(4);
    Vec back = frame_apply(frame, frame_coords(frame, x));
    for (int i = 0; i < 4; ++i) CHECK(back[i] == Approx(x[i]).margin(1e-12));
}

TEST_CASE("seeded rng streams are reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 16; ++i) CHECK(a.uniform() == b.uniform());
    Rng c = Rng::for_case(9, 3), d = Rng::for_case(9, 3), e = Rng::for_case(9, 4);
    CHECK(c.uniform() == d.uniform());
    CHECK(c.uniform() != e.uniform());
}

TEST_CASE("determinant of column sets") {
    CHECK(det({{1, 0}, {0, 1}}) == Approx(1.0));
    CHECK(det({{0, 1}, {1, 0}}) == Approx(-1.0));
    CHECK(det({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}) == Approx(24.0));
}
