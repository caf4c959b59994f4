#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "confocal/elliptic.hpp"

using namespace confocal;
using Catch::Approx;

namespace {

const double kSqrt2 = std::sqrt(2.0);

ConfocalSystem plane_sys() { return ConfocalSystem({4, 1}); }
ConfocalSystem space_sys() { return ConfocalSystem({9, 4, 1}); }

} // namespace

TEST_CASE("confocal system validates its axes") {
    CHECK_THROWS_AS(ConfocalSystem({4}), Error);
    CHECK_THROWS_AS(ConfocalSystem({4, 4}), Error);
    CHECK_THROWS_AS(ConfocalSystem({1, 4}), Error);
    CHECK_THROWS_AS(ConfocalSystem({4, 0}), Error);
}

TEST_CASE("family members and focal membranes") {
    ConfocalSystem sys = space_sys();
    CentralQuadric q = confocal_quadric(sys, 2.5);
    CHECK(q.signed_sq_axes[0] == Approx(6.5));
    CHECK(q.signed_sq_axes[2] == Approx(-1.5));
    CHECK_THROWS_AS(confocal_quadric(sys, 4.0), Error);
}

TEST_CASE("focal quadrics of (9, 4, 1)") {
    ConfocalSystem sys = space_sys();
    FocalQuadric ellipse = focal_quadric(sys, 3);
    CHECK(ellipse.quadric.signed_sq_axes[0] == Approx(8.0));
    CHECK(ellipse.quadric.signed_sq_axes[1] == Approx(3.0));

    FocalQuadric hyperbola = focal_quadric(sys, 2);
    CHECK(hyperbola.quadric.signed_sq_axes[0] == Approx(5.0));
    CHECK(hyperbola.quadric.signed_sq_axes[1] == Approx(-3.0));

    CHECK_THROWS_AS(focal_quadric(sys, 1), Error);
    CHECK_THROWS_AS(focal_quadric(sys, 4), Error);

    Vec emb = embed_focal_point(ellipse, {2.0, 1.5});
    CHECK(emb[0] == Approx(2.0));
    CHECK(emb[1] == Approx(1.5));
    CHECK(emb[2] == Approx(0.0).margin(1e-15));
    CHECK_THROWS_AS(embed_focal_point(ellipse, {1.0, 2.0, 3.0}), Error);
}

TEST_CASE("elliptic coordinates of the plane example") {
    ConfocalSystem sys = plane_sys();
    Vec x{kSqrt2, kSqrt2 / 2.0};
    EllipticCoordinates ec = elliptic_coordinates(sys, x);
    REQUIRE(ec.lambdas.size() == 2);
    CHECK(ec.lambdas[0] == Approx(0.0).margin(1e-12));
    CHECK(ec.lambdas[1] == Approx(2.5).margin(1e-12));

    AxesTable t = axes_table(sys, ec);
    CHECK(t.entry(0, 0) == Approx(4.0));
    CHECK(t.entry(0, 1) == Approx(1.5));
    CHECK(t.entry(1, 0) == Approx(1.0));
    CHECK(t.entry(1, 1) == Approx(-1.5));

    NormCheck nc = norm_identity_check(sys, ec);
    CHECK(nc.norm_sq == Approx(nc.diag_sum).margin(1e-12));

    Vec p2 = support_sq_closed_form(t);
    CHECK(p2[0] == Approx(1.6).margin(1e-12));
    CHECK(p2[1] == Approx(0.9).margin(1e-12));

    // the original center lies on every member of the dual system
    DualSystem d = dual_system(sys, ec);
    for (int i = 0; i < 2; ++i) {
        double s = 0;
        for (int j = 0; j < 2; ++j)
            s += d.origin_coords[j] * d.origin_coords[j] / d.quadric_axes[i][j];
        CHECK(s == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("elliptic coordinates interlace for an interior 3-d point") {
    ConfocalSystem sys = space_sys();
    Vec x{1.0, 1.0, 0.5};
    EllipticCoordinates ec = elliptic_coordinates(sys, x);

    CHECK(ec.lambdas[0] == Approx(0.5757400069606355).margin(1e-10));
    CHECK(ec.lambdas[1] == Approx(2.960441944203142).margin(1e-10));
    CHECK(ec.lambdas[2] == Approx(8.213818048836231).margin(1e-10));

    CHECK(ec.lambdas[0] > 0.0);    // interior of the base ellipsoid
    CHECK(ec.lambdas[0] < 1.0);
    CHECK(ec.lambdas[1] > 1.0);
    CHECK(ec.lambdas[1] < 4.0);
    CHECK(ec.lambdas[2] > 4.0);
    CHECK(ec.lambdas[2] < 9.0);

    AxesTable t = axes_table(sys, ec);
    Vec p2 = support_sq_closed_form(t);
    CHECK(p2[0] == Approx(0.6719119701546643).margin(1e-10));
    CHECK(p2[1] == Approx(0.9825061906414333).margin(1e-10));
    CHECK(p2[2] == Approx(0.5955818392038937).margin(1e-10));

    // recover the point from the table
    Vec back = point_from_axes_table(t, {1, 1, 1});
    for (int i = 0; i < 3; ++i) CHECK(back[i] == Approx(x[i]).margin(1e-10));
}

TEST_CASE("exterior points have a negative first coordinate") {
    ConfocalSystem sys = plane_sys();
    EllipticCoordinates ec = elliptic_coordinates(sys, {3.0, 1.0});
    double r = std::sqrt(61.0);
    CHECK(ec.lambdas[0] == Approx((-5.0 - r) / 2.0).margin(1e-10));
    CHECK(ec.lambdas[1] == Approx((-5.0 + r) / 2.0).margin(1e-10));
}

TEST_CASE("principal-plane points are rejected with the axis guard") {
    ConfocalSystem sys = plane_sys();
    try {
        elliptic_coordinates(sys, {2.0, 0.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegeneratePoint);
    }
    CHECK_THROWS_AS(elliptic_coordinates(sys, {1.0, 1.0, 1.0}), Error);
}

TEST_CASE("rational point with elliptic coordinates (0, 2, 6)") {
    ConfocalSystem sys = space_sys();
    AxesTable t;
    t.base_sq_axes = sys.base_sq_axes;
    t.lambdas = {0.0, 2.0, 6.0};
    t.entries = {{9, 7, 3}, {4, 2, -2}, {1, -1, -5}};

    Vec x = point_from_axes_table(t, {1, 1, 1});
    CHECK(x[0] * x[0] == Approx(4.725).margin(1e-12));
    CHECK(x[1] * x[1] == Approx(16.0 / 15.0).margin(1e-12));
    CHECK(x[2] * x[2] == Approx(5.0 / 24.0).margin(1e-12));

    EllipticCoordinates ec = elliptic_coordinates(sys, x);
    CHECK(ec.lambdas[0] == Approx(0.0).margin(1e-10));
    CHECK(ec.lambdas[1] == Approx(2.0).margin(1e-10));
    CHECK(ec.lambdas[2] == Approx(6.0).margin(1e-10));

    Vec p2 = support_sq_closed_form(axes_table(sys, ec));
    CHECK(p2[0] == Approx(3.0).margin(1e-10));
    CHECK(p2[1] == Approx(1.75).margin(1e-10));
    CHECK(p2[2] == Approx(1.25).margin(1e-10));

    // frame of confocal normals is orthonormal and support matches 1/|grad|
    FrameAtPoint fr = frame_at_point(sys, ec);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(dot(fr.unit_normals[i], fr.unit_normals[j]) ==
                  Approx(i == j ? 1.0 : 0.0).margin(1e-10));
    for (int j = 0; j < 3; ++j)
        CHECK(fr.support[j] * fr.support[j] == Approx(p2[j]).margin(1e-10));

    // central section semi-axes of the ellipsoid through the point
    Vec rho2 = central_section_sq_axes(ec);
    CHECK(rho2[0] == Approx(2.0).margin(1e-10));
    CHECK(rho2[1] == Approx(6.0).margin(1e-10));
}

TEST_CASE("unrealizable axes tables are rejected") {
    AxesTable t;
    t.base_sq_axes = {4, 1};
    t.lambdas = {0.0, 2.5};
    t.entries = {{4, 1.5}, {1, 1.5}};
    try {
        point_from_axes_table(t, {1, 1});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NegativeSquare);
    }
    CHECK_THROWS_AS(point_from_axes_table(t, {1, 1, 1}), Error);
}

TEST_CASE("pole line and the tangent family member") {
    ConfocalSystem sys = plane_sys();
    Hyperplane plane({0.5, 0.5});

    PoleLine line = pole_line(sys, plane);
    CHECK(line.base_point[0] == Approx(2.0));
    CHECK(line.base_point[1] == Approx(0.5));
    Vec at = line.point_at(0.5);
    CHECK(at[0] == Approx(1.75));
    CHECK(at[1] == Approx(0.25));

    double lam = tangent_confocal_parameter(sys, plane);
    CHECK(lam == Approx(0.5).margin(1e-12));

    // at lambda* the touch point satisfies the plane equation and sits on
    // the pole line
    TangencyLocus tl = tangency_locus_product(sys, plane.h, lam);
    CHECK(dot(plane.h, tl.touch_point) == Approx(1.0).margin(1e-12));
    for (int i = 0; i < 2; ++i) CHECK(tl.touch_point[i] == Approx(at[i]).margin(1e-12));

    CHECK_THROWS_AS(pole_line(sys, Hyperplane({1.0, 1.0, 1.0})), Error);
    CHECK_THROWS_AS(tangent_confocal_parameter(sys, Hyperplane({0.5, 0.5, 0.5})), Error);
    // lambda* = 1 lands exactly on the focal membrane of (4, 1)
    try {
        tangent_confocal_parameter(sys, Hyperplane({1.0 / std::sqrt(3.0), 0.5}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OnFocalMembrane);
    }
}

TEST_CASE("tangency distance product is constant along the family") {
    ConfocalSystem sys = plane_sys();
    Vec h{0.5, 0.5};
    TangencyLocus at0 = tangency_locus_product(sys, h, 0.0);
    CHECK(at0.product == Approx(1.5).margin(1e-12));
    for (double lam : {-3.0, -1.0, 0.25, 0.5, 0.9})
        CHECK(tangency_locus_product(sys, h, lam).product == Approx(1.5).margin(1e-12));
    try {
        tangency_locus_product(sys, h, 100.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRealTangency);
    }
}

TEST_CASE("pedal curve of normals through (1, 1) for the (4, 1) homothets") {
    Vec axes{4, 1}, u{1, 1};
    Vec x = apollonian_curve_point(axes, u, 1.0);
    CHECK(x[0] == Approx(4.0).margin(1e-12));
    CHECK(x[1] == Approx(-0.5).margin(1e-12));
    CHECK(apollonian_curve_residual(axes, u, x) < 1e-14);

    Vec anchor1 = apollonian_asymptote_anchor(axes, u, 1);
    CHECK(anchor1[0] == Approx(0.0).margin(1e-14));
    CHECK(anchor1[1] == Approx(-1.0 / 3.0).margin(1e-12));
    Vec anchor2 = apollonian_asymptote_anchor(axes, u, 2);
    CHECK(anchor2[0] == Approx(4.0 / 3.0).margin(1e-12));
    CHECK(anchor2[1] == Approx(-1.0 / 3.0).margin(1e-12));

    try {
        apollonian_curve_point(axes, u, 1.0 / 3.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleParameter);
    }
    CHECK_THROWS_AS(apollonian_asymptote_anchor(axes, u, 3), Error);
    CHECK_THROWS_AS(apollonian_curve_point({4, 4}, u, 0.1), Error);
}

TEST_CASE("pedal curve passes through the anchor point and the center") {
    // tau = 0 gives the center; small tau stays on the curve
    Vec axes{9, 4, 1}, u{1.0, 0.5, 0.25};
    Vec origin = apollonian_curve_point(axes, u, 0.0);
    for (int i = 0; i < 3; ++i) CHECK(origin[i] == Approx(0.0).margin(1e-12));
    for (double tau : {0.01, 0.05, 0.1, 0.11})
        CHECK(apollonian_curve_residual(axes, u, apollonian_curve_point(axes, u, tau)) < 1e-12);
}
