#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "autdim/domain.hpp"

using namespace autdim;
using namespace std::complex_literals;

namespace {

DomainSpec q_j(int j) { return DomainSpec::disk_minus_disk(0.5 - std::ldexp(1.0, -j), 0.5); }
DomainSpec q() { return DomainSpec::disk_minus_disk(0.5, 0.5); }

// Brute-force Hausdorff distance between two circle pairs, sampled densely.
double circle_pair_hausdorff(double c1, double c2, int n) {
    auto pts = [n](double c) {
        std::vector<cplx> v;
        for (int k = 0; k < n; ++k) {
            const double th = 2 * std::numbers::pi * k / n;
            v.push_back(std::polar(1.0, th));
            v.push_back(c + std::polar(0.5, th));
        }
        return v;
    };
    auto a = pts(c1), b = pts(c2);
    auto one_way = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
        double worst = 0;
        for (cplx p : x) {
            double best = 1e300;
            for (cplx r : y) best = std::min(best, std::abs(p - r));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace

TEST_CASE("contains examples") {
    CHECK(contains(DomainSpec::unit_disk(), cplx{0.0}));
    CHECK(contains(q(), cplx{-0.5}));
    CHECK_FALSE(contains(q(), cplx{0.5}));
    const auto d = DomainSpec::product_minus_diagonal(q());
    CHECK_FALSE(contains(d, CxPoint{-0.5, -0.5}));
    CHECK(contains(d, CxPoint{-0.5, 0.0}));
    CHECK_THROWS_AS((void)contains(DomainSpec::unit_disk(), CxPoint{0.0, 0.0}), DimensionError);
    CHECK(contains(DomainSpec::strip(), cplx{100.0, 0.5}));
    CHECK_FALSE(contains(DomainSpec::strip(), cplx{0.0, 1.0}));
    CHECK(contains(DomainSpec::upper_half_plane(), 1e-9i));
}

TEST_CASE("dist_to_boundary examples") {
    CHECK(dist_to_boundary(DomainSpec::unit_disk(), cplx{0.0}) == doctest::Approx(1.0));
    CHECK(dist_to_boundary(DomainSpec::ball(CxPoint{0.0, 0.0}, 2.0), CxPoint{1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(dist_to_boundary(q(), cplx{-0.5}) == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)dist_to_boundary(q(), cplx{0.5}), OutsideDomainError);
    // Ellipse distance against a dense brute force.
    const auto e = DomainSpec::ellipse(2.0, 1.0);
    const cplx z{0.7, 0.2};
    double best = 1e300;
    for (int k = 0; k < 200000; ++k) {
        const double th = 2 * std::numbers::pi * k / 200000;
        best = std::min(best, std::abs(z - cplx{2 * std::cos(th), std::sin(th)}));
    }
    CHECK(dist_to_boundary(e, z) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("inner_outer_radii examples") {
    auto r = inner_outer_radii(DomainSpec::unit_disk(), cplx{0.0});
    CHECK(r.r == doctest::Approx(1.0));
    CHECK(r.R == doctest::Approx(1.0));
    r = inner_outer_radii(DomainSpec::ellipse(2.0, 1.0), cplx{0.0});
    CHECK(r.r == doctest::Approx(1.0));
    CHECK(r.R == doctest::Approx(2.0));
    r = inner_outer_radii(q(), cplx{-0.5});
    CHECK(r.r == doctest::Approx(0.5));
    CHECK(r.R == doctest::Approx(1.5));
    CHECK_THROWS_AS((void)inner_outer_radii(DomainSpec::strip(), cplx{0.5i}), UnboundedDomainError);
    CHECK_THROWS_AS((void)inner_outer_radii(DomainSpec::upper_half_plane(), cplx{1i}), UnboundedDomainError);
}

TEST_CASE("boundary samples") {
    SUBCASE("unit circle at 2pi/8") {
        auto s = boundary_samples(DomainSpec::unit_disk(), 2 * std::numbers::pi / 8);
        REQUIRE(s.size() == 8);
        for (int k = 0; k < 8; ++k) {
            const cplx e = std::polar(1.0, 2 * std::numbers::pi * k / 8);
            CHECK(std::abs(s[k].point[0] - e) < 1e-12);
            CHECK(std::abs(s[k].normal[0] - e) < 1e-12);
        }
    }
    SUBCASE("inner circle normals of Q point into the hole") {
        auto s = boundary_samples(q(), 0.05);
        int inner = 0;
        for (const auto& b : s) {
            const cplx p = b.point[0];
            if (std::abs(std::abs(p - 0.5) - 0.5) < 1e-12 && std::abs(p) < 1 - 1e-9) {
                ++inner;
                const cplx toward = (0.5 - p) / std::abs(0.5 - p);
                CHECK(std::abs(b.normal[0] - toward) < 1e-9);
            }
        }
        CHECK(inner > 10);
    }
    SUBCASE("ellipse normals follow the implicit gradient") {
        for (const auto& b : boundary_samples(DomainSpec::ellipse(2.0, 1.0), 0.05)) {
            const cplx p = b.point[0];
            cplx g{p.real() / 4, p.imag()};
            g /= std::abs(g);
            CHECK(std::abs(b.normal[0] - g) < 1e-9);
        }
    }
    SUBCASE("spacing bound") {
        auto s = boundary_samples(DomainSpec::ellipse(2.0, 1.0), 0.03);
        for (std::size_t k = 0; k < s.size(); ++k) {
            const auto& a = s[k].point;
            const auto& b = s[(k + 1) % s.size()].point;
            CHECK(distance(a, b) <= 0.03 + 1e-12);
        }
    }
    CHECK_THROWS_AS((void)boundary_samples(DomainSpec::strip(), 0.1), UnboundedDomainError);
}

TEST_CASE("normal offsets land on the right side") {
    std::vector<DomainSpec> ds{DomainSpec::unit_disk(),          DomainSpec::ellipse(2.0, 1.0),
                               DomainSpec::annulus(0.3, 1.0),    q_j(3),
                               DomainSpec::ball(CxPoint{0.0, 0.0}, 1.0),
                               DomainSpec::ball(CxPoint{0.5}, 1.5)};
    for (const auto& d : ds) {
        const double eps = d.mesh_tol();
        for (const auto& b : boundary_samples(d, 0.1)) {
            CHECK(contains(d, b.point - eps * b.normal));
            CHECK_FALSE(contains(d, b.point + eps * b.normal));
        }
    }
    // Q: skip the cusp at 1 where the two circles touch.
    const auto dq = q();
    for (const auto& b : boundary_samples(dq, 0.05)) {
        if (std::abs(b.point[0] - 1.0) < 0.05) continue;
        CHECK(contains(dq, b.point - dq.mesh_tol() * b.normal));
        CHECK_FALSE(contains(dq, b.point + dq.mesh_tol() * b.normal));
    }
}

TEST_CASE("radii sandwich the boundary") {
    std::vector<std::pair<DomainSpec, CxPoint>> cases{{DomainSpec::ellipse(2.0, 1.0), cplx{0.3, 0.1}},
                                                      {q(), cplx{-0.5}},
                                                      {q_j(4), cplx{-0.6, 0.1}},
                                                      {DomainSpec::annulus(0.3, 1.0), cplx{0.6}}};
    for (const auto& [d, c] : cases) {
        const auto rr = inner_outer_radii(d, c);
        for (const auto& b : boundary_samples(d, 0.02)) {
            const double m = distance(b.point, c);
            CHECK(m >= rr.r - 1e-12);
            CHECK(m <= rr.R + 1e-12);
        }
    }
}

TEST_CASE("hausdorff distance") {
    CHECK(hausdorff_distance(DomainSpec::unit_disk(), DomainSpec::unit_disk(), 0.05) == doctest::Approx(0.0));
    // Misaligned samples on the two circles add at most density^2.
    const double hb = hausdorff_distance(DomainSpec::ball(CxPoint{0.0}, 1.0), DomainSpec::ball(CxPoint{0.0}, 1.5), 0.05);
    CHECK(hb >= 0.5 - 1e-12);
    CHECK(hb <= 0.5 + 0.05 * 0.05);
    for (int j = 3; j <= 10; ++j) {
        const double h = hausdorff_distance(q_j(j), q(), 0.01);
        const double oracle = circle_pair_hausdorff(0.5 - std::ldexp(1.0, -j), 0.5, 2000);
        CHECK(std::abs(h - oracle) <= 0.01 * oracle + 1e-4);
        CHECK(h <= std::ldexp(1.0, -j) * 1.01);
        CHECK(h >= std::ldexp(1.0, -j) / 1.01);
    }
    double prev = 1e300;
    for (int j = 2; j <= 12; ++j) {
        const double h = hausdorff_distance(q_j(j), q(), 0.01);
        CHECK(h < prev);
        prev = h;
    }
    const std::vector<DomainSpec> ds{DomainSpec::unit_disk(), DomainSpec::ellipse(1.5, 1.0), q_j(3),
                                     DomainSpec::annulus(0.3, 1.0)};
    const double dens = 0.02;
    for (const auto& a : ds)
        for (const auto& b : ds) {
            CHECK(std::abs(hausdorff_distance(a, b, dens) - hausdorff_distance(b, a, dens)) <= 2 * dens);
            for (const auto& c : ds)
                CHECK(hausdorff_distance(a, c, dens) <=
                      hausdorff_distance(a, b, dens) + hausdorff_distance(b, c, dens) + 2 * dens);
        }
    CHECK_THROWS_AS((void)hausdorff_distance(DomainSpec::strip(), DomainSpec::unit_disk(), 0.1),
                    UnboundedDomainError);
}

TEST_CASE("concentric normalizer sends Q_j circles to concentric ones") {
    for (int j = 2; j <= 8; ++j) {
        const cplx c = 0.5 - std::ldexp(1.0, -j);
        const auto cn = concentric_normalizer(c, 0.5);
        auto mu = [&](cplx z) { return (z - cn.p) / (1.0 - std::conj(cn.p) * z); };
        for (int k = 0; k < 16; ++k) {
            const double th = 2 * std::numbers::pi * k / 16;
            CHECK(std::abs(std::abs(mu(std::polar(1.0, th))) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(mu(c + std::polar(0.5, th))) - cn.inner_radius) < 1e-10);
        }
    }
}

TEST_CASE("sampled domains validate the mesh") {
    std::vector<BoundarySample> mesh;
    for (int k = 0; k < 64; ++k) {
        const cplx e = std::polar(1.0, 2 * std::numbers::pi * k / 64);
        mesh.push_back({CxPoint{e}, CxPoint{e}});
    }
    auto oracle = [](const CxPoint& z) { return std::abs(z[0]) < 1.0; };
    const auto d = DomainSpec::sampled(1, oracle, mesh);
    CHECK(contains(d, cplx{0.2}));
    auto bad = mesh;
    bad[3].point = CxPoint{cplx{0.5}};
    CHECK_THROWS_AS((void)DomainSpec::sampled(1, oracle, bad), InvalidDomainError);
}
