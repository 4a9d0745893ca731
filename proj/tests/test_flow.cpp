#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "autdim/flow.hpp"
#include "autdim/gallery.hpp"

using namespace autdim;
using namespace std::complex_literals;

namespace {

const VectorFieldPoly kRot = VectorFieldPoly::planar({0.0, 1i});             // iz
const VectorFieldPoly kHyp = VectorFieldPoly::planar({1.0, 0.0, -1.0});      // 1 - z^2
const VectorFieldPoly kOne = VectorFieldPoly::planar({1.0});                 // 1

// Closed-form flow of 1 - z^2: tanh(t + atanh z).
cplx hyp_oracle(cplx z, double t) { return std::tanh(t + std::atanh(z)); }

}  // namespace

TEST_CASE("flow examples") {
    const auto disk = DomainSpec::unit_disk();
    const auto z = flow(kRot, cplx{0.5}, std::numbers::pi / 2, 1e-12, disk);
    CHECK(std::abs(z[0] - 0.5i) < 1e-9);
    CHECK(flow(kHyp, cplx{0.3, 0.2}, 0.0, 1e-10, disk) == CxPoint{cplx{0.3, 0.2}});
    CHECK(std::abs(flow(kHyp, cplx{0.3, 0.2}, 0.8, 1e-12, disk)[0] - hyp_oracle({0.3, 0.2}, 0.8)) < 1e-9);
    try {
        (void)flow(kOne, cplx{0.9}, 1.0, 1e-10, disk);
        FAIL("expected an escape");
    } catch (const EscapeError& e) {
        CHECK(std::abs(e.t_exit() - 0.1) <= 1e-6);
    }
    CHECK_THROWS_AS((void)flow(kRot, cplx{1.5}, 0.1, 1e-10, disk), OutsideDomainError);
}

TEST_CASE("flow is deterministic and reversible") {
    const auto disk = DomainSpec::unit_disk();
    const double tol = 1e-10;
    const auto a = flow(kHyp, cplx{0.1, 0.4}, 0.9, tol, disk);
    const auto b = flow(kHyp, cplx{0.1, 0.4}, 0.9, tol, disk);
    CHECK(a == b);
    for (const auto& x : {kRot, kHyp, VectorFieldPoly::planar({0.3 + 0.2i, 0.0, -(0.3 - 0.2i)})})
        for (cplx z0 : {cplx{0.2}, cplx{-0.3, 0.5}, cplx{0.0, -0.6}})
            for (double t : {0.5, -1.0, 1.0}) {
                const auto fwd = flow(x, z0, t, tol, disk);
                const auto back = flow(x, fwd, -t, tol, disk);
                CHECK(distance(back, CxPoint{z0}) <= 20 * tol);
            }
}

TEST_CASE("flow samples agree with single flows") {
    const auto disk = DomainSpec::unit_disk();
    const std::vector<double> ts{0.25, 0.5, 1.0};
    const auto s = flow_samples(kRot, cplx{0.5}, ts, 1e-12, disk);
    REQUIRE(s.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(s[k][0] - 0.5 * std::exp(1i * ts[k])) < 1e-9);
}

TEST_CASE("group property") {
    const auto disk = DomainSpec::unit_disk();
    const auto dq = DomainSpec::disk_minus_disk(0.5, 0.5);
    const auto gt = translation_action(1);
    CHECK(group_property_residual(gt, cplx{-0.5}, 0.3, 0.7, dq) <= 1e-12);

    const double tol = 1e-10;
    const auto rot = GroupAction::from_field("rotation", kRot, tol, disk);
    const auto hyp = GroupAction::from_field("hyperbolic", kHyp, tol, disk);
    CHECK(group_property_residual(rot, cplx{0.5}, 0.5, 0.5, disk) <= 10 * tol);
    CHECK(group_property_residual(rot, cplx{0.5}, 0.5, 0.0, disk) <= 10 * tol);

    for (int i = 0; i < 10; ++i)
        for (int k = 0; k < 10; ++k) {
            const double t = -1 + 2.0 * i / 9, s = -1 + 2.0 * k / 9;
            CHECK(group_property_residual(rot, cplx{0.3, 0.4}, t, s, disk) <= 10 * tol);
            CHECK(group_property_residual(hyp, cplx{-0.2, 0.1}, t, s, disk) <= 10 * tol);
            CHECK(group_property_residual(gt, cplx{-0.5}, t, s, dq) <= 10 * tol);
        }
}

TEST_CASE("infinitesimal group identity") {
    const auto disk = DomainSpec::unit_disk();
    const auto dq = DomainSpec::disk_minus_disk(0.5, 0.5);
    const auto rot = GroupAction::from_field("rotation", kRot, 1e-13, disk);
    CHECK(infinitesimal_residual(rot, cplx{0.3}, 1.0, disk) <= 1e-6);
    CHECK(infinitesimal_residual(rot, cplx{0.3}, 0.0, disk) <= 1e-8);
    const auto hyp = GroupAction::from_field("hyperbolic", kHyp, 1e-13, disk);
    CHECK(infinitesimal_residual(hyp, cplx{0.3, 0.2}, 0.7, disk) <= 1e-6);

    // The generator of g_t is its t-derivative at 0.
    const double h = 1e-6;
    for (cplx w : {cplx{-0.5}, cplx{0.2, 0.4}}) {
        const cplx fd = (g_t(w, h) - g_t(w, -h)) / (2 * h);
        CHECK(std::abs(translation_generator()(w)[0] - fd) < 1e-8);
    }
    const auto gt = translation_action(1);
    CHECK(infinitesimal_residual(gt, cplx{-0.5}, 0.5, dq) <= 1e-6);
}

TEST_CASE("complexified flow") {
    const auto disk = DomainSpec::unit_disk();
    const double tol = 1e-12;
    auto g = complexify(kRot, cplx{0.5}, {1i, 2.0}, tol, disk);
    CHECK(std::abs(g[0] - 0.5 * std::exp(-1.0)) < 1e-9);
    g = complexify(kRot, cplx{0.5}, {1.0 + 1i, 2.0}, tol, disk);
    CHECK(std::abs(g[0] - 0.5 * std::exp(1i - 1.0)) < 1e-9);
    const auto real_leg = complexify(kHyp, cplx{0.2, 0.1}, {0.6, 0.5}, tol, disk);
    CHECK(distance(real_leg, flow(kHyp, cplx{0.2, 0.1}, 0.6, tol, disk)) < 1e-12);
    CHECK_THROWS_AS((void)complexify(kRot, cplx{0.5}, {0.3i, 0.2}, tol, disk), PreconditionError);
}

TEST_CASE("cauchy-riemann residual") {
    const auto disk = DomainSpec::unit_disk();
    CHECK(cr_residual(kRot, cplx{0.4}, {0.2 + 0.1i, 0.5}, disk) <= 1e-6);
    CHECK(cr_residual(kRot, cplx{0.4}, {0.0, 0.5}, disk) <= 1e-6);
    const auto big = DomainSpec::ball(CxPoint{0.0}, 3.0);
    CHECK(cr_residual(kOne, cplx{0.0}, {0.5 + 0.2i, 0.5}, big) <= 1e-6);

    // 5x5 grid inside the horizon for each field.
    const auto dq = DomainSpec::disk_minus_disk(0.5, 0.5);
    struct Case {
        VectorFieldPoly x;
        DomainSpec d;
        cplx z;
    };
    const std::vector<Case> cases{{kRot, disk, 0.3},
                                  {kHyp, disk, {0.1, 0.2}},
                                  {translation_generator(), dq, -0.5}};
    for (const auto& c : cases) {
        const double delta = 0.5 * dist_to_boundary(c.d, c.z) / 3.0;
        const double tau = imaginary_horizon(c.x, {CxPoint{c.z}}, delta, c.d);
        REQUIRE(tau > 0);
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k) {
                const cplx zeta{-0.5 + 0.25 * i, tau * (-0.8 + 0.4 * k)};
                CHECK(cr_residual(c.x, c.z, {zeta, tau}, c.d) <= 1e-5);
            }
    }
}

TEST_CASE("sup norm on balls") {
    CHECK(sup_norm_ball(kRot, CxPoint{0.0}, 0.5) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sup_norm_ball(kOne, CxPoint{0.3}, 0.2) == doctest::Approx(1.0));
    // |1 - z^2| on |z| <= 0.5 peaks at z = +-0.5i; the ring sampling
    // gets within the angular resolution.
    const double s = sup_norm_ball(kHyp, CxPoint{0.0}, 0.5);
    CHECK(s <= 1.25 + 1e-12);
    CHECK(s >= 1.25 - 1e-4);
    const auto diag = VectorFieldPoly::diagonal(kRot, 2);
    CHECK(sup_norm_ball(diag, CxPoint{0.0, 0.0}, 0.5) == doctest::Approx(0.5).epsilon(1e-6));
}
