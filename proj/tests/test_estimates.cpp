#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"

#include "autdim/estimates.hpp"
#include "autdim/gallery.hpp"

using namespace autdim;
using namespace std::complex_literals;

namespace {

const VectorFieldPoly kRot = VectorFieldPoly::planar({0.0, 1i});
const VectorFieldPoly kHyp = VectorFieldPoly::planar({1.0, 0.0, -1.0});

GroupAction disk_rotation() {
    return GroupAction::closed_form(
        "rotation", [](const CxPoint& z, double t) { return CxPoint{std::exp(1i * t) * z[0]}; }, kRot);
}

std::vector<CxPoint> segment(double len, double step) {
    std::vector<CxPoint> v;
    const int n = static_cast<int>(std::lround(len / step));
    for (int k = 0; k <= n; ++k) v.push_back(CxPoint{cplx{k * step}});
    return v;
}

ExtremalCandidate monomial_map(cplx coeff, int power = 1) {
    ExtremalCandidate c;
    c.base = CxPoint{0.0};
    c.terms = {{{power}, coeff}};
    return c;
}

}  // namespace

TEST_CASE("margin accumulator") {
    MarginAccumulator acc(LemmaId::De);
    acc.add(0.5, "a");
    acc.add(-0.2, "b", false);
    auto r = acc.finish();
    CHECK(r.samples == 2);
    CHECK(r.status == Status::Inconclusive);
    CHECK(r.uncertified_negative == 1);
    acc.add(-1e-12, "c");
    CHECK(acc.finish().status == Status::Inconclusive);
    acc.add(-1e-3, "d");
    r = acc.finish();
    CHECK(r.status == Status::Failed);
    // The report carries the overall worst sample, certified or not.
    CHECK(r.worst_margin == -0.2);
    CHECK(r.witness == "b");
    MarginAccumulator ok(LemmaId::Id);
    ok.add(0.1, "x");
    CHECK(ok.finish().status == Status::Passed);
    CHECK(std::string(to_string(LemmaId::MDeriv)) == "MDeriv");
    CHECK(std::string(to_string(Status::Inconclusive)) == "Inconclusive");
}

TEST_CASE("invariant triangle") {
    const auto disk = DomainSpec::unit_disk();
    CHECK(check_invariant_triangle(disk, disk_rotation(), cplx{0.3}, cplx{0.5i}, 0.7) >= 0.0);
    CHECK(check_invariant_triangle(disk, disk_rotation(), cplx{0.3}, cplx{0.5i}, 0.0) == 0.0);
    const auto dq = DomainSpec::disk_minus_disk(0.5, 0.5);
    CHECK(check_invariant_triangle(dq, translation_action(1), cplx{-0.5}, cplx{-0.25}, 1.0) >= 0.0);
    // Ball of C^2 under a diagonal rotation.
    const auto ball = DomainSpec::ball(CxPoint{0.0, 0.0}, 1.0);
    const auto rot2 = GroupAction::closed_form("rotation2", [](const CxPoint& z, double t) {
        return CxPoint{std::exp(1i * t) * z[0], std::exp(1i * t) * z[1]};
    });
    CHECK(check_invariant_triangle(ball, rot2, CxPoint{0.2, 0.1i}, CxPoint{-0.3, 0.4}, 1.3) >= -1e-12);
    // Ball distance formula against the disk on a complex line through 0.
    CHECK(invariant_distance(ball, CxPoint{0.0, 0.0}, CxPoint{0.5, 0.0}) ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("extremal gradient bound") {
    const auto disk = DomainSpec::unit_disk();
    auto m = check_extremal_gradient_bound(disk, cplx{0.0}, cplx{1.0}, 0.05);
    CHECK(m.margin == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(m.certified);
    // s = eps = r^2/(16R) sits on the boundary of the allowed range.
    CHECK_NOTHROW((void)check_extremal_gradient_bound(disk, cplx{0.0}, cplx{1.0}, 1.0 / 16));
    CHECK_THROWS_AS((void)check_extremal_gradient_bound(disk, cplx{0.0}, cplx{1.0}, 0.07), PreconditionError);
    CHECK_THROWS_AS((void)check_extremal_gradient_bound(disk, cplx{0.0}, cplx{1.0}, 0.0), PreconditionError);

    const auto ball = DomainSpec::ball(CxPoint{0.0, 0.0}, 1.0);
    auto mb = check_extremal_gradient_bound(ball, CxPoint{0.0, 0.0}, CxPoint{1.0, 0.0}, 0.05, 3);
    CHECK(mb.margin == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("delta_for") {
    const double d = delta_for(0.25, 0.25, 1.0);
    CHECK(d > 0.0);
    CHECK(d < 0.125);
    CHECK(delta_for(0.25, 0.25, 1.0) == d);
    double prev = 1e300;
    for (double R : {1.0, 1.5, 2.0, 4.0}) {
        const double v = delta_for(0.25, 0.25, R);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("norm propagation") {
    const auto disk = DomainSpec::unit_disk();
    const double delta = delta_for(0.25, 0.25, 1.0);
    // |iz| = |z|: the sups are the radii, so the margin is (32R/a) r - (r + delta).
    const double m = check_norm_propagation(disk, kRot, 0.25, 0.25, 1.0, disk_rotation());
    CHECK(m == doctest::Approx(128 * 0.25 - (0.25 + delta)).epsilon(1e-6));
    CHECK(m > 31.0);
    const auto hyp = GroupAction::closed_form(
        "hyperbolic", [](const CxPoint& z, double t) { return CxPoint{std::tanh(t + std::atanh(z[0]))}; }, kHyp);
    CHECK(check_norm_propagation(disk, kHyp, 0.25, 0.25, 1.0, hyp) > 0.0);
}

TEST_CASE("chain cover") {
    const auto seg = segment(1.0, 0.05);
    CHECK(chain_cover(seg, 0.3).n == 5);
    CHECK(chain_cover({CxPoint{0.0}}, 0.3).n == 1);
    CHECK(chain_cover(seg, 2.0).n == 2);
    int prev = 1 << 30;
    for (double d : {0.06, 0.1, 0.2, 0.3, 0.5, 1.5}) {
        const int n = chain_cover(seg, d).n;
        CHECK(n <= prev);
        prev = n;
    }
    CHECK(chain_cover(seg, 0.3).n == chain_cover(seg, 0.3).n);
    CHECK_THROWS_AS((void)chain_cover({CxPoint{0.0}, CxPoint{1.0}}, 0.3), DisconnectedError);
    // Finer spacing than the samples: the path length decides.
    CHECK(chain_length(seg, 0.01) == 2 + 100);
}

TEST_CASE("compact bound") {
    const auto disk = DomainSpec::unit_disk();
    CHECK(check_compact_bound(disk, kRot, segment(0.5, 0.05), 0.1, 0.25) > 0.0);
    CHECK(check_compact_bound(disk, kRot, {CxPoint{0.0}}, 0.1, 0.25) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(check_compact_bound(disk, VectorFieldPoly::planar({1.0}), segment(0.5, 0.05), 0.1, 0.25) >= 0.0);
}

TEST_CASE("m derivative identity") {
    const auto disk = DomainSpec::unit_disk();
    // f = disk automorphism sending w = 0.3 to 0; f(0.6) = 0.3/0.82.
    const auto ce = chain_extremal(disk, 0.3, 0.6);
    REQUIRE(ce);
    const auto f = DiskMap::from(*ce);
    CHECK(check_m_derivative(f, kRot, cplx{0.3}, cplx{0.6}, disk) <= 1e-6);
    CHECK(check_m_derivative(f, VectorFieldPoly::zero(1), cplx{0.3}, cplx{0.6}, disk) <= 1e-12);

    // Independent oracle: the rotation flow is w e^{it}, so m^2(t) has a closed
    // form; its derivative at 0 must match -2p(1-p^2) Re(f'(w) X(w)).
    const double p = 0.3 / 0.82;
    auto m2 = [&](double t) {
        const cplx zeta = ce->value(0.3 * std::exp(1i * t));
        return std::norm((zeta - p) / (1.0 - p * zeta));
    };
    const double h = 1e-5;
    const double fd = (m2(h) - m2(-h)) / (2 * h);
    const double rhs = -2 * p * (1 - p * p) * (ce->derivative(0.3) * 0.3i).real();
    CHECK(std::abs(fd - rhs) <= 1e-8);

    // Rotations f = e^{i theta} z with w = 0 and z = p e^{-i theta}.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    for (int k = 0; k < 5; ++k) {
        const double th = u(rng);
        const auto rot = DiskMap::from(monomial_map(std::polar(1.0, th)));
        CHECK(check_m_derivative(rot, kHyp, cplx{0.0}, std::polar(0.45, -th), disk) <= 1e-6);
    }
    // The exact extremal on Q.
    const auto dq = DomainSpec::disk_minus_disk(0.5, 0.5);
    const auto cq = chain_extremal(dq, -0.5, cplx{-0.3, 0.2});
    REQUIRE(cq);
    CHECK(check_m_derivative(DiskMap::from(*cq), translation_generator(), cplx{-0.5}, cplx{-0.3, 0.2}, dq) <= 1e-6);
    CHECK_THROWS_AS((void)check_m_derivative(DiskMap::from(monomial_map(1.0)), kRot, cplx{0.3}, cplx{0.6}, disk),
                    PreconditionError);
}

TEST_CASE("gram normalization") {
    const CxPoint c{0.0};
    const auto one = VectorFieldPoly::planar({1.0});
    const auto z = VectorFieldPoly::planar({0.0, 1.0});
    auto g = gram_normalize({one}, c, 1.0);
    REQUIRE(g.fields.size() == 1);
    CHECK(std::abs(g.fields[0].planar_coeffs()[0] - 1.0 / std::sqrt(std::numbers::pi)) < 1e-12);
    CHECK(g.volume == doctest::Approx(std::numbers::pi));

    // 1 and z are orthogonal; int |z|^2 over the disk is pi/2.
    g = gram_normalize({one, z}, c, 1.0);
    CHECK(std::abs(g.fields[0].planar_coeffs()[0] - 1.0 / std::sqrt(std::numbers::pi)) < 1e-12);
    const auto zc = g.fields[1].planar_coeffs();
    CHECK(std::abs(zc[0]) < 1e-12);
    CHECK(std::abs(zc[1] - std::sqrt(2.0 / std::numbers::pi)) < 1e-12);
    CHECK(g.max_deviation <= 1e-6);

    try {
        (void)gram_normalize({one, one}, c, 1.0);
        FAIL("expected RankError");
    } catch (const RankError& e) {
        CHECK(e.index() == 2);
    }

    // C^2 ball of radius 1.2: volume pi^2 r^4 / 2.
    const auto z1 = VectorFieldPoly::diagonal(z, 2);
    const VectorFieldPoly e1(2, {{{{0, 0}, 1.0}}, {}});
    const VectorFieldPoly mix(2, {{{{0, 1}, 1.0}}, {{{1, 0}, -1.0}}});
    const CxPoint c2{0.0, 0.0};
    const auto g2 = gram_normalize({e1, z1, mix}, c2, 1.2);
    CHECK(g2.volume == doctest::Approx(std::numbers::pi * std::numbers::pi * std::pow(1.2, 4) / 2).epsilon(1e-12));
    CHECK(g2.max_deviation <= 1e-6);
    // Independent check of orthonormality by Monte Carlo is too coarse; use
    // the quadrature at a different order instead.
    const auto G = l2_gram(g2.fields, c2, 1.2, 24);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(G[i][k] - (i == k ? 1.0 : 0.0)) < 1e-9);
    for (double s : g2.sup_norms) CHECK(s >= 1.0 / std::sqrt(g2.volume) - 1e-6);
}
