#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"

#include "autdim/gallery.hpp"
#include "autdim/metric.hpp"

using namespace autdim;
using namespace std::complex_literals;

namespace {

// Inverse of phi, solved by hand: w = (u - i)/(u + i).
cplx phi_inv(cplx u) { return (u - 1i) / (u + 1i); }

std::vector<CxPoint> random_points(const DomainSpec& d, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<CxPoint> out;
    while (static_cast<int>(out.size()) < n) {
        CxPoint p(d.dim());
        for (std::size_t k = 0; k < d.dim(); ++k) p[k] = {u(rng), u(rng)};
        if (contains(d, p)) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("phi and g_t") {
    CHECK(std::abs(phi(0.0) - 1i) < 1e-15);
    CHECK(std::abs(phi(-1.0)) < 1e-15);
    const cplx v = phi(-0.5);
    CHECK(std::abs(v - 1i / 3.0) < 1e-15);
    CHECK(v.imag() > 0.0);
    CHECK(v.imag() < 1.0);
    CHECK_THROWS_AS((void)phi(1.0), PoleError);

    CHECK(g_t(0.3 + 0.2i, 0.0) == 0.3 + 0.2i);
    for (double t : {-3.0, 0.5, 7.0}) CHECK(std::abs(g_t(1.0, t) - 1.0) < 1e-15);
    for (cplx w : {cplx{-0.5}, cplx{0.1, 0.6}, cplx{-0.3, -0.4}})
        for (double t : {-2.0, 0.3, 1.7}) CHECK(std::abs(g_t(w, t) - phi_inv(phi(w) + t)) < 1e-12);
    // phi maps Q into the strip.
    const auto q = DomainSpec::disk_minus_disk(0.5, 0.5);
    for (const auto& p : random_points(q, 200, 1)) {
        const double im = phi(p[0]).imag();
        CHECK(im > 0.0);
        CHECK(im < 1.0);
    }
}

TEST_CASE("family members") {
    const auto m3 = Example1Family::member(3);
    CHECK(m3.center() == doctest::Approx(0.375));
    CHECK_FALSE(m3.is_limit());
    CHECK(Example1Family::limit().is_limit());
    CHECK(Example1Family::limit().center() == 0.5);
    CHECK_THROWS_AS((void)Example1Family::member(1), PreconditionError);
    for (int j = 3; j <= 10; ++j) {
        const double h = hausdorff_distance(Example1Family::member(j).qpart, Example1Family::limit().qpart, 0.005);
        CHECK(h >= std::ldexp(1.0, -j) / 2);
        CHECK(h <= std::ldexp(1.0, -j) * 2);
    }
}

TEST_CASE("F_t") {
    const CxPoint p{-0.5, 0.0};
    CHECK(F_t(p, 0.0) == p);
    const auto img = F_t(p, 1.0);
    const auto lim = Example1Family::limit();
    CHECK(contains(lim.qpart, img[0]));
    CHECK(std::abs(img[1]) < 1.0);
    CHECK(img[0] != img[1]);
    CHECK(contains(lim.product, img));
    CHECK_THROWS_AS((void)F_t(CxPoint{-0.5, -0.5}, 1.0), OutsideDomainError);
    // Q-slice distances are preserved.
    for (double t : {0.1, -1.0, 5.0})
        CHECK(std::abs(model_caratheodory(lim.qpart, g_t(-0.5, t), g_t(-0.25, t)) -
                       model_caratheodory(lim.qpart, -0.5, -0.25)) <= 1e-9);
}

TEST_CASE("rotation action on D_j") {
    const auto fam = Example1Family::member(4);
    const auto a = annulus_rotation_action(fam);
    const CxPoint p{-0.6, 0.2i};
    CHECK(distance(a(p, 0.0), p) < 1e-15);
    CHECK(distance(a(p, 2 * std::numbers::pi), p) < 1e-12);
    CHECK_THROWS_AS((void)annulus_rotation_action(Example1Family::limit()), TangencyError);

    // Generator is the t-derivative at 0.
    const auto a1 = annulus_rotation_action(fam, 1);
    const auto x = rotation_generator(fam);
    const double h = 1e-6;
    for (cplx z : {cplx{-0.6}, cplx{0.1, 0.7}}) {
        const cplx fd = (a1(z, h)[0] - a1(z, -h)[0]) / (2 * h);
        CHECK(std::abs(fd - x(z)[0]) < 1e-8);
    }
    // The rotation preserves both boundary circles of Q_j.
    for (int k = 0; k < 12; ++k) {
        const cplx outer = std::polar(1.0, 0.5 * k);
        const cplx inner = fam.center() + std::polar(0.5, 0.5 * k);
        CHECK(std::abs(std::abs(a1(outer, 0.8)[0]) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(a1(inner, 0.8)[0] - fam.center()) - 0.5) < 1e-12);
    }
}

TEST_CASE("group laws of the gallery actions") {
    std::vector<std::pair<GroupAction, DomainSpec>> cases;
    cases.emplace_back(translation_action(2), Example1Family::limit().product);
    for (int j : {3, 6})
        cases.emplace_back(annulus_rotation_action(Example1Family::member(j)), Example1Family::member(j).product);
    for (const auto& [a, d] : cases) {
        const auto pts = random_points(d, 10, 5);
        for (const auto& p : pts)
            for (double t : {-2.0, -0.5, 0.7, 3.0})
                for (double s : {-1.0, 0.0, 0.4, 2.5}) CHECK(group_property_residual(a, p, t, s, d) <= 1e-10);
    }
}

TEST_CASE("automorphy on random points") {
    std::vector<std::pair<GroupAction, DomainSpec>> cases;
    cases.emplace_back(translation_action(2), Example1Family::limit().product);
    cases.emplace_back(annulus_rotation_action(Example1Family::member(3)), Example1Family::member(3).product);
    cases.emplace_back(annulus_rotation_action(Example1Family::member(8)), Example1Family::member(8).product);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ut(-4, 4);
    for (const auto& [a, d] : cases) {
        int bad = 0;
        for (const auto& p : random_points(d, 1000, 23)) {
            const double t = ut(rng);
            const auto img = a(p, t);
            if (!contains(d, img)) ++bad;
            if (distance(a(img, -t), p) > 1e-10) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("orbit classifier") {
    const CxPoint z0{-0.5, 0.0};
    for (int j : {3, 6, 10}) {
        const auto fam = Example1Family::member(j);
        const auto r = orbit_classifier(fam.product, annulus_rotation_action(fam), z0, 8 * std::numbers::pi);
        CHECK(r.classification == OrbitClass::Compact);
        CHECK(r.min_boundary_dist >= 10 * OrbitTolerances{}.compact);
        CHECK(r.recurrence_gap <= 1e-8);
        CHECK(std::fmod(r.recurrence_time + 1e-6, 2 * std::numbers::pi) < 1e-4);
    }
    const auto lim = Example1Family::limit();
    const auto rl = orbit_classifier(lim.product, translation_action(2), z0, 50.0);
    CHECK(rl.classification == OrbitClass::Noncompact);
    // Every point drifts toward the fixed boundary point 1.
    CHECK(std::abs(g_t(-0.5, 1e6) - 1.0) < 1e-5);

    const auto still = GroupAction::closed_form("trivial", [](const CxPoint& z, double) { return z; });
    const auto rt = orbit_classifier(lim.product, still, z0, 10.0);
    CHECK(rt.classification == OrbitClass::Compact);
    CHECK(rt.recurrence_gap == 0.0);
    CHECK(std::string(to_string(OrbitClass::Noncompact)) == "Noncompact");
}
