#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "doctest.h"

#include "autdim/dim_estimator.hpp"
#include "autdim/flow.hpp"

using namespace autdim;
using namespace std::complex_literals;

namespace {

// Independent rank oracle on the same rows: full-pivot LU with a relative threshold.
int lu_nullity(const TangencySystem& s) {
    Eigen::MatrixXd m(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t k = 0; k < s.cols(); ++k) m(i, k) = s.matrix[i][k];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-7);
    return static_cast<int>(s.cols()) - static_cast<int>(lu.rank());
}

double tangency_defect(const VectorFieldPoly& x, const std::vector<BoundarySample>& samples) {
    double worst = 0;
    for (const auto& b : samples)
        worst = std::max(worst, std::abs((x(b.point)[0] * std::conj(b.normal[0])).real()));
    return worst;
}

}  // namespace

TEST_CASE("tangency matrix shape and rows") {
    const auto s = tangency_matrix(DomainSpec::unit_disk(), 2, 2 * std::numbers::pi / 64);
    CHECK(s.rows() == 64);
    CHECK(s.cols() == 6);
    // Sample 0 is z = 1 with normal 1: Re(c z^k) = Re c for every k.
    REQUIRE(std::abs(s.samples[0].point[0] - 1.0) < 1e-15);
    const std::vector<double> expect{1, 0, 1, 0, 1, 0};
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(s.matrix[0][k] - expect[k]) < 1e-15);
    CHECK_THROWS_AS((void)tangency_matrix(std::vector<BoundarySample>(5, s.samples[0]), 2), UnderdeterminedError);
}

TEST_CASE("dimension estimates") {
    struct Case {
        DomainSpec d;
        int dim;
    };
    const std::vector<Case> cases{{DomainSpec::unit_disk(), 3},
                                  {DomainSpec::ellipse(2.0, 1.0), 0},
                                  {DomainSpec::annulus(0.3, 1.0), 1}};
    for (const auto& c : cases) {
        for (double density : {0.02, 0.01}) {
            const auto rep = aut_dim_estimate(c.d, 2, 1e-8, density);
            CHECK(rep.estimated_dim == c.dim);
            CHECK(rep.gap_ratio >= 10.0);
            CHECK(lu_nullity(tangency_matrix(c.d, 2, density)) == c.dim);
            CHECK(rep.null_fields.size() == static_cast<std::size_t>(c.dim));
            const auto samples = boundary_samples(c.d, density);
            for (const auto& f : rep.null_fields) CHECK(tangency_defect(f, samples) < 1e-8);
        }
    }
    // Known disk fields alpha + i beta z - conj(alpha) z^2 annihilate the rows.
    const auto s = tangency_matrix(DomainSpec::unit_disk(), 2, 0.05);
    const cplx alpha{0.3, -0.7};
    const double beta = 1.1;
    const std::vector<double> v{alpha.real(), alpha.imag(), 0.0, beta, -alpha.real(), alpha.imag()};
    for (const auto& row : s.matrix) {
        double dot = 0;
        for (std::size_t k = 0; k < 6; ++k) dot += row[k] * v[k];
        CHECK(std::abs(dot) < 1e-12);
    }
    const auto ell = aut_dim_estimate(DomainSpec::ellipse(2.0, 1.0), 2);
    CHECK(ell.singular_values.size() == 6);
    CHECK(ell.singular_values.back() > 1e-8 * ell.singular_values.front());
}

TEST_CASE("scale invariance of the normals") {
    for (const auto& d : {DomainSpec::unit_disk(), DomainSpec::annulus(0.3, 1.0), DomainSpec::ellipse(2.0, 1.0)}) {
        auto samples = boundary_samples(d, 0.02);
        const int base = aut_dim_estimate(tangency_matrix(samples, 2)).estimated_dim;
        for (auto& b : samples) b.normal = b.normal * 2.5;
        CHECK(aut_dim_estimate(tangency_matrix(samples, 2)).estimated_dim == base);
    }
}

TEST_CASE("disk null fields generate complete flows") {
    const auto disk = DomainSpec::unit_disk();
    const auto rep = aut_dim_estimate(disk, 2);
    REQUIRE(rep.null_fields.size() == 3);
    for (const auto& x : rep.null_fields)
        for (int k = 0; k < 20; ++k) {
            const cplx z0 = std::polar(0.05 + 0.045 * k, 0.9 * k);
            for (double t : {-1.0, 1.0}) {
                CxPoint end;
                CHECK_NOTHROW(end = flow(x, z0, t, 1e-8, disk));
                CHECK(end.norm() < 1.0);
            }
        }
}

TEST_CASE("semicontinuity experiments") {
    SUBCASE("ellipses shrinking to the disk") {
        std::vector<std::pair<double, DomainSpec>> fam;
        for (double e : {0.5, 0.2, 0.1, 0.05}) fam.emplace_back(e, DomainSpec::ellipse(1 + e, 1.0));
        const auto t = semicontinuity_experiment(fam, DomainSpec::unit_disk(), 2);
        REQUIRE(t.members.size() == 4);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(t.members[k].dim.estimated_dim == 0);
            CHECK(t.members[k].hausdorff == doctest::Approx(fam[k].first).epsilon(0.05));
        }
        CHECK(t.limit.estimated_dim == 3);
        CHECK(t.holds);
    }
    SUBCASE("constant family") {
        std::vector<std::pair<double, DomainSpec>> fam;
        for (int k = 0; k < 3; ++k) fam.emplace_back(k, DomainSpec::unit_disk());
        const auto t = semicontinuity_experiment(fam, DomainSpec::unit_disk(), 2);
        for (const auto& m : t.members) {
            CHECK(m.dim.estimated_dim == 3);
            CHECK(m.hausdorff == 0.0);
        }
        CHECK(t.holds);
    }
    SUBCASE("annuli") {
        std::vector<std::pair<double, DomainSpec>> fam;
        for (int j = 3; j <= 6; ++j) fam.emplace_back(j, DomainSpec::annulus(0.3 - std::ldexp(1.0, -j), 1.0));
        const auto t = semicontinuity_experiment(fam, DomainSpec::annulus(0.3, 1.0), 2);
        for (const auto& m : t.members) CHECK(m.dim.estimated_dim == 1);
        CHECK(t.limit.estimated_dim == 1);
        CHECK(t.holds);
    }
}

TEST_CASE("field convergence") {
    std::vector<int> js;
    for (int j = 3; j <= 10; ++j) js.push_back(j);
    const auto r = field_convergence_experiment(js, CxPoint{cplx{-0.5}}, 0.2, 0.1);
    REQUIRE(r.sup_deviations.size() == js.size());
    for (std::size_t k = 1; k < js.size(); ++k) CHECK(r.sup_deviations[k] < r.sup_deviations[k - 1]);
    CHECK(r.sup_deviations.back() < 1e-2);
    for (double d : r.sup_deviations) CHECK(std::isfinite(d));

    // A family equal to its limit has zero deviation.
    const VectorFieldPoly lim = VectorFieldPoly::planar({-0.5i, 1i, -0.5i});
    const auto same = field_convergence({1, 2}, {lim, lim.scaled(3.0)}, lim, CxPoint{cplx{-0.5}}, 0.2,
                                        {CxPoint{cplx{-0.5}}, CxPoint{cplx{-0.45}}});
    for (double d : same.sup_deviations) CHECK(d < 1e-12);
}
