#pragma once

#include <optional>
#include <vector>

#include "autdim/cxpoint.hpp"
#include "autdim/domain.hpp"
#include "autdim/flow.hpp"
#include "autdim/vector_field.hpp"

namespace autdim {

/// phi(w) = -i (w + 1)/(w - 1): the disk onto the upper half-plane, Q onto 0 < Im < 1.
[[nodiscard]] cplx phi(cplx w);

/// g_t(w) = phi^{-1}(phi(w) + t) = (2w + i(w-1)t) / (2 + i(w-1)t).
[[nodiscard]] cplx g_t(cplx w, double t);

/// Generator of g_t: d/dt g_t(w) at t = 0, i.e. -(i/2)(w - 1)^2.
[[nodiscard]] VectorFieldPoly translation_generator();

/// The domains D_j (finite j >= 2) and the limit D.
struct Example1Family {
    std::optional<int> j;  // nullopt for the limit
    DomainSpec qpart;
    DomainSpec product;

    static Example1Family member(int j);
    static Example1Family limit();

    [[nodiscard]] bool is_limit() const noexcept { return !j.has_value(); }
    /// Center of the removed disk: 1/2 - 2^{-j}, or 1/2 for the limit.
    [[nodiscard]] double center() const;
};

/// F_t(z, w) = (g_t(z), g_t(w)) on the limit domain D.
[[nodiscard]] CxPoint F_t(const CxPoint& p, double t);

/// g_t acting on every coordinate (n = 2 gives F_t on D, n = 1 g_t on Q),
/// closed form with its generating field.
[[nodiscard]] GroupAction translation_action(std::size_t n = 2);

/// Mobius-conjugated rotation of Q_j: mu^{-1}(e^{it} mu(z)) with mu sending
/// the boundary circles of Q_j to concentric ones. `n = 2` acts diagonally
/// on D_j, `n = 1` on Q_j alone.
[[nodiscard]] GroupAction annulus_rotation_action(const Example1Family& fam, std::size_t n = 2);

/// Generator of the rotation action on Q_j: i (z - p)(1 - conj(p) z)/(1 - |p|^2).
[[nodiscard]] VectorFieldPoly rotation_generator(const Example1Family& fam);

enum class OrbitClass { Compact, Noncompact, Undetermined };

[[nodiscard]] const char* to_string(OrbitClass c);

struct OrbitReport {
    OrbitClass classification = OrbitClass::Undetermined;
    double min_boundary_dist = 0.0;
    double recurrence_gap = 0.0;
    double recurrence_time = 0.0;  // time of the nearest return
    double horizon = 0.0;
    std::vector<double> times;
    std::vector<CxPoint> points;
};

struct OrbitTolerances {
    double compact = 1e-6;   // eps_c
    double recur = 1e-8;     // eps_r
    double escape = 1e-2;    // eps_esc
};

/// Samples {g(z0, t) : |t| <= tmax} at step tmax/1000, tracks the minimal
/// boundary distance and the nearest return to z0 for |t| >= 1.
[[nodiscard]] OrbitReport orbit_classifier(const DomainSpec& d, const GroupAction& a, const CxPoint& z0, double tmax,
                                           const OrbitTolerances& tols = {});

}  // namespace autdim
