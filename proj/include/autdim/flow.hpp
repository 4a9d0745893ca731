#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autdim/cxpoint.hpp"
#include "autdim/domain.hpp"
#include "autdim/vector_field.hpp"

namespace autdim {

/// Adaptive Dormand-Prince 5(4) solution of dg/dt = X(g), g(0) = z, at time t.
/// Local error per step <= tol (absolute). Membership in `d` is checked after
/// every accepted step; an exit throws EscapeError with the exit time located
/// by bisection to 1e-6.
[[nodiscard]] CxPoint flow(const VectorFieldPoly& x, const CxPoint& z, double t, double tol, const DomainSpec& d);

/// Flow sampled at `times` (ascending in |t|, same sign), integrating from
/// one sample to the next.
[[nodiscard]] std::vector<CxPoint> flow_samples(const VectorFieldPoly& x, const CxPoint& z,
                                                const std::vector<double>& times, double tol, const DomainSpec& d);

/// One-parameter group action: either a closed-form family or the flow of a field.
class GroupAction {
public:
    using Map = std::function<CxPoint(const CxPoint&, double)>;

    static GroupAction closed_form(std::string name, Map map, std::optional<VectorFieldPoly> field = std::nullopt);
    static GroupAction from_field(std::string name, VectorFieldPoly field, double tol, DomainSpec domain);

    [[nodiscard]] CxPoint operator()(const CxPoint& z, double t) const;
    [[nodiscard]] const std::optional<VectorFieldPoly>& field() const noexcept { return field_; }
    [[nodiscard]] bool is_flow() const noexcept { return !map_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double tol() const noexcept { return tol_; }

private:
    GroupAction() = default;
    std::string name_;
    Map map_;
    std::optional<VectorFieldPoly> field_;
    double tol_ = 0.0;
    std::optional<DomainSpec> domain_;
};

/// |g(z, t+s) - g(g(z, t), s)|.
[[nodiscard]] double group_property_residual(const GroupAction& a, const CxPoint& z, double t, double s,
                                             const DomainSpec& d);

/// |X(g(z,t)) - J(z,t) X(z)| with J by central differences (h = 1e-5).
[[nodiscard]] double infinitesimal_residual(const GroupAction& a, const CxPoint& z, double t, const DomainSpec& d);

/// Complex time zeta = t + i s with |s| < tau.
struct ComplexTimePoint {
    cplx zeta;
    double tau;
};

/// G(z, t + i s) = g(h(z, s), t), where h is the flow of iX.
[[nodiscard]] CxPoint complexify(const VectorFieldPoly& x, const CxPoint& z, const ComplexTimePoint& zeta,
                                 double tol, const DomainSpec& d);

/// |dG/dt - X(G)| + |dG/ds - iX(G)| by central differences (step 1e-4).
[[nodiscard]] double cr_residual(const VectorFieldPoly& x, const CxPoint& z, const ComplexTimePoint& zeta,
                                 const DomainSpec& d);

/// tau = delta / (2A) halved, A = sup |X| over the 2 delta-neighborhood of
/// the sample cloud (A is estimated by sampling, hence the halving).
[[nodiscard]] double imaginary_horizon(const VectorFieldPoly& x, const std::vector<CxPoint>& k_samples, double delta,
                                       const DomainSpec& d);

/// sup |X| over the ball B(center, radius): boundary sphere plus interior
/// samples at resolution radius/64 (radius/16 in C^2).
[[nodiscard]] double sup_norm_ball(const VectorFieldPoly& x, const CxPoint& center, double radius);

}  // namespace autdim
