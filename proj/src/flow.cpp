#include "autdim/flow.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace autdim {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;
using Stepper = odeint::runge_kutta_dopri5<State>;

constexpr std::size_t kMaxSteps = 1'000'000;
constexpr double kExitResolution = 1e-6;
const cplx kI{0.0, 1.0};

State to_state(const CxPoint& z) {
    State s(2 * z.dim());
    for (std::size_t k = 0; k < z.dim(); ++k) {
        s[2 * k] = z[k].real();
        s[2 * k + 1] = z[k].imag();
    }
    return s;
}

CxPoint from_state(const State& s) {
    CxPoint z(s.size() / 2);
    for (std::size_t k = 0; k < z.dim(); ++k) z[k] = cplx{s[2 * k], s[2 * k + 1]};
    return z;
}

struct FieldSystem {
    const VectorFieldPoly* x;
    void operator()(const State& s, State& ds, double /*t*/) const {
        const CxPoint v = (*x)(from_state(s));
        for (std::size_t k = 0; k < v.dim(); ++k) {
            ds[2 * k] = v[k].real();
            ds[2 * k + 1] = v[k].imag();
        }
    }
};

// Integrate from (t0, state) to t1, updating `state` in place.
void integrate_leg(const VectorFieldPoly& x, State& state, double t0, double t1, double tol, const DomainSpec& d) {
    if (t1 == t0) return;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    FieldSystem sys{&x};
    auto controlled = odeint::make_controlled(tol, 0.0, Stepper());
    double t = t0;
    double dt = dir * std::min(std::abs(t1 - t0), 0.05);
    const double min_dt = 1e-14 * std::max(1.0, std::abs(t1));
    std::size_t steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > kMaxSteps) throw StiffnessError("flow: step budget exhausted");
        bool last = false;
        if (dir * (t + dt - t1) >= 0.0) {
            dt = t1 - t;
            last = true;
        }
        const State prev = state;
        const double t_prev = t;
        const double dt_try = dt;
        const auto res = controlled.try_step(sys, state, t, dt);
        if (res == odeint::fail) {
            if (std::abs(dt) < min_dt) throw StiffnessError("flow: step size underflow");
            continue;
        }
        if (last && dt_try == t1 - t_prev) t = t1;
        if (!contains(d, from_state(state))) {
            // Bisect the accepted step for the exit time.
            double lo = 0.0, hi = t - t_prev;
            Stepper plain;
            while (std::abs(hi - lo) > kExitResolution) {
                const double mid = 0.5 * (lo + hi);
                State trial = prev;
                plain.do_step(sys, trial, t_prev, mid);
                if (contains(d, from_state(trial))) lo = mid;
                else hi = mid;
            }
            throw EscapeError(t_prev + 0.5 * (lo + hi), "flow: trajectory exits " + d.name());
        }
        if (std::abs(dt) < min_dt && dir * (t1 - t) > 0.0) throw StiffnessError("flow: step size underflow");
    }
}

CxPoint checked(const CxPoint& p, double t, const DomainSpec& d) {
    if (!contains(d, p)) throw EscapeError(t, "group action leaves " + d.name());
    return p;
}

}  // namespace

CxPoint flow(const VectorFieldPoly& x, const CxPoint& z, double t, double tol, const DomainSpec& d) {
    if (x.dim() != z.dim()) throw DimensionError("flow: field and point dimensions differ");
    if (!(tol > 0.0)) throw PreconditionError("flow: tolerance must be positive");
    if (!contains(d, z)) throw OutsideDomainError("flow: initial point outside " + d.name());
    if (t == 0.0) return z;
    State s = to_state(z);
    integrate_leg(x, s, 0.0, t, tol, d);
    return from_state(s);
}

std::vector<CxPoint> flow_samples(const VectorFieldPoly& x, const CxPoint& z, const std::vector<double>& times,
                                  double tol, const DomainSpec& d) {
    if (!contains(d, z)) throw OutsideDomainError("flow_samples: initial point outside " + d.name());
    std::vector<CxPoint> out;
    out.reserve(times.size());
    State s = to_state(z);
    double t = 0.0;
    for (double target : times) {
        integrate_leg(x, s, t, target, tol, d);
        t = target;
        out.push_back(from_state(s));
    }
    return out;
}

GroupAction GroupAction::closed_form(std::string name, Map map, std::optional<VectorFieldPoly> field) {
    GroupAction a;
    a.name_ = std::move(name);
    a.map_ = std::move(map);
    a.field_ = std::move(field);
    return a;
}

GroupAction GroupAction::from_field(std::string name, VectorFieldPoly field, double tol, DomainSpec domain) {
    GroupAction a;
    a.name_ = std::move(name);
    a.field_ = std::move(field);
    a.tol_ = tol;
    a.domain_ = std::move(domain);
    return a;
}

CxPoint GroupAction::operator()(const CxPoint& z, double t) const {
    if (map_) return map_(z, t);
    return flow(*field_, z, t, tol_, *domain_);
}

double group_property_residual(const GroupAction& a, const CxPoint& z, double t, double s, const DomainSpec& d) {
    checked(z, 0.0, d);
    const CxPoint direct = checked(a(z, t + s), t + s, d);
    const CxPoint mid = checked(a(z, t), t, d);
    const CxPoint composed = checked(a(mid, s), s, d);
    return distance(direct, composed);
}

double infinitesimal_residual(const GroupAction& a, const CxPoint& z, double t, const DomainSpec& d) {
    if (!a.field()) throw PreconditionError("infinitesimal_residual: action has no generating field");
    const auto& x = *a.field();
    constexpr double h = 1e-5;
    checked(z, 0.0, d);
    const CxPoint g = checked(a(z, t), t, d);
    const CxPoint xz = x(z);
    const std::size_t n = z.dim();
    CxPoint jx(n);
    for (std::size_t k = 0; k < n; ++k) {
        CxPoint e(n);
        e[k] = h;
        const CxPoint col = (checked(a(z + e, t), t, d) - checked(a(z - e, t), t, d)) * (1.0 / (2.0 * h));
        jx += col * xz[k];
    }
    return distance(x(g), jx);
}

CxPoint complexify(const VectorFieldPoly& x, const CxPoint& z, const ComplexTimePoint& zeta, double tol,
                   const DomainSpec& d) {
    if (!(std::abs(zeta.zeta.imag()) < zeta.tau))
        throw PreconditionError("complexify: |Im zeta| must be below the horizon tau");
    const CxPoint h = flow(x.scaled(kI), z, zeta.zeta.imag(), tol, d);
    return flow(x, h, zeta.zeta.real(), tol, d);
}

double cr_residual(const VectorFieldPoly& x, const CxPoint& z, const ComplexTimePoint& zeta, const DomainSpec& d) {
    constexpr double h = 1e-4;
    constexpr double tol = 1e-12;
    // The finite-difference stencil needs room inside the horizon.
    const ComplexTimePoint wide{zeta.zeta, zeta.tau + 2.0 * h};
    auto at = [&](cplx dz) { return complexify(x, z, {zeta.zeta + dz, wide.tau}, tol, d); };
    const CxPoint g = at(0.0);
    const CxPoint dt = (at(h) - at(-h)) * (1.0 / (2.0 * h));
    const CxPoint ds = (at(cplx{0.0, h}) - at(cplx{0.0, -h})) * (1.0 / (2.0 * h));
    const CxPoint xg = x(g);
    if (!(std::abs(zeta.zeta.imag()) < zeta.tau))
        throw PreconditionError("cr_residual: |Im zeta| must be below the horizon tau");
    return distance(dt, xg) + distance(ds, xg * kI);
}

double sup_norm_ball(const VectorFieldPoly& x, const CxPoint& center, double radius) {
    if (x.dim() != center.dim()) throw DimensionError("sup_norm_ball: dimension mismatch");
    double best = 0.0;
    if (center.dim() == 1) {
        const double h = radius / 64.0;
        best = x(center).norm();
        for (int ring = 1; ring <= 64; ++ring) {
            const double r = ring * h;
            const int count = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * r / h)));
            for (int i = 0; i < count; ++i) {
                const cplx p = center[0] + std::polar(r, 2.0 * std::numbers::pi * i / count);
                best = std::max(best, x(CxPoint{p}).norm());
            }
        }
        return best;
    }
    if (center.dim() == 2) {
        const DomainSpec ball = DomainSpec::ball(center, radius);
        best = boundary_sup(ball, [&x](const CxPoint& p) { return x(p).norm(); }, radius / 16.0);
        return std::max(best, x(center).norm());
    }
    throw DimensionError("sup_norm_ball supports n <= 2");
}

double imaginary_horizon(const VectorFieldPoly& x, const std::vector<CxPoint>& k_samples, double delta,
                         const DomainSpec& d) {
    if (!(delta > 0.0)) throw PreconditionError("imaginary_horizon: delta must be positive");
    if (k_samples.empty()) throw PreconditionError("imaginary_horizon: empty compact sample");
    double a = 0.0;
    for (const auto& p : k_samples) {
        if (dist_to_boundary(d, p) < 3.0 * delta)
            throw PreconditionError("imaginary_horizon: 3 delta-neighborhood of K leaves the domain");
        a = std::max(a, sup_norm_ball(x, p, 2.0 * delta));
    }
    if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
    return 0.5 * delta / (2.0 * a);
}

}  // namespace autdim
