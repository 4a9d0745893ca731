#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autdim/conformal.hpp"
#include "autdim/cxpoint.hpp"
#include "autdim/domain.hpp"

namespace autdim {

/// One term coeff * (zeta - base)^exps of a polynomial in n variables.
struct Monomial {
    std::vector<int> exps;
    cplx coeff;
};

/// Candidate map f = h / M into the unit disk with h(base) = 0.
struct ExtremalCandidate {
    std::vector<Monomial> terms;
    double normalizer = 1.0;
    CxPoint base;

    [[nodiscard]] cplx numerator(const CxPoint& z) const;
    [[nodiscard]] cplx value(const CxPoint& z) const { return numerator(z) / normalizer; }
    [[nodiscard]] int degree() const;
    /// Coefficient CSV: one row per term, columns e1..en,re,im.
    [[nodiscard]] std::string to_csv() const;
};

/// Bracket on a Caratheodory quantity; `witness` certifies the lower bound.
struct MetricBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::optional<ExtremalCandidate> witness;
    bool upper_exact = false;
    bool warning = false;
};

/// Poincare distance 1/2 ln((1+m)/(1-m)), m = |(a-b)/(1 - conj(a) b)|.
[[nodiscard]] double poincare_distance(cplx a, cplx b);

/// Exact Caratheodory distance on a domain with a registered chain to the disk.
[[nodiscard]] double model_caratheodory(const DomainSpec& d, cplx z, cplx w);

/// Exact Caratheodory distance on a ball of C^n (automorphism-invariant formula).
[[nodiscard]] double ball_caratheodory(const DomainSpec& ball, const CxPoint& z, const CxPoint& w);

/// Infinitesimal Caratheodory length |chain'(w)| |Y| / (1 - |chain(w)|^2).
[[nodiscard]] double caratheodory_length_model(const DomainSpec& d, cplx w, cplx y);

struct ExtremalOptions {
    int degree = 4;
    int budget = 600;     // simplex iterations per restart
    int restarts = 8;
    std::uint64_t seed = 0;
};

/// Maximizes rho(0, f(z)) over polynomial candidates vanishing at w, by
/// restarted Nelder-Mead over the coefficients. Deterministic per seed.
[[nodiscard]] MetricBounds extremal_search(const DomainSpec& d, const CxPoint& w, const CxPoint& z,
                                           const ExtremalOptions& opts = {});

/// |Y|/R <= C_D(w, Y) <= |Y|/r from the inscribed and circumscribed balls.
[[nodiscard]] MetricBounds sandwich_bounds(const DomainSpec& d, const CxPoint& w, const CxPoint& y);

/// Exact gradient of f = h/M at w.
[[nodiscard]] CxPoint extremal_gradient(const ExtremalCandidate& c, const CxPoint& w);

/// Exact extremal function for (w, z) on a chain-registered planar domain:
/// the disk automorphism sending chain(w) to 0, rotated so f(z) > 0.
struct ChainExtremal {
    ConformalChain chain;
    cplx center;    // chain(w)
    cplx rotation;  // unit modulus

    [[nodiscard]] cplx value(cplx zeta) const;
    [[nodiscard]] cplx derivative(cplx zeta) const;
};
[[nodiscard]] std::optional<ChainExtremal> chain_extremal(const DomainSpec& d, cplx w, cplx z);

}  // namespace autdim
