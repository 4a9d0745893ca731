#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "autdim/cxpoint.hpp"
#include "autdim/domain.hpp"

namespace autdim {

namespace steps {
/// (a z + b) / (c z + d), ad - bc != 0.
struct Mobius {
    cplx a, b, c, d;
};
/// exp(scale * z).
struct Exp {
    cplx scale;
};
/// Principal log(z - center).
struct Log {
    cplx center;
};
/// Principal z^exponent.
struct Power {
    double exponent;
};
/// m z + q.
struct Affine {
    cplx m, q;
};
}  // namespace steps

using ChainStep = std::variant<steps::Mobius, steps::Exp, steps::Log, steps::Power, steps::Affine>;

/// Composition of elementary one-variable holomorphic maps, applied in order.
class ConformalChain {
public:
    ConformalChain() = default;
    explicit ConformalChain(std::vector<ChainStep> steps);

    ConformalChain& then(ChainStep step);
    ConformalChain& then(const ConformalChain& other);

    [[nodiscard]] cplx operator()(cplx z) const { return eval(z).first; }
    [[nodiscard]] cplx derivative(cplx z) const { return eval(z).second; }
    /// Value and derivative in one pass (chain rule).
    [[nodiscard]] std::pair<cplx, cplx> eval(cplx z) const;

    [[nodiscard]] const std::vector<ChainStep>& steps() const noexcept { return steps_; }

    /// Sampling check of the chain invariants: images of `samples` pairwise
    /// distinct (relative separation 1e-12) and derivative nonzero everywhere.
    [[nodiscard]] bool injective_on(std::span<const cplx> samples) const;

private:
    std::vector<ChainStep> steps_;
};

/// The Cayley map of the upper half-plane onto the unit disk.
[[nodiscard]] steps::Mobius cayley();

/// Registered chain mapping a simply connected model domain onto the unit disk,
/// or nothing when no closed form is known (annulus, ellipse, products, ...).
[[nodiscard]] std::optional<ConformalChain> chain_to_disk(const DomainSpec& d);

}  // namespace autdim
