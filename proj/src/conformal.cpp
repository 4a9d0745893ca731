#include "autdim/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace autdim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};

std::pair<cplx, cplx> apply(const ChainStep& step, cplx z) {
    return std::visit(
        [z](const auto& s) -> std::pair<cplx, cplx> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, steps::Mobius>) {
                const cplx den = s.c * z + s.d;
                if (den == cplx{0.0, 0.0}) throw PoleError("Mobius step evaluated at its pole");
                return {(s.a * z + s.b) / den, (s.a * s.d - s.b * s.c) / (den * den)};
            } else if constexpr (std::is_same_v<T, steps::Exp>) {
                const cplx v = std::exp(s.scale * z);
                return {v, s.scale * v};
            } else if constexpr (std::is_same_v<T, steps::Log>) {
                const cplx u = z - s.center;
                if (u == cplx{0.0, 0.0}) throw PoleError("Log step evaluated at its branch point");
                return {std::log(u), 1.0 / u};
            } else if constexpr (std::is_same_v<T, steps::Power>) {
                if (z == cplx{0.0, 0.0}) throw PoleError("Power step evaluated at the origin");
                const cplx v = std::exp(s.exponent * std::log(z));
                return {v, s.exponent * v / z};
            } else {
                return {s.m * z + s.q, s.m};
            }
        },
        step);
}

double wrap(double a) {
    double x = std::fmod(a, kTwoPi);
    return x < 0 ? x + kTwoPi : x;
}

}  // namespace

ConformalChain::ConformalChain(std::vector<ChainStep> steps) : steps_(std::move(steps)) {
    for (const auto& s : steps_)
        if (const auto* m = std::get_if<steps::Mobius>(&s); m && m->a * m->d - m->b * m->c == cplx{0.0, 0.0})
            throw DegenerateInputError("Mobius step with ad - bc = 0");
}

ConformalChain& ConformalChain::then(ChainStep step) {
    if (const auto* m = std::get_if<steps::Mobius>(&step); m && m->a * m->d - m->b * m->c == cplx{0.0, 0.0})
        throw DegenerateInputError("Mobius step with ad - bc = 0");
    steps_.push_back(step);
    return *this;
}

ConformalChain& ConformalChain::then(const ConformalChain& other) {
    for (const auto& s : other.steps_) steps_.push_back(s);
    return *this;
}

std::pair<cplx, cplx> ConformalChain::eval(cplx z) const {
    cplx v = z;
    cplx dv{1.0, 0.0};
    for (const auto& s : steps_) {
        const auto [nv, dnv] = apply(s, v);
        v = nv;
        dv *= dnv;
    }
    return {v, dv};
}

bool ConformalChain::injective_on(std::span<const cplx> samples) const {
    std::vector<cplx> img;
    img.reserve(samples.size());
    for (const auto z : samples) {
        const auto [v, dv] = eval(z);
        if (dv == cplx{0.0, 0.0} || !std::isfinite(std::abs(v))) return false;
        img.push_back(v);
    }
    for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j) {
            if (samples[i] == samples[j]) continue;
            const double scale = std::max({1.0, std::abs(img[i]), std::abs(img[j])});
            if (std::abs(img[i] - img[j]) <= 1e-12 * scale) return false;
        }
    return true;
}

steps::Mobius cayley() { return {1.0, -kI, 1.0, kI}; }

std::optional<ConformalChain> chain_to_disk(const DomainSpec& d) {
    if (d.as<shapes::UnitDisk>()) return ConformalChain{};
    if (const auto* b = d.as<shapes::Ball>()) {
        if (b->center.dim() != 1) return std::nullopt;
        return ConformalChain({steps::Affine{1.0 / b->radius, -b->center[0] / b->radius}});
    }
    if (d.as<shapes::UpperHalfPlane>()) return ConformalChain({cayley()});
    if (d.as<shapes::Strip>()) return ConformalChain({steps::Exp{std::numbers::pi}, cayley()});
    const auto* q = d.as<shapes::DiskMinusDisk>();
    if (!q) return std::nullopt;

    const double ca = std::abs(q->c);
    const double rho = q->rho;
    if (ca == 0.0) return std::nullopt;
    const cplx t = q->c / ca;
    const double lambda = (1.0 - ca * ca - rho * rho) / (2.0 * rho * ca);
    if (lambda <= -1.0) return ConformalChain{};  // removed disk only touches from outside
    if (lambda > 1.0 + 1e-12) return std::nullopt;  // doubly connected
    if (lambda >= 1.0 - 1e-12) {
        // Internally tangent at t: the Mobius map sending t to infinity takes
        // the domain to the strip 0 < Im < h, h = (1 - rho)/rho.
        const double h = (1.0 - rho) / rho;
        return ConformalChain({steps::Affine{std::conj(t), 0.0},
                               steps::Mobius{-kI, -kI, 1.0, -1.0},
                               steps::Affine{1.0 / h, 0.0},
                               steps::Exp{std::numbers::pi},
                               cayley()});
    }
    // Crossing circles: a lune. Send the two corners to 0 and infinity to get
    // a sector, center it on the positive axis, open it to a half-plane.
    const double kappa = (1.0 + ca * ca - rho * rho) / (2.0 * ca);
    const double phi = std::arg(q->c);
    const double half = std::acos(std::clamp(kappa, -1.0, 1.0));
    const cplx a = std::polar(1.0, phi + half);
    const cplx b = std::polar(1.0, phi - half);
    const steps::Mobius corners{1.0, -a, 1.0, -b};
    const ConformalChain to_sector({corners});
    const cplx outer_mid = -t;
    const cplx inner_mid = t * (ca - rho);
    const double a1 = std::arg(to_sector(outer_mid));
    const double a2 = std::arg(to_sector(inner_mid));
    const double inside = std::arg(to_sector(0.5 * (outer_mid + inner_mid)));
    double start = a1, opening = wrap(a2 - a1);
    if (wrap(inside - a1) > opening) {
        start = a2;
        opening = wrap(a1 - a2);
    }
    const double mid = start + 0.5 * opening;
    return ConformalChain({corners,
                           steps::Affine{std::polar(1.0, -mid), 0.0},
                           steps::Power{std::numbers::pi / opening},
                           steps::Affine{kI, 0.0},
                           cayley()});
}

}  // namespace autdim
