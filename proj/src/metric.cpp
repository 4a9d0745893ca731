#include "autdim/metric.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace autdim {

namespace {

// Analytic boundaries are refined to near machine precision, so the
// normalizer only needs a thin margin; meshes keep the coarse one.
constexpr double kAnalyticSafety = 1.0 + 1e-4;
constexpr double kMeshSafety = 1.01;

std::vector<std::vector<int>> monomial_exponents(std::size_t n, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(n, 0);
    for (int total = 1; total <= degree; ++total) {
        // Enumerate compositions of `total` into n parts, lexicographically descending.
        std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
            if (k + 1 == n) {
                e[k] = left;
                out.push_back(e);
                return;
            }
            for (int v = left; v >= 0; --v) {
                e[k] = v;
                rec(k + 1, left - v);
            }
        };
        rec(0, total);
    }
    return out;
}

cplx monomial_value(const std::vector<int>& exps, const CxPoint& rel) {
    cplx v{1.0, 0.0};
    for (std::size_t k = 0; k < exps.size(); ++k)
        for (int p = 0; p < exps[k]; ++p) v *= rel[k];
    return v;
}

struct Objective {
    std::vector<cplx> at_z;                  // monomials at z
    std::vector<std::vector<cplx>> at_bdry;  // monomials at each boundary sample

    [[nodiscard]] double ratio(const gsl_vector* x) const {
        const std::size_t m = at_z.size();
        auto coef = [x](std::size_t k) { return cplx{gsl_vector_get(x, 2 * k), gsl_vector_get(x, 2 * k + 1)}; };
        cplx hz{0.0, 0.0};
        for (std::size_t k = 0; k < m; ++k) hz += coef(k) * at_z[k];
        double sup = 0.0;
        for (const auto& row : at_bdry) {
            cplx h{0.0, 0.0};
            for (std::size_t k = 0; k < m; ++k) h += coef(k) * row[k];
            sup = std::max(sup, std::abs(h));
        }
        if (!(sup > 0.0)) return 0.0;
        return std::abs(hz) / sup;
    }
};

double objective_fn(const gsl_vector* x, void* params) {
    return -static_cast<const Objective*>(params)->ratio(x);
}

struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* p) const { gsl_multimin_fminimizer_free(p); }
};
struct VectorDeleter {
    void operator()(gsl_vector* p) const { gsl_vector_free(p); }
};
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

std::pair<std::vector<double>, double> nelder_mead(Objective& obj, const std::vector<double>& start, int budget) {
    const std::size_t dim = start.size();
    VectorPtr x(gsl_vector_alloc(dim));
    VectorPtr step(gsl_vector_alloc(dim));
    double scale = 0.0;
    for (double v : start) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < dim; ++i) {
        gsl_vector_set(x.get(), i, start[i]);
        gsl_vector_set(step.get(), i, 0.25 * std::max(scale, 1e-3));
    }
    gsl_multimin_function fn{&objective_fn, dim, &obj};
    MinimizerPtr mm(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
    gsl_multimin_fminimizer_set(mm.get(), &fn, x.get(), step.get());
    for (int it = 0; it < budget; ++it) {
        if (gsl_multimin_fminimizer_iterate(mm.get()) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(mm.get()), 1e-12 * std::max(scale, 1.0)) == GSL_SUCCESS)
            break;
    }
    std::vector<double> best(dim);
    for (std::size_t i = 0; i < dim; ++i) best[i] = gsl_vector_get(mm->x, i);
    return {best, -mm->fval};
}

double sup_density(const DomainSpec& d, bool refine) {
    if (d.dim() == 1) return refine ? 0.004 : 0.01;
    return refine ? 0.1 : 0.2;
}

// Upper bound on c_D(w, z) by chaining inscribed balls along the segment.
double segment_upper(const DomainSpec& d, const CxPoint& w, const CxPoint& z) {
    const double len = distance(w, z);
    const CxPoint dir = (z - w) * (1.0 / len);
    double travelled = 0.0, total = 0.0;
    CxPoint p = w;
    for (int k = 0; k < 100000 && travelled < len; ++k) {
        if (!contains(d, p)) return std::numeric_limits<double>::infinity();
        const double r = dist_to_boundary(d, p);
        const double step = std::min(0.5 * r, len - travelled);
        total += std::atanh(step / r);
        travelled += step;
        p = w + dir * travelled;
    }
    return travelled >= len ? total : std::numeric_limits<double>::infinity();
}

}  // namespace

cplx ExtremalCandidate::numerator(const CxPoint& z) const {
    const CxPoint rel = z - base;
    cplx v{0.0, 0.0};
    for (const auto& t : terms) v += t.coeff * monomial_value(t.exps, rel);
    return v;
}

int ExtremalCandidate::degree() const {
    int deg = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (int e : t.exps) s += e;
        if (t.coeff != cplx{0.0, 0.0}) deg = std::max(deg, s);
    }
    return deg;
}

std::string ExtremalCandidate::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    const std::size_t n = base.dim();
    for (std::size_t k = 0; k < n; ++k) os << "e" << (k + 1) << ",";
    os << "re,im\n";
    for (const auto& t : terms) {
        for (int e : t.exps) os << e << ",";
        os << t.coeff.real() << "," << t.coeff.imag() << "\n";
    }
    return os.str();
}

double poincare_distance(cplx a, cplx b) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0))
        throw OutsideDomainError("poincare_distance: points must lie in the unit disk");
    const double m = std::abs((a - b) / (1.0 - std::conj(a) * b));
    return std::atanh(std::min(m, 1.0));
}

double model_caratheodory(const DomainSpec& d, cplx z, cplx w) {
    if (d.dim() != 1) throw DimensionError("model_caratheodory needs a planar domain");
    const auto chain = chain_to_disk(d);
    if (!chain) throw NoClosedFormError("no conformal chain registered for " + d.name());
    if (!contains(d, CxPoint{z}) || !contains(d, CxPoint{w}))
        throw OutsideDomainError("model_caratheodory: point outside " + d.name());
    return poincare_distance((*chain)(z), (*chain)(w));
}

double ball_caratheodory(const DomainSpec& ball, const CxPoint& z, const CxPoint& w) {
    const auto* b = ball.as<shapes::Ball>();
    if (!b) throw NoClosedFormError("ball_caratheodory needs a ball");
    if (!contains(ball, z) || !contains(ball, w)) throw OutsideDomainError("ball_caratheodory: point outside ball");
    const CxPoint a = (w - b->center) * (1.0 / b->radius);
    const CxPoint c = (z - b->center) * (1.0 / b->radius);
    const double na = std::norm(a.norm()), nc = std::norm(c.norm());
    const double den = std::norm(1.0 - hermitian(c, a));
    const double m2 = 1.0 - (1.0 - na) * (1.0 - nc) / den;
    return std::atanh(std::sqrt(std::clamp(m2, 0.0, 1.0)));
}

double caratheodory_length_model(const DomainSpec& d, cplx w, cplx y) {
    if (d.dim() != 1) throw DimensionError("caratheodory_length_model needs a planar domain");
    const auto chain = chain_to_disk(d);
    if (!chain) throw NoClosedFormError("no conformal chain registered for " + d.name());
    if (!contains(d, CxPoint{w})) throw OutsideDomainError("caratheodory_length_model: point outside " + d.name());
    const auto [v, dv] = chain->eval(w);
    return std::abs(dv) * std::abs(y) / (1.0 - std::norm(v));
}

MetricBounds extremal_search(const DomainSpec& d, const CxPoint& w, const CxPoint& z, const ExtremalOptions& opts) {
    if (!d.bounded()) throw UnboundedDomainError("extremal_search needs a bounded domain");
    if (w.dim() != d.dim() || z.dim() != d.dim()) throw DimensionError("extremal_search: dimension mismatch");
    if (w == z) throw DegenerateInputError("extremal_search: w == z");
    if (opts.degree < 1) throw PreconditionError("extremal_search: degree must be >= 1");
    if (!contains(d, w) || !contains(d, z)) throw OutsideDomainError("extremal_search: point outside " + d.name());

    const std::size_t n = d.dim();
    const auto exps = monomial_exponents(n, opts.degree);
    const std::size_t m = exps.size();

    Objective obj;
    const CxPoint zrel = z - w;
    for (const auto& e : exps) obj.at_z.push_back(monomial_value(e, zrel));
    for (const auto& p : modulus_samples(d, sup_density(d, false))) {
        std::vector<cplx> row;
        row.reserve(m);
        const CxPoint rel = p - w;
        for (const auto& e : exps) row.push_back(monomial_value(e, rel));
        obj.at_bdry.push_back(std::move(row));
    }

    gsl_error_handler_t* old = gsl_set_error_handler_off();
    std::vector<double> best_x;
    double best_val = -1.0;
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        std::vector<double> start(2 * m, 0.0);
        if (r == 0) {
            // Linear functional pairing with z - w.
            for (std::size_t k = 0; k < m; ++k) {
                int total = 0;
                std::size_t var = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    total += exps[k][i];
                    if (exps[k][i] == 1) var = i;
                }
                if (total == 1) {
                    start[2 * k] = std::conj(zrel[var]).real();
                    start[2 * k + 1] = std::conj(zrel[var]).imag();
                }
            }
        } else {
            for (auto& v : start) v = normal(rng);
        }
        auto [x, val] = nelder_mead(obj, start, opts.budget);
        if (val > best_val) {
            best_val = val;
            best_x = std::move(x);
        }
    }
    gsl_set_error_handler(old);

    MetricBounds out;
    ExtremalCandidate cand;
    cand.base = w;
    for (std::size_t k = 0; k < m; ++k) cand.terms.push_back({exps[k], cplx{best_x[2 * k], best_x[2 * k + 1]}});
    const cplx hz = cand.numerator(z);
    if (std::abs(hz) > 0.0) {
        const cplx rot = std::conj(hz) / std::abs(hz);
        for (auto& t : cand.terms) t.coeff *= rot;
        const bool mesh = d.as<shapes::Sampled>() != nullptr;
        const double sup = boundary_sup(d, [&cand](const CxPoint& p) { return std::abs(cand.numerator(p)); },
                                        sup_density(d, true));
        cand.normalizer = sup * (mesh ? kMeshSafety : kAnalyticSafety);
        const double fz = cand.value(z).real();
        out.lower = fz > 0.0 && fz < 1.0 ? std::atanh(fz) : 0.0;
    }
    out.warning = !(out.lower > 0.0);
    if (!out.warning) out.witness = std::move(cand);

    if (n == 1 && chain_to_disk(d)) {
        out.upper = model_caratheodory(d, z[0], w[0]);
        out.upper_exact = true;
    } else if (d.as<shapes::Ball>()) {
        out.upper = ball_caratheodory(d, z, w);
        out.upper_exact = true;
    } else {
        out.upper = segment_upper(d, w, z);
    }
    return out;
}

MetricBounds sandwich_bounds(const DomainSpec& d, const CxPoint& w, const CxPoint& y) {
    if (y.dim() != d.dim()) throw DimensionError("sandwich_bounds: dimension mismatch");
    const double ny = y.norm();
    if (!(ny > 0.0)) throw DegenerateInputError("sandwich_bounds: Y = 0");
    const auto radii = inner_outer_radii(d, w);
    MetricBounds out;
    out.lower = ny / radii.R;
    out.upper = ny / radii.r;
    return out;
}

CxPoint extremal_gradient(const ExtremalCandidate& c, const CxPoint& w) {
    const std::size_t n = c.base.dim();
    if (w.dim() != n) throw DimensionError("extremal_gradient: dimension mismatch");
    const CxPoint rel = w - c.base;
    CxPoint grad(n);
    for (const auto& t : c.terms) {
        for (std::size_t k = 0; k < n; ++k) {
            if (t.exps[k] == 0) continue;
            cplx v = t.coeff * static_cast<double>(t.exps[k]);
            for (std::size_t i = 0; i < n; ++i) {
                const int p = i == k ? t.exps[i] - 1 : t.exps[i];
                for (int q = 0; q < p; ++q) v *= rel[i];
            }
            grad[k] += v;
        }
    }
    return grad * (1.0 / c.normalizer);
}

cplx ChainExtremal::value(cplx zeta) const {
    const cplx s = chain(zeta);
    return rotation * (s - center) / (1.0 - std::conj(center) * s);
}

cplx ChainExtremal::derivative(cplx zeta) const {
    const auto [s, ds] = chain.eval(zeta);
    const cplx den = 1.0 - std::conj(center) * s;
    return rotation * ds * (1.0 - std::norm(center)) / (den * den);
}

std::optional<ChainExtremal> chain_extremal(const DomainSpec& d, cplx w, cplx z) {
    if (d.dim() != 1) return std::nullopt;
    auto chain = chain_to_disk(d);
    if (!chain) return std::nullopt;
    if (w == z) throw DegenerateInputError("chain_extremal: w == z");
    ChainExtremal f{*chain, (*chain)(w), 1.0};
    const cplx fz = f.value(z);
    f.rotation = std::conj(fz) / std::abs(fz);
    return f;
}

}  // namespace autdim
