#include "autdim/estimates.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <random>

#include "autdim/gallery.hpp"

namespace autdim {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

std::string fmt_point(const CxPoint& p) {
    std::string s = "(";
    char buf[64];
    for (std::size_t k = 0; k < p.dim(); ++k) {
        std::snprintf(buf, sizeof buf, "%s%.6g%+.6gi", k ? ", " : "", p[k].real(), p[k].imag());
        s += buf;
    }
    return s + ")";
}

std::string fmt_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void require_ball_inclusions(const DomainSpec& d, const CxPoint& center, double inner, double outer,
                             const char* who) {
    if (!contains(d, center)) throw PreconditionError(std::string(who) + ": center outside " + d.name());
    if (dist_to_boundary(d, center) < inner)
        throw PreconditionError(std::string(who) + ": inner ball not inside " + d.name());
    // The circumscribed radius is inflated by the mesh tolerance.
    if (inner_outer_radii(d, center).R > outer * (1.0 + 2.0 * d.mesh_tol()) + 1e-12)
        throw PreconditionError(std::string(who) + ": " + d.name() + " not inside the outer ball");
}

// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_nodes(int order, double a, double b) {
    gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
    if (!tab) throw PreconditionError("gauss_nodes: cannot build quadrature table");
    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &out[i].first,
                                                                  &out[i].second, tab);
    gsl_integration_glfixed_table_free(tab);
    return out;
}

struct Quadrature {
    std::vector<CxPoint> points;
    std::vector<double> weights;
};

Quadrature ball_quadrature(const CxPoint& center, double radius, int order) {
    if (order < 2) throw PreconditionError("quadrature order must be >= 2");
    Quadrature q;
    const auto rho = gauss_nodes(order, 0.0, radius);
    const auto ang = gauss_nodes(order, 0.0, 2.0 * kPi);
    if (center.dim() == 1) {
        for (const auto& [r, wr] : rho)
            for (const auto& [th, wt] : ang) {
                q.points.emplace_back(center[0] + std::polar(r, th));
                q.weights.push_back(wr * wt * r);
            }
        return q;
    }
    if (center.dim() == 2) {
        // z1 = rho cos(eta) e^{i a}, z2 = rho sin(eta) e^{i b}.
        const auto eta = gauss_nodes(order, 0.0, 0.5 * kPi);
        for (const auto& [r, wr] : rho)
            for (const auto& [e, we] : eta)
                for (const auto& [a, wa] : ang)
                    for (const auto& [b, wb] : ang) {
                        q.points.push_back(CxPoint{center[0] + std::polar(r * std::cos(e), a),
                                                   center[1] + std::polar(r * std::sin(e), b)});
                        q.weights.push_back(wr * we * wa * wb * r * r * r * std::cos(e) * std::sin(e));
                    }
        return q;
    }
    throw DimensionError("ball quadrature supports n <= 2");
}

using Samples = std::vector<std::vector<cplx>>;  // per node, per component

Samples evaluate(const VectorFieldPoly& x, const Quadrature& q) {
    Samples s;
    s.reserve(q.points.size());
    for (const auto& p : q.points) {
        const CxPoint v = x(p);
        s.emplace_back(v.coords().begin(), v.coords().end());
    }
    return s;
}

cplx inner(const Samples& u, const Samples& v, const std::vector<double>& w) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        cplx loc{0.0, 0.0};
        for (std::size_t k = 0; k < u[i].size(); ++k) loc += u[i][k] * std::conj(v[i][k]);
        acc += w[i] * loc;
    }
    return acc;
}

double max_abs(const VectorFieldPoly& x, const std::vector<CxPoint>& pts) {
    double m = 0.0;
    for (const auto& p : pts) m = std::max(m, x(p).norm());
    return m;
}

// Closed-form flow of alpha - conj(alpha) z^2 on the disk.
GroupAction disk_field_action(cplx alpha) {
    const double mag = std::abs(alpha);
    const cplx e = mag > 0.0 ? alpha / mag : cplx{1.0, 0.0};
    return GroupAction::closed_form(
        "disk_hyperbolic",
        [e, mag](const CxPoint& z, double t) {
            return CxPoint{e * std::tanh(std::atanh(std::conj(e) * z[0]) + mag * t)};
        },
        VectorFieldPoly::planar({alpha, 0.0, -std::conj(alpha)}));
}

GroupAction rotation_action(std::size_t n) {
    std::vector<std::vector<PolyTerm>> comps(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<int> e(n, 0);
        e[k] = 1;
        comps[k].push_back({e, kI});
    }
    return GroupAction::closed_form(
        "rotation",
        [](const CxPoint& z, double t) { return z * std::polar(1.0, t); },
        VectorFieldPoly(n, std::move(comps)));
}

CxPoint random_in(const DomainSpec& d, std::mt19937_64& rng, double box, double margin) {
    std::uniform_real_distribution<double> u(-box, box);
    for (int tries = 0; tries < 100000; ++tries) {
        CxPoint p(d.dim());
        for (std::size_t k = 0; k < d.dim(); ++k) p[k] = cplx{u(rng), u(rng)};
        if (contains(d, p) && dist_to_boundary(d, p) >= margin) return p;
    }
    throw InfeasibleError("random_in: no interior sample found");
}

CxPoint random_unit(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CxPoint y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = cplx{g(rng), g(rng)};
    return y * (1.0 / y.norm());
}

}  // namespace

const char* to_string(LemmaId id) {
    switch (id) {
        case LemmaId::Id: return "Id";
        case LemmaId::De: return "De";
        case LemmaId::One: return "One";
        case LemmaId::Ne: return "Ne";
        case LemmaId::MDeriv: return "MDeriv";
        case LemmaId::Gram: return "Gram";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Passed: return "Passed";
        case Status::Inconclusive: return "Inconclusive";
        case Status::Failed: return "Failed";
    }
    return "?";
}

void MarginAccumulator::add(double margin, const std::string& witness, bool certified) {
    ++rep_.samples;
    if (!any_ || margin < rep_.worst_margin) {
        rep_.worst_margin = margin;
        rep_.witness = witness;
    }
    any_ = true;
    if (certified && (!any_certified_ || margin < worst_certified_)) {
        worst_certified_ = margin;
        any_certified_ = true;
    }
    if (!certified && margin < 0.0) ++rep_.uncertified_negative;
}

LemmaReport MarginAccumulator::finish(double slack) const {
    LemmaReport r = rep_;
    if (r.worst_margin >= -slack) r.status = Status::Passed;
    else if (any_certified_ && worst_certified_ < -slack) r.status = Status::Failed;
    else r.status = Status::Inconclusive;
    return r;
}

double invariant_distance(const DomainSpec& d, const CxPoint& z, const CxPoint& w) {
    if (d.as<shapes::Ball>() && d.dim() > 1) return ball_caratheodory(d, z, w);
    if (d.dim() != 1) throw NoClosedFormError("no invariant distance in closed form on " + d.name());
    return model_caratheodory(d, z[0], w[0]);
}

double check_invariant_triangle(const DomainSpec& d, const GroupAction& a, const CxPoint& w, const CxPoint& z,
                                double t) {
    const CxPoint gw = a(w, t);
    const CxPoint gz = a(z, t);
    if (!contains(d, gw) || !contains(d, gz)) throw EscapeError(t, "check_invariant_triangle: action leaves domain");
    const double lhs = std::abs(invariant_distance(d, gw, z) - invariant_distance(d, w, z));
    const double rhs = invariant_distance(d, z, gz);
    return rhs - lhs;
}

GradientMargin check_extremal_gradient_bound(const DomainSpec& d, const CxPoint& w, const CxPoint& y, double s,
                                             std::uint64_t seed) {
    if (y.dim() != d.dim() || w.dim() != d.dim()) throw DimensionError("check_extremal_gradient_bound: dimension");
    if (std::abs(y.norm() - 1.0) > 1e-9) throw PreconditionError("check_extremal_gradient_bound: |Y| must be 1");
    const RadiiPair rr = inner_outer_radii(d, w);
    const double eps = rr.r * rr.r / (16.0 * rr.R);
    // The radii carry the domain's mesh tolerance, so s = eps is accepted up to it.
    if (!(s > 0.0) || s > eps * (1.0 + 1e-8))
        throw PreconditionError("check_extremal_gradient_bound: s must lie in (0, r^2/(16R)]");
    const CxPoint z = w + y * s;
    const double floor = 1.0 / (4.0 * rr.R);
    if (d.dim() == 1) {
        if (auto ce = chain_extremal(d, w[0], z[0])) {
            const cplx g = ce->derivative(w[0]);
            return {(g * y[0]).real() - floor, true};
        }
    }
    ExtremalOptions opts;
    opts.seed = seed;
    const MetricBounds mb = extremal_search(d, w, z, opts);
    if (!mb.witness) return {-floor, false};
    const CxPoint g = extremal_gradient(*mb.witness, w);
    return {pairing(g, y).real() - floor, false};
}

double delta_for(double a, double r, double R) {
    if (!(a > 0.0) || !(r > 0.0) || !(R > 0.0)) throw PreconditionError("delta_for: a, r, R must be positive");
    if (!(R > 2.0 * r)) throw PreconditionError("delta_for: needs R > 2r");
    if (r + a > R) throw PreconditionError("delta_for: B(0, r + a) must fit in B(0, R)");
    const double b = a / (32.0 * R);
    const double eps = a * a / (128.0 * R);
    // |V - Y| < b allows turning V by strictly less than beta toward the radial line.
    const double beta = 2.0 * std::asin(std::min(1.0, 0.5 * b)) * (1.0 - 1e-12);
    constexpr int kAngles = 1024;
    // The condition is rotation invariant, so only the angle between V and the
    // radial direction at w matters.
    auto feasible = [&](double delta) {
        const double rho = r + delta;
        for (int k = 0; k <= kAngles; ++k) {
            const double psi_v = 0.5 * kPi * k / kAngles;
            const double psi = std::max(0.0, psi_v - beta);
            const double sn = rho * std::sin(psi);
            if (sn >= r) return false;
            const double s_in = rho * std::cos(psi) - std::sqrt(r * r - sn * sn);
            if (s_in >= eps) return false;
        }
        return true;
    };
    double lo = 0.0, hi = 0.5 * a;
    if (feasible(hi * (1.0 - 1e-15))) lo = hi * (1.0 - 1e-15);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) lo = mid;
        else hi = mid;
    }
    if (!(lo > 0.0))
        throw InfeasibleError("delta_for: no feasible delta at resolution (a=" + fmt_num(a) + ", r=" + fmt_num(r) +
                              ", R=" + fmt_num(R) + ")");
    return lo;
}

double check_norm_propagation(const DomainSpec& d, const VectorFieldPoly& x, double r, double a, double R,
                              const GroupAction& a0, const CxPoint& center) {
    if (x.dim() != d.dim() || center.dim() != d.dim()) throw DimensionError("check_norm_propagation: dimension");
    require_ball_inclusions(d, center, r + a, R, "check_norm_propagation");
    // X must generate a group action on d.
    for (double frac : {0.0, 0.5, 0.9}) {
        CxPoint p = center;
        p[0] += frac * r;
        const double res = group_property_residual(a0, p, 0.3, -0.2, d);
        if (res > 1e-6) throw PreconditionError("check_norm_propagation: action fails the group law");
    }
    const double delta = delta_for(a, r, R);
    const double inner = sup_norm_ball(x, center, r);
    const double outer = sup_norm_ball(x, center, r + delta);
    return 32.0 * R / a * inner - outer;
}

double check_norm_propagation(const DomainSpec& d, const VectorFieldPoly& x, double r, double a, double R,
                              const GroupAction& a0) {
    return check_norm_propagation(d, x, r, a, R, a0, CxPoint(d.dim()));
}

ChainCover chain_cover(const std::vector<CxPoint>& k_samples, double delta) {
    if (!(delta > 0.0)) throw PreconditionError("chain_cover: delta must be positive");
    if (k_samples.empty()) throw PreconditionError("chain_cover: empty sample cloud");
    const std::size_t n = k_samples.front().dim();
    std::size_t origin = k_samples.size();
    for (std::size_t i = 0; i < k_samples.size(); ++i)
        if (k_samples[i].norm() <= 1e-14) {
            origin = i;
            break;
        }
    if (origin == k_samples.size()) throw PreconditionError("chain_cover: 0 must be a sample");

    using Key = std::vector<long long>;
    auto key_of = [&](const CxPoint& p) {
        Key k(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            k[2 * i] = static_cast<long long>(std::floor(p[i].real() / delta));
            k[2 * i + 1] = static_cast<long long>(std::floor(p[i].imag() / delta));
        }
        return k;
    };
    std::map<Key, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < k_samples.size(); ++i) grid[key_of(k_samples[i])].push_back(i);

    std::vector<int> depth(k_samples.size(), 0);
    std::vector<std::size_t> order;
    std::queue<std::size_t> q;
    depth[origin] = 1;
    q.push(origin);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) cells *= 3;
    while (!q.empty()) {
        const std::size_t cur = q.front();
        q.pop();
        order.push_back(cur);
        const Key base = key_of(k_samples[cur]);
        for (std::size_t c = 0; c < cells; ++c) {
            Key k = base;
            std::size_t code = c;
            for (std::size_t i = 0; i < 2 * n; ++i) {
                k[i] += static_cast<long long>(code % 3) - 1;
                code /= 3;
            }
            auto it = grid.find(k);
            if (it == grid.end()) continue;
            for (std::size_t nb : it->second) {
                if (depth[nb] != 0) continue;
                if (distance(k_samples[cur], k_samples[nb]) < delta) {
                    depth[nb] = depth[cur] + 1;
                    q.push(nb);
                }
            }
        }
    }
    if (order.size() != k_samples.size())
        throw DisconnectedError("chain_cover: sample cloud is disconnected at scale " + fmt_num(delta));
    ChainCover cover;
    cover.delta = delta;
    for (std::size_t i : order) {
        cover.points.push_back(k_samples[i]);
        cover.depth.push_back(depth[i]);
        cover.n = std::max(cover.n, depth[i]);
    }
    return cover;
}

int chain_length(const std::vector<CxPoint>& k_samples, double delta) {
    if (k_samples.empty()) throw PreconditionError("chain_length: empty sample cloud");
    const std::size_t m = k_samples.size();
    double spacing = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double nn = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) nn = std::min(nn, distance(k_samples[i], k_samples[j]));
        if (std::isfinite(nn)) spacing = std::max(spacing, nn);
    }
    if (m == 1 || spacing < delta) return chain_cover(k_samples, delta).n;

    std::size_t origin = m;
    for (std::size_t i = 0; i < m; ++i)
        if (k_samples[i].norm() <= 1e-14) {
            origin = i;
            break;
        }
    if (origin == m) throw PreconditionError("chain_length: 0 must be a sample");
    // Dijkstra on the graph joining samples closer than twice the spacing.
    const double link = 2.0 * spacing * (1.0 + 1e-9);
    std::vector<double> dist(m, std::numeric_limits<double>::infinity());
    std::vector<bool> done(m, false);
    dist[origin] = 0.0;
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t u = m;
        for (std::size_t i = 0; i < m; ++i)
            if (!done[i] && (u == m || dist[i] < dist[u])) u = i;
        if (u == m || !std::isfinite(dist[u])) break;
        done[u] = true;
        for (std::size_t v = 0; v < m; ++v) {
            if (done[v]) continue;
            const double e = distance(k_samples[u], k_samples[v]);
            if (e <= link && dist[u] + e < dist[v]) dist[v] = dist[u] + e;
        }
    }
    double lmax = 0.0;
    for (double x : dist) {
        if (!std::isfinite(x)) throw DisconnectedError("chain_length: sample cloud is disconnected");
        lmax = std::max(lmax, x);
    }
    if (lmax == 0.0) return 1;
    const double hops = std::floor(lmax / delta) + 1.0;
    if (hops > 1e15) throw InfeasibleError("chain_length: chain too long to count");
    return static_cast<int>(std::min(hops + 1.0, static_cast<double>(std::numeric_limits<int>::max())));
}

double check_compact_bound(const DomainSpec& d, const VectorFieldPoly& x, const std::vector<CxPoint>& k_samples,
                           double s, double r, const CxPoint& center) {
    if (x.dim() != d.dim() || center.dim() != d.dim()) throw DimensionError("check_compact_bound: dimension");
    if (!(s > 0.0) || !(r > 0.0)) throw PreconditionError("check_compact_bound: s and r must be positive");
    for (const auto& k : k_samples)
        if (!contains(d, k) || dist_to_boundary(d, k) < 3.0 * s)
            throw PreconditionError("check_compact_bound: 3s-neighborhood of K leaves the domain at " + fmt_point(k));
    if (dist_to_boundary(d, center) < 2.0 * r)
        throw PreconditionError("check_compact_bound: B(center, 2r) not inside the domain");
    const double R = inner_outer_radii(d, center).R;
    if (!(R > 2.0 * r && r > s)) throw PreconditionError("check_compact_bound: needs R > 2r > 2s");
    const double c = 64.0 * R / s;
    const double delta = delta_for(s, s, 2.0 * R);
    std::vector<CxPoint> rel;
    rel.reserve(k_samples.size());
    for (const auto& k : k_samples) rel.push_back(k - center);
    const int n = chain_length(rel, delta);
    const double sup_b = sup_norm_ball(x, center, r);
    const double sup_k = max_abs(x, k_samples);
    if (sup_b == 0.0) return -sup_k;
    const double log_bound = (n - 1) * std::log(c) + std::log(sup_b);
    if (log_bound > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(log_bound) - sup_k;
}

double check_compact_bound(const DomainSpec& d, const VectorFieldPoly& x, const std::vector<CxPoint>& k_samples,
                           double s, double r) {
    return check_compact_bound(d, x, k_samples, s, r, CxPoint(d.dim()));
}

DiskMap DiskMap::from(const ExtremalCandidate& c) {
    return {[c](const CxPoint& z) { return c.value(z); },
            [c](const CxPoint& z) { return extremal_gradient(c, z); }};
}

DiskMap DiskMap::from(const ChainExtremal& c) {
    return {[c](const CxPoint& z) { return c.value(z[0]); },
            [c](const CxPoint& z) { return CxPoint{c.derivative(z[0])}; }};
}

double check_m_derivative(const DiskMap& f, const VectorFieldPoly& x, const CxPoint& w, const CxPoint& z,
                          const DomainSpec& d) {
    if (std::abs(f.value(w)) > 1e-10) throw PreconditionError("check_m_derivative: f(w) must vanish");
    const cplx pc = f.value(z);
    if (std::abs(pc.imag()) > 1e-10 || !(pc.real() > 0.0 && pc.real() < 1.0))
        throw PreconditionError("check_m_derivative: p = f(z) must be real in (0, 1)");
    const double p = pc.real();
    constexpr double h = 1e-5;
    constexpr double tol = 1e-13;
    auto m2 = [&](double t) {
        const cplx zeta = f.value(flow(x, w, t, tol, d));
        return std::norm((zeta - p) / (1.0 - p * zeta));
    };
    const double fd = (m2(h) - m2(-h)) / (2.0 * h);
    const double exact = -2.0 * p * (1.0 - p * p) * pairing(f.gradient(w), x(w)).real();
    return std::abs(fd - exact);
}

std::vector<std::vector<cplx>> l2_gram(const std::vector<VectorFieldPoly>& fields, const CxPoint& center,
                                       double radius, int order) {
    const Quadrature q = ball_quadrature(center, radius, order);
    std::vector<Samples> vals;
    for (const auto& f : fields) {
        if (f.dim() != center.dim()) throw DimensionError("l2_gram: field dimension");
        vals.push_back(evaluate(f, q));
    }
    std::vector<std::vector<cplx>> g(fields.size(), std::vector<cplx>(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = 0; j < fields.size(); ++j) g[i][j] = inner(vals[i], vals[j], q.weights);
    return g;
}

GramBasis gram_normalize(const std::vector<VectorFieldPoly>& fields, const CxPoint& center, double radius,
                         int order) {
    if (fields.empty()) throw PreconditionError("gram_normalize: no fields");
    if (!(radius > 0.0)) throw PreconditionError("gram_normalize: radius must be positive");
    const Quadrature q = ball_quadrature(center, radius, order);
    const std::size_t m = fields.size();
    std::vector<Samples> basis;
    std::vector<std::vector<cplx>> coef;  // output l = sum_k coef[l][k] fields[k]
    for (std::size_t i = 0; i < m; ++i) {
        if (fields[i].dim() != center.dim()) throw DimensionError("gram_normalize: field dimension");
        Samples u = evaluate(fields[i], q);
        const double orig = inner(u, u, q.weights).real();
        std::vector<cplx> c(m, 0.0);
        c[i] = 1.0;
        for (std::size_t l = 0; l < basis.size(); ++l) {
            const cplx proj = inner(u, basis[l], q.weights);
            for (std::size_t node = 0; node < u.size(); ++node)
                for (std::size_t k = 0; k < u[node].size(); ++k) u[node][k] -= proj * basis[l][node][k];
            for (std::size_t k = 0; k < m; ++k) c[k] -= proj * coef[l][k];
        }
        const double nrm2 = inner(u, u, q.weights).real();
        if (!(orig > 0.0) || nrm2 <= 1e-12 * orig)
            throw RankError(i + 1, "gram_normalize: field " + std::to_string(i + 1) + " is linearly dependent");
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& row : u)
            for (auto& v : row) v *= inv;
        for (auto& v : c) v *= inv;
        basis.push_back(std::move(u));
        coef.push_back(std::move(c));
    }
    GramBasis out;
    out.center = center;
    out.radius = radius;
    out.order = order;
    for (std::size_t l = 0; l < m; ++l) {
        VectorFieldPoly f = VectorFieldPoly::zero(center.dim());
        for (std::size_t k = 0; k < m; ++k)
            if (coef[l][k] != cplx{0.0, 0.0}) f = f.plus(fields[k], coef[l][k]);
        out.fields.push_back(std::move(f));
    }
    out.gram = l2_gram(out.fields, center, radius, order);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out.max_deviation = std::max(out.max_deviation, std::abs(out.gram[i][j] - (i == j ? 1.0 : 0.0)));
    for (double w : q.weights) out.volume += w;
    for (const auto& f : out.fields) out.sup_norms.push_back(sup_norm_ball(f, center, radius));
    return out;
}

std::vector<LemmaReport> run_lemma_battery(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const DomainSpec disk = DomainSpec::unit_disk();
    const DomainSpec ball2 = DomainSpec::ball(CxPoint{0.0, 0.0}, 1.0);
    const DomainSpec ellipse = DomainSpec::ellipse(2.0, 1.0);
    const Example1Family qfam = Example1Family::limit();
    const Example1Family qj = Example1Family::member(4);
    const DomainSpec& Q = qfam.qpart;
    const DomainSpec& Qj = qj.qpart;
    const CxPoint qcenter{cplx{-0.5, 0.0}};

    std::normal_distribution<double> g(0.0, 1.0);
    const cplx alpha{g(rng), g(rng)};
    const VectorFieldPoly rot1 = VectorFieldPoly::planar({0.0, kI});
    const VectorFieldPoly hyp = VectorFieldPoly::planar({1.0, 0.0, -1.0});
    const VectorFieldPoly gen = VectorFieldPoly::planar({alpha, 0.0, -std::conj(alpha)});
    struct Named {
        std::string name;
        VectorFieldPoly field;
        GroupAction action;
    };
    const std::vector<Named> disk_fields{{"iz", rot1, rotation_action(1)},
                                         {"1-z^2", hyp, disk_field_action(1.0)},
                                         {"alpha-conj(alpha)z^2", gen, disk_field_action(alpha)}};
    const GroupAction q_action = translation_action(1);
    const GroupAction qj_action = annulus_rotation_action(qj, 1);
    const GroupAction ball_rot = rotation_action(2);

    std::vector<LemmaReport> reports;

    // Invariant triangle.
    {
        MarginAccumulator acc(LemmaId::Id);
        const std::vector<double> times{0.0, 0.1, -0.1, 0.7, 1.0, -1.0, 5.0};
        for (const auto& nf : disk_fields)
            for (double t : times) {
                const CxPoint w = random_in(disk, rng, 1.0, 0.2);
                const CxPoint z = random_in(disk, rng, 1.0, 0.2);
                acc.add(check_invariant_triangle(disk, nf.action, w, z, t),
                        "disk " + nf.name + " w=" + fmt_point(w) + " z=" + fmt_point(z) + " t=" + fmt_num(t));
            }
        for (double t : times) {
            const CxPoint w = random_in(Q, rng, 1.0, 0.05);
            const CxPoint z = random_in(Q, rng, 1.0, 0.05);
            acc.add(check_invariant_triangle(Q, q_action, w, z, t),
                    "Q g_t w=" + fmt_point(w) + " z=" + fmt_point(z) + " t=" + fmt_num(t));
        }
        acc.add(check_invariant_triangle(Q, q_action, qcenter, CxPoint{cplx{-0.25, 0.0}}, 1.0), "Q g_t w=-1/2 z=-1/4 t=1");
        for (double t : times) {
            const CxPoint w = random_in(ball2, rng, 1.0, 0.2);
            const CxPoint z = random_in(ball2, rng, 1.0, 0.2);
            acc.add(check_invariant_triangle(ball2, ball_rot, w, z, t),
                    "ball rotation w=" + fmt_point(w) + " z=" + fmt_point(z) + " t=" + fmt_num(t));
        }
        reports.push_back(acc.finish());
    }

    // Extremal gradient bound.
    {
        MarginAccumulator acc(LemmaId::De);
        auto run = [&](const std::string& name, const DomainSpec& d, const CxPoint& w, const CxPoint& y, double frac) {
            const RadiiPair rr = inner_outer_radii(d, w);
            const double s = frac * rr.r * rr.r / (16.0 * rr.R);
            const GradientMargin gm = check_extremal_gradient_bound(d, w, y, s, seed);
            acc.add(gm.margin, name + " w=" + fmt_point(w) + " Y=" + fmt_point(y) + " s=" + fmt_num(s), gm.certified);
        };
        run("disk", disk, CxPoint{0.0}, CxPoint{1.0}, 0.8);
        run("disk", disk, CxPoint{0.0}, CxPoint{1.0}, 1.0);
        for (int k = 0; k < 6; ++k) run("disk", disk, random_in(disk, rng, 0.6, 0.3), random_unit(1, rng), unit(rng));
        for (int k = 0; k < 4; ++k) run("Q", Q, qcenter, random_unit(1, rng), 0.1 + 0.9 * unit(rng));
        run("ball", ball2, CxPoint{0.0, 0.0}, CxPoint{1.0, 0.0}, 0.8);
        run("ball", ball2, CxPoint{0.0, 0.0}, random_unit(2, rng), 0.5);
        run("ellipse", ellipse, CxPoint{0.0}, random_unit(1, rng), 0.5);
        run("ellipse", ellipse, CxPoint{0.0}, CxPoint{kI}, 0.5);
        run("Q_4", Qj, qcenter, random_unit(1, rng), 0.5);
        reports.push_back(acc.finish());
    }

    // One-step norm propagation.
    {
        MarginAccumulator acc(LemmaId::One);
        for (const auto& nf : disk_fields)
            acc.add(check_norm_propagation(disk, nf.field, 0.25, 0.25, 1.0, nf.action), "disk " + nf.name);
        acc.add(check_norm_propagation(Q, translation_generator(), 0.2, 0.2, 1.5, q_action, qcenter), "Q g_t");
        acc.add(check_norm_propagation(Qj, rotation_generator(qj), 0.2, 0.2, 1.5, qj_action, qcenter), "Q_4 S1");
        acc.add(check_norm_propagation(ball2, *ball_rot.field(), 0.25, 0.25, 1.0, ball_rot), "ball rotation");
        reports.push_back(acc.finish());
    }

    // Compact bound.
    {
        MarginAccumulator acc(LemmaId::Ne);
        std::vector<CxPoint> seg;
        for (int k = 0; k <= 50; ++k) seg.emplace_back(cplx{0.01 * k, 0.0});
        for (const auto& nf : disk_fields)
            acc.add(check_compact_bound(disk, nf.field, seg, 0.1, 0.25), "disk " + nf.name + " K=[0,0.5]");
        acc.add(check_compact_bound(disk, rot1, {CxPoint{0.0}}, 0.1, 0.25), "disk iz K={0}");
        acc.add(check_compact_bound(disk, VectorFieldPoly::planar({1.0}), seg, 0.1, 0.25), "disk X=1 K=[0,0.5]");
        std::vector<CxPoint> qseg;
        for (int k = 0; k <= 15; ++k) qseg.emplace_back(cplx{-0.5 + 0.01 * k, 0.0});
        acc.add(check_compact_bound(Q, translation_generator(), qseg, 0.05, 0.2, qcenter), "Q g_t K=[-0.5,-0.35]");
        acc.add(check_compact_bound(Qj, rotation_generator(qj), qseg, 0.05, 0.2, qcenter), "Q_4 S1 K=[-0.5,-0.35]");
        std::vector<CxPoint> bseg;
        for (int k = 0; k <= 20; ++k) bseg.push_back(CxPoint{cplx{0.02 * k, 0.0}, 0.0});
        acc.add(check_compact_bound(ball2, *ball_rot.field(), bseg, 0.1, 0.25), "ball rotation K=[0,0.4]e1");
        reports.push_back(acc.finish());
    }

    // dm^2/dt identity.
    {
        MarginAccumulator acc(LemmaId::MDeriv);
        auto add = [&](const std::string& name, const DiskMap& f, const VectorFieldPoly& x, const CxPoint& w,
                       const CxPoint& z, const DomainSpec& d) {
            acc.add(1e-6 - check_m_derivative(f, x, w, z, d), name + " w=" + fmt_point(w) + " z=" + fmt_point(z));
        };
        {
            ChainExtremal f = *chain_extremal(disk, 0.3, 0.6);
            add("disk mobius iz", DiskMap::from(f), rot1, CxPoint{0.3}, CxPoint{0.6}, disk);
            add("disk mobius X=0", DiskMap::from(f), VectorFieldPoly::zero(1), CxPoint{0.3}, CxPoint{0.6}, disk);
        }
        for (const auto& nf : disk_fields)
            for (int k = 0; k < 3; ++k) {
                const CxPoint w = random_in(disk, rng, 1.0, 0.2);
                const CxPoint z = random_in(disk, rng, 1.0, 0.2);
                add("disk " + nf.name, DiskMap::from(*chain_extremal(disk, w[0], z[0])), nf.field, w, z, disk);
            }
        for (int k = 0; k < 3; ++k) {
            const CxPoint w = random_in(Q, rng, 1.0, 0.1);
            const CxPoint z = random_in(Q, rng, 1.0, 0.1);
            add("Q g_t", DiskMap::from(*chain_extremal(Q, w[0], z[0])), translation_generator(), w, z, Q);
        }
        {
            const CxPoint w{0.0}, z{cplx{0.3, 0.2}};
            const MetricBounds mb = extremal_search(ellipse, w, z, {3, 600, 8, seed});
            if (mb.witness) add("ellipse witness iz", DiskMap::from(*mb.witness), rot1, w, z, ellipse);
        }
        reports.push_back(acc.finish());
    }

    // L^2 normalization.
    {
        MarginAccumulator acc(LemmaId::Gram);
        auto run = [&](const std::string& name, const std::vector<VectorFieldPoly>& fields, const CxPoint& c, double r) {
            const GramBasis gb = gram_normalize(fields, c, r, 32);
            acc.add(1e-6 - gb.max_deviation, name + " max|G-I|");
            for (std::size_t m = 0; m < gb.sup_norms.size(); ++m) {
                acc.add(gb.sup_norms[m] - (1.0 / gb.volume - 1e-6), name + " sup|X" + std::to_string(m + 1) + "| vs 1/Vol");
                acc.add(gb.sup_norms[m] - (1.0 / std::sqrt(gb.volume) - 1e-6),
                        name + " sup|X" + std::to_string(m + 1) + "| vs Vol^-1/2");
            }
        };
        run("disk {1,z,z^2}", {VectorFieldPoly::planar({1.0}), VectorFieldPoly::planar({0.0, 1.0}),
                              VectorFieldPoly::planar({0.0, 0.0, 1.0})},
            CxPoint{0.0}, 1.0);
        run("disk aut fields", {hyp, VectorFieldPoly::planar({kI, 0.0, kI}), rot1}, CxPoint{0.0}, 1.0);
        const std::vector<VectorFieldPoly> ball_fields{
            *ball_rot.field(), VectorFieldPoly(2, {{{{0, 0}, 1.0}}, {}}), VectorFieldPoly(2, {{}, {{{0, 0}, 1.0}}}),
            VectorFieldPoly(2, {{{{0, 0}, 1.0}, {{2, 0}, -1.0}}, {{{1, 1}, -1.0}}})};
        run("ball C^2 aut fields", ball_fields, CxPoint{0.0, 0.0}, 1.2);
        reports.push_back(acc.finish());
    }
    return reports;
}

}  // namespace autdim
