#include "autdim/vector_field.hpp"

#include <algorithm>
#include <map>

namespace autdim {

namespace {

cplx term_value(const PolyTerm& t, const CxPoint& z) {
    cplx v = t.coeff;
    for (std::size_t k = 0; k < t.exps.size(); ++k)
        for (int p = 0; p < t.exps[k]; ++p) v *= z[k];
    return v;
}

// Merge equal exponents and drop zero coefficients.
std::vector<PolyTerm> normalize(const std::vector<PolyTerm>& terms) {
    std::map<std::vector<int>, cplx> acc;
    for (const auto& t : terms) acc[t.exps] += t.coeff;
    std::vector<PolyTerm> out;
    for (const auto& [e, c] : acc)
        if (c != cplx{0.0, 0.0}) out.push_back({e, c});
    return out;
}

}  // namespace

VectorFieldPoly::VectorFieldPoly(std::size_t n, std::vector<std::vector<PolyTerm>> components)
    : n_(n), comps_(std::move(components)) {
    if (n_ == 0) throw DimensionError("vector field needs n >= 1");
    if (comps_.size() != n_) throw DimensionError("vector field needs one polynomial per coordinate");
    for (auto& c : comps_) {
        for (const auto& t : c) {
            if (t.exps.size() != n_) throw DimensionError("vector field term has wrong arity");
            if (std::any_of(t.exps.begin(), t.exps.end(), [](int e) { return e < 0; }))
                throw DimensionError("negative exponent in polynomial term");
        }
        c = normalize(c);
    }
}

VectorFieldPoly VectorFieldPoly::planar(const std::vector<cplx>& coeffs) {
    std::vector<PolyTerm> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k) terms.push_back({{static_cast<int>(k)}, coeffs[k]});
    return VectorFieldPoly(1, {terms});
}

VectorFieldPoly VectorFieldPoly::diagonal(const VectorFieldPoly& planar, std::size_t n) {
    if (planar.dim() != 1) throw DimensionError("diagonal lift needs a planar field");
    std::vector<std::vector<PolyTerm>> comps(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& t : planar.comps_[0]) {
            std::vector<int> e(n, 0);
            e[i] = t.exps[0];
            comps[i].push_back({e, t.coeff});
        }
    return VectorFieldPoly(n, std::move(comps));
}

VectorFieldPoly VectorFieldPoly::zero(std::size_t n) {
    return VectorFieldPoly(n, std::vector<std::vector<PolyTerm>>(n));
}

int VectorFieldPoly::degree() const {
    int deg = 0;
    for (const auto& c : comps_)
        for (const auto& t : c) {
            int s = 0;
            for (int e : t.exps) s += e;
            deg = std::max(deg, s);
        }
    return deg;
}

CxPoint VectorFieldPoly::operator()(const CxPoint& z) const {
    if (z.dim() != n_) throw DimensionError("vector field evaluated at point of wrong dimension");
    CxPoint out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& t : comps_[i]) out[i] += term_value(t, z);
    return out;
}

std::vector<std::vector<cplx>> VectorFieldPoly::jacobian(const CxPoint& z) const {
    if (z.dim() != n_) throw DimensionError("jacobian at point of wrong dimension");
    std::vector<std::vector<cplx>> jac(n_, std::vector<cplx>(n_, 0.0));
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& t : comps_[i])
            for (std::size_t k = 0; k < n_; ++k) {
                if (t.exps[k] == 0) continue;
                PolyTerm d = t;
                d.coeff *= static_cast<double>(t.exps[k]);
                d.exps[k] -= 1;
                jac[i][k] += term_value(d, z);
            }
    return jac;
}

VectorFieldPoly VectorFieldPoly::scaled(cplx s) const {
    auto comps = comps_;
    for (auto& c : comps)
        for (auto& t : c) t.coeff *= s;
    return VectorFieldPoly(n_, std::move(comps));
}

VectorFieldPoly VectorFieldPoly::plus(const VectorFieldPoly& o, cplx s) const {
    if (o.n_ != n_) throw DimensionError("adding vector fields of different dimension");
    auto comps = comps_;
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& t : o.comps_[i]) comps[i].push_back({t.exps, s * t.coeff});
    return VectorFieldPoly(n_, std::move(comps));
}

std::vector<cplx> VectorFieldPoly::planar_coeffs() const {
    if (n_ != 1) throw DimensionError("planar_coeffs needs n = 1");
    std::vector<cplx> out(static_cast<std::size_t>(degree()) + 1, 0.0);
    for (const auto& t : comps_[0]) out[static_cast<std::size_t>(t.exps[0])] += t.coeff;
    return out;
}

}  // namespace autdim
