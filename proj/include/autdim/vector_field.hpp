#pragma once

#include <vector>

#include "autdim/cxpoint.hpp"

namespace autdim {

/// coeff * z_1^{e_1} ... z_n^{e_n}.
struct PolyTerm {
    std::vector<int> exps;
    cplx coeff;
};

/// Holomorphic polynomial vector field on C^n: one polynomial per coordinate.
class VectorFieldPoly {
public:
    VectorFieldPoly() = default;
    VectorFieldPoly(std::size_t n, std::vector<std::vector<PolyTerm>> components);

    /// sum_k coeffs[k] z^k on C.
    static VectorFieldPoly planar(const std::vector<cplx>& coeffs);
    /// The planar field acting on every coordinate of C^n separately.
    static VectorFieldPoly diagonal(const VectorFieldPoly& planar, std::size_t n);
    static VectorFieldPoly zero(std::size_t n);

    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    [[nodiscard]] int degree() const;
    [[nodiscard]] const std::vector<std::vector<PolyTerm>>& components() const noexcept { return comps_; }

    [[nodiscard]] CxPoint operator()(const CxPoint& z) const;
    /// Complex Jacobian, row i = gradient of component i.
    [[nodiscard]] std::vector<std::vector<cplx>> jacobian(const CxPoint& z) const;

    [[nodiscard]] VectorFieldPoly scaled(cplx s) const;
    [[nodiscard]] VectorFieldPoly plus(const VectorFieldPoly& o, cplx s = 1.0) const;

    /// Planar coefficient list (index = power); only for n = 1.
    [[nodiscard]] std::vector<cplx> planar_coeffs() const;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<PolyTerm>> comps_;
};

}  // namespace autdim
