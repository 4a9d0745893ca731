#pragma once

#include <string>
#include <utility>
#include <vector>

#include "autdim/cxpoint.hpp"
#include "autdim/domain.hpp"
#include "autdim/vector_field.hpp"

namespace autdim {

/// Rows Re(X(z_k) conj(nu_k)) over the monomials 1, z, ..., z^degree; columns
/// are (Re c_0, Im c_0, Re c_1, Im c_1, ...).
struct TangencySystem {
    std::vector<std::vector<double>> matrix;
    int degree = 0;
    std::vector<BoundarySample> samples;

    [[nodiscard]] std::size_t rows() const noexcept { return matrix.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return 2 * static_cast<std::size_t>(degree + 1); }
};

/// Estimated real dimension of the tangent polynomial fields. A lower bound
/// heuristic for dim Aut_0 at the given degree cap.
struct DimReport {
    int estimated_dim = 0;
    std::vector<double> singular_values;  // descending
    double gap_ratio = 0.0;
    double tol = 1e-8;
    int degree = 0;
    std::size_t samples = 0;
    /// Null-space basis fields (real coefficient vectors turned into fields).
    std::vector<VectorFieldPoly> null_fields;
};

[[nodiscard]] TangencySystem tangency_matrix(const std::vector<BoundarySample>& samples, int degree);
[[nodiscard]] TangencySystem tangency_matrix(const DomainSpec& d, int degree, double density);

/// SVD nullity at relative tolerance `tol`; throws AmbiguousDimError when the
/// gap at the cut is below 10.
[[nodiscard]] DimReport aut_dim_estimate(const TangencySystem& sys, double tol = 1e-8);
[[nodiscard]] DimReport aut_dim_estimate(const DomainSpec& d, int degree, double tol = 1e-8, double density = 0.02);

struct SemicontinuityRow {
    double param;
    double hausdorff;
    DimReport dim;
};

struct SemicontinuityTable {
    std::vector<SemicontinuityRow> members;
    DimReport limit;
    /// max member dim over the tail (second half of the family) <= limit dim.
    bool holds = false;
};

[[nodiscard]] SemicontinuityTable semicontinuity_experiment(
    const std::vector<std::pair<double, DomainSpec>>& family, const DomainSpec& limit, int degree,
    double tol = 1e-8, double density = 0.02);

struct ConvergenceReport {
    std::vector<int> js;
    std::vector<double> sup_deviations;
    std::vector<double> normalizers;  // sup over B of the raw field
    std::string k_descriptor;
};

/// Normalizes each field to sup over B(center, radius) = 1 and reports
/// sup_K |X_j - X_limit|.
[[nodiscard]] ConvergenceReport field_convergence(const std::vector<int>& js, const std::vector<VectorFieldPoly>& fields,
                                                  const VectorFieldPoly& limit, const CxPoint& center, double radius,
                                                  const std::vector<CxPoint>& k_samples);

/// Rotation generators of Q_j against the translation generator of Q,
/// B = B(center, radius), K = disk of radius k_radius about center.
[[nodiscard]] ConvergenceReport field_convergence_experiment(const std::vector<int>& js, const CxPoint& center,
                                                             double radius, double k_radius, double s = 0.05);

}  // namespace autdim
