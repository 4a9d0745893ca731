#include "autdim/dim_estimator.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "autdim/gallery.hpp"

namespace autdim {

namespace {

constexpr double kMinGap = 10.0;

std::string fmt_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

TangencySystem tangency_matrix(const std::vector<BoundarySample>& samples, int degree) {
    if (degree < 0) throw PreconditionError("tangency_matrix: degree must be >= 0");
    const std::size_t need = 4 * static_cast<std::size_t>(degree + 1);
    if (samples.size() < need)
        throw UnderdeterminedError("tangency_matrix: " + std::to_string(samples.size()) + " samples, need " +
                                   std::to_string(need));
    TangencySystem sys;
    sys.degree = degree;
    sys.samples = samples;
    for (const auto& s : samples) {
        if (s.point.dim() != 1) throw DimensionError("tangency_matrix needs a planar domain");
        const cplx z = s.point[0];
        const cplx nu_bar = std::conj(s.normal[0]);
        std::vector<double> row;
        row.reserve(sys.cols());
        cplx zm{1.0, 0.0};
        for (int m = 0; m <= degree; ++m) {
            const cplx u = zm * nu_bar;
            // Re((a + ib) u) = a Re u - b Im u
            row.push_back(u.real());
            row.push_back(-u.imag());
            zm *= z;
        }
        sys.matrix.push_back(std::move(row));
    }
    return sys;
}

TangencySystem tangency_matrix(const DomainSpec& d, int degree, double density) {
    if (d.dim() != 1) throw DimensionError("tangency_matrix needs a planar domain");
    if (!d.bounded()) throw UnboundedDomainError("tangency_matrix needs a bounded domain");
    return tangency_matrix(boundary_samples(d, density), degree);
}

DimReport aut_dim_estimate(const TangencySystem& sys, double tol) {
    const auto rows = static_cast<Eigen::Index>(sys.rows());
    const auto cols = static_cast<Eigen::Index>(sys.cols());
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = sys.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();

    DimReport rep;
    rep.tol = tol;
    rep.degree = sys.degree;
    rep.samples = sys.rows();
    // Pad with zeros when there are fewer rows than columns.
    rep.singular_values.assign(static_cast<std::size_t>(cols), 0.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) rep.singular_values[static_cast<std::size_t>(i)] = sv(i);
    const double smax = rep.singular_values.front();
    const double cut = tol * smax;
    int kept = 0;
    for (double s : rep.singular_values)
        if (smax > 0.0 && s >= cut) ++kept;
    rep.estimated_dim = static_cast<int>(cols) - kept;
    if (kept == 0) rep.gap_ratio = std::numeric_limits<double>::infinity();
    else if (rep.estimated_dim == 0) rep.gap_ratio = rep.singular_values.back() / cut;
    else {
        const double below = rep.singular_values[static_cast<std::size_t>(kept)];
        rep.gap_ratio = below > 0.0 ? rep.singular_values[static_cast<std::size_t>(kept - 1)] / below
                                    : std::numeric_limits<double>::infinity();
    }
    if (rep.gap_ratio < kMinGap)
        throw AmbiguousDimError(rep.singular_values,
                                "aut_dim_estimate: spectral gap " + fmt_num(rep.gap_ratio) + " below 10 at the cut");
    const Eigen::MatrixXd& v = svd.matrixV();
    for (Eigen::Index c = kept; c < cols; ++c) {
        std::vector<cplx> coeffs(static_cast<std::size_t>(sys.degree + 1));
        for (int m = 0; m <= sys.degree; ++m) coeffs[static_cast<std::size_t>(m)] = cplx{v(2 * m, c), v(2 * m + 1, c)};
        rep.null_fields.push_back(VectorFieldPoly::planar(coeffs));
    }
    return rep;
}

DimReport aut_dim_estimate(const DomainSpec& d, int degree, double tol, double density) {
    return aut_dim_estimate(tangency_matrix(d, degree, density), tol);
}

SemicontinuityTable semicontinuity_experiment(const std::vector<std::pair<double, DomainSpec>>& family,
                                              const DomainSpec& limit, int degree, double tol, double density) {
    if (family.empty()) throw PreconditionError("semicontinuity_experiment: empty family");
    SemicontinuityTable table;
    table.limit = aut_dim_estimate(limit, degree, tol, density);
    for (const auto& [param, member] : family) {
        DimReport rep;
        try {
            rep = aut_dim_estimate(member, degree, tol, density);
        } catch (const AmbiguousDimError& e) {
            throw AmbiguousDimError(e.spectrum(), "semicontinuity_experiment: parameter " + fmt_num(param) + ": " +
                                                      e.what());
        }
        table.members.push_back({param, hausdorff_distance(member, limit, density / 4.0), std::move(rep)});
    }
    const std::size_t tail = table.members.size() / 2;
    int tail_max = 0;
    for (std::size_t i = tail; i < table.members.size(); ++i)
        tail_max = std::max(tail_max, table.members[i].dim.estimated_dim);
    table.holds = tail_max <= table.limit.estimated_dim;
    return table;
}

ConvergenceReport field_convergence(const std::vector<int>& js, const std::vector<VectorFieldPoly>& fields,
                                    const VectorFieldPoly& limit, const CxPoint& center, double radius,
                                    const std::vector<CxPoint>& k_samples) {
    if (js.size() != fields.size()) throw PreconditionError("field_convergence: one field per index");
    if (k_samples.empty()) throw PreconditionError("field_convergence: empty K");
    const double lim_norm = sup_norm_ball(limit, center, radius);
    if (!(lim_norm > 0.0)) throw PreconditionError("field_convergence: limit field vanishes on B");
    const VectorFieldPoly lim = limit.scaled(1.0 / lim_norm);
    ConvergenceReport rep;
    rep.js = js;
    for (const auto& f : fields) {
        const double nrm = sup_norm_ball(f, center, radius);
        if (!(nrm > 0.0)) throw PreconditionError("field_convergence: field vanishes on B");
        const VectorFieldPoly g = f.scaled(1.0 / nrm);
        double dev = 0.0;
        for (const auto& k : k_samples) dev = std::max(dev, distance(g(k), lim(k)));
        rep.normalizers.push_back(nrm);
        rep.sup_deviations.push_back(dev);
    }
    return rep;
}

ConvergenceReport field_convergence_experiment(const std::vector<int>& js, const CxPoint& center, double radius,
                                               double k_radius, double s) {
    if (center.dim() != 1) throw DimensionError("field_convergence_experiment is planar");
    std::vector<CxPoint> k;
    k.push_back(center);
    for (int ring = 1; ring <= 10; ++ring) {
        const double r = k_radius * ring / 10.0;
        const int count = 8 * ring;
        for (int i = 0; i < count; ++i) k.emplace_back(center[0] + std::polar(r, 2.0 * std::numbers::pi * i / count));
    }
    const Example1Family lim = Example1Family::limit();
    std::vector<VectorFieldPoly> fields;
    for (int j : js) {
        const Example1Family fam = Example1Family::member(j);
        for (const DomainSpec* d : {&fam.qpart, &lim.qpart}) {
            if (dist_to_boundary(*d, center) < radius + 3.0 * s)
                throw PreconditionError("field_convergence_experiment: B too close to the boundary of " + d->name());
            if (dist_to_boundary(*d, center) < k_radius + 3.0 * s)
                throw PreconditionError("field_convergence_experiment: K too close to the boundary of " + d->name());
        }
        fields.push_back(rotation_generator(fam));
    }
    ConvergenceReport rep = field_convergence(js, fields, translation_generator(), center, radius, k);
    rep.k_descriptor = "disk center " + fmt_num(center[0].real()) + (center[0].imag() >= 0 ? "+" : "") +
                       fmt_num(center[0].imag()) + "i radius " + fmt_num(k_radius);
    return rep;
}

}  // namespace autdim
