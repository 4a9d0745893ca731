#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autdim/cxpoint.hpp"
#include "autdim/domain.hpp"
#include "autdim/flow.hpp"
#include "autdim/metric.hpp"
#include "autdim/vector_field.hpp"

namespace autdim {

// Id: invariant triangle, De: extremal gradient, One: one-step norm
// propagation, Ne: N-step compact bound, MDeriv: dm^2/dt identity,
// Gram: L^2 normalization.
enum class LemmaId { Id, De, One, Ne, MDeriv, Gram };
enum class Status { Passed, Inconclusive, Failed };

[[nodiscard]] const char* to_string(LemmaId id);
[[nodiscard]] const char* to_string(Status s);

struct LemmaReport {
    LemmaId id = LemmaId::Id;
    std::size_t samples = 0;
    double worst_margin = 0.0;
    std::string witness;
    Status status = Status::Passed;
    // Samples with a negative margin that no exact extremal certifies.
    std::size_t uncertified_negative = 0;
};

/// Accumulates signed margins; the worst one wins.
class MarginAccumulator {
public:
    explicit MarginAccumulator(LemmaId id) { rep_.id = id; }
    void add(double margin, const std::string& witness, bool certified = true);
    [[nodiscard]] LemmaReport finish(double slack = 1e-9) const;

private:
    LemmaReport rep_;
    bool any_ = false;
    double worst_certified_ = 0.0;
    bool any_certified_ = false;
};

/// Invariant distance used by the triangle check: chain metric for planar
/// model domains, the ball formula for balls of C^n.
[[nodiscard]] double invariant_distance(const DomainSpec& d, const CxPoint& z, const CxPoint& w);

/// d(z, g(z,t)) - |d(g(w,t), z) - d(w,z)|.
[[nodiscard]] double check_invariant_triangle(const DomainSpec& d, const GroupAction& a, const CxPoint& w,
                                              const CxPoint& z, double t);

struct GradientMargin {
    double margin;
    bool certified;  // witness is an exact extremal function
};

/// Re(grad f_s(w), Y) - 1/(4R) with f_s extremal for (w, w + sY).
[[nodiscard]] GradientMargin check_extremal_gradient_bound(const DomainSpec& d, const CxPoint& w, const CxPoint& y,
                                                           double s, std::uint64_t seed = 0);

/// Largest delta < a/2 (bisection) satisfying the direction condition of the
/// norm-propagation lemma with b = a/(32R), eps = a^2/(128R).
[[nodiscard]] double delta_for(double a, double r, double R);

/// (32R/a) sup_{B(c,r)} |X| - sup_{B(c,r+delta)} |X|.
[[nodiscard]] double check_norm_propagation(const DomainSpec& d, const VectorFieldPoly& x, double r, double a,
                                            double R, const GroupAction& a0, const CxPoint& center);
[[nodiscard]] double check_norm_propagation(const DomainSpec& d, const VectorFieldPoly& x, double r, double a,
                                            double R, const GroupAction& a0);

struct ChainCover {
    std::vector<CxPoint> points;  // breadth-first order, origin first
    std::vector<int> depth;       // chain length to each point (origin = 1)
    double delta = 0.0;
    int n = 1;
};

/// Breadth-first chains with steps < delta from the origin sample.
[[nodiscard]] ChainCover chain_cover(const std::vector<CxPoint>& k_samples, double delta);

/// Chain length N for a spacing delta finer than the sample cloud: points are
/// placed along shortest sample-graph paths, N = 2 + floor(L_max/delta).
[[nodiscard]] int chain_length(const std::vector<CxPoint>& k_samples, double delta);

/// c^{N-1} sup_{B(c0,r)} |X| - sup_K |X|, c = 64R/s, evaluated in log space
/// (+inf when the bound overflows).
[[nodiscard]] double check_compact_bound(const DomainSpec& d, const VectorFieldPoly& x,
                                         const std::vector<CxPoint>& k_samples, double s, double r,
                                         const CxPoint& center);
[[nodiscard]] double check_compact_bound(const DomainSpec& d, const VectorFieldPoly& x,
                                         const std::vector<CxPoint>& k_samples, double s, double r);

/// Holomorphic map into the disk with its gradient.
struct DiskMap {
    std::function<cplx(const CxPoint&)> value;
    std::function<CxPoint(const CxPoint&)> gradient;

    static DiskMap from(const ExtremalCandidate& c);
    static DiskMap from(const ChainExtremal& c);
};

/// |FD derivative of m^2 at 0 - (-2p(1-p^2) Re(grad f(w), X(w)))|.
[[nodiscard]] double check_m_derivative(const DiskMap& f, const VectorFieldPoly& x, const CxPoint& w,
                                        const CxPoint& z, const DomainSpec& d);

struct GramBasis {
    std::vector<VectorFieldPoly> fields;
    CxPoint center;
    double radius = 0.0;
    int order = 32;
    std::vector<std::vector<cplx>> gram;  // of the output fields
    double max_deviation = 0.0;           // max |G - I|
    double volume = 0.0;
    std::vector<double> sup_norms;        // sup over the ball of |X^m|
};

/// Hermitian L^2(ball) Gram matrix by tensor Gauss-Legendre quadrature.
[[nodiscard]] std::vector<std::vector<cplx>> l2_gram(const std::vector<VectorFieldPoly>& fields, const CxPoint& center,
                                                     double radius, int order);

/// Modified Gram-Schmidt in L^2(ball).
[[nodiscard]] GramBasis gram_normalize(const std::vector<VectorFieldPoly>& fields, const CxPoint& center,
                                       double radius, int order = 32);

/// Runs every check over the standard battery (disk, ball of C^2, ellipse,
/// Q, Q_j with fields iz, 1 - z^2, alpha - conj(alpha) z^2).
[[nodiscard]] std::vector<LemmaReport> run_lemma_battery(std::uint64_t seed);

}  // namespace autdim
