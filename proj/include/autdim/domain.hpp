#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "autdim/cxpoint.hpp"

namespace autdim {

class DomainSpec;

/// A boundary point with its outward unit normal. `piece` and `param`
/// locate the point on the parametrized boundary patch it came from
/// (piece = -1 for meshes of sampled domains).
struct BoundarySample {
    CxPoint point;
    CxPoint normal;
    int piece = -1;
    std::array<double, 3> param{};
};

namespace shapes {

struct Ball {
    CxPoint center;
    double radius;
};
struct UnitDisk {};
struct UpperHalfPlane {};
/// 0 < Im z < 1.
struct Strip {};
struct Annulus {
    double r_in;
    double r_out;
};
/// x^2/a^2 + y^2/b^2 < 1, centered at the origin.
struct Ellipse {
    double a;
    double b;
};
/// Unit disk with the closed disk |z - c| <= rho removed.
struct DiskMinusDisk {
    cplx c;
    double rho;
};
/// {(z, w) : z in base, |w| < 1, w != z}; base is planar.
struct ProductMinusDiagonal {
    std::shared_ptr<const DomainSpec> base;
};
/// Generic domain given by a membership oracle and a boundary mesh.
struct Sampled {
    std::size_t n;
    std::function<bool(const CxPoint&)> oracle;
    std::vector<BoundarySample> mesh;
    double mesh_tol;
};

}  // namespace shapes

/// Tagged union of the supported domain models. Immutable once built.
class DomainSpec {
public:
    using Variant = std::variant<shapes::Ball, shapes::UnitDisk, shapes::UpperHalfPlane,
                                 shapes::Strip, shapes::Annulus, shapes::Ellipse,
                                 shapes::DiskMinusDisk, shapes::ProductMinusDiagonal,
                                 shapes::Sampled>;

    static DomainSpec ball(CxPoint center, double radius);
    static DomainSpec unit_disk();
    static DomainSpec upper_half_plane();
    static DomainSpec strip();
    static DomainSpec annulus(double r_in, double r_out);
    static DomainSpec ellipse(double a, double b);
    static DomainSpec disk_minus_disk(cplx c, double rho);
    static DomainSpec product_minus_diagonal(DomainSpec base);
    /// Validates that every mesh point sits on the oracle's boundary to within mesh_tol.
    static DomainSpec sampled(std::size_t n, std::function<bool(const CxPoint&)> oracle,
                              std::vector<BoundarySample> mesh, double mesh_tol = 1e-4);

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }
    [[nodiscard]] std::size_t dim() const;
    [[nodiscard]] bool bounded() const;
    [[nodiscard]] double mesh_tol() const;
    [[nodiscard]] std::string name() const;

    template <class T>
    [[nodiscard]] const T* as() const noexcept { return std::get_if<T>(&v_); }

private:
    explicit DomainSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct RadiiPair {
    double r;
    double R;
    CxPoint center;
};

/// Membership in the open set.
[[nodiscard]] bool contains(const DomainSpec& d, const CxPoint& z);

/// Euclidean distance from an interior point to the boundary.
[[nodiscard]] double dist_to_boundary(const DomainSpec& d, const CxPoint& z);

/// Inscribed radius at `center` and a circumscribed radius about it.
[[nodiscard]] RadiiPair inner_outer_radii(const DomainSpec& d, const CxPoint& center);

/// Samples of the boundary with adjacent spacing at most `density`.
[[nodiscard]] std::vector<BoundarySample> boundary_samples(const DomainSpec& d, double density);

/// Hausdorff distance between the sampled boundaries.
[[nodiscard]] double hausdorff_distance(const DomainSpec& d1, const DomainSpec& d2, double density);

/// Supremum of a continuous function over the part of the closure where
/// plurisubharmonic functions attain their maximum (the boundary for planar
/// domains, the sphere for balls, the torus-like distinguished boundary for
/// the product domain). Grid search followed by local refinement.
[[nodiscard]] double boundary_sup(const DomainSpec& d, const std::function<double(const CxPoint&)>& g,
                                  double density);

/// Grid points of the maximum-modulus set used by boundary_sup (mesh points
/// for sampled domains).
[[nodiscard]] std::vector<CxPoint> modulus_samples(const DomainSpec& d, double density);

/// Planar circle pair (|z| = 1, |z - c| = rho) with the removed disk strictly inside
/// the unit disk: the Mobius disk automorphism z -> (z - p)/(1 - conj(p) z) sends the
/// pair to concentric circles |.| = 1 and |.| = inner_radius.
struct ConcentricNormalizer {
    cplx p;
    double inner_radius;
};
[[nodiscard]] ConcentricNormalizer concentric_normalizer(cplx c, double rho);

}  // namespace autdim
