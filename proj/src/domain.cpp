#include "autdim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace autdim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAnalyticMeshTol = 1e-9;
constexpr double kTangencyTol = 1e-12;

using Params = std::array<double, 3>;

// A parametrized piece of boundary: a map from a box of up to three real
// parameters into C^n, with an optional acceptance filter for pieces that
// are regions (the product domain's fibers).
struct Patch {
    int dims = 1;
    Params lo{}, hi{}, speed{1.0, 1.0, 1.0};
    std::array<bool, 3> periodic{false, false, false};
    // Drop the two endpoints of a non-periodic first parameter.
    bool open_ends = false;
    std::function<CxPoint(const Params&)> point;
    std::function<CxPoint(const Params&)> normal;
    std::function<bool(const Params&)> accept;
};

struct Arc {
    cplx center;
    double radius;
    double lo;  // angle range [lo, hi]; full circle when full == true
    double hi;
    bool full;
    bool open;     // endpoints belong to another arc
    bool inward;   // normal points toward the center
};

double wrap_angle(double a, double lo) {
    double x = std::fmod(a - lo, kTwoPi);
    if (x < 0) x += kTwoPi;
    return lo + x;
}

double dist_to_arc(const Arc& arc, cplx z) {
    const cplx rel = z - arc.center;
    const double m = std::abs(rel);
    if (arc.full) return std::abs(m - arc.radius);
    if (m > 0.0) {
        const double a = wrap_angle(std::arg(rel), arc.lo);
        if (a <= arc.hi) return std::abs(m - arc.radius);
    }
    const cplx e0 = arc.center + std::polar(arc.radius, arc.lo);
    const cplx e1 = arc.center + std::polar(arc.radius, arc.hi);
    return std::min(std::abs(z - e0), std::abs(z - e1));
}

std::vector<Arc> disk_minus_disk_arcs(const shapes::DiskMinusDisk& q) {
    std::vector<Arc> arcs;
    const double ca = std::abs(q.c);
    if (ca == 0.0) {
        arcs.push_back({0.0, 1.0, 0.0, kTwoPi, true, false, false});
        arcs.push_back({q.c, q.rho, 0.0, kTwoPi, true, false, true});
        return arcs;
    }
    const double phi = std::arg(q.c);
    const double kappa = (1.0 + ca * ca - q.rho * q.rho) / (2.0 * ca);
    const double lambda = (1.0 - ca * ca - q.rho * q.rho) / (2.0 * q.rho * ca);
    if (kappa >= 1.0 - kTangencyTol) {
        arcs.push_back({0.0, 1.0, 0.0, kTwoPi, true, false, false});
    } else {
        const double a = std::acos(kappa);
        arcs.push_back({0.0, 1.0, phi + a, phi + kTwoPi - a, false, false, false});
    }
    if (lambda > 1.0 + kTangencyTol) {
        arcs.push_back({q.c, q.rho, phi, phi + kTwoPi, true, false, true});
    } else if (lambda > -1.0) {
        const double a = lambda >= 1.0 - kTangencyTol ? 0.0 : std::acos(lambda);
        arcs.push_back({q.c, q.rho, phi + a, phi + kTwoPi - a, false, true, true});
    }
    return arcs;
}

Patch arc_patch(const Arc& arc) {
    Patch p;
    p.dims = 1;
    p.lo[0] = arc.full ? 0.0 : arc.lo;
    p.hi[0] = arc.full ? kTwoPi : arc.hi;
    p.speed[0] = arc.radius;
    p.periodic[0] = arc.full;
    p.open_ends = arc.open;
    const cplx c = arc.center;
    const double r = arc.radius;
    const double sign = arc.inward ? -1.0 : 1.0;
    p.point = [c, r](const Params& t) { return CxPoint{c + std::polar(r, t[0])}; };
    p.normal = [sign](const Params& t) { return CxPoint{std::polar(sign, t[0])}; };
    return p;
}

// Boundary curves of a bounded planar domain.
std::vector<Patch> planar_patches(const DomainSpec& d) {
    std::vector<Patch> out;
    if (d.as<shapes::UnitDisk>()) {
        out.push_back(arc_patch({0.0, 1.0, 0.0, kTwoPi, true, false, false}));
    } else if (const auto* b = d.as<shapes::Ball>()) {
        out.push_back(arc_patch({b->center[0], b->radius, 0.0, kTwoPi, true, false, false}));
    } else if (const auto* a = d.as<shapes::Annulus>()) {
        out.push_back(arc_patch({0.0, a->r_out, 0.0, kTwoPi, true, false, false}));
        out.push_back(arc_patch({0.0, a->r_in, 0.0, kTwoPi, true, false, true}));
    } else if (const auto* e = d.as<shapes::Ellipse>()) {
        Patch p;
        p.lo[0] = 0.0;
        p.hi[0] = kTwoPi;
        p.speed[0] = std::max(e->a, e->b);
        p.periodic[0] = true;
        const double a = e->a, b = e->b;
        p.point = [a, b](const Params& t) { return CxPoint{cplx{a * std::cos(t[0]), b * std::sin(t[0])}}; };
        p.normal = [a, b](const Params& t) {
            const cplx n{std::cos(t[0]) / a, std::sin(t[0]) / b};
            return CxPoint{n / std::abs(n)};
        };
        out.push_back(std::move(p));
    } else if (const auto* q = d.as<shapes::DiskMinusDisk>()) {
        for (const auto& arc : disk_minus_disk_arcs(*q)) out.push_back(arc_patch(arc));
    } else {
        throw DimensionError("planar boundary requested for non-planar or unsupported domain " + d.name());
    }
    return out;
}

Patch sphere_patch(const CxPoint& c, double r) {
    Patch p;
    p.dims = 3;
    p.lo = {0.0, 0.0, 0.0};
    p.hi = {std::numbers::pi / 2.0, kTwoPi, kTwoPi};
    p.speed = {r, r, r};
    p.periodic = {false, true, true};
    p.point = [c, r](const Params& t) {
        return CxPoint{c[0] + std::polar(r * std::cos(t[0]), t[1]),
                       c[1] + std::polar(r * std::sin(t[0]), t[2])};
    };
    p.normal = [](const Params& t) {
        return CxPoint{std::polar(std::cos(t[0]), t[1]), std::polar(std::sin(t[0]), t[2])};
    };
    return p;
}

struct Box2 {
    double x0, x1, y0, y1;
};

Box2 planar_bbox(const DomainSpec& d) {
    if (const auto* e = d.as<shapes::Ellipse>()) return {-e->a, e->a, -e->b, e->b};
    if (const auto* b = d.as<shapes::Ball>()) {
        const cplx c = b->center[0];
        return {c.real() - b->radius, c.real() + b->radius, c.imag() - b->radius, c.imag() + b->radius};
    }
    if (const auto* a = d.as<shapes::Annulus>()) return {-a->r_out, a->r_out, -a->r_out, a->r_out};
    return {-1.0, 1.0, -1.0, 1.0};
}

std::shared_ptr<const DomainSpec> unit_disk_ptr() {
    static const auto disk = std::make_shared<const DomainSpec>(DomainSpec::unit_disk());
    return disk;
}

// Lift a planar boundary curve of one factor to a 3-parameter patch of the
// product boundary; the other factor ranges over a grid of its open region.
Patch lift_curve_times_region(const Patch& curve, bool curve_first,
                              std::shared_ptr<const DomainSpec> region, Box2 box) {
    Patch p;
    p.dims = 3;
    p.lo = {curve.lo[0], box.x0, box.y0};
    p.hi = {curve.hi[0], box.x1, box.y1};
    p.speed = {curve.speed[0], 1.0, 1.0};
    p.periodic = {curve.periodic[0], false, false};
    p.open_ends = curve.open_ends;
    auto cp = curve.point;
    auto cn = curve.normal;
    p.point = [cp, curve_first](const Params& t) {
        const cplx a = cp(t)[0];
        const cplx b{t[1], t[2]};
        return curve_first ? CxPoint{a, b} : CxPoint{b, a};
    };
    p.normal = [cn, curve_first](const Params& t) {
        const cplx a = cn(t)[0];
        return curve_first ? CxPoint{a, 0.0} : CxPoint{0.0, a};
    };
    p.accept = [region, cp, curve_first](const Params& t) {
        const cplx b{t[1], t[2]};
        if (!contains(*region, CxPoint{b})) return false;
        // Keep clear of the removed diagonal.
        return std::abs(cp(t)[0] - b) > 1e-9;
    };
    return p;
}

Patch curve_times_curve(const Patch& a, const Patch& b) {
    Patch p;
    p.dims = 2;
    p.lo = {a.lo[0], b.lo[0], 0.0};
    p.hi = {a.hi[0], b.hi[0], 0.0};
    p.speed = {a.speed[0], b.speed[0], 1.0};
    p.periodic = {a.periodic[0], b.periodic[0], false};
    p.open_ends = a.open_ends;
    auto ap = a.point, bp = b.point;
    p.point = [ap, bp](const Params& t) {
        Params tb{t[1], 0.0, 0.0};
        return CxPoint{ap(t)[0], bp(tb)[0]};
    };
    return p;
}

// Patches carrying the boundary (for samples / Hausdorff).
std::vector<Patch> boundary_patches(const DomainSpec& d) {
    if (!d.bounded()) throw UnboundedDomainError("boundary of unbounded domain " + d.name());
    if (const auto* b = d.as<shapes::Ball>()) {
        if (b->center.dim() == 2) return {sphere_patch(b->center, b->radius)};
        if (b->center.dim() != 1) throw DimensionError("boundary sampling supports n <= 2");
    }
    if (const auto* pm = d.as<shapes::ProductMinusDiagonal>()) {
        std::vector<Patch> out;
        const auto base = pm->base;
        for (const auto& c : planar_patches(*base))
            out.push_back(lift_curve_times_region(c, true, unit_disk_ptr(), {-1.0, 1.0, -1.0, 1.0}));
        for (const auto& c : planar_patches(DomainSpec::unit_disk()))
            out.push_back(lift_curve_times_region(c, false, base, planar_bbox(*base)));
        return out;
    }
    return planar_patches(d);
}

// Patches where the maximum of a plurisubharmonic function over the closure is attained.
std::vector<Patch> modulus_patches(const DomainSpec& d) {
    if (const auto* pm = d.as<shapes::ProductMinusDiagonal>()) {
        std::vector<Patch> out;
        const auto circle = planar_patches(DomainSpec::unit_disk()).front();
        for (const auto& c : planar_patches(*pm->base)) out.push_back(curve_times_curve(c, circle));
        return out;
    }
    return boundary_patches(d);
}

std::vector<double> grid_axis(const Patch& p, int k, double density) {
    const double len = p.hi[k] - p.lo[k];
    const int count = std::max(1, static_cast<int>(std::ceil(len * p.speed[k] / density)));
    const double step = len / count;
    std::vector<double> out;
    if (p.periodic[k]) {
        for (int i = 0; i < count; ++i) out.push_back(p.lo[k] + i * step);
    } else if (k == 0 && p.open_ends) {
        if (count < 2) out.push_back(p.lo[k] + 0.5 * len);
        for (int i = 1; i < count; ++i) out.push_back(p.lo[k] + i * step);
    } else {
        for (int i = 0; i <= count; ++i) out.push_back(p.lo[k] + i * step);
    }
    return out;
}

template <class Fn>
void for_each_grid_point(const Patch& p, double density, Fn&& fn) {
    std::array<std::vector<double>, 3> axes;
    for (int k = 0; k < 3; ++k) axes[k] = k < p.dims ? grid_axis(p, k, density) : std::vector<double>{0.0};
    Params t{};
    for (double a : axes[0]) {
        t[0] = a;
        for (double b : axes[1]) {
            t[1] = b;
            for (double c : axes[2]) {
                t[2] = c;
                if (p.accept && !p.accept(t)) continue;
                fn(t);
            }
        }
    }
}

double ellipse_distance(double a, double b, cplx z) {
    // Distance from a point to the ellipse curve, by bisection on the
    // Lagrange parameter (first-quadrant reduction).
    double e0 = a, e1 = b;
    double y0 = std::abs(z.real()), y1 = std::abs(z.imag());
    if (e0 < e1) {
        std::swap(e0, e1);
        std::swap(y0, y1);
    }
    auto root = [](double r0, double z0, double z1, double g) {
        const double n0 = r0 * z0;
        double s0 = z1 - 1.0;
        double s1 = g < 0 ? 0.0 : std::hypot(n0, z1) - 1.0;
        double s = 0.0;
        for (int i = 0; i < 200; ++i) {
            s = 0.5 * (s0 + s1);
            if (s == s0 || s == s1) break;
            const double ratio0 = n0 / (s + r0);
            const double ratio1 = z1 / (s + 1.0);
            const double gg = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
            if (gg > 0) s0 = s;
            else if (gg < 0) s1 = s;
            else break;
        }
        return s;
    };
    if (y1 > 0) {
        if (y0 > 0) {
            const double z0 = y0 / e0, z1 = y1 / e1;
            const double g = z0 * z0 + z1 * z1 - 1.0;
            if (g != 0.0) {
                const double r0 = (e0 / e1) * (e0 / e1);
                const double sbar = root(r0, z0, z1, g);
                const double x0 = r0 * y0 / (sbar + r0);
                const double x1 = y1 / (sbar + 1.0);
                return std::hypot(x0 - y0, x1 - y1);
            }
            return 0.0;
        }
        return std::abs(y1 - e1);
    }
    const double numer0 = e0 * y0, denom0 = e0 * e0 - e1 * e1;
    if (numer0 < denom0) {
        const double xde0 = numer0 / denom0;
        const double x0 = e0 * xde0;
        const double x1 = e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0));
        return std::hypot(x0 - y0, x1);
    }
    return std::abs(y0 - e0);
}

void require_dim(const DomainSpec& d, const CxPoint& z) {
    if (z.dim() != d.dim())
        throw DimensionError("point of dimension " + std::to_string(z.dim()) + " for domain " + d.name());
}

// Local pattern search maximizing g over a patch, started at t.
double refine_max(const Patch& p, const std::function<double(const CxPoint&)>& g, Params t,
                  double value, double density) {
    Params step{};
    for (int k = 0; k < p.dims; ++k) {
        const double len = p.hi[k] - p.lo[k];
        const int count = std::max(1, static_cast<int>(std::ceil(len * p.speed[k] / density)));
        step[k] = len / count;
    }
    for (int iter = 0; iter < 400; ++iter) {
        bool moved = false;
        for (int k = 0; k < p.dims; ++k) {
            for (double dir : {1.0, -1.0}) {
                Params c = t;
                c[k] += dir * step[k];
                if (p.periodic[k]) {
                    c[k] = wrap_angle(c[k], p.lo[k]);
                } else {
                    c[k] = std::clamp(c[k], p.lo[k], p.hi[k]);
                }
                if (p.accept && !p.accept(c)) continue;
                const double v = g(p.point(c));
                if (v > value) {
                    value = v;
                    t = c;
                    moved = true;
                }
            }
        }
        if (!moved) {
            bool tiny = true;
            for (int k = 0; k < p.dims; ++k) {
                step[k] *= 0.5;
                if (step[k] > 1e-14 * (1.0 + std::abs(p.hi[k] - p.lo[k]))) tiny = false;
            }
            if (tiny) break;
        }
    }
    return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// DomainSpec

DomainSpec DomainSpec::ball(CxPoint center, double radius) {
    if (center.dim() == 0 || !center.finite()) throw InvalidDomainError("ball center must be finite, n >= 1");
    if (!(radius > 0.0)) throw InvalidDomainError("ball radius must be positive");
    return DomainSpec(shapes::Ball{std::move(center), radius});
}
DomainSpec DomainSpec::unit_disk() { return DomainSpec(shapes::UnitDisk{}); }
DomainSpec DomainSpec::upper_half_plane() { return DomainSpec(shapes::UpperHalfPlane{}); }
DomainSpec DomainSpec::strip() { return DomainSpec(shapes::Strip{}); }

DomainSpec DomainSpec::annulus(double r_in, double r_out) {
    if (!(r_in > 0.0) || !(r_in < r_out)) throw InvalidDomainError("annulus needs 0 < rIn < rOut");
    return DomainSpec(shapes::Annulus{r_in, r_out});
}

DomainSpec DomainSpec::ellipse(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidDomainError("ellipse semi-axes must be positive");
    return DomainSpec(shapes::Ellipse{a, b});
}

DomainSpec DomainSpec::disk_minus_disk(cplx c, double rho) {
    if (!(rho > 0.0) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InvalidDomainError("removed disk needs finite center and positive radius");
    const double ca = std::abs(c);
    if (ca - rho > 1.0) throw InvalidDomainError("removed disk misses the closed unit disk");
    if (rho >= 1.0 + ca) throw InvalidDomainError("removed disk covers the unit disk");
    return DomainSpec(shapes::DiskMinusDisk{c, rho});
}

DomainSpec DomainSpec::product_minus_diagonal(DomainSpec base) {
    if (base.dim() != 1) throw DimensionError("product base must be planar");
    if (!base.bounded()) throw UnboundedDomainError("product base must be bounded");
    return DomainSpec(shapes::ProductMinusDiagonal{std::make_shared<const DomainSpec>(std::move(base))});
}

DomainSpec DomainSpec::sampled(std::size_t n, std::function<bool(const CxPoint&)> oracle,
                               std::vector<BoundarySample> mesh, double mesh_tol) {
    if (!oracle) throw InvalidDomainError("sampled domain needs an oracle");
    if (mesh.empty()) throw InvalidDomainError("sampled domain needs a boundary mesh");
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const auto& s = mesh[i];
        if (s.point.dim() != n || s.normal.dim() != n) throw DimensionError("mesh point dimension mismatch");
        if (std::abs(s.normal.norm() - 1.0) > 1e-9) throw InvalidDomainError("mesh normals must be unit");
        if (!oracle(s.point - mesh_tol * s.normal) || oracle(s.point + mesh_tol * s.normal)) {
            std::ostringstream os;
            os << "mesh point " << i << " is not within meshTol of the oracle boundary";
            throw InvalidDomainError(os.str());
        }
    }
    return DomainSpec(shapes::Sampled{n, std::move(oracle), std::move(mesh), mesh_tol});
}

std::size_t DomainSpec::dim() const {
    return std::visit(
        [](const auto& s) -> std::size_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shapes::Ball>) return s.center.dim();
            else if constexpr (std::is_same_v<T, shapes::ProductMinusDiagonal>) return 2;
            else if constexpr (std::is_same_v<T, shapes::Sampled>) return s.n;
            else return 1;
        },
        v_);
}

bool DomainSpec::bounded() const {
    return !std::holds_alternative<shapes::UpperHalfPlane>(v_) && !std::holds_alternative<shapes::Strip>(v_);
}

double DomainSpec::mesh_tol() const {
    if (const auto* s = as<shapes::Sampled>()) return s->mesh_tol;
    return kAnalyticMeshTol;
}

std::string DomainSpec::name() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shapes::Ball>) os << "Ball(n=" << s.center.dim() << ", r=" << s.radius << ")";
            else if constexpr (std::is_same_v<T, shapes::UnitDisk>) os << "UnitDisk";
            else if constexpr (std::is_same_v<T, shapes::UpperHalfPlane>) os << "UpperHalfPlane";
            else if constexpr (std::is_same_v<T, shapes::Strip>) os << "Strip";
            else if constexpr (std::is_same_v<T, shapes::Annulus>) os << "Annulus(" << s.r_in << ", " << s.r_out << ")";
            else if constexpr (std::is_same_v<T, shapes::Ellipse>) os << "Ellipse(" << s.a << ", " << s.b << ")";
            else if constexpr (std::is_same_v<T, shapes::DiskMinusDisk>) os << "DiskMinusDisk(" << s.c << ", " << s.rho << ")";
            else if constexpr (std::is_same_v<T, shapes::ProductMinusDiagonal>) os << "ProductMinusDiagonal(" << s.base->name() << ")";
            else os << "Sampled(n=" << s.n << ", mesh=" << s.mesh.size() << ")";
        },
        v_);
    return os.str();
}

// ---------------------------------------------------------------------------
// Queries

bool contains(const DomainSpec& d, const CxPoint& z) {
    require_dim(d, z);
    if (!z.finite()) return false;
    return std::visit(
        [&z](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shapes::Ball>) return distance(z, s.center) < s.radius;
            else if constexpr (std::is_same_v<T, shapes::UnitDisk>) return std::abs(z[0]) < 1.0;
            else if constexpr (std::is_same_v<T, shapes::UpperHalfPlane>) return z[0].imag() > 0.0;
            else if constexpr (std::is_same_v<T, shapes::Strip>) return z[0].imag() > 0.0 && z[0].imag() < 1.0;
            else if constexpr (std::is_same_v<T, shapes::Annulus>) {
                const double m = std::abs(z[0]);
                return m > s.r_in && m < s.r_out;
            } else if constexpr (std::is_same_v<T, shapes::Ellipse>) {
                const double x = z[0].real() / s.a, y = z[0].imag() / s.b;
                return x * x + y * y < 1.0;
            } else if constexpr (std::is_same_v<T, shapes::DiskMinusDisk>) {
                return std::abs(z[0]) < 1.0 && std::abs(z[0] - s.c) > s.rho;
            } else if constexpr (std::is_same_v<T, shapes::ProductMinusDiagonal>) {
                return contains(*s.base, CxPoint{z[0]}) && std::abs(z[1]) < 1.0 && z[1] != z[0];
            } else {
                return s.oracle(z);
            }
        },
        d.variant());
}

double dist_to_boundary(const DomainSpec& d, const CxPoint& z) {
    if (!contains(d, z)) throw OutsideDomainError("dist_to_boundary: point outside " + d.name());
    return std::visit(
        [&z](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shapes::Ball>) return s.radius - distance(z, s.center);
            else if constexpr (std::is_same_v<T, shapes::UnitDisk>) return 1.0 - std::abs(z[0]);
            else if constexpr (std::is_same_v<T, shapes::UpperHalfPlane>) return z[0].imag();
            else if constexpr (std::is_same_v<T, shapes::Strip>) return std::min(z[0].imag(), 1.0 - z[0].imag());
            else if constexpr (std::is_same_v<T, shapes::Annulus>) {
                const double m = std::abs(z[0]);
                return std::min(m - s.r_in, s.r_out - m);
            } else if constexpr (std::is_same_v<T, shapes::Ellipse>) {
                return ellipse_distance(s.a, s.b, z[0]);
            } else if constexpr (std::is_same_v<T, shapes::DiskMinusDisk>) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& arc : disk_minus_disk_arcs(s)) best = std::min(best, dist_to_arc(arc, z[0]));
                return best;
            } else if constexpr (std::is_same_v<T, shapes::ProductMinusDiagonal>) {
                const double base = dist_to_boundary(*s.base, CxPoint{z[0]});
                const double fiber = 1.0 - std::abs(z[1]);
                const double diag = std::abs(z[0] - z[1]) / std::numbers::sqrt2;
                return std::min({base, fiber, diag});
            } else {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& m : s.mesh) best = std::min(best, distance(z, m.point));
                return best;
            }
        },
        d.variant());
}

double boundary_sup(const DomainSpec& d, const std::function<double(const CxPoint&)>& g, double density) {
    if (!d.bounded()) throw UnboundedDomainError("boundary_sup on unbounded domain " + d.name());
    if (!(density > 0.0)) throw PreconditionError("density must be positive");
    if (const auto* s = d.as<shapes::Sampled>()) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& m : s->mesh) best = std::max(best, g(m.point));
        return best;
    }
    const auto patches = modulus_patches(d);
    struct Cand {
        double v;
        std::size_t patch;
        Params t;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < patches.size(); ++i) {
        for_each_grid_point(patches[i], density, [&](const Params& t) {
            cands.push_back({g(patches[i].point(t)), i, t});
        });
    }
    if (cands.empty()) throw InvalidDomainError("empty boundary for " + d.name());
    const std::size_t keep = std::min<std::size_t>(6, cands.size());
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(),
                      [](const Cand& a, const Cand& b) { return a.v > b.v; });
    double best = cands.front().v;
    for (std::size_t i = 0; i < keep; ++i)
        best = std::max(best, refine_max(patches[cands[i].patch], g, cands[i].t, cands[i].v, density));
    return best;
}

std::vector<CxPoint> modulus_samples(const DomainSpec& d, double density) {
    if (!d.bounded()) throw UnboundedDomainError("modulus samples of unbounded domain " + d.name());
    if (!(density > 0.0)) throw PreconditionError("density must be positive");
    std::vector<CxPoint> out;
    if (const auto* s = d.as<shapes::Sampled>()) {
        for (const auto& m : s->mesh) out.push_back(m.point);
        return out;
    }
    for (const auto& p : modulus_patches(d))
        for_each_grid_point(p, density, [&](const Params& t) { out.push_back(p.point(t)); });
    return out;
}

RadiiPair inner_outer_radii(const DomainSpec& d, const CxPoint& center) {
    if (!d.bounded()) throw UnboundedDomainError("radii undefined for unbounded domain " + d.name());
    const double r = dist_to_boundary(d, center);
    const double density = d.dim() == 1 ? 0.01 : 0.1;
    const double far = boundary_sup(d, [&center](const CxPoint& p) { return distance(p, center); }, density);
    return {r, far * (1.0 + d.mesh_tol()), center};
}

std::vector<BoundarySample> boundary_samples(const DomainSpec& d, double density) {
    if (!(density > 0.0)) throw PreconditionError("density must be positive");
    if (!d.bounded()) throw UnboundedDomainError("boundary samples of unbounded domain " + d.name());
    if (const auto* s = d.as<shapes::Sampled>()) return s->mesh;
    std::vector<BoundarySample> out;
    const auto patches = boundary_patches(d);
    for (std::size_t i = 0; i < patches.size(); ++i) {
        const auto& p = patches[i];
        for_each_grid_point(p, density, [&](const Params& t) {
            out.push_back({p.point(t), p.normal(t), static_cast<int>(i), t});
        });
    }
    return out;
}

double hausdorff_distance(const DomainSpec& d1, const DomainSpec& d2, double density) {
    if (d1.dim() != d2.dim()) throw DimensionError("hausdorff_distance: dimension mismatch");
    auto a = boundary_samples(d1, density);
    auto b = boundary_samples(d2, density);
    // Early-break directed distance; a fixed shuffle keeps it deterministic.
    std::mt19937_64 rng(0x5eed);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    auto directed = [](const std::vector<BoundarySample>& from, const std::vector<BoundarySample>& to) {
        double cmax = 0.0;
        for (const auto& x : from) {
            double cmin = std::numeric_limits<double>::infinity();
            bool broke = false;
            for (const auto& y : to) {
                const double dd = distance(x.point, y.point);
                if (dd < cmax) {
                    broke = true;
                    break;
                }
                cmin = std::min(cmin, dd);
            }
            if (!broke && cmin > cmax) cmax = cmin;
        }
        return cmax;
    };
    return std::max(directed(a, b), directed(b, a));
}

ConcentricNormalizer concentric_normalizer(cplx c, double rho) {
    const double ca = std::abs(c);
    if (std::abs(ca + rho - 1.0) <= kTangencyTol) throw TangencyError("boundary circles are tangent");
    if (ca + rho > 1.0) throw PreconditionError("removed disk is not strictly inside the unit disk");
    if (ca == 0.0) return {0.0, rho};
    const double big = 1.0 + ca * ca - rho * rho;
    const double disc = big * big - 4.0 * ca * ca;
    // Root of ca p^2 - big p + ca = 0 inside the unit disk, in cancellation-free form.
    const double pr = 2.0 * ca / (big + std::sqrt(std::max(0.0, disc)));
    const double x = ca + rho;
    const double inner = std::abs((x - pr) / (1.0 - pr * x));
    return {std::polar(pr, std::arg(c)), inner};
}

}  // namespace autdim
