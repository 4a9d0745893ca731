#include "autdim/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace autdim {

namespace {

const cplx kI{0.0, 1.0};

DomainSpec q_of(double c) { return DomainSpec::disk_minus_disk(c, 0.5); }

// Disk automorphism mu_p(z) = (z - p)/(1 - conj(p) z) and its inverse.
cplx mobius(cplx p, cplx z) { return (z - p) / (1.0 - std::conj(p) * z); }
cplx mobius_inv(cplx p, cplx z) { return (z + p) / (1.0 + std::conj(p) * z); }

}  // namespace

cplx phi(cplx w) {
    if (w == cplx{1.0, 0.0}) throw PoleError("phi has a pole at w = 1");
    return -kI * (w + 1.0) / (w - 1.0);
}

cplx g_t(cplx w, double t) {
    const cplx den = 2.0 + kI * (w - 1.0) * t;
    if (std::abs(den) == 0.0) throw PoleError("g_t: denominator vanishes");
    return (2.0 * w + kI * (w - 1.0) * t) / den;
}

VectorFieldPoly translation_generator() {
    // -(i/2)(w-1)^2 = -(i/2) + i w - (i/2) w^2
    return VectorFieldPoly::planar({-0.5 * kI, kI, -0.5 * kI});
}

Example1Family Example1Family::member(int j) {
    if (j < 2) throw PreconditionError("Example1Family: j must be >= 2");
    const double c = 0.5 - std::ldexp(1.0, -j);
    DomainSpec q = q_of(c);
    return {j, q, DomainSpec::product_minus_diagonal(q)};
}

Example1Family Example1Family::limit() {
    DomainSpec q = q_of(0.5);
    return {std::nullopt, q, DomainSpec::product_minus_diagonal(q)};
}

double Example1Family::center() const { return j ? 0.5 - std::ldexp(1.0, -*j) : 0.5; }

CxPoint F_t(const CxPoint& p, double t) {
    if (p.dim() != 2) throw DimensionError("F_t acts on C^2");
    static const Example1Family lim = Example1Family::limit();
    if (!contains(lim.product, p)) throw OutsideDomainError("F_t: point outside D");
    const CxPoint img{g_t(p[0], t), g_t(p[1], t)};
    if (!contains(lim.product, img)) {
        if (img[0] == img[1] || std::abs(img[0] - img[1]) < 1e-15)
            throw DiagonalError("F_t: image lands on the deleted diagonal");
        throw EscapeError(t, "F_t: image outside D");
    }
    return img;
}

GroupAction translation_action(std::size_t n) {
    if (n != 1 && n != 2) throw DimensionError("translation_action: n must be 1 or 2");
    const VectorFieldPoly x = translation_generator();
    std::optional<VectorFieldPoly> field = n == 1 ? x : VectorFieldPoly::diagonal(x, 2);
    return GroupAction::closed_form(
        "F_t",
        [](const CxPoint& p, double t) {
            CxPoint out(p.dim());
            for (std::size_t k = 0; k < p.dim(); ++k) out[k] = g_t(p[k], t);
            return out;
        },
        std::move(field));
}

GroupAction annulus_rotation_action(const Example1Family& fam, std::size_t n) {
    if (fam.is_limit()) throw TangencyError("annulus_rotation_action: Q has tangent boundary circles");
    if (n != 1 && n != 2) throw DimensionError("annulus_rotation_action: n must be 1 or 2");
    const cplx p = concentric_normalizer(fam.center(), 0.5).p;
    const VectorFieldPoly x = rotation_generator(fam);
    std::optional<VectorFieldPoly> field = n == 1 ? x : VectorFieldPoly::diagonal(x, 2);
    return GroupAction::closed_form(
        "S1_j" + std::to_string(*fam.j),
        [p](const CxPoint& z, double t) {
            const cplx rot = std::polar(1.0, t);
            CxPoint out(z.dim());
            for (std::size_t k = 0; k < z.dim(); ++k) out[k] = mobius_inv(p, rot * mobius(p, z[k]));
            return out;
        },
        std::move(field));
}

VectorFieldPoly rotation_generator(const Example1Family& fam) {
    if (fam.is_limit()) throw TangencyError("rotation_generator: Q has tangent boundary circles");
    const cplx p = concentric_normalizer(fam.center(), 0.5).p;
    const double s = 1.0 - std::norm(p);
    // i (z - p)(1 - conj(p) z) / s = i(-p + (1 + |p|^2) z - conj(p) z^2)/s
    return VectorFieldPoly::planar({kI * (-p) / s, kI * (1.0 + std::norm(p)) / s, kI * (-std::conj(p)) / s});
}

const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::Compact: return "Compact";
        case OrbitClass::Noncompact: return "Noncompact";
        case OrbitClass::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

OrbitReport orbit_classifier(const DomainSpec& d, const GroupAction& a, const CxPoint& z0, double tmax,
                             const OrbitTolerances& tols) {
    if (!(tmax > 0.0)) throw PreconditionError("orbit_classifier: Tmax must be positive");
    if (!contains(d, z0)) throw OutsideDomainError("orbit_classifier: z0 outside " + d.name());
    OrbitReport rep;
    rep.horizon = tmax;
    const int half = 1000;
    const double h = tmax / half;
    double min_dist = dist_to_boundary(d, z0);
    double best_gap = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    bool escaped = false;
    for (int k = -half; k <= half; ++k) {
        const double t = k * h;
        CxPoint p;
        try {
            p = a(z0, t);
        } catch (const EscapeError&) {
            escaped = true;
            continue;
        }
        if (!contains(d, p)) {
            escaped = true;
            continue;
        }
        rep.times.push_back(t);
        rep.points.push_back(p);
        min_dist = std::min(min_dist, dist_to_boundary(d, p));
        if (std::abs(t) >= 1.0) {
            const double gap = distance(p, z0);
            if (gap < best_gap) {
                best_gap = gap;
                best_t = t;
            }
        }
    }
    if (escaped) min_dist = 0.0;
    // Golden-section refinement of the nearest return within one grid cell.
    if (std::isfinite(best_gap) && best_gap > 0.0) {
        auto gap_at = [&](double t) {
            try {
                return distance(a(z0, t), z0);
            } catch (const Error&) {
                return std::numeric_limits<double>::infinity();
            }
        };
        double lo = best_t - h, hi = best_t + h;
        if (best_t > 0.0) lo = std::max(lo, 1.0);
        else hi = std::min(hi, -1.0);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = gap_at(x1), f2 = gap_at(x2);
        for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(best_t)); ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = gap_at(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = gap_at(x2);
            }
        }
        const double tm = f1 < f2 ? x1 : x2;
        const double fm = std::min(f1, f2);
        if (fm < best_gap) {
            best_gap = fm;
            best_t = tm;
        }
    }
    rep.min_boundary_dist = min_dist;
    rep.recurrence_gap = best_gap;
    rep.recurrence_time = best_t;
    if (!escaped && min_dist >= tols.compact && best_gap <= tols.recur) rep.classification = OrbitClass::Compact;
    else if (escaped || min_dist < tols.escape) rep.classification = OrbitClass::Noncompact;
    else rep.classification = OrbitClass::Undetermined;
    // Noncompact also requires that the orbit never closes up.
    if (rep.classification == OrbitClass::Noncompact && !escaped && best_gap <= tols.recur)
        rep.classification = OrbitClass::Undetermined;
    return rep;
}

}  // namespace autdim
