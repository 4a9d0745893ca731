#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "autdim/errors.hpp"

namespace autdim {

using cplx = std::complex<double>;

/// A point (or tangent vector) of C^n.
class CxPoint {
public:
    CxPoint() = default;
    explicit CxPoint(std::size_t n) : coords_(n, cplx{0.0, 0.0}) {}
    CxPoint(std::initializer_list<cplx> coords) : coords_(coords) {}
    explicit CxPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {}
    // Planar shorthand.
    CxPoint(cplx z) : coords_{z} {}  // NOLINT(google-explicit-constructor)

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] cplx operator[](std::size_t k) const { return coords_[k]; }
    cplx& operator[](std::size_t k) { return coords_[k]; }
    [[nodiscard]] std::span<const cplx> coords() const noexcept { return coords_; }

    [[nodiscard]] bool finite() const noexcept {
        for (const auto& c : coords_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

    [[nodiscard]] double norm() const noexcept {
        double s = 0.0;
        for (const auto& c : coords_) s += std::norm(c);
        return std::sqrt(s);
    }

    CxPoint& operator+=(const CxPoint& o) {
        check_same(o);
        for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
        return *this;
    }
    CxPoint& operator-=(const CxPoint& o) {
        check_same(o);
        for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
        return *this;
    }
    CxPoint& operator*=(cplx s) {
        for (auto& c : coords_) c *= s;
        return *this;
    }

    friend CxPoint operator+(CxPoint a, const CxPoint& b) { return a += b; }
    friend CxPoint operator-(CxPoint a, const CxPoint& b) { return a -= b; }
    friend CxPoint operator*(CxPoint a, cplx s) { return a *= s; }
    friend CxPoint operator*(cplx s, CxPoint a) { return a *= s; }
    friend CxPoint operator*(CxPoint a, double s) { return a *= cplx{s, 0.0}; }
    friend CxPoint operator*(double s, CxPoint a) { return a *= cplx{s, 0.0}; }
    friend CxPoint operator-(CxPoint a) { return a *= cplx{-1.0, 0.0}; }
    friend bool operator==(const CxPoint&, const CxPoint&) = default;

private:
    void check_same(const CxPoint& o) const {
        if (o.coords_.size() != coords_.size())
            throw DimensionError("CxPoint dimension mismatch");
    }

    std::vector<cplx> coords_;
};

[[nodiscard]] inline double distance(const CxPoint& a, const CxPoint& b) { return (a - b).norm(); }

/// Bilinear pairing (Z, Y) = sum z_j y_j (no conjugation).
[[nodiscard]] inline cplx pairing(const CxPoint& a, const CxPoint& b) {
    if (a.dim() != b.dim()) throw DimensionError("pairing dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * b[k];
    return s;
}

/// Hermitian product <a, b> = sum a_j conj(b_j).
[[nodiscard]] inline cplx hermitian(const CxPoint& a, const CxPoint& b) {
    if (a.dim() != b.dim()) throw DimensionError("hermitian dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

}  // namespace autdim
