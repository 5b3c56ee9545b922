#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "errors.hpp"

namespace spz {

using Cx = std::complex<double>;

inline constexpr double kDelta = 1e-9;

// Point of the Riemann sphere. Infinity is a flag, so NaN stays NaN.
struct SpherePoint {
    Cx z{};
    bool inf = false;

    SpherePoint() = default;
    SpherePoint(Cx v) : z(v) {}  // NOLINT(implicit)
    SpherePoint(double v) : z(v) {}  // NOLINT(implicit)

    static SpherePoint infinity() {
        SpherePoint p;
        p.inf = true;
        return p;
    }
    bool is_inf() const { return inf; }
    bool is_nan() const { return !inf && (std::isnan(z.real()) || std::isnan(z.imag())); }
    double abs() const { return inf ? std::numeric_limits<double>::infinity() : std::abs(z); }
};

inline bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.z == b.z;
}

// Chordal distance on the unit-diameter sphere; 0 <= d <= 1.
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf && b.inf) return 0.0;
    if (a.inf) return 1.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.inf) return 1.0 / std::sqrt(1.0 + std::norm(a.z));
    return std::abs(a.z - b.z) / (std::sqrt(1.0 + std::norm(a.z)) * std::sqrt(1.0 + std::norm(b.z)));
}

inline SpherePoint f_apply(Cx q, const SpherePoint& y) {
    if (q == Cx(0.0)) throw DomainError("f_q undefined for q = 0");
    if (y.inf) return SpherePoint(Cx(1.0));
    Cx d = y.z - 1.0;
    if (d == Cx(0.0)) return SpherePoint::infinity();
    return SpherePoint(1.0 + q / d);
}

inline SpherePoint f_apply(Cx q, Cx y) { return f_apply(q, SpherePoint(y)); }

inline std::pair<Cx, Cx> fixed_points(Cx q) {
    if (q == Cx(0.0)) throw DomainError("fixed points degenerate at q = 0");
    Cx s = std::sqrt(q);
    return {1.0 + s, 1.0 - s};
}

struct Disk {
    Cx center{};
    double radius = 0.0;
};

// Signed slack of z inside the closed disk: positive when strictly inside.
inline double inside_slack(Cx z, const Disk& v) { return v.radius - std::abs(z - v.center); }
inline bool contains(const Disk& v, Cx z, double delta = 0.0) { return inside_slack(z, v) >= delta; }

enum class Side { inside, outside };

// Disk V = M^{-1}{|w| <= rho} (inside) or its closed complement (outside),
// with M(z) = (z - p+)/(z - p-). In the w-coordinate f_q is w -> -w.
struct InvariantDiskParam {
    Cx q{};
    double rho = 0.0;
    Side side = Side::inside;
};

namespace detail {
// {|z - a| <= k |z - b|} for 0 <= k < 1.
inline Disk apollonius(Cx a, Cx b, double k) {
    double k2 = k * k;
    return {(a - k2 * b) / (1.0 - k2), k * std::abs(a - b) / (1.0 - k2)};
}
}  // namespace detail

inline Disk invariant_disk(const InvariantDiskParam& p) {
    auto [pp, pm] = fixed_points(p.q);
    if (!(p.rho >= 0.0) || std::isinf(p.rho)) throw ArgumentError("rho must be finite and >= 0");
    if (p.side == Side::inside) {
        if (p.rho >= 1.0) throw UnboundedRegion("inside side with rho >= 1 contains infinity");
        return detail::apollonius(pp, pm, p.rho);
    }
    if (p.rho <= 1.0) throw UnboundedRegion("outside side with rho <= 1 contains infinity");
    return detail::apollonius(pm, pp, 1.0 / p.rho);
}

// Parameter of the invariant disk whose boundary passes through t.
inline InvariantDiskParam invariant_param_through(Cx q, Cx t) {
    auto [pp, pm] = fixed_points(q);
    if (t == pm) throw UnboundedRegion("point is the repelling side fixed point");
    double rho = std::abs(t - pp) / std::abs(t - pm);
    if (rho == 1.0) throw UnboundedRegion("circle through point is a line");
    return {q, rho, rho < 1.0 ? Side::inside : Side::outside};
}

// Exact image of V under f_q: translate, invert, scale, translate.
inline Disk disk_image_moebius(Cx q, const Disk& v) {
    if (q == Cx(0.0)) throw DomainError("f_q undefined for q = 0");
    Cx c1 = v.center - 1.0;
    double den = std::norm(c1) - v.radius * v.radius;
    if (den <= 0.0) throw UnboundedImage("1 lies in the disk; image is unbounded");
    Cx c = std::conj(c1) / den;
    double r = v.radius / den;
    return {1.0 + q * c, std::abs(q) * r};
}

inline double disk_sup_abs(const Disk& v) { return std::abs(v.center) + v.radius; }

inline double disk_inf_abs_complement(const Disk& v) {
    return std::max(0.0, v.radius - std::abs(v.center));
}

// Largest slack of +-sqrt(w) inside V; positive means w is in V^2 with room.
inline double sqrt_in_disk_slack(Cx w, const Disk& v) {
    Cx s = std::sqrt(w);
    return std::max(inside_slack(s, v), inside_slack(-s, v));
}

inline bool sqrt_in_disk(Cx w, const Disk& v) { return sqrt_in_disk_slack(w, v) >= 0.0; }

// Disk with real diameter [a, b] (either order).
inline Disk diameter_disk(double a, double b) { return {Cx(0.5 * (a + b)), 0.5 * std::abs(a - b)}; }

}  // namespace spz
