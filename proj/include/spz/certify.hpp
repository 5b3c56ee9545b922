#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <tuple>

#include "moebius.hpp"

namespace spz {

enum class CertMethod { real01, real3227, near_one, general };

inline const char* to_string(CertMethod m) {
    switch (m) {
        case CertMethod::real01: return "real01";
        case CertMethod::real3227: return "real3227";
        case CertMethod::near_one: return "near_one";
        case CertMethod::general: return "general";
    }
    return "";
}

struct CertMargins {
    double origin_in = 0.0;
    double one_minus_q_out = 0.0;
    double square_in = 0.0;
    // near_one only: rho^{-1}(s) - rho(s)^2, the slack of the fourth condition.
    double image_square_in = std::numeric_limits<double>::infinity();
    // f_q-invariant disks: measured |f_q(V) - V| relative to the radius.
    double invariance_error = 0.0;

    double min_slack() const { return std::min({origin_in, one_minus_q_out, square_in, image_square_in}); }
};

struct ZeroFreeCertificate {
    Cx q{};
    Disk V;
    CertMargins margins;
    CertMethod method = CertMethod::general;
};

struct CertCheck {
    bool accepted = false;
    std::string reason;  // first failed condition, empty when accepted
    double slack = 0.0;  // its measured slack (or the min slack when accepted)
    ZeroFreeCertificate cert;
};

inline constexpr double kInvarianceTol = 1e-9;
inline const double kNearOneRadius = 7.0 - 4.0 * std::sqrt(3.0);

// The three reduced conditions; the fourth follows from f_q(V) = V.
inline CertMargins reduced_margins(Cx q, const Disk& v) {
    CertMargins m;
    m.origin_in = inside_slack(Cx(0.0), v);
    m.one_minus_q_out = -sqrt_in_disk_slack(1.0 - q, v);
    double sup = disk_sup_abs(v);
    m.square_in = disk_inf_abs_complement(v) - sup * sup;
    return m;
}

inline double invariance_error(Cx q, const Disk& v) {
    Disk img;
    try {
        img = disk_image_moebius(q, v);
    } catch (const UnboundedImage&) {
        return std::numeric_limits<double>::infinity();
    }
    double scale = std::max({1.0, v.radius, std::abs(v.center)});
    return (std::abs(img.center - v.center) + std::abs(img.radius - v.radius)) / scale;
}

inline void require_generic_q(Cx q) {
    if (q == Cx(0.0) || q == Cx(1.0) || q == Cx(2.0)) throw DomainError("certificates need q outside {0, 1, 2}");
}

inline CertCheck check_certificate(Cx q, const Disk& v, double delta = kDelta, CertMethod method = CertMethod::general) {
    require_generic_q(q);
    CertCheck out;
    out.cert = {q, v, reduced_margins(q, v), method};
    auto& m = out.cert.margins;
    m.invariance_error = invariance_error(q, v);
    auto fail = [&](const char* why, double s) {
        out.reason = why;
        out.slack = s;
        return out;
    };
    if (m.origin_in < delta) return fail("origin_in", m.origin_in);
    if (m.one_minus_q_out < delta) return fail("one_minus_q_out", m.one_minus_q_out);
    if (m.square_in < delta) return fail("square_in", m.square_in);
    if (!(m.invariance_error <= kInvarianceTol)) return fail("invariance", -m.invariance_error);
    out.accepted = true;
    out.slack = m.min_slack();
    return out;
}

namespace detail {
// Maximize f on [lo, hi]: grid, then golden section around the best cell.
inline std::pair<double, double> maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                                             int grid = 200, int golden_iters = 80) {
    double best_x = lo, best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= grid; ++i) {
        double x = lo + (hi - lo) * i / grid;
        double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
            best_i = i;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best_i - 1) / grid;
    double b = lo + (hi - lo) * std::min(grid, best_i + 1) / grid;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < golden_iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    for (auto [x, v] : {std::pair{c, fc}, std::pair{d, fd}})
        if (v > best) {
            best = v;
            best_x = x;
        }
    return {best_x, best};
}

inline double real_f(double q, double y) { return 1.0 + q / (y - 1.0); }
}  // namespace detail

// s range and quadratic of the B_s construction around 1.
inline double near_one_quadratic(double R, double s) { return 3.0 * s * s + (R * R - 1.0) * s + R * R; }
inline double near_one_rho(double R, double s) { return (R * R + s) / (1.0 - s); }
inline double near_one_rho_inv(double R, double s) { return (s - R * R) / (1.0 + s); }

inline ZeroFreeCertificate certify_near_one(Cx q, double delta = kDelta) {
    if (q == Cx(1.0)) throw DomainError("q = 1 is excluded");
    double dist = std::abs(q - 1.0);
    if (dist >= kNearOneRadius) throw OutOfRange("|q - 1| must be below 7 - 4 sqrt(3)");
    double R = std::sqrt(dist);
    auto margins_at = [&](double s) {
        CertMargins m;
        m.origin_in = s;
        m.one_minus_q_out = R - s;  // both square roots of 1 - q have modulus R
        m.square_in = s - s * s;
        double rho = near_one_rho(R, s);
        m.image_square_in = near_one_rho_inv(R, s) - rho * rho;
        return m;
    };
    double s = (1.0 - R * R) / 6.0;
    CertMargins m = margins_at(s);
    if (!(s > R * R && s < R) || m.min_slack() < delta) {
        auto [x, v] = detail::maximize_1d([&](double t) { return margins_at(t).min_slack(); }, R * R, R);
        s = x;
        m = margins_at(s);
    }
    if (m.min_slack() < delta || near_one_quadratic(R, s) >= 0.0)
        throw NotFound("near-one disk has no slack (best " + std::to_string(m.min_slack()) + ")");
    return {q, Disk{Cx(0.0), s}, m, CertMethod::near_one};
}

inline ZeroFreeCertificate certify_real_01(double q, double delta = kDelta) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("real01 needs 0 < q < 1");
    if (std::abs(q - 1.0) < 1e-6) return certify_near_one(Cx(q), delta);
    double r = std::sqrt(1.0 - q);
    // a in (r^2, r) with b = f(a) in (-r, -r^2); f is decreasing there.
    double lo = std::max(r * r, detail::real_f(q, -r * r));
    double hi = r;
    auto score = [&](double a) {
        Disk v = diameter_disk(a, detail::real_f(q, a));
        return reduced_margins(Cx(q), v).min_slack();
    };
    double best_a = 0.5 * (lo + hi), best = -1.0;
    if (lo < hi) std::tie(best_a, best) = detail::maximize_1d(score, lo, hi);
    if (best < delta) {
        if (std::abs(q - 1.0) < kNearOneRadius) return certify_near_one(Cx(q), delta);
        throw NotFound("real01 margins collapsed");
    }
    Disk v = diameter_disk(best_a, detail::real_f(q, best_a));
    CertCheck c = check_certificate(Cx(q), v, delta, CertMethod::real01);
    if (!c.accepted) throw NotFound("real01 candidate rejected: " + c.reason);
    return c.cert;
}

// Root of f_q(z) = z^2 in (-1/3, 0) by bisection.
inline double real3227_root(double q) {
    auto h = [&](double z) { return detail::real_f(q, z) - z * z; };
    double a = -1.0 / 3.0, b = 0.0;  // h(a) > 0 > h(b)
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        (h(m) > 0.0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

inline ZeroFreeCertificate certify_real_3227(double q, double delta = kDelta) {
    if (!(q > 1.0)) throw DomainError("real3227 needs q > 1");
    if (q >= 32.0 / 27.0 - 1e-9) throw NotFound("q at or beyond 32/27");
    double r = real3227_root(q);
    double lo = std::max(-1.0 / 3.0, -std::sqrt(q - 1.0));
    auto score = [&](double t) {
        double ft = detail::real_f(q, t);
        if (!(ft > 0.0)) return -1.0;
        return reduced_margins(Cx(q), diameter_disk(t, ft)).min_slack();
    };
    auto [t, best] = detail::maximize_1d(score, lo, r, 400);
    if (best < delta) throw NotFound("real3227 margins below delta (best " + std::to_string(best) + ")");
    CertCheck c = check_certificate(Cx(q), diameter_disk(t, detail::real_f(q, t)), delta, CertMethod::real3227);
    if (!c.accepted) throw NotFound("real3227 candidate rejected: " + c.reason);
    return c.cert;
}

struct GeneralSearch {
    std::optional<ZeroFreeCertificate> cert;
    double best_slack = -std::numeric_limits<double>::infinity();
};

// Search both sides of the invariant family; k in (0, 1) is rho (inside) or
// 1/rho (outside).
inline GeneralSearch certify_general_search(Cx q, int rho_grid = 64, double delta = kDelta) {
    require_generic_q(q);
    GeneralSearch out;
    Disk best_v;
    for (Side side : {Side::inside, Side::outside}) {
        auto disk_at = [&](double k) {
            return invariant_disk({q, side == Side::inside ? k : 1.0 / k, side});
        };
        auto score = [&](double k) {
            if (!(k > 0.0 && k < 1.0)) return -std::numeric_limits<double>::infinity();
            return reduced_margins(q, disk_at(k)).min_slack();
        };
        auto [k, v] = detail::maximize_1d(score, 1e-9, 1.0 - 1e-9, rho_grid, 60);
        if (v > out.best_slack) {
            out.best_slack = v;
            best_v = disk_at(k);
        }
    }
    if (out.best_slack >= delta) {
        CertCheck c = check_certificate(q, best_v, delta, CertMethod::general);
        if (c.accepted) out.cert = c.cert;
    }
    return out;
}

inline ZeroFreeCertificate certify_general(Cx q, int rho_grid = 64, double delta = kDelta) {
    GeneralSearch s = certify_general_search(q, rho_grid, delta);
    if (!s.cert) throw NotFound("no invariant disk with slack (best " + std::to_string(s.best_slack) + ")");
    return *s.cert;
}

inline bool is_real(Cx q) { return q.imag() == 0.0; }

// Dedicated constructions where they apply, then the general search.
inline std::optional<ZeroFreeCertificate> certify_auto(Cx q, double delta = kDelta, double* best_slack = nullptr) {
    if (q == Cx(0.0) || q == Cx(1.0) || q == Cx(2.0)) return std::nullopt;
    auto try_it = [&](auto&& fn) -> std::optional<ZeroFreeCertificate> {
        try {
            return fn();
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    std::optional<ZeroFreeCertificate> c;
    if (is_real(q) && q.real() > 0.0 && q.real() < 1.0) c = try_it([&] { return certify_real_01(q.real(), delta); });
    if (!c && is_real(q) && q.real() > 1.0 && q.real() < 32.0 / 27.0)
        c = try_it([&] { return certify_real_3227(q.real(), delta); });
    if (!c && std::abs(q - 1.0) < kNearOneRadius) c = try_it([&] { return certify_near_one(q, delta); });
    if (c) {
        if (best_slack) *best_slack = c->margins.min_slack();
        return c;
    }
    GeneralSearch s = certify_general_search(q, 64, delta);
    if (best_slack) *best_slack = s.best_slack;
    return s.cert;
}

}  // namespace spz
