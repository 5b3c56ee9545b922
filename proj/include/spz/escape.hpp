#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moebius.hpp"
#include "sp_poly.hpp"

namespace spz {

enum class EscapeKind { interaction, virtual_ };

inline const char* to_string(EscapeKind k) { return k == EscapeKind::interaction ? "interaction" : "virtual"; }

struct EscapeWitness {
    Cx q{};
    std::vector<int> word;
    SpherePoint value;
    EscapeKind kind = EscapeKind::virtual_;
    std::int64_t budget_used = 1;
};

enum class EscapeStatus { escaped, bounded, indeterminate };

inline const char* to_string(EscapeStatus s) {
    switch (s) {
        case EscapeStatus::escaped: return "escaped";
        case EscapeStatus::bounded: return "bounded";
        case EscapeStatus::indeterminate: return "indeterminate";
    }
    return "";
}

struct EscapeVerdict {
    EscapeStatus status = EscapeStatus::bounded;
    std::optional<EscapeWitness> witness;
    int shading_depth = 0;  // smallest shading depth >= budget_used, 0 if none
    std::int64_t budget = 0;
    std::int64_t words_tested = 0;
};

// z^n for integer n >= 0. Large moduli go through log-polar form so the
// modulus can be compared without overflow.
inline SpherePoint pow_sphere(const SpherePoint& z, int n) {
    if (n == 0) return SpherePoint(Cx(1.0));
    if (z.inf) return z;
    double a = std::abs(z.z);
    if (a > 1e3) {
        double lm = n * std::log(a);
        if (lm > 700.0) return SpherePoint::infinity();
        return SpherePoint(std::polar(std::exp(lm), n * std::arg(z.z)));
    }
    Cx r = 1.0, b = z.z;
    for (unsigned k = static_cast<unsigned>(n); k; k >>= 1) {
        if (k & 1u) r *= b;
        b *= b;
    }
    return SpherePoint(r);
}

inline bool escapes(const SpherePoint& v, double delta = kDelta) { return v.inf || std::abs(v.z) > 1.0 + delta; }

namespace detail {
struct EscapeDfs {
    Cx q;
    std::int64_t budget;
    double delta;
    std::vector<int> word;
    std::optional<EscapeWitness> best;
    std::int64_t tested = 0;
    bool saw_nan = false;

    std::int64_t limit() const { return best ? best->budget_used : budget + 1; }

    void record(const SpherePoint& v, EscapeKind kind, std::int64_t prod) {
        best = EscapeWitness{q, word, v, kind, prod};
    }

    // x is the value after the f_q of the current level.
    void go(const SpherePoint& x, std::int64_t prod) {
        // Word length after appending n: odd lengths end in a series power,
        // whose post-power value is virtual and post-f value an interaction.
        bool odd = word.size() % 2 == 0;
        EscapeKind pkind = odd ? EscapeKind::virtual_ : EscapeKind::interaction;
        EscapeKind xkind = odd ? EscapeKind::interaction : EscapeKind::virtual_;
        // |x| <= 1 + delta here, so the running power cannot overflow.
        SpherePoint p = x;
        for (int n = 2; prod * n < limit(); ++n) {
            p = sphere_mul(p, x);
            word.push_back(n);
            ++tested;
            std::int64_t np = prod * n;
            if (p.is_nan()) {
                saw_nan = true;
            } else if (escapes(p, delta)) {
                record(p, pkind, np);
            } else {
                SpherePoint nx = f_apply(q, p);
                if (nx.is_nan()) {
                    saw_nan = true;
                } else if (escapes(nx, delta)) {
                    record(nx, xkind, np);
                } else {
                    go(nx, np);
                }
            }
            word.pop_back();
        }
    }
};
}  // namespace detail

inline EscapeVerdict escape_search(Cx q, std::int64_t budget, const std::vector<int>& shading_depths = {75, 150, 300},
                                   double delta = kDelta) {
    if (q == Cx(0.0)) throw DomainError("escape search undefined at q = 0");
    if (budget < 1) throw ArgumentError("budget must be >= 1");
    EscapeVerdict out;
    out.budget = budget;
    if (std::isnan(q.real()) || std::isnan(q.imag())) {
        out.status = EscapeStatus::indeterminate;
        return out;
    }
    detail::EscapeDfs dfs{q, budget, delta, {}, std::nullopt};
    SpherePoint x0 = f_apply(q, Cx(0.0));  // 1 - q, virtual
    dfs.tested = 1;
    if (escapes(x0, delta))
        dfs.best = EscapeWitness{q, {}, x0, EscapeKind::virtual_, 1};
    else
        dfs.go(x0, 1);
    out.words_tested = dfs.tested;
    if (dfs.best) {
        const auto& w = *dfs.best;
        out.status = EscapeStatus::escaped;
        out.witness = w;
        for (int d : shading_depths)
            if (d >= w.budget_used && (out.shading_depth == 0 || d < out.shading_depth)) out.shading_depth = d;
    } else {
        out.status = dfs.saw_nan ? EscapeStatus::indeterminate : EscapeStatus::bounded;
    }
    return out;
}

// |(q-1)/(q-2)| > 1, the P_2 interaction test for Re(q) > 3/2.
inline bool classify_halfplane(Cx q, double delta = kDelta) {
    if (q == Cx(2.0)) return true;
    return std::abs((q - 1.0) / (q - 2.0)) > 1.0 + delta;
}

// Odd levels are series powers, even levels parallel powers, starting at Edge.
inline SpExpr word_graph(const std::vector<int>& word) {
    SpExpr g = edge();
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] < 1) throw ArgumentError("word entries must be >= 1");
        g = i % 2 == 0 ? series_power(g, static_cast<std::uint64_t>(word[i]))
                       : parallel_power(g, static_cast<std::uint64_t>(word[i]));
    }
    return g;
}

inline bool sphere_close(const SpherePoint& a, const SpherePoint& b, double tol) {
    if (a.inf || b.inf) return chordal_distance(a, b) <= tol;
    return std::abs(a.z - b.z) <= tol * std::max(1.0, std::abs(b.z));
}

inline SpherePoint witness_value_of(const SpExpr& g, Cx q, EscapeKind kind) {
    SpherePoint y = interaction_eval(g, q);
    return kind == EscapeKind::interaction ? y : f_apply(q, y);
}

inline SpExpr realize_witness(const EscapeWitness& w, double tol = 1e-8) {
    SpExpr g = word_graph(w.word);
    if (g.edge_count() != static_cast<std::uint64_t>(w.budget_used))
        throw MismatchError("realized edge count differs from budget_used");
    SpherePoint v = witness_value_of(g, w.q, w.kind);
    if (!sphere_close(v, w.value, tol)) throw MismatchError("realized graph does not reproduce the witness value");
    return g;
}

// Witness family member. Virtual witness: m parallel copies of N
// copies of G in series. Interaction witness: m series copies of N parallel
// copies, with a terminal edge added (its zeros are where the interaction
// of the family member is infinite).
struct FamilyMember {
    SpExpr graph;
    std::uint64_t n = 1, m = 1;
    bool terminal_edge = false;
};

inline FamilyMember witness_family(const EscapeWitness& w, std::uint64_t n, std::uint64_t m) {
    SpExpr g = word_graph(w.word);
    if (w.kind == EscapeKind::virtual_) return {parallel_power(series_power(g, n), m), n, m, false};
    return {parallel(series_power(parallel_power(g, n), m), edge()), n, m, true};
}

// Number of zeros of Z(g; q) inside the circle, by the argument principle.
inline int count_zeros_in_disk(const SpExpr& g, Cx center, double radius, int samples = 256,
                               int max_samples = 1 << 22) {
    if (radius <= 0.0) throw ArgumentError("radius must be positive");
    if (samples < 8) samples = 8;
    const bool exact = use_exact(g, EvalPath::Auto);
    const IntPoly zp = exact ? z_poly(g) : IntPoly();
    auto phase_at = [&](int i, int n) {
        Cx q = center + std::polar(radius, 2.0 * M_PI * i / n);
        if (exact) {
            Cx z = zp.eval(q);
            if (!(std::abs(z) > 1e-12 * zp.abs_eval(std::abs(q)))) throw ContourThroughZero("Z vanishes on the contour");
            return std::arg(z);
        }
        ScaledPair p = eval_pair_scaled(g, q);
        Cx z = p.same + p.dif;
        double scale = std::max(std::abs(p.same), std::abs(p.dif));
        if (!(std::abs(z) >= 1e-12 * scale) || scale == 0.0) throw ContourThroughZero("Z vanishes on the contour");
        return std::arg(z);
    };
    std::vector<double> ph(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) ph[static_cast<std::size_t>(i)] = phase_at(i, samples);
    int n = samples;
    for (;;) {
        double total = 0.0, worst = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = ph[static_cast<std::size_t>((i + 1) % n)] - ph[static_cast<std::size_t>(i)];
            d = std::remainder(d, 2.0 * M_PI);
            worst = std::max(worst, std::abs(d));
            total += d;
        }
        if (worst < M_PI / 2) return static_cast<int>(std::lround(total / (2.0 * M_PI)));
        if (2 * n > max_samples) throw NonConvergence("contour needs more than max_samples points");
        std::vector<double> nph(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            nph[static_cast<std::size_t>(2 * i)] = ph[static_cast<std::size_t>(i)];
            nph[static_cast<std::size_t>(2 * i + 1)] = phase_at(2 * i + 1, 2 * n);
        }
        ph.swap(nph);
        n *= 2;
    }
}

struct MaterializedZero {
    FamilyMember member;
    int zeros = 0;
    std::int64_t candidates_tried = 0;
};

// Sweep the witness family for a member with a zero within radius of q0.
// For each N the power target (1 - q for virtual witnesses, 1 for
// interaction witnesses) pins m up to the branch of the logarithm, so only
// a handful of m per N are counted.
inline std::optional<MaterializedZero> materialize_zero(const EscapeWitness& w, Cx q0, double radius,
                                                        std::uint64_t n_max = 64, std::uint64_t m_max = 1ull << 30,
                                                        int branches = 3) {
    SpExpr g = word_graph(w.word);
    std::int64_t tried = 0;
    Cx target = w.kind == EscapeKind::virtual_ ? 1.0 - q0 : Cx(1.0);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        SpherePoint base;
        try {
            if (w.kind == EscapeKind::virtual_)
                base = interaction_eval(series_power(g, n), q0, EvalPath::Recursion);
            else
                base = f_apply(q0, interaction_eval(parallel_power(g, n), q0, EvalPath::Recursion));
        } catch (const Error&) {
            continue;
        }
        if (base.inf || base.is_nan() || base.z == Cx(0.0)) continue;
        Cx lb = std::log(base.z);
        if (std::abs(lb) < 1e-300) continue;
        std::vector<std::uint64_t> ms;
        for (int k = 0; k <= branches; ++k) {
            for (int sgn : {1, -1}) {
                if (k == 0 && sgn < 0) continue;
                Cx mc = (std::log(target) + Cx(0.0, 2.0 * M_PI * k * sgn)) / lb;
                if (mc.real() <= 0.0) continue;
                double a = std::abs(mc);
                if (!(a < static_cast<double>(m_max))) continue;
                for (double c : {std::floor(a), std::ceil(a)}) {
                    auto mi = static_cast<std::uint64_t>(std::max(1.0, c));
                    if (std::find(ms.begin(), ms.end(), mi) == ms.end()) ms.push_back(mi);
                }
            }
        }
        for (std::uint64_t m : ms) {
            FamilyMember fm = witness_family(w, n, m);
            ++tried;
            int z = 0;
            try {
                z = count_zeros_in_disk(fm.graph, q0, radius);
            } catch (const Error&) {
                continue;
            }
            if (z >= 1) return MaterializedZero{fm, z, tried};
        }
    }
    return std::nullopt;
}

}  // namespace spz
