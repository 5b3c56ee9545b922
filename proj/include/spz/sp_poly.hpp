#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "int_poly.hpp"
#include "moebius.hpp"
#include "sp_expr.hpp"

namespace spz {

struct PolyPair {
    IntPoly same, dif;
};

namespace detail {
inline const IntPoly& poly_q() {
    static const IntPoly p{0, 1};
    return p;
}
inline const IntPoly& poly_qm1() {
    static const IntPoly p{-1, 1};
    return p;
}
inline const IntPoly& poly_qm2() {
    static const IntPoly p{-2, 1};
    return p;
}
inline const IntPoly& poly_qqm1() {
    static const IntPoly p{0, -1, 1};
    return p;
}

inline PolyPair combine(NodeKind k, const PolyPair& a, const PolyPair& b) {
    if (k == NodeKind::Parallel)
        return {(a.same * b.same).exact_div(poly_q()), (a.dif * b.dif).exact_div(poly_qqm1())};
    IntPoly dd = a.dif * b.dif;
    IntPoly same = (poly_qm1() * a.same * b.same + dd).exact_div(poly_qqm1());
    IntPoly dif = (poly_qm1() * (a.same * b.dif + a.dif * b.same) + poly_qm2() * dd).exact_div(poly_qqm1());
    return {std::move(same), std::move(dif)};
}

// Memo keyed by the swap-invariant hash; entries are idempotent so a lost
// insert race only costs recomputation.
class PairCache {
public:
    std::shared_ptr<const PolyPair> find(const SpExpr& g) const {
        std::shared_lock lk(mu_);
        auto it = map_.find(g.hash());
        if (it == map_.end()) return nullptr;
        for (const auto& [k, v] : it->second)
            if (equivalent(k, g)) return v;
        return nullptr;
    }
    void put(const SpExpr& g, std::shared_ptr<const PolyPair> v) {
        std::unique_lock lk(mu_);
        auto& bucket = map_[g.hash()];
        for (const auto& kv : bucket)
            if (equivalent(kv.first, g)) return;
        bucket.emplace_back(g, std::move(v));
    }
    void clear() {
        std::unique_lock lk(mu_);
        map_.clear();
    }
    std::size_t size() const {
        std::shared_lock lk(mu_);
        std::size_t n = 0;
        for (const auto& kv : map_) n += kv.second.size();
        return n;
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<SpExpr, std::shared_ptr<const PolyPair>>>> map_;
};

inline PairCache& pair_cache() {
    static PairCache c;
    return c;
}
}  // namespace detail

inline std::shared_ptr<const PolyPair> pair_polys_shared(const SpExpr& g) {
    if (g.kind() == NodeKind::Edge) {
        static const auto e = std::make_shared<const PolyPair>(PolyPair{IntPoly{}, detail::poly_qqm1()});
        return e;
    }
    auto& cache = detail::pair_cache();
    if (auto hit = cache.find(g)) return hit;
    auto a = pair_polys_shared(g.left());
    auto b = pair_polys_shared(g.right());
    auto v = std::make_shared<const PolyPair>(detail::combine(g.kind(), *a, *b));
    cache.put(g, v);
    return v;
}

inline PolyPair pair_polys(const SpExpr& g) { return *pair_polys_shared(g); }

inline IntPoly z_poly(const SpExpr& g) {
    auto p = pair_polys_shared(g);
    return p->same + p->dif;
}

// Chromatic polynomial of a multigraph by subset expansion.
inline IntPoly brute_force_z(const EdgeList& g, int max_edges = 22) {
    const int m = static_cast<int>(g.edges.size());
    if (m > max_edges) throw TooLarge("brute force limited to " + std::to_string(max_edges) + " edges");
    const int n = g.vertices;
    std::vector<long long> by_k(static_cast<std::size_t>(n + 1), 0);
    std::vector<int> parent(static_cast<std::size_t>(n));
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            auto& p = parent[static_cast<std::size_t>(v)];
            p = parent[static_cast<std::size_t>(p)];
            v = p;
        }
        return v;
    };
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        int comps = n;
        for (int i = 0; i < m; ++i) {
            if (!(mask >> i & 1u)) continue;
            int a = find(g.edges[static_cast<std::size_t>(i)].first);
            int b = find(g.edges[static_cast<std::size_t>(i)].second);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --comps;
            }
        }
        by_k[static_cast<std::size_t>(comps)] += (__builtin_popcount(mask) & 1) ? -1 : 1;
    }
    std::vector<BigInt> cs;
    for (long long v : by_k) cs.emplace_back(v);
    return IntPoly(std::move(cs));
}

inline IntPoly brute_force_z(const SpExpr& g) {
    if (g.edge_count() > 22) throw TooLarge("brute force limited to 22 edges");
    return brute_force_z(realize(g));
}

// (same, dif) scaled by exp(log_scale); keeps huge graphs in range.
struct ScaledPair {
    Cx same, dif;
    double log_scale = 0.0;
};

enum class EvalPath { Auto, Exact, Recursion };

inline constexpr std::uint64_t kExactEdgeLimit = 64;

namespace detail {
inline ScaledPair normalize(Cx s, Cx d, double ls) {
    double m = std::max(std::abs(s), std::abs(d));
    if (m > 0.0 && std::isfinite(m)) {
        s /= m;
        d /= m;
        ls += std::log(m);
    }
    return {s, d, ls};
}

inline ScaledPair combine(NodeKind k, Cx q, const ScaledPair& a, const ScaledPair& b) {
    Cx qq1 = q * (q - 1.0);
    double ls = a.log_scale + b.log_scale;
    if (k == NodeKind::Parallel) return normalize(a.same * b.same / q, a.dif * b.dif / qq1, ls);
    Cx dd = a.dif * b.dif;
    Cx s = ((q - 1.0) * a.same * b.same + dd) / qq1;
    Cx d = ((q - 1.0) * (a.same * b.dif + a.dif * b.same) + (q - 2.0) * dd) / qq1;
    return normalize(s, d, ls);
}
}  // namespace detail

// Series/parallel recursion in complex arithmetic; shared nodes are evaluated once.
inline ScaledPair eval_pair_scaled(const SpExpr& g, Cx q) {
    if (q == Cx(0.0) || q == Cx(1.0)) {
        // The recursion divides by q(q-1); fall back to exact polynomials.
        if (g.edge_count() > 4096) throw DomainError("q in {0, 1} needs the exact path; graph too large");
        auto p = pair_polys_shared(g);
        return detail::normalize(p->same.eval(q), p->dif.eval(q), 0.0);
    }
    std::unordered_map<const SpNode*, ScaledPair> memo;
    struct Rec {
        Cx q;
        std::unordered_map<const SpNode*, ScaledPair>& memo;
        ScaledPair go(const SpExpr& h) {
            if (h.kind() == NodeKind::Edge) return detail::normalize(0.0, q * (q - 1.0), 0.0);
            auto it = memo.find(h.id());
            if (it != memo.end()) return it->second;
            ScaledPair a = go(h.left());
            ScaledPair b = go(h.right());
            ScaledPair r = detail::combine(h.kind(), q, a, b);
            memo.emplace(h.id(), r);
            return r;
        }
    } rec{q, memo};
    return rec.go(g);
}

inline bool use_exact(const SpExpr& g, EvalPath path) {
    if (path == EvalPath::Exact) return true;
    if (path == EvalPath::Recursion) return false;
    return g.edge_count() <= kExactEdgeLimit;
}

// Unscaled (same, dif); may overflow for big graphs, use eval_pair_scaled then.
inline std::pair<Cx, Cx> eval_pair(const SpExpr& g, Cx q, EvalPath path = EvalPath::Auto) {
    if (use_exact(g, path)) {
        auto p = pair_polys_shared(g);
        return {p->same.eval(q), p->dif.eval(q)};
    }
    ScaledPair s = eval_pair_scaled(g, q);
    double f = std::exp(s.log_scale);
    return {s.same * f, s.dif * f};
}

inline SpherePoint ratio_from_pair(Cx same, Cx dif) {
    if (dif == Cx(0.0)) {
        if (same == Cx(0.0)) throw Indeterminate("ratio is 0/0");
        return SpherePoint::infinity();
    }
    return SpherePoint(same / dif);
}

inline SpherePoint ratio_eval(const SpExpr& g, Cx q, EvalPath path = EvalPath::Auto) {
    if (use_exact(g, path)) {
        auto [s, d] = eval_pair(g, q, EvalPath::Exact);
        return ratio_from_pair(s, d);
    }
    ScaledPair p = eval_pair_scaled(g, q);
    return ratio_from_pair(p.same, p.dif);
}

inline SpherePoint interaction_eval(const SpExpr& g, Cx q, EvalPath path = EvalPath::Auto) {
    SpherePoint r = ratio_eval(g, q, path);
    if (r.inf) {
        if (q == Cx(1.0)) throw Indeterminate("interaction is 0 * infinity at q = 1");
        return r;
    }
    return SpherePoint((q - 1.0) * r.z);
}

inline SpherePoint sphere_mul(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf || b.inf) {
        if ((!a.inf && a.z == Cx(0.0)) || (!b.inf && b.z == Cx(0.0))) throw Indeterminate("0 * infinity");
        return SpherePoint::infinity();
    }
    return SpherePoint(a.z * b.z);
}

inline SpherePoint parallel_interaction(Cx q, const SpherePoint& y1, const SpherePoint& y2) {
    (void)q;
    return sphere_mul(y1, y2);
}

inline SpherePoint series_interaction(Cx q, const SpherePoint& y1, const SpherePoint& y2) {
    auto excluded = [&](const SpherePoint& a, const SpherePoint& b) {
        return !a.inf && !b.inf && a.z == Cx(1.0) && b.z == 1.0 - q;
    };
    if (excluded(y1, y2) || excluded(y2, y1)) throw Indeterminate("series of interactions 1 and 1-q");
    return f_apply(q, sphere_mul(f_apply(q, y1), f_apply(q, y2)));
}

// (y1 y2 + q - 1) / (y1 + y2 + q - 2), finite inputs only.
inline SpherePoint series_interaction_closed(Cx q, Cx y1, Cx y2) {
    Cx num = y1 * y2 + q - 1.0;
    Cx den = y1 + y2 + q - 2.0;
    if (den == Cx(0.0)) {
        if (num == Cx(0.0)) throw Indeterminate("series closed form is 0/0");
        return SpherePoint::infinity();
    }
    return SpherePoint(num / den);
}

}  // namespace spz
