#pragma once

// Shared generators and independent oracles for the test binaries.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spz/sp_expr.hpp"
#include "spz/sp_poly.hpp"

namespace testsupport {

using spz::SpExpr;

// Every expression with exactly n edges, both operand orders included.
inline std::vector<SpExpr> all_exprs(int n) {
    static std::vector<std::vector<SpExpr>> memo{{}, {spz::edge()}};
    while (static_cast<int>(memo.size()) <= n) {
        int k = static_cast<int>(memo.size());
        std::vector<SpExpr> out;
        for (int a = 1; a < k; ++a)
            for (const auto& l : memo[static_cast<std::size_t>(a)])
                for (const auto& r : memo[static_cast<std::size_t>(k - a)]) {
                    out.push_back(spz::series(l, r));
                    out.push_back(spz::parallel(l, r));
                }
        memo.push_back(std::move(out));
    }
    return memo[static_cast<std::size_t>(n)];
}

inline std::vector<SpExpr> all_exprs_upto(int n) {
    std::vector<SpExpr> out;
    for (int k = 1; k <= n; ++k) {
        auto v = all_exprs(k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

// Random expression with exactly n edges: random split, random kind.
inline SpExpr random_expr(std::mt19937_64& rng, int n) {
    if (n == 1) return spz::edge();
    int a = std::uniform_int_distribution<int>(1, n - 1)(rng);
    SpExpr l = random_expr(rng, a), r = random_expr(rng, n - a);
    return std::bernoulli_distribution(0.5)(rng) ? spz::series(l, r) : spz::parallel(l, r);
}

// Number of proper colourings with q colours, by backtracking over the
// realised multigraph. Independent of every polynomial routine.
inline std::int64_t count_colourings(const spz::EdgeList& g, int q) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertices));
    for (auto [a, b] : g.edges) {
        if (a == b) return 0;
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> col(static_cast<std::size_t>(g.vertices), -1);
    std::function<std::int64_t(int)> go = [&](int v) -> std::int64_t {
        if (v == g.vertices) return 1;
        std::int64_t total = 0;
        for (int c = 0; c < q; ++c) {
            bool ok = true;
            for (int w : adj[static_cast<std::size_t>(v)])
                if (w < v && col[static_cast<std::size_t>(w)] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            col[static_cast<std::size_t>(v)] = c;
            total += go(v + 1);
        }
        col[static_cast<std::size_t>(v)] = -1;
        return total;
    };
    return go(0);
}

// Same split by whether the terminals 0 and 1 share a colour.
inline std::pair<std::int64_t, std::int64_t> count_colourings_split(const spz::EdgeList& g, int q) {
    if (q == 0) return {0, 0};
    spz::EdgeList same = g;
    // Merge terminal 1 into 0 for the "same colour" count.
    for (auto& e : same.edges) {
        if (e.first == 1) e.first = 0;
        if (e.second == 1) e.second = 0;
    }
    std::int64_t s = count_colourings(same, q);
    // Vertex 1 is now isolated in `same`, so it was counted q times.
    s /= q;
    return {s, count_colourings(g, q) - s};
}

// Distinct (Z^same, Z^dif) pairs, bucketed by the fewest edges that reach
// them. Z depends on an expression only through its pair, and both
// compositions are symmetric, so the union of buckets 1..n covers every
// expression with at most n edges.
inline std::vector<std::vector<spz::PolyPair>> distinct_pairs_upto(int n) {
    std::vector<std::vector<spz::PolyPair>> by(static_cast<std::size_t>(n + 1));
    std::set<std::string> seen;
    auto key = [](const spz::PolyPair& p) { return p.same.to_string() + "|" + p.dif.to_string(); };
    by[1].push_back(spz::pair_polys(spz::edge()));
    seen.insert(key(by[1][0]));
    for (int k = 2; k <= n; ++k)
        for (int a = 1; a <= k / 2; ++a)
            for (const auto& l : by[static_cast<std::size_t>(a)])
                for (const auto& r : by[static_cast<std::size_t>(k - a)])
                    for (auto kind : {spz::NodeKind::Series, spz::NodeKind::Parallel}) {
                        spz::PolyPair p = spz::detail::combine(kind, l, r);
                        if (seen.insert(key(p)).second) by[static_cast<std::size_t>(k)].push_back(std::move(p));
                    }
    return by;
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

inline spz::Cx random_cx(std::mt19937_64& r, double lo_re, double hi_re, double lo_im, double hi_im) {
    return {std::uniform_real_distribution<double>(lo_re, hi_re)(r), std::uniform_real_distribution<double>(lo_im, hi_im)(r)};
}

}  // namespace testsupport
