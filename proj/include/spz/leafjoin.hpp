#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "int_poly.hpp"
#include "moebius.hpp"
#include "roots.hpp"
#include "sp_expr.hpp"
#include "sp_poly.hpp"

namespace spz {

struct RootedTree {
    std::vector<RootedTree> children;

    bool is_leaf() const { return children.empty(); }
    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& c : children) n += c.size();
        return n;
    }
    std::size_t leaves() const {
        if (children.empty()) return 1;
        std::size_t n = 0;
        for (const auto& c : children) n += c.leaves();
        return n;
    }
    int max_down_degree() const {
        int m = static_cast<int>(children.size());
        for (const auto& c : children) m = std::max(m, c.max_down_degree());
        return m;
    }
    // Number of children if every internal vertex has the same count, else -1.
    int uniform_arity() const {
        if (children.empty()) return 0;
        int d = static_cast<int>(children.size());
        for (const auto& c : children) {
            int a = c.uniform_arity();
            if (a != 0 && a != d) return -1;
        }
        return d;
    }
};

inline RootedTree tree_leaf() { return {}; }

inline RootedTree tree_star(int d) {
    RootedTree t;
    t.children.assign(static_cast<std::size_t>(d), tree_leaf());
    return t;
}

inline RootedTree regular_tree(int d, int depth) {
    if (depth <= 0) return tree_leaf();
    RootedTree t;
    t.children.assign(static_cast<std::size_t>(d), regular_tree(d, depth - 1));
    return t;
}

// Root level has d1 internal children; the next level has d2 internal
// children plus d1 - d2 leaves; levels alternate. Depth 0 is a single leaf.
inline RootedTree alternating_shape(int d1, int d2, int depth, bool up = true) {
    if (depth <= 0) return tree_leaf();
    RootedTree t;
    RootedTree child = alternating_shape(d1, d2, depth - 1, !up);
    int internal = up ? d1 : d2;
    t.children.assign(static_cast<std::size_t>(internal), child);
    if (!up) t.children.insert(t.children.end(), static_cast<std::size_t>(d1 - d2), tree_leaf());
    return t;
}

// Simple graph on at most 32 vertices, adjacency as bitmasks.
struct SimpleGraph {
    int n = 0;
    std::vector<std::uint32_t> adj;

    explicit SimpleGraph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices), 0u) {
        if (vertices > 32) throw TooLarge("simple graph limited to 32 vertices");
    }
    void add_edge(int a, int b) {
        adj[static_cast<std::size_t>(a)] |= 1u << b;
        adj[static_cast<std::size_t>(b)] |= 1u << a;
    }
    std::uint32_t all() const { return n == 32 ? 0xffffffffu : ((1u << n) - 1u); }
};

// The tree as a graph; the root is vertex 0.
inline SimpleGraph tree_graph(const RootedTree& t) {
    SimpleGraph g(static_cast<int>(t.size()));
    int next = 1;
    std::function<void(const RootedTree&, int)> go = [&](const RootedTree& u, int id) {
        for (const auto& c : u.children) {
            int cid = next++;
            g.add_edge(id, cid);
            go(c, cid);
        }
    };
    go(t, 0);
    return g;
}

// Independence polynomial of the subgraph induced on `mask`, by subset
// enumeration.
inline IntPoly ind_poly(const SimpleGraph& g, std::uint32_t mask) {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
        if (mask >> v & 1u) verts.push_back(v);
    const int k = static_cast<int>(verts.size());
    if (k > 25) throw TooLarge("independence oracle limited to 25 vertices");
    std::vector<long long> cnt(static_cast<std::size_t>(k + 1), 0);
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
        std::uint32_t set = 0;
        for (int i = 0; i < k; ++i)
            if (s >> i & 1u) set |= 1u << verts[static_cast<std::size_t>(i)];
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            if ((s >> i & 1u) && (g.adj[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])] & set)) ok = false;
        if (ok) ++cnt[static_cast<std::size_t>(__builtin_popcount(s))];
    }
    std::vector<BigInt> cs;
    for (long long c : cnt) cs.emplace_back(c);
    return IntPoly(std::move(cs));
}

inline IntPoly ind_poly(const SimpleGraph& g) { return ind_poly(g, g.all()); }

// lambda I(G - N[v]) / I(G - v), from the exact polynomials.
inline Cx occupation_ratio(const SimpleGraph& g, int v, Cx lambda) {
    std::uint32_t all = g.all();
    std::uint32_t minus_v = all & ~(1u << v);
    std::uint32_t minus_nv = minus_v & ~g.adj[static_cast<std::size_t>(v)];
    Cx den = ind_poly(g, minus_v).eval(lambda);
    if (den == Cx(0.0)) throw PoleError("I(G - v) vanishes");
    return lambda * ind_poly(g, minus_nv).eval(lambda) / den;
}

inline Cx F_map(Cx lambda, const std::vector<Cx>& zs) {
    Cx p = 1.0;
    for (Cx z : zs) {
        if (z == Cx(-1.0)) throw PoleError("F has a pole at z = -1");
        p *= 1.0 + z;
    }
    return lambda / p;
}

// Occupation ratio at the root of a tree via the recursion (leaf vertex -> lambda).
inline Cx tree_occupation_ratio(const RootedTree& t, Cx lambda) {
    std::vector<Cx> zs;
    for (const auto& c : t.children) zs.push_back(tree_occupation_ratio(c, lambda));
    return F_map(lambda, zs);
}

// G = F1 o F2 with F1(w) = lambda/(1+w)^d1, F2(z) = lambda/(1+z)^d2. The
// d1 - d2 extra children of the lower level are shape leaves, which enter
// the recursion as the identity evaluated at 0, so they contribute no
// factor. independence_leaves = true instead treats them as pendant
// vertices of the independence tree, each contributing (1 + lambda).
inline Cx two_level_map(Cx lambda, int d1, int d2, Cx z, bool independence_leaves = false) {
    if (z == Cx(-1.0)) throw PoleError("two-level map has a pole at z = -1");
    Cx w = lambda / std::pow(1.0 + z, d2);
    if (independence_leaves && d1 > d2) {
        if (lambda == Cx(-1.0)) throw PoleError("added leaves have a pole at lambda = -1");
        w /= std::pow(1.0 + lambda, d1 - d2);
    }
    if (w == Cx(-1.0)) throw PoleError("two-level map has a pole at F2(z) = -1");
    return lambda / std::pow(1.0 + w, d1);
}

// dG/dz for the default (no leaf factor) map.
inline Cx two_level_derivative(Cx lambda, int d1, int d2, Cx z) {
    Cx w = lambda / std::pow(1.0 + z, d2);
    Cx g = lambda / std::pow(1.0 + w, d1);
    return static_cast<double>(d1) * d2 * g * w / ((1.0 + w) * (1.0 + z));
}

inline Cx lambda_q_d(Cx q, int d) {
    if (q == Cx(2.0)) throw DomainError("lambda(q, d) has a pole at q = 2");
    return std::pow(q - 1.0, d) / std::pow(q - 2.0, d + 1);
}

inline Cx lambda_Delta(Cx u, int Delta) {
    Cx den = static_cast<double>(Delta - 1) + u;
    if (den == Cx(0.0)) throw DomainError("lambda_Delta has a pole at u = 1 - Delta");
    return -std::pow(static_cast<double>(Delta - 1), Delta - 1) * u / std::pow(den, Delta);
}

// All solutions q of lambda(q, d) = lambda, polished on lambda(q,d)/lambda - 1.
inline std::vector<Cx> q_roots_from_lambda(Cx lambda, int d) {
    if (d < 1) throw DomainError("d must be >= 1");
    if (lambda == Cx(0.0)) throw DomainError("lambda = 0 has only the root q = 1");
    CPoly p = cpoly_add(cpoly_pow({-1.0, 1.0}, d), cpoly_pow({-2.0, 1.0}, d + 1), -lambda);
    std::vector<Cx> rs = cpoly_roots(p);
    for (Cx& q : rs) {
        for (int it = 0; it < 30; ++it) {
            if (q == Cx(2.0) || q == Cx(1.0)) break;
            Cx l = lambda_q_d(q, d);
            Cx r = l / lambda - 1.0;
            Cx dl = -(q + static_cast<double>(d) - 1.0) * l / ((q - 1.0) * (q - 2.0));
            Cx step = r / (dl / lambda);
            if (!std::isfinite(std::abs(step))) break;
            q -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(q))) break;
        }
    }
    return rs;
}

namespace detail {
// max Re, then max |Im|, then Im > 0.
inline bool q_better(Cx a, Cx b) {
    double tol = 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
    if (std::abs(a.real() - b.real()) > tol) return a.real() > b.real();
    if (std::abs(std::abs(a.imag()) - std::abs(b.imag())) > tol) return std::abs(a.imag()) > std::abs(b.imag());
    return a.imag() > b.imag();
}
}  // namespace detail

inline Cx q_from_lambda(Cx lambda, int d) {
    std::vector<Cx> rs = q_roots_from_lambda(lambda, d);
    Cx best = rs.front();
    for (Cx q : rs)
        if (detail::q_better(q, best)) best = q;
    if (std::abs(lambda_q_d(best, d) / lambda - 1.0) > 1e-8) throw NonConvergence("q root did not polish");
    return best;
}

// Leaf -> Edge; internal node -> parallel over children of (Edge in series with child).
inline SpExpr leafjoined_expr(const RootedTree& t) {
    if (t.is_leaf()) return edge();
    SpExpr acc;
    bool have = false;
    for (const auto& c : t.children) {
        SpExpr b = series(edge(), leafjoined_expr(c));
        acc = have ? parallel(acc, b) : b;
        have = true;
    }
    return acc;
}

// Shared-structure leaf-joined expression of alternating_shape.
inline SpExpr alternating_expr(int d1, int d2, int depth, bool up = true) {
    if (depth <= 0) return edge();
    SpExpr child = alternating_expr(d1, d2, depth - 1, !up);
    SpExpr g = parallel_power(series(edge(), child), static_cast<std::uint64_t>(up ? d1 : d2));
    if (!up && d1 > d2) g = parallel(g, parallel_power(series(edge(), edge()), static_cast<std::uint64_t>(d1 - d2)));
    return g;
}

inline Cx modified_ratio(const SpExpr& g, Cx q, EvalPath path = EvalPath::Auto) {
    if (q == Cx(1.0) || q == Cx(2.0)) throw DomainError("modified ratio needs q outside {1, 2}");
    SpherePoint r = ratio_eval(g, q, path);
    if (r.inf) throw Indeterminate("ratio is infinite");
    return (q - 1.0) / (q - 2.0) * r.z;
}

// r_lambda(0) over the shape: leaf -> 0, internal -> F(children).
inline Cx shape_recursion(const RootedTree& t, Cx lambda) {
    if (t.is_leaf()) return 0.0;
    std::vector<Cx> zs;
    for (const auto& c : t.children) zs.push_back(shape_recursion(c, lambda));
    return F_map(lambda, zs);
}

inline double ratio_bridge_check(const RootedTree& shape, Cx q) {
    int d = shape.uniform_arity();
    if (d < 0) throw ArgumentError("bridge identity needs every internal vertex to have the same number of children");
    Cx lhs = modified_ratio(leafjoined_expr(shape), q);
    if (d == 0) return std::abs(lhs);
    Cx rhs = shape_recursion(shape, lambda_q_d(q, d));
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

struct ActivityPoint {
    int d1 = 0, d2 = 0;
    double theta = 0.0;
    Cx lambda, z_fixed, multiplier, q;
};

namespace detail {
// Fixed points of G with G'(z) = e^{i theta}: eliminating w = F2(z) and
// lambda leaves one polynomial in z.
inline std::vector<ActivityPoint> neutral_points(int d1, int d2, double theta) {
    Cx e = std::polar(1.0, theta);
    double k = static_cast<double>(d1) * d2;
    CPoly D{-e, k - e};  // D(z) = k z - e (1 + z)
    CPoly lhs = cpoly_pow({0.0, 1.0}, d1 + 1);
    for (Cx& c : lhs) c *= std::pow(k, d1);
    CPoly rhs = cpoly_mul(cpoly_pow({1.0, 1.0}, d2 + 1), cpoly_pow(D, d1 - 1));
    CPoly p = cpoly_add(lhs, rhs, -e);
    std::vector<ActivityPoint> out;
    for (Cx z : cpoly_roots(p)) {
        Cx dz = cpoly_eval(D, z);
        if (std::abs(dz) < 1e-14 || std::abs(1.0 + z) < 1e-14 || std::abs(z) < 1e-14) continue;
        Cx lambda = e * std::pow(1.0 + z, d2 + 1) / dz;
        // Polish (z, lambda) on {G(z) = z, G'(z) = e} with Newton.
        for (int it = 0; it < 40; ++it) {
            auto F = [&](Cx zz, Cx ll) {
                return std::array<Cx, 2>{two_level_map(ll, d1, d2, zz) - zz, two_level_derivative(ll, d1, d2, zz) - e};
            };
            std::array<Cx, 2> f0;
            try {
                f0 = F(z, lambda);
            } catch (const Error&) {
                break;
            }
            double h = 1e-7 * (1.0 + std::abs(z));
            double hl = 1e-7 * (1.0 + std::abs(lambda));
            std::array<Cx, 2> fz1, fz2, fl1, fl2;
            try {
                fz1 = F(z + h, lambda);
                fz2 = F(z - h, lambda);
                fl1 = F(z, lambda + hl);
                fl2 = F(z, lambda - hl);
            } catch (const Error&) {
                break;
            }
            Cx a = (fz1[0] - fz2[0]) / (2 * h), b = (fl1[0] - fl2[0]) / (2 * hl);
            Cx c = (fz1[1] - fz2[1]) / (2 * h), dd = (fl1[1] - fl2[1]) / (2 * hl);
            Cx det = a * dd - b * c;
            if (det == Cx(0.0)) break;
            Cx sz = (dd * f0[0] - b * f0[1]) / det;
            Cx sl = (a * f0[1] - c * f0[0]) / det;
            z -= sz;
            lambda -= sl;
            if (std::abs(sz) < 1e-15 * (1.0 + std::abs(z)) && std::abs(sl) < 1e-15 * (1.0 + std::abs(lambda))) break;
        }
        ActivityPoint ap;
        ap.d1 = d1;
        ap.d2 = d2;
        ap.theta = theta;
        ap.lambda = lambda;
        ap.z_fixed = z;
        try {
            ap.multiplier = two_level_derivative(lambda, d1, d2, z);
            if (std::abs(two_level_map(lambda, d1, d2, z) - z) > 1e-10) continue;
            if (std::abs(std::abs(ap.multiplier) - 1.0) > 1e-8) continue;
            ap.q = q_from_lambda(lambda, d1);
        } catch (const Error&) {
            continue;
        }
        out.push_back(ap);
    }
    return out;
}

inline std::optional<ActivityPoint> best_at(int d1, int d2, double theta) {
    std::optional<ActivityPoint> best;
    for (const auto& ap : neutral_points(d1, d2, theta))
        if (!best || q_better(ap.q, best->q)) best = ap;
    return best;
}
}  // namespace detail

inline ActivityPoint activity_search(int d1, int d2, int theta_grid = 720) {
    if (!(2 <= d2 && d2 <= d1)) throw ArgumentError("need 2 <= d2 <= d1");
    if (theta_grid < 4) theta_grid = 4;
    std::optional<ActivityPoint> best;
    int best_i = 0;
    for (int i = 0; i < theta_grid; ++i) {
        auto ap = detail::best_at(d1, d2, 2.0 * M_PI * i / theta_grid);
        if (ap && (!best || detail::q_better(ap->q, best->q))) {
            best = ap;
            best_i = i;
        }
    }
    if (!best) throw NoSolution("no neutral fixed point found on the theta grid");
    // Golden section on Re(q) over the neighbouring grid cells.
    double h = 2.0 * M_PI / theta_grid;
    double a = h * (best_i - 1), b = h * (best_i + 1);
    auto score = [&](double th) {
        auto ap = detail::best_at(d1, d2, th);
        return ap ? ap->q.real() : -std::numeric_limits<double>::infinity();
    };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = score(c), fd = score(d);
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = score(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = score(d);
        }
    }
    for (double th : {c, d}) {
        auto ap = detail::best_at(d1, d2, th);
        if (ap && detail::q_better(ap->q, best->q)) best = ap;
    }
    best->theta = std::remainder(best->theta, 2.0 * M_PI);
    if (best->theta < 0) best->theta += 2.0 * M_PI;
    return *best;
}

// Table types (d1, d2) for Delta = 4..45; Delta = d1 + 1.
inline std::pair<int, int> table_type(int Delta) {
    static const int d2s[] = {2, 3, 4, 4, 5, 5, 6, 7, 7, 8, 9, 9, 10, 11, 11, 12, 13, 13, 14, 15, 15,
                              16, 17, 17, 18, 19, 19, 20, 21, 21, 22, 23, 23, 24, 25, 25, 26, 27, 27, 28, 29, 29};
    if (Delta < 4 || Delta > 45) throw OutOfRange("table covers Delta in [4, 45]");
    return {Delta - 1, d2s[Delta - 4]};
}

enum class ZeroKind { direct, terminal_edge, child_terminal_edge };

inline const char* to_string(ZeroKind k) {
    switch (k) {
        case ZeroKind::direct: return "direct";
        case ZeroKind::terminal_edge: return "terminal_edge";
        case ZeroKind::child_terminal_edge: return "child_terminal_edge";
    }
    return "";
}

struct ZeroHuntRecord {
    int depth = 0;
    bool converged = false;
    ZeroKind kind = ZeroKind::direct;
    Cx q_zero;
    double residual = 0.0;      // |R + 1| for direct zeros, |1/R| of the repaired part otherwise
    double z_ratio = 0.0;       // |Z(H; q_zero)| / |Z(H; q_seed)|
    std::uint64_t edges = 0;    // edge count of the graph carrying the zero
    std::string note;
};

namespace detail {
// Z(g; q) divided by the constant exp(ref); holomorphic in q.
inline Cx z_rescaled(const SpExpr& g, Cx q, double ref) {
    ScaledPair p = eval_pair_scaled(g, q);
    return (p.same + p.dif) * std::exp(p.log_scale - ref);
}

inline double z_log_scale(const SpExpr& g, Cx q) {
    ScaledPair p = eval_pair_scaled(g, q);
    return p.log_scale + std::log(std::max(1e-300, std::abs(p.same + p.dif)));
}

struct NewtonResult {
    bool ok = false;
    Cx q;
    double residual = 0.0;
};

inline NewtonResult newton(const std::function<Cx(Cx)>& h, Cx q, int max_iter = 200) {
    NewtonResult r;
    for (int it = 0; it < max_iter; ++it) {
        Cx v;
        try {
            v = h(q);
        } catch (const Error&) {
            return r;
        }
        if (!std::isfinite(std::abs(v))) return r;
        double eps = 1e-7 * (1.0 + std::abs(q));
        Cx dv;
        try {
            dv = (h(q + eps) - h(q - eps)) / (2.0 * eps);
        } catch (const Error&) {
            return r;
        }
        if (dv == Cx(0.0) || !std::isfinite(std::abs(dv))) return r;
        Cx step = v / dv;
        double cap = 0.25 * (1.0 + std::abs(q)) * 0.1;
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        q -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(q))) break;
    }
    try {
        r.residual = std::abs(h(q));
    } catch (const Error&) {
        return r;
    }
    r.q = q;
    r.ok = std::isfinite(r.residual) && r.residual < 1e-9;
    return r;
}

inline Cx ratio_plus_one(const SpExpr& g, Cx q) {
    ScaledPair p = eval_pair_scaled(g, q);
    if (p.dif == Cx(0.0)) throw Indeterminate("ratio pole");
    return p.same / p.dif + 1.0;
}

inline Cx inverse_ratio(const SpExpr& g, Cx q) {
    ScaledPair p = eval_pair_scaled(g, q);
    if (p.same == Cx(0.0)) throw Indeterminate("ratio zero");
    return p.dif / p.same;
}
}  // namespace detail

// Newton hunt for zeros of alternating leaf-joined trees near q_seed. The
// direct target is R + 1 = 0. Poles of R are zeros of the tree with a
// terminal edge added; zeros of R come from a root child whose Z^dif
// vanishes, repaired by giving that child a terminal edge.
inline std::vector<ZeroHuntRecord> zero_hunt_leafjoined(int d1, int d2, const std::vector<int>& depths, Cx q_seed,
                                                        int ring = 8,
                                                        const std::vector<double>& ring_radii = {0.02, 0.05, 0.2}) {
    if (!(2 <= d2 && d2 <= d1)) throw ArgumentError("need 2 <= d2 <= d1");
    std::vector<ZeroHuntRecord> out;
    std::vector<Cx> carry;
    for (int depth : depths) {
        SpExpr t = alternating_expr(d1, d2, depth);
        SpExpr child = alternating_expr(d1, d2, depth - 1, false);
        std::vector<Cx> seeds{q_seed};
        seeds.insert(seeds.end(), carry.begin(), carry.end());
        for (double rr : ring_radii)
            for (int k = 0; k < ring; ++k) seeds.push_back(q_seed + std::polar(rr, 2.0 * M_PI * k / ring));

        struct Target {
            ZeroKind kind;
            SpExpr carrier;  // graph whose Z vanishes at the zero
            std::function<Cx(Cx)> h;
        };
        std::vector<Target> targets{
            {ZeroKind::direct, t, [&](Cx q) { return detail::ratio_plus_one(t, q); }},
            {ZeroKind::terminal_edge, parallel(t, edge()), [&](Cx q) { return 1.0 / (detail::ratio_plus_one(t, q) - 1.0); }},
        };
        if (depth >= 1)
            targets.push_back({ZeroKind::child_terminal_edge, parallel(child, edge()),
                               [&](Cx q) { return detail::inverse_ratio(child, q); }});

        std::optional<ZeroHuntRecord> best;
        // Closest to the seed wins; direct zeros win ties.
        auto better = [&](const ZeroHuntRecord& a, const ZeroHuntRecord& b) {
            double da = std::abs(a.q_zero - q_seed), db = std::abs(b.q_zero - q_seed);
            if (da != db) return da < db;
            return a.kind == ZeroKind::direct && b.kind != ZeroKind::direct;
        };
        for (const auto& tg : targets) {
            for (Cx s : seeds) {
                auto nr = detail::newton(tg.h, s);
                if (!nr.ok) continue;
                ZeroHuntRecord rec;
                rec.depth = depth;
                rec.converged = true;
                rec.kind = tg.kind;
                rec.q_zero = nr.q;
                rec.residual = nr.residual;
                rec.edges = tg.carrier.edge_count();
                try {
                    double ref = detail::z_log_scale(tg.carrier, q_seed);
                    rec.z_ratio = std::abs(detail::z_rescaled(tg.carrier, nr.q, ref));
                } catch (const Error&) {
                    rec.z_ratio = std::numeric_limits<double>::quiet_NaN();
                }
                if (!best || better(rec, *best)) best = rec;
            }
        }
        if (best) {
            out.push_back(*best);
            carry = {best->q_zero};
        } else {
            ZeroHuntRecord rec;
            rec.depth = depth;
            rec.edges = t.edge_count();
            rec.note = "no Newton run converged";
            out.push_back(rec);
        }
    }
    return out;
}

}  // namespace spz
