#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace spz {

enum class NodeKind { Edge, Series, Parallel };

struct SpNode;

// Immutable two-terminal series-parallel expression. Copies share structure,
// so repeated blocks cost one node (see series_power / parallel_power).
class SpExpr {
public:
    SpExpr();  // the single edge

    NodeKind kind() const;
    const SpExpr& left() const;
    const SpExpr& right() const;
    std::uint64_t edge_count() const;
    std::uint64_t vertex_count() const;
    // Invariant under swapping the operands of any node.
    std::uint64_t hash() const;
    const SpNode* id() const { return n_.get(); }

    friend SpExpr make_node(NodeKind k, SpExpr a, SpExpr b);

private:
    explicit SpExpr(std::shared_ptr<const SpNode> n) : n_(std::move(n)) {}
    std::shared_ptr<const SpNode> n_;
};

struct SpNode {
    NodeKind kind;
    SpExpr left, right;  // unset for Edge
    std::uint64_t edges, vertices, hash;
};

namespace detail {
inline std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}
inline constexpr std::uint64_t kEdgeHash = 0x6a09e667f3bcc909ULL;
inline constexpr std::uint64_t kSaturated = ~0ULL;
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
}  // namespace detail

// A null node pointer is the single edge.
inline SpExpr::SpExpr() = default;
inline NodeKind SpExpr::kind() const { return n_ ? n_->kind : NodeKind::Edge; }
inline const SpExpr& SpExpr::left() const { return n_->left; }
inline const SpExpr& SpExpr::right() const { return n_->right; }
inline std::uint64_t SpExpr::edge_count() const { return n_ ? n_->edges : 1; }
inline std::uint64_t SpExpr::vertex_count() const { return n_ ? n_->vertices : 2; }
inline std::uint64_t SpExpr::hash() const { return n_ ? n_->hash : detail::kEdgeHash; }

inline SpExpr make_node(NodeKind k, SpExpr a, SpExpr b) {
    auto n = std::make_shared<SpNode>();
    n->kind = k;
    std::uint64_t h1 = a.hash(), h2 = b.hash();
    if (h1 > h2) std::swap(h1, h2);
    n->hash = detail::mix(h1 * 0x100000001b3ULL ^ detail::mix(h2 + (k == NodeKind::Series ? 17 : 91)));
    // Counts saturate; deep shared powers exceed 64 bits.
    n->edges = detail::sat_add(a.edge_count(), b.edge_count());
    n->vertices = detail::sat_add(a.vertex_count(), b.vertex_count());
    if (n->vertices != detail::kSaturated) n->vertices -= (k == NodeKind::Series ? 1 : 2);
    n->left = std::move(a);
    n->right = std::move(b);
    return SpExpr(std::shared_ptr<const SpNode>(std::move(n)));
}

inline SpExpr edge() { return SpExpr(); }
inline SpExpr series(SpExpr a, SpExpr b) { return make_node(NodeKind::Series, std::move(a), std::move(b)); }
inline SpExpr parallel(SpExpr a, SpExpr b) { return make_node(NodeKind::Parallel, std::move(a), std::move(b)); }

// Structural equality up to swapping operands.
inline bool equivalent(const SpExpr& a, const SpExpr& b) {
    if (a.id() == b.id()) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.edge_count() != b.edge_count()) return false;
    if (a.kind() == NodeKind::Edge) return true;
    if (equivalent(a.left(), b.left()) && equivalent(a.right(), b.right())) return true;
    return equivalent(a.left(), b.right()) && equivalent(a.right(), b.left());
}

namespace detail {
inline SpExpr power(const SpExpr& g, std::uint64_t n, NodeKind k) {
    if (n == 0) throw ArgumentError("power must be >= 1");
    // Binary doubling: O(log n) distinct nodes.
    SpExpr base = g;
    bool have = false;
    SpExpr acc;
    while (n) {
        if (n & 1) {
            acc = have ? make_node(k, acc, base) : base;
            have = true;
        }
        n >>= 1;
        if (n) base = make_node(k, base, base);
    }
    return acc;
}
}  // namespace detail

inline SpExpr series_power(const SpExpr& g, std::uint64_t n) { return detail::power(g, n, NodeKind::Series); }
inline SpExpr parallel_power(const SpExpr& g, std::uint64_t n) { return detail::power(g, n, NodeKind::Parallel); }

inline SpExpr path(long long n) {
    if (n < 1) throw ArgumentError("path length must be >= 1");
    SpExpr g = edge();
    for (long long i = 1; i < n; ++i) g = series(g, edge());
    return g;
}

inline SpExpr theta(const std::vector<long long>& lengths) {
    if (lengths.empty()) throw ArgumentError("theta needs at least one path");
    SpExpr g = path(lengths[0]);
    for (std::size_t i = 1; i < lengths.size(); ++i) g = parallel(g, path(lengths[i]));
    return g;
}

// C_n as a two-terminal graph: one edge parallel to the remaining path.
inline SpExpr cycle(long long n) {
    if (n < 2) throw ArgumentError("cycle length must be >= 2");
    return theta({n - 1, 1});
}

inline std::string to_string(const SpExpr& g) {
    switch (g.kind()) {
        case NodeKind::Edge: return "e";
        case NodeKind::Series: return "s(" + to_string(g.left()) + "," + to_string(g.right()) + ")";
        case NodeKind::Parallel: return "p(" + to_string(g.left()) + "," + to_string(g.right()) + ")";
    }
    return {};
}

namespace detail {
class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    SpExpr parse_all() {
        SpExpr g = term();
        ws();
        if (i_ != s_.size()) fail("trailing input");
        return g;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(i_));
    }
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        ws();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        return std::string(s_.substr(b, i_ - b));
    }
    long long integer() {
        ws();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected integer");
        if (i_ - b > 9) fail("integer too large");
        return std::stoll(std::string(s_.substr(b, i_ - b)));
    }
    std::vector<long long> int_list() {
        expect('(');
        std::vector<long long> v{integer()};
        while (eat(',')) v.push_back(integer());
        expect(')');
        return v;
    }
    SpExpr term() {
        std::string id = ident();
        if (id == "e") return edge();
        if (id == "s" || id == "p") {
            NodeKind k = id == "s" ? NodeKind::Series : NodeKind::Parallel;
            expect('(');
            SpExpr g = term();
            int n = 1;
            while (eat(',')) {
                g = make_node(k, g, term());
                ++n;
            }
            expect(')');
            if (n < 2) fail("composition needs two operands");
            return g;
        }
        try {
            if (id == "path") {
                auto v = int_list();
                if (v.size() != 1) fail("path takes one argument");
                return path(v[0]);
            }
            if (id == "cycle") {
                auto v = int_list();
                if (v.size() != 1) fail("cycle takes one argument");
                return cycle(v[0]);
            }
            if (id == "theta") return theta(int_list());
        } catch (const ArgumentError& e) {
            fail(e.what());
        }
        fail(id.empty() ? "expected term" : "unknown term '" + id + "'");
    }
};
}  // namespace detail

inline SpExpr parse_expr(std::string_view s) { return detail::Parser(s).parse_all(); }

// Realized multigraph; terminals are vertices 0 (s) and 1 (t).
struct EdgeList {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

inline EdgeList realize(const SpExpr& g, std::uint64_t max_edges = 1u << 20) {
    if (g.edge_count() > max_edges) throw TooLarge("expression too large to realize");
    EdgeList out;
    out.vertices = 2;
    struct Rec {
        EdgeList& out;
        void go(const SpExpr& h, int s, int t) {
            switch (h.kind()) {
                case NodeKind::Edge: out.edges.emplace_back(s, t); return;
                case NodeKind::Parallel:
                    go(h.left(), s, t);
                    go(h.right(), s, t);
                    return;
                case NodeKind::Series: {
                    int m = out.vertices++;
                    go(h.left(), s, m);
                    go(h.right(), m, t);
                    return;
                }
            }
        }
    } rec{out};
    rec.go(g, 0, 1);
    return out;
}

inline bool is_bipartite(const EdgeList& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertices));
    for (auto [a, b] : g.edges) {
        if (a == b) return false;
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> col(static_cast<std::size_t>(g.vertices), -1);
    for (int s = 0; s < g.vertices; ++s) {
        if (col[static_cast<std::size_t>(s)] >= 0) continue;
        col[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                auto& cw = col[static_cast<std::size_t>(w)];
                if (cw < 0) {
                    cw = 1 - col[static_cast<std::size_t>(v)];
                    q.push(w);
                } else if (cw == col[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace spz
