#include <catch_amalgamated.hpp>

#include <random>

#include "spz/escape.hpp"
#include "spz/roots.hpp"
#include "support.hpp"

using namespace spz;

namespace {

// g(z) = f_q(z^2) iterated k times from 0, plain complex arithmetic.
Cx g_iter(Cx q, int k) {
    Cx z = 0.0;
    for (int i = 0; i < k; ++i) z = 1.0 + q / (z * z - 1.0);
    return z;
}

}  // namespace

TEST_CASE("reference points") {
    auto v = escape_search(Cx(2.5), 300);
    REQUIRE(v.status == EscapeStatus::escaped);
    CHECK(v.witness->word.empty());
    CHECK(v.witness->kind == EscapeKind::virtual_);
    CHECK(std::abs(v.witness->value.z + 1.5) < 1e-15);
    CHECK(v.shading_depth == 75);

    v = escape_search(Cx(1.6), 300);
    REQUIRE(v.status == EscapeStatus::escaped);
    CHECK(v.witness->word == std::vector<int>{2});
    CHECK(v.witness->kind == EscapeKind::interaction);
    CHECK(std::abs(v.witness->value.z + 1.5) < 1e-12);
    CHECK(v.witness->budget_used == 2);

    v = escape_search(Cx(1.05), 300);
    CHECK(v.status == EscapeStatus::bounded);
    CHECK(!v.witness);
    CHECK_THROWS_AS(escape_search(Cx(0.0), 300), DomainError);
    CHECK_THROWS_AS(escape_search(Cx(1.5), 0), ArgumentError);
}

TEST_CASE("q = 1.3 escapes through the squaring iteration") {
    auto v = escape_search(Cx(1.3), 300);
    REQUIRE(v.status == EscapeStatus::escaped);
    // Three squarings after 1 - q, i.e. four applications of g.
    CHECK(v.witness->word == std::vector<int>{2, 2, 2});
    CHECK(v.witness->kind == EscapeKind::interaction);
    Cx ref = g_iter(Cx(1.3), 4);
    CHECK(std::abs(v.witness->value.z - ref) < 1e-12);
    CHECK(std::abs(v.witness->value.z - Cx(-1.0033)) < 1e-3);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(g_iter(Cx(1.3), k)) <= 1.0);
}

TEST_CASE("values recompute from the word") {
    auto rng = testsupport::rng(21);
    int n = 0;
    for (int i = 0; i < 300; ++i) {
        Cx q = testsupport::random_cx(rng, 1.0, 2.2, -1.0, 1.0);
        auto v = escape_search(q, 300);
        if (!v.witness) continue;
        ++n;
        const auto& w = *v.witness;
        REQUIRE(w.value.abs() > 1.0 + kDelta);
        std::int64_t prod = 1;
        for (int x : w.word) prod *= x;
        REQUIRE(prod == w.budget_used);
        REQUIRE(w.budget_used <= 300);
        SpExpr g = realize_witness(w);
        REQUIRE(g.edge_count() == static_cast<std::uint64_t>(w.budget_used));
        SpherePoint again = witness_value_of(g, q, w.kind);
        REQUIRE(sphere_close(again, w.value, 1e-8));
    }
    CHECK(n > 100);
}

TEST_CASE("tampered witnesses are rejected") {
    auto v = escape_search(Cx(1.6), 300);
    EscapeWitness w = *v.witness;
    w.value = SpherePoint(Cx(-1.7));
    CHECK_THROWS_AS(realize_witness(w), MismatchError);
    w = *v.witness;
    w.budget_used = 3;
    CHECK_THROWS_AS(realize_witness(w), MismatchError);
}

TEST_CASE("virtual witness with the empty word realizes as an edge") {
    auto v = escape_search(Cx(2.0, 1.5), 300);
    REQUIRE(v.witness);
    CHECK(v.witness->word.empty());
    SpExpr g = realize_witness(*v.witness);
    CHECK(g.kind() == NodeKind::Edge);
}

TEST_CASE("word graphs") {
    CHECK(equivalent(word_graph({2}), path(2)));
    CHECK(equivalent(word_graph({2, 2}), theta({2, 2})));
    CHECK(word_graph({3, 5, 2}).edge_count() == 30);
    CHECK_THROWS_AS(word_graph({0}), ArgumentError);
}

TEST_CASE("more budget never loses an escape") {
    auto rng = testsupport::rng(22);
    for (int i = 0; i < 150; ++i) {
        Cx q = testsupport::random_cx(rng, 1.0, 1.7, -0.6, 0.6);
        for (std::int64_t b1 : {8, 30, 75}) {
            auto a = escape_search(q, b1);
            if (a.status != EscapeStatus::escaped) continue;
            for (std::int64_t b2 : {b1, b1 + 1, std::int64_t{150}, std::int64_t{300}}) {
                if (b2 < b1) continue;
                auto b = escape_search(q, b2);
                REQUIRE(b.status == EscapeStatus::escaped);
                REQUIRE(b.witness->budget_used <= b1);
            }
        }
    }
}

TEST_CASE("half plane shortcut") {
    CHECK(classify_halfplane(Cx(3.0)));
    CHECK_FALSE(classify_halfplane(Cx(1.5, 5.0)));
    CHECK(classify_halfplane(Cx(1.6)));
    auto rng = testsupport::rng(23);
    for (int i = 0; i < 200; ++i) {
        Cx q = testsupport::random_cx(rng, 1.0, 4.0, -3.0, 3.0);
        if (!classify_halfplane(q)) continue;
        auto v = escape_search(q, 300);
        REQUIRE(v.status == EscapeStatus::escaped);
        REQUIRE(v.witness->budget_used <= 2);
    }
}

TEST_CASE("certified points stay bounded") {
    auto rng = testsupport::rng(24);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Cx q(0.05 + 1.10 * u(rng), 0.0);
        if (std::abs(q - 1.0) < 1e-6) continue;
        REQUIRE(escape_search(q, 300).status == EscapeStatus::bounded);
    }
    double r = std::pow(2.0 - std::sqrt(3.0), 2);
    for (int i = 0; i < 100; ++i) {
        Cx q = 1.0 + std::polar(r * std::sqrt(u(rng)), 2 * M_PI * u(rng));
        if (q == Cx(1.0)) continue;
        REQUIRE(escape_search(q, 300).status == EscapeStatus::bounded);
    }
}

TEST_CASE("shading depth is the smallest containing depth") {
    auto v = escape_search(Cx(1.3), 300);
    CHECK(v.shading_depth == 75);
    auto w = escape_search(Cx(1.3), 300, {4, 8, 300});
    CHECK(w.shading_depth == 8);
}

TEST_CASE("sphere powers") {
    CHECK(pow_sphere(SpherePoint(Cx(2.0)), 10).z == Cx(1024.0));
    CHECK(pow_sphere(SpherePoint(Cx(1e4)), 200).inf);
    CHECK(std::abs(pow_sphere(SpherePoint(Cx(2e3, 0.0)), 3).z - Cx(8e9)) < 1e-3);
    CHECK(pow_sphere(SpherePoint::infinity(), 3).inf);
}

TEST_CASE("zero counts on simple graphs") {
    CHECK(count_zeros_in_disk(theta({1, 2}), Cx(2.0), 0.1) == 1);
    CHECK(count_zeros_in_disk(path(3), Cx(2.0), 0.5) == 0);
    CHECK(count_zeros_in_disk(path(3), Cx(1.0), 0.5) == 3);
    CHECK_THROWS_AS(count_zeros_in_disk(theta({1, 2}), Cx(2.0), 1.0), ContourThroughZero);
    CHECK_THROWS_AS(count_zeros_in_disk(theta({1, 2}), Cx(2.0), 0.0), ArgumentError);
}

TEST_CASE("zero counts agree with the roots of the polynomial") {
    auto rng = testsupport::rng(25);
    for (int i = 0; i < 40; ++i) {
        SpExpr g = testsupport::random_expr(rng, 4 + i % 10);
        IntPoly z = z_poly(g);
        CPoly c;
        for (const auto& v : z.coeffs()) c.push_back(v.convert_to<double>());
        auto roots = cpoly_roots(c);
        Cx center = testsupport::random_cx(rng, 0.5, 3.0, -1.0, 1.0);
        double radius = std::uniform_real_distribution<double>(0.2, 1.5)(rng);
        int want = 0;
        bool near_edge = false;
        for (Cx r : roots) {
            double d = std::abs(r - center);
            if (std::abs(d - radius) < 1e-3) near_edge = true;
            if (d < radius) ++want;
        }
        if (near_edge) continue;
        REQUIRE(count_zeros_in_disk(g, center, radius) == want);
    }
}

TEST_CASE("witness families carry zeros near q") {
    Cx q0(3.0, 1.0);
    auto v = escape_search(q0, 300);
    REQUIRE(v.witness);
    auto mz = materialize_zero(*v.witness, q0, 0.1);
    REQUIRE(mz);
    CHECK(mz->zeros >= 1);
    CHECK(count_zeros_in_disk(mz->member.graph, q0, 0.1) == mz->zeros);

    Cx q1(2.2);
    auto v1 = escape_search(q1, 300);
    REQUIRE(v1.witness);
    auto m1 = materialize_zero(*v1.witness, q1, 0.1);
    REQUIRE(m1);
    CHECK(m1->zeros >= 1);
}

TEST_CASE("family shapes") {
    EscapeWitness virt{Cx(2.5), {}, SpherePoint(Cx(-1.5)), EscapeKind::virtual_, 1};
    FamilyMember a = witness_family(virt, 3, 4);
    CHECK(equivalent(a.graph, parallel_power(path(3), 4)));
    CHECK_FALSE(a.terminal_edge);
    EscapeWitness inter{Cx(1.6), {2}, SpherePoint(Cx(-1.5)), EscapeKind::interaction, 2};
    FamilyMember b = witness_family(inter, 2, 3);
    CHECK(b.terminal_edge);
    CHECK(b.graph.edge_count() == 2 * 2 * 3 + 1);
}
