// Acceptance checks. One PASS/FAIL line per criterion; notes are indented.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "spz/atlas.hpp"
#include "spz/certify.hpp"
#include "spz/escape.hpp"
#include "spz/leafjoin.hpp"
#include "spz/sp_poly.hpp"
#include "support.hpp"

using namespace spz;

namespace {

// Tolerances and limits, pinned.
constexpr int kExhaustiveEdges = 6;
constexpr int kRandomExprs = 500;
constexpr int kSoundnessEdges = 10;
constexpr double kNearOneRadiusOk = 0.06;
constexpr double kNearOneRadiusBad = 0.08;
constexpr std::int64_t kBudget = 300;
constexpr double kValue13 = -1.0033;
constexpr double kValue13Tol = 1e-3;
constexpr double kMaterializeRadius = 0.1;
constexpr double kBridgeTol = 1e-8;
constexpr double kTableTol = 5e-3;
constexpr double kZeroResidual = 1e-8;
constexpr double kRenderLimitSeconds = 30 * 60;
constexpr int kRenderWorkers = 8;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt_cx(Cx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
    return buf;
}

void note(const std::string& s) { std::cout << "  note: " << s << std::endl; }

Outcome criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    int checked = 0, bad = 0;
    for (const auto& g : testsupport::all_exprs_upto(kExhaustiveEdges)) {
        ++checked;
        if (z_poly(g) != brute_force_z(g)) ++bad;
    }
    auto rng = testsupport::rng(101);
    std::uniform_int_distribution<int> size(7, 12);
    for (int i = 0; i < kRandomExprs; ++i) {
        SpExpr g = testsupport::random_expr(rng, size(rng));
        ++checked;
        if (z_poly(g) != brute_force_z(g)) ++bad;
    }
    double t = seconds_since(t0);
    return {bad == 0 && t < 60.0,
            std::to_string(checked) + " expressions, " + std::to_string(bad) + " mismatches, " + fmt("%.1f s", t)};
}

Outcome criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<BigRat> qs;
    int missing = 0;
    for (int k = 1; k <= 19; ++k) {
        BigRat q(k, 20);
        try {
            certify_real_01(q.convert_to<double>());
            qs.push_back(q);
        } catch (const Error& e) {
            ++missing;
            note("no certificate at " + std::to_string(0.05 * k) + ": " + e.what());
        }
    }
    for (int k = 1; k <= 18; ++k) {
        BigRat q(100 + k, 100);
        try {
            certify_real_3227(q.convert_to<double>());
            qs.push_back(q);
        } catch (const Error& e) {
            ++missing;
            note("no certificate at " + std::to_string(1.0 + 0.01 * k) + ": " + e.what());
        }
    }
    auto buckets = testsupport::distinct_pairs_upto(kSoundnessEdges);
    std::size_t pairs = 0;
    for (const auto& b : buckets) pairs += b.size();
    int zeros = 0;
    for (const auto& q : qs)
        for (const auto& b : buckets)
            for (const auto& p : b)
                if ((p.same + p.dif).eval(q) == 0) ++zeros;
    double t = seconds_since(t0);
    return {missing == 0 && zeros == 0 && t < 120.0,
            std::to_string(qs.size()) + "/37 certified, " + std::to_string(pairs) +
                " distinct polynomials up to " + std::to_string(kSoundnessEdges) + " edges, " + std::to_string(zeros) +
                " exact zeros, " + fmt("%.1f s", t)};
}

Outcome criterion3() {
    int issued = 0, rejected = 0, general_found = 0;
    for (int k = 0; k < 16; ++k) {
        Cx q = 1.0 + std::polar(kNearOneRadiusOk, k * M_PI / 8);
        try {
            certify_near_one(q);
            ++issued;
        } catch (const Error& e) {
            note("near-one failed at " + fmt_cx(q) + ": " + e.what());
        }
        Cx far = 1.0 + std::polar(kNearOneRadiusBad, k * M_PI / 8);
        try {
            certify_near_one(far);
        } catch (const OutOfRange&) {
            ++rejected;
        }
        if (certify_general_search(far).cert) ++general_found;
    }
    note("general search at |q-1| = 0.08 certifies " + std::to_string(general_found) + "/16 points");
    return {issued == 16 && rejected == 16, std::to_string(issued) + "/16 issued at 0.06, " + std::to_string(rejected) +
                                                "/16 rejected at 0.08"};
}

// g(z) = f_q(z^2) iterated k times from 0.
Cx g_iter(Cx q, int k) {
    Cx z = 0.0;
    for (int i = 0; i < k; ++i) z = 1.0 + q / (z * z - 1.0);
    return z;
}

Outcome criterion4() {
    auto rng = testsupport::rng(104);
    bool ok = true;
    std::ostringstream d;

    int a_ok = 0;
    for (int n = 0; n < 50;) {
        Cx q = testsupport::random_cx(rng, 0.0, 2.0, -1.0, 1.0);
        if (!(std::abs(1.0 - q) > 1.05)) continue;
        ++n;
        auto v = escape_search(q, kBudget);
        if (v.status == EscapeStatus::escaped && (v.witness->word.empty() || v.witness->word == std::vector<int>{2}))
            ++a_ok;
    }
    d << "(a) " << a_ok << "/50";
    ok &= a_ok == 50;

    d << "; (b)";
    for (double q : {1.20, 1.30, 1.50}) {
        auto v = escape_search(Cx(q), kBudget);
        bool esc = v.status == EscapeStatus::escaped;
        bool twos = esc && std::all_of(v.witness->word.begin(), v.witness->word.end(), [](int x) { return x == 2; });
        bool good = esc && twos;
        if (esc && twos && !v.witness->value.inf) {
            Cx ref = g_iter(Cx(q), static_cast<int>(v.witness->word.size()) + 1);
            good &= std::abs(v.witness->value.z - ref) < 1e-9 * (1.0 + std::abs(ref));
        }
        if (q == 1.30) good &= esc && !v.witness->value.inf && std::abs(v.witness->value.z - kValue13) < kValue13Tol;
        d << " " << q << (good ? " ok" : esc ? " wrong-word" : " bounded");
        if (esc) {
            d << " [";
            for (std::size_t i = 0; i < v.witness->word.size(); ++i) d << (i ? "," : "") << v.witness->word[i];
            d << "]";
        }
        ok &= good;
        if (!esc) {
            for (std::int64_t b = 2 * kBudget; b <= (1 << 16); b *= 2) {
                auto w = escape_search(Cx(q), b);
                if (w.status == EscapeStatus::escaped) {
                    note(fmt("q = %.2f", q) + " escapes within budget " + std::to_string(b) + " with a word of length " +
                         std::to_string(w.witness->word.size()));
                    break;
                }
            }
        }
    }

    int c_ok = 0;
    for (int n = 0; n < 50;) {
        Cx q = testsupport::random_cx(rng, 1.55, 2.0, -1.0, 1.0);
        // Outside the unit disk around 1 the empty word escapes first.
        if (std::abs(1.0 - q) > 1.0) continue;
        ++n;
        auto v = escape_search(q, kBudget);
        if (v.status == EscapeStatus::escaped && v.witness->word == std::vector<int>{2}) ++c_ok;
    }
    d << "; (c) " << c_ok << "/50";
    ok &= c_ok == 50;

    int certified_escapes = 0;
    for (int k = 1; k <= 19; ++k)
        if (escape_search(Cx(0.05 * k), kBudget).status != EscapeStatus::bounded) ++certified_escapes;
    for (int k = 1; k <= 18; ++k)
        if (escape_search(Cx(1.0 + 0.01 * k), kBudget).status != EscapeStatus::bounded) ++certified_escapes;
    d << "; certified points escaping: " << certified_escapes;
    ok &= certified_escapes == 0;
    return {ok, d.str()};
}

Outcome criterion5() {
    bool ok = true;
    std::ostringstream d;
    for (Cx q0 : {Cx(2.5), Cx(3.0, 1.0)}) {
        auto t0 = std::chrono::steady_clock::now();
        auto v = escape_search(q0, kBudget);
        int zeros = 0;
        std::string shape = "none";
        if (v.witness) {
            SpExpr check = realize_witness(*v.witness);
            (void)check;
            auto mz = materialize_zero(*v.witness, q0, kMaterializeRadius);
            if (mz) {
                zeros = count_zeros_in_disk(mz->member.graph, q0, kMaterializeRadius);
                shape = "n=" + std::to_string(mz->member.n) + " m=" + std::to_string(mz->member.m);
            }
        }
        double t = seconds_since(t0);
        bool good = zeros >= 1 && t < 120.0;
        ok &= good;
        d << fmt_cx(q0) << ": " << zeros << " zeros (" << shape << ", " << fmt("%.1f s", t) << ") ";
    }
    return {ok, d.str()};
}

RootedTree random_uniform_shape(std::mt19937_64& rng, int d, int depth) {
    RootedTree t;
    for (int i = 0; i < d; ++i) {
        bool grow = depth > 1 && std::bernoulli_distribution(0.45)(rng);
        t.children.push_back(grow ? random_uniform_shape(rng, d, depth - 1) : tree_leaf());
    }
    return t;
}

Outcome criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    auto rng = testsupport::rng(106);
    double worst = 0.0;
    int evaluated = 0, skipped = 0;
    for (int s = 0; s < 50; ++s) {
        RootedTree shape = random_uniform_shape(rng, 2 + s % 4, 5);
        for (int k = 0; k < 20; ++k) {
            Cx q = testsupport::random_cx(rng, -1.0, 6.0, -3.0, 3.0);
            try {
                worst = std::max(worst, ratio_bridge_check(shape, q));
                ++evaluated;
            } catch (const Error&) {
                ++skipped;
            }
        }
    }
    double t = seconds_since(t0);
    return {worst < kBridgeTol && skipped == 0 && t < 60.0,
            std::to_string(evaluated) + " evaluations, worst " + fmt("%.2e", worst) + ", " + std::to_string(skipped) +
                " poles, " + fmt("%.1f s", t)};
}

Outcome criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    struct Row {
        int d1, d2;
        Cx want;
    };
    std::vector<Row> rows = {{3, 2, {4.027, 0.783}}, {4, 3, {5.088, 0.836}}, {6, 4, {7.058, 1.521}}, {9, 6, {10.084, 2.256}}};
    bool band = true, above = true;
    std::ostringstream d;
    for (const auto& r : rows) {
        ActivityPoint ap = activity_search(r.d1, r.d2);
        double err = std::abs(ap.q - r.want);
        int Delta = r.d1 + 1;
        band &= err <= kTableTol;
        above &= ap.q.real() > Delta;
        d << "(" << r.d1 << "," << r.d2 << ") " << fmt_cx(ap.q) << " err " << fmt("%.1e", err) << "; ";
    }
    double t = seconds_since(t0);
    d << fmt("%.1f s", t);
    return {band && above && t < 300.0, d.str()};
}

Outcome criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    ActivityPoint ap = activity_search(3, 2);
    std::vector<int> depths;
    for (int k = 1; k <= 8; ++k) depths.push_back(k);
    auto recs = zero_hunt_leafjoined(3, 2, depths, ap.q);
    std::optional<ZeroHuntRecord> hit, best;
    for (const auto& r : recs) {
        if (!r.converged) continue;
        if (!best || r.q_zero.real() > best->q_zero.real()) best = r;
        if (r.q_zero.real() > 4.0 && r.residual < kZeroResidual && !hit) hit = r;
    }
    double t = seconds_since(t0);
    std::ostringstream d;
    if (hit)
        d << "depth " << hit->depth << " " << to_string(hit->kind) << " zero at " << fmt_cx(hit->q_zero) << ", residual "
          << fmt("%.1e", hit->residual);
    else if (best)
        d << "no zero with Re(q) > 4 up to depth 8; largest Re at depth " << best->depth << ": " << fmt_cx(best->q_zero);
    else
        d << "no converged zero";
    d << ", " << fmt("%.1f s", t);

    if (!hit) {
        // Deeper trees, for the record only.
        std::vector<int> deep;
        for (int k = 49; k <= 59; k += 2) deep.push_back(k);
        auto more = zero_hunt_leafjoined(3, 2, deep, ap.q);
        for (const auto& r : more)
            if (r.converged)
                note("depth " + std::to_string(r.depth) + " " + to_string(r.kind) + " zero at " + fmt_cx(r.q_zero) +
                     ", distance to the activity point " + fmt("%.4f", std::abs(r.q_zero - ap.q)));
    }
    return {hit.has_value() && t < 300.0, d.str()};
}

bool is_blue(PixelColor c) { return c == PixelColor::blue75 || c == PixelColor::blue150 || c == PixelColor::blue300; }

Outcome criterion9(bool full) {
    std::ostringstream d;
    bool ok = true;
    RenderSpec s;
    s.width_px = s.height_px = 101;
    s.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    RenderResult r = render_pixels(s);
    int seg_bad = 0, right_bad = 0, outer_bad = 0;
    for (int y = 0; y < 101; ++y)
        for (int x = 0; x < 101; ++x) {
            Cx q = pixel_center(s, x, y);
            PixelColor c = r.pixels[static_cast<std::size_t>(y * 101 + x)];
            if (q.imag() == 0.0 && q.real() > 0.0 && q.real() < 32.0 / 27.0 && q != Cx(1.0) && c != PixelColor::orange)
                ++seg_bad;
            if (q.real() > 1.5 && q != Cx(2.0) && !is_blue(c)) ++right_bad;
            if (std::abs(1.0 - q) > 1.0 && c != PixelColor::blue75) ++outer_bad;
        }
    ok &= seg_bad == 0 && right_bad == 0 && outer_bad == 0;
    d << "101x101: " << seg_bad << " segment, " << right_bad << " Re>1.5, " << outer_bad << " |q-1|>1 violations";

    if (full) {
        RenderSpec big;
        big.workers = kRenderWorkers;
        auto t0 = std::chrono::steady_clock::now();
        RenderResult a = render_pixels(big);
        double ta = seconds_since(t0);
        big.workers = 1;
        RenderResult b = render_pixels(big);
        bool same = encode_ppm(a.pixels, big.width_px, big.height_px) == encode_ppm(b.pixels, big.width_px, big.height_px);
        ok &= ta < kRenderLimitSeconds && same;
        d << "; 1001x1001 on " << kRenderWorkers << " workers (" << std::thread::hardware_concurrency() << " cores) "
          << fmt("%.1f s", ta) << ", identical with 1 worker: " << (same ? "yes" : "no");
    }
    return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    int only = 0;
    bool quick = false;
    app.add_option("--criterion", only, "Run one criterion (1-9); default runs all")->check(CLI::Range(0, 9));
    app.add_flag("--quick", quick, "Skip the full-size render in criterion 9");
    CLI11_PARSE(app, argc, argv);

    std::map<int, std::pair<std::string, std::function<Outcome()>>> all = {
        {1, {"polynomials match subset expansion", criterion1}},
        {2, {"zero-free real intervals", criterion2}},
        {3, {"near-one disk", criterion3}},
        {4, {"escape regions", criterion4}},
        {5, {"zeros materialize near escaping q", criterion5}},
        {6, {"bridge identity", criterion6}},
        {7, {"activity table rows", criterion7}},
        {8, {"leaf-joined zeros with Re(q) > 4", criterion8}},
        {9, {"atlas render", [quick] { return criterion9(!quick); }}},
    };
    int failed = 0;
    for (auto& [n, entry] : all) {
        if (only && n != only) continue;
        Outcome o;
        try {
            o = entry.second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << entry.first << "): " << o.detail
                  << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
