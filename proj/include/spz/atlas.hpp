#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "certify.hpp"
#include "escape.hpp"

namespace spz {

struct RenderSpec {
    Cx lower_left{0.0, -1.0};
    Cx upper_right{2.0, 1.0};
    int width_px = 1001;
    int height_px = 1001;
    std::vector<int> blue_depths{75, 150, 300};
    double orange_slack = 1e-6;
    int workers = 1;
};

enum class PixelColor { blue75, blue150, blue300, orange, white };

inline const char* to_string(PixelColor c) {
    switch (c) {
        case PixelColor::blue75: return "blue75";
        case PixelColor::blue150: return "blue150";
        case PixelColor::blue300: return "blue300";
        case PixelColor::orange: return "orange";
        case PixelColor::white: return "white";
    }
    return "";
}

inline std::array<std::uint8_t, 3> rgb(PixelColor c) {
    switch (c) {
        case PixelColor::blue75: return {20, 40, 120};
        case PixelColor::blue150: return {60, 90, 180};
        case PixelColor::blue300: return {120, 150, 220};
        case PixelColor::orange: return {245, 130, 32};
        case PixelColor::white: return {255, 255, 255};
    }
    return {0, 0, 0};
}

struct PixelVerdict {
    Cx q{};
    PixelColor color = PixelColor::white;
    EscapeVerdict escape;
    std::optional<ZeroFreeCertificate> cert;
    double cert_slack = 0.0;
    std::string diagnostic;
};

inline void validate(const RenderSpec& s) {
    if (s.width_px < 1 || s.height_px < 1) throw ArgumentError("image size must be positive");
    if (s.blue_depths.empty()) throw ArgumentError("need at least one blue depth");
    if (!std::is_sorted(s.blue_depths.begin(), s.blue_depths.end()) || s.blue_depths.front() < 1)
        throw ArgumentError("blue depths must be positive and ascending");
    if (s.blue_depths.size() > 3) throw ArgumentError("at most three blue shades");
}

// Pixel centers include both frame edges.
inline Cx pixel_center(const RenderSpec& s, int x, int y) {
    double re = s.width_px == 1 ? s.lower_left.real()
                                : s.lower_left.real() + (s.upper_right.real() - s.lower_left.real()) * x / (s.width_px - 1);
    double im = s.height_px == 1 ? s.upper_right.imag()
                                 : s.upper_right.imag() - (s.upper_right.imag() - s.lower_left.imag()) * y / (s.height_px - 1);
    return {re, im};
}

inline PixelVerdict classify_pixel(Cx q, const RenderSpec& spec) {
    PixelVerdict v;
    v.q = q;
    if (q == Cx(0.0) || q == Cx(1.0) || q == Cx(2.0)) return v;
    try {
        v.escape = escape_search(q, spec.blue_depths.back(), spec.blue_depths);
        if (v.escape.status == EscapeStatus::escaped) {
            auto idx = std::find(spec.blue_depths.begin(), spec.blue_depths.end(), v.escape.shading_depth) -
                       spec.blue_depths.begin();
            v.color = static_cast<PixelColor>(idx);
            return v;
        }
        double slack = 0.0;
        v.cert = certify_auto(q, kDelta, &slack);
        v.cert_slack = slack;
        if (v.cert && v.cert->margins.min_slack() >= spec.orange_slack) v.color = PixelColor::orange;
    } catch (const std::exception& e) {
        v.color = PixelColor::white;
        v.diagnostic = e.what();
    }
    return v;
}

struct RenderSummary {
    std::array<std::int64_t, 5> counts{};
    double wall_seconds = 0.0;
    int width = 0, height = 0;
};

struct RenderResult {
    std::vector<PixelColor> pixels;  // row-major, top row first
    RenderSummary summary;
};

// Rows are handed out through an atomic counter; every pixel lands in its own
// slot, so the output does not depend on the worker count.
inline RenderResult render_pixels(const RenderSpec& spec,
                                  const std::function<void(int, const std::vector<PixelVerdict>&)>& on_row = {}) {
    validate(spec);
    auto t0 = std::chrono::steady_clock::now();
    RenderResult r;
    const int W = spec.width_px, H = spec.height_px;
    r.pixels.assign(static_cast<std::size_t>(W) * static_cast<std::size_t>(H), PixelColor::white);
    std::vector<std::vector<PixelVerdict>> rows;
    if (on_row) rows.resize(static_cast<std::size_t>(H));
    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            int y = next.fetch_add(1);
            if (y >= H) return;
            std::vector<PixelVerdict> row;
            if (on_row) row.reserve(static_cast<std::size_t>(W));
            for (int x = 0; x < W; ++x) {
                PixelVerdict pv = classify_pixel(pixel_center(spec, x, y), spec);
                r.pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(W) + static_cast<std::size_t>(x)] = pv.color;
                if (on_row) row.push_back(std::move(pv));
            }
            if (on_row) rows[static_cast<std::size_t>(y)] = std::move(row);
        }
    };
    int nw = std::max(1, spec.workers);
    std::vector<std::thread> pool;
    for (int i = 1; i < nw; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (on_row)
        for (int y = 0; y < H; ++y) on_row(y, rows[static_cast<std::size_t>(y)]);
    for (PixelColor c : r.pixels) ++r.summary.counts[static_cast<std::size_t>(c)];
    r.summary.width = W;
    r.summary.height = H;
    r.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string encode_ppm(const std::vector<PixelColor>& px, int w, int h) {
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + px.size() * 3);
    for (PixelColor c : px) {
        auto v = rgb(c);
        out.append(reinterpret_cast<const char*>(v.data()), 3);
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed for " + path);
}

}  // namespace spz
