#include <catch_amalgamated.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spz/atlas.hpp"

using namespace spz;

namespace {

bool is_blue(PixelColor c) { return c == PixelColor::blue75 || c == PixelColor::blue150 || c == PixelColor::blue300; }

RenderSpec small(int n, int workers = 1) {
    RenderSpec s;
    s.width_px = s.height_px = n;
    s.workers = workers;
    return s;
}

}  // namespace

TEST_CASE("pixel examples") {
    RenderSpec s;
    CHECK(classify_pixel(Cx(1.9, 0.5), s).color == PixelColor::blue75);
    CHECK(classify_pixel(Cx(0.6), s).color == PixelColor::orange);
    for (Cx q : {Cx(0.0), Cx(1.0), Cx(2.0)}) CHECK(classify_pixel(q, s).color == PixelColor::white);
    // Blue pixels never carry a certificate.
    auto b = classify_pixel(Cx(1.6), s);
    CHECK(is_blue(b.color));
    CHECK_FALSE(b.cert);
}

TEST_CASE("pixel centres include the frame edges") {
    RenderSpec s = small(11);
    CHECK(pixel_center(s, 0, 0) == Cx(0.0, 1.0));
    CHECK(pixel_center(s, 10, 10) == Cx(2.0, -1.0));
    CHECK(pixel_center(s, 0, 5) == Cx(0.0, 0.0));
    CHECK(pixel_center(s, 5, 5) == Cx(1.0, 0.0));
}

TEST_CASE("bad specs are rejected") {
    RenderSpec s = small(3);
    s.width_px = 0;
    CHECK_THROWS_AS(validate(s), ArgumentError);
    s = small(3);
    s.blue_depths = {150, 75};
    CHECK_THROWS_AS(validate(s), ArgumentError);
    s.blue_depths = {};
    CHECK_THROWS_AS(validate(s), ArgumentError);
}

TEST_CASE("thumbnail") {
    auto t0 = std::chrono::steady_clock::now();
    RenderResult r = render_pixels(small(11));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 5.0);
    CHECK(r.pixels.size() == 121);
    CHECK(r.pixels[5 * 11 + 0] == PixelColor::white);
    std::int64_t total = 0;
    for (auto c : r.summary.counts) total += c;
    CHECK(total == 121);
    CHECK(r.summary.counts[static_cast<std::size_t>(PixelColor::orange)] > 0);
    CHECK(r.summary.counts[static_cast<std::size_t>(PixelColor::blue75)] > 0);
}

TEST_CASE("worker count does not change the image") {
    RenderResult a = render_pixels(small(21, 1));
    RenderResult b = render_pixels(small(21, 4));
    CHECK(encode_ppm(a.pixels, 21, 21) == encode_ppm(b.pixels, 21, 21));
}

TEST_CASE("row callback sees rows in order") {
    std::vector<int> seen;
    render_pixels(small(7, 3), [&](int y, const std::vector<PixelVerdict>& row) {
        seen.push_back(y);
        REQUIRE(row.size() == 7);
    });
    CHECK(seen == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("qualitative regions on a coarse grid") {
    RenderSpec s = small(31);
    RenderResult r = render_pixels(s);
    for (int y = 0; y < 31; ++y)
        for (int x = 0; x < 31; ++x) {
            Cx q = pixel_center(s, x, y);
            PixelColor c = r.pixels[static_cast<std::size_t>(y * 31 + x)];
            // q = 2 is an excluded point and stays white.
            if (q.real() > 1.5 && q != Cx(2.0)) REQUIRE(is_blue(c));
            if (std::abs(1.0 - q) > 1.0) REQUIRE(c == PixelColor::blue75);
            if (q.imag() == 0.0 && q.real() > 0.0 && q.real() < 32.0 / 27.0 && q != Cx(1.0))
                REQUIRE(c == PixelColor::orange);
        }
}

TEST_CASE("ppm encoding") {
    std::string p = encode_ppm({PixelColor::orange, PixelColor::white}, 2, 1);
    CHECK(p.substr(0, 11) == "P6\n2 1\n255\n");
    CHECK(p.size() == 11 + 6);
    CHECK(static_cast<unsigned char>(p[11]) == 245);
    CHECK(static_cast<unsigned char>(p[16]) == 255);

    auto path = std::filesystem::temp_directory_path() / "spz_atlas_test.ppm";
    write_file(path.string(), p);
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == p);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.ppm", p), IoError);
}
