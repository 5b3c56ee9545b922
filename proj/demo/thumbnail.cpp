// Small render of the default frame as ASCII, plus a PPM next to it.
//   demo_thumbnail [size [out.ppm]]

#include <cstdlib>
#include <iostream>
#include <string>

#include "spz/atlas.hpp"

static int run(int argc, char** argv) {
    using namespace spz;
    RenderSpec spec;
    spec.width_px = spec.height_px = argc > 1 ? std::atoi(argv[1]) : 41;
    std::string path = argc > 2 ? argv[2] : "thumbnail.ppm";

    RenderResult r = render_pixels(spec);
    const char glyph[] = {'#', '+', '.', 'o', ' '};
    for (int y = 0; y < spec.height_px; ++y) {
        for (int x = 0; x < spec.width_px; ++x)
            std::cout << glyph[static_cast<int>(r.pixels[static_cast<std::size_t>(y * spec.width_px + x)])];
        std::cout << '\n';
    }
    write_file(path, encode_ppm(r.pixels, spec.width_px, spec.height_px));
    std::cout << "# blue75  + blue150  . blue300  o orange  (blank) white\n"
              << "wrote " << path << "\n";
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const spz::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
