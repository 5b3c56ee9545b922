// Activity point of the alternating (d1,d2) leaf-joined trees, and a few
// zeros of the trees themselves.
//   demo_table_row [Delta]

#include <cstdlib>
#include <iostream>

#include "spz/leafjoin.hpp"

static int run(int argc, char** argv) {
    using namespace spz;
    int Delta = argc > 1 ? std::atoi(argv[1]) : 4;
    auto [d1, d2] = table_type(Delta);
    ActivityPoint a = activity_search(d1, d2);
    std::cout << "Delta " << Delta << "  type (" << d1 << "," << d2 << ")\n"
              << "q* = " << a.q << "  Re(q*)/Delta = " << a.q.real() / Delta << "\n"
              << "lambda = " << a.lambda << "  neutral fixed point z = " << a.z_fixed << "\n";

    for (const auto& r : zero_hunt_leafjoined(d1, d2, {2, 4, 6, 8}, a.q)) {
        std::cout << "depth " << r.depth << ": ";
        if (r.converged)
            std::cout << "zero at " << r.q_zero << " (" << to_string(r.kind) << ", " << r.edges << " edges)\n";
        else
            std::cout << r.note << "\n";
    }
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
