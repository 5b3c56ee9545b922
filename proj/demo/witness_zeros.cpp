// Finds an escape witness at q0 and a member of its graph family with a
// chromatic zero near q0.
//   demo_witness_zeros [re im [radius]]

#include <cstdlib>
#include <iostream>

#include "spz/escape.hpp"

static int run(int argc, char** argv) {
    using namespace spz;
    Cx q0(argc > 1 ? std::atof(argv[1]) : 3.0, argc > 2 ? std::atof(argv[2]) : 1.0);
    double radius = argc > 3 ? std::atof(argv[3]) : 0.1;

    EscapeVerdict v = escape_search(q0, 300);
    if (!v.witness) {
        std::cout << "q0 = " << q0 << ": no escape within budget 300\n";
        return 1;
    }
    const EscapeWitness& w = *v.witness;
    std::cout << "q0 = " << q0 << "\nword = (";
    for (std::size_t i = 0; i < w.word.size(); ++i) std::cout << (i ? "," : "") << w.word[i];
    std::cout << ")  kind = " << to_string(w.kind) << "  |value| = " << w.value.abs() << "\n";

    auto mz = materialize_zero(w, q0, radius);
    if (!mz) {
        std::cout << "no family member with a zero found\n";
        return 1;
    }
    std::cout << "N = " << mz->member.n << ", m = " << mz->member.m
              << (mz->member.terminal_edge ? ", plus a terminal edge" : "") << "\n"
              << mz->member.graph.edge_count() << " edges, " << mz->zeros << " zero(s) within " << radius << "\n";
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
