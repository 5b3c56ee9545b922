#pragma once

#include <Eigen/Eigenvalues>

#include <complex>
#include <vector>

#include "errors.hpp"

namespace spz {

using CPoly = std::vector<std::complex<double>>;  // ascending coefficients

inline CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
    if (a.empty() || b.empty()) return {};
    CPoly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline CPoly cpoly_pow(const CPoly& a, int n) {
    CPoly r{1.0};
    for (int i = 0; i < n; ++i) r = cpoly_mul(r, a);
    return r;
}

inline CPoly cpoly_add(CPoly a, const CPoly& b, std::complex<double> scale = 1.0) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    return a;
}

inline std::complex<double> cpoly_eval(const CPoly& p, std::complex<double> x) {
    std::complex<double> r = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline CPoly cpoly_deriv(const CPoly& p) {
    CPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
    return d;
}

// All roots via companion-matrix eigenvalues, each polished by a few Newton
// steps on the original polynomial.
inline std::vector<std::complex<double>> cpoly_roots(CPoly p) {
    while (!p.empty() && std::abs(p.back()) == 0.0) p.pop_back();
    if (p.size() < 2) throw DomainError("polynomial has no roots");
    const int n = static_cast<int>(p.size()) - 1;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    if (es.info() != Eigen::Success) throw NonConvergence("companion eigenvalues did not converge");
    CPoly dp = cpoly_deriv(p);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = es.eigenvalues()[i];
        for (int it = 0; it < 3; ++it) {
            std::complex<double> d = cpoly_eval(dp, z);
            if (d == 0.0) break;
            std::complex<double> step = cpoly_eval(p, z) / d;
            if (!(std::abs(step) < 1e-3 * (1.0 + std::abs(z)))) break;  // keep clustered roots stable
            z -= step;
        }
        out.push_back(z);
    }
    return out;
}

}  // namespace spz
