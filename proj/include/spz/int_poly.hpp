#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spz {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Integer polynomial in one variable, ascending coefficients, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long long> cs) {
        for (long long c : cs) c_.emplace_back(c);
        trim();
    }
    explicit IntPoly(std::vector<BigInt> cs) : c_(std::move(cs)) { trim(); }

    static IntPoly constant(const BigInt& v) { return IntPoly(std::vector<BigInt>{v}); }
    static IntPoly monomial(const BigInt& v, std::size_t k) {
        std::vector<BigInt> cs(k + 1);
        cs[k] = v;
        return IntPoly(std::move(cs));
    }
    static IntPoly x() { return monomial(1, 1); }

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
    BigInt leading() const { return c_.empty() ? BigInt(0) : c_.back(); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a) {
        std::vector<BigInt> r = a.c_;
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }

    // Division that must be exact; the divisor must be monic up to sign
    // or divide every step cleanly.
    IntPoly exact_div(const IntPoly& d) const {
        if (d.is_zero()) throw InternalError("division by zero polynomial");
        if (is_zero()) return {};
        if (degree() < d.degree()) throw InternalError("exact division left a remainder");
        std::vector<BigInt> rem = c_;
        std::vector<BigInt> quo(static_cast<std::size_t>(degree() - d.degree() + 1));
        const BigInt& lead = d.c_.back();
        for (int k = degree() - d.degree(); k >= 0; --k) {
            const BigInt& top = rem[static_cast<std::size_t>(k + d.degree())];
            if (top == 0) continue;
            if (top % lead != 0) throw InternalError("exact division left a remainder");
            BigInt t = top / lead;
            quo[static_cast<std::size_t>(k)] = t;
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= t * d.c_[j];
        }
        for (const auto& v : rem)
            if (v != 0) throw InternalError("exact division left a remainder");
        return IntPoly(std::move(quo));
    }

    BigInt eval(const BigInt& x) const {
        BigInt r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    BigRat eval(const BigRat& x) const {
        // Horner over the common denominator keeps intermediate sizes small.
        BigInt num = boost::multiprecision::numerator(x);
        BigInt den = boost::multiprecision::denominator(x);
        BigInt acc = 0, dpow = 1;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * num + *it * dpow;
            dpow *= den;
        }
        // acc / den^deg
        if (c_.empty()) return BigRat(0);
        BigInt scale = 1;
        for (int i = 0; i < degree(); ++i) scale *= den;
        return BigRat(acc, scale);
    }

    // sum |c_k| r^k, the scale against which a value near zero is judged.
    double abs_eval(double r) const {
        double m = 0.0;
        for (auto it = d_.rbegin(); it != d_.rend(); ++it) m = m * r + std::abs(*it);
        return m;
    }

    // Double Horner when its error bound is small against the result,
    // otherwise 60-digit Horner on the exact coefficients. Chromatic
    // polynomials alternate in sign, so cancellation is the normal case.
    std::complex<double> eval(std::complex<double> x) const {
        const auto& d = dcoeffs();
        std::complex<double> r = 0.0;
        double mag = 0.0, ax = std::abs(x);
        for (auto it = d.rbegin(); it != d.rend(); ++it) {
            r = r * x + *it;
            mag = mag * ax + std::abs(*it);
        }
        double bound = (4.0 * static_cast<double>(d.size()) + 4.0) * 1.12e-16 * mag;
        if (bound <= 1e-14 * std::abs(r) || mag == 0.0) return r;
        using Mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;
        Mp xr = x.real(), xi = x.imag(), re = 0, im = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Mp nr = re * xr - im * xi + Mp(*it);
            im = re * xi + im * xr;
            re = nr;
        }
        return {re.convert_to<double>(), im.convert_to<double>()};
    }

    // Sparse "coeff*q^k" terms joined by " + ", highest degree first.
    std::string to_string(const std::string& var = "q") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const BigInt& v = c_[static_cast<std::size_t>(k)];
            if (v == 0) continue;
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            first = false;
            BigInt a = v < 0 ? BigInt(-v) : v;
            if (k == 0) {
                os << a;
            } else {
                if (a != 1) os << a << "*";
                os << var;
                if (k > 1) os << "^" << k;
            }
        }
        return os.str();
    }

    std::vector<std::string> coeff_strings() const {
        std::vector<std::string> out;
        for (const auto& v : c_) out.push_back(v.str());
        return out;
    }

private:
    std::vector<BigInt> c_;
    std::vector<double> d_;  // double copy for fast complex Horner

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        d_.clear();
        for (const auto& v : c_) d_.push_back(v.convert_to<double>());
    }
    const std::vector<double>& dcoeffs() const { return d_; }
};

}  // namespace spz
