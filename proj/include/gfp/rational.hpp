#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "gfp/errors.hpp"

namespace gfp {

// Every scalar in the engine is exact: arbitrary-precision rationals, and
// Gaussian rationals (rational real + imaginary part) where *-structure or
// circular elements need i. There is no floating point anywhere.

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(num, den);  // cpp_rational reduces and keeps den > 0
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational real) : re(std::move(real)) {}           // NOLINT(google-explicit-constructor)
    GaussianRational(int value) : re(value) {}                         // NOLINT(google-explicit-constructor)
    GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational nre = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(nre);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
};

// Canonical rendering: "p/q" for rationals ("p" when q = 1), and
// "p/q+r/si" / "p/q-r/si" when the imaginary part is nonzero.
inline std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return to_string(z.re);
    std::string out = to_string(z.re);
    if (z.im < 0) {
        out += "-" + to_string(Rational(-z.im));
    } else {
        out += "+" + to_string(z.im);
    }
    out += "i";
    return out;
}

}  // namespace gfp
