#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qramp {

using Rational = boost::multiprecision::cpp_rational;

// q^e as an exact rational, e may be negative.
inline Rational rational_pow(unsigned base, int e) {
    Rational r = 1;
    unsigned a = static_cast<unsigned>(e < 0 ? -e : e);
    for (unsigned i = 0; i < a; ++i) r *= base;
    if (e < 0) r = Rational(1) / r;
    return r;
}

// Exact complex number with rational real and imaginary parts.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() : re(0), im(0) {}
    ComplexRational(Rational r) : re(std::move(r)), im(0) {}
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    ComplexRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    ComplexRational operator-() const { return {-re, -im}; }
    ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
    ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
    ComplexRational operator*(const ComplexRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexRational operator/(const ComplexRational& o) const {
        Rational n = o.norm2();
        if (n == 0) throw std::domain_error("complex division by zero");
        ComplexRational p = *this * o.conj();
        return {p.re / n, p.im / n};
    }
    ComplexRational& operator+=(const ComplexRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) { return *this = *this * o; }

    bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const ComplexRational& o) const { return !(*this == o); }
};

inline std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& c) {
    return os << rational_to_string(c.re) << ' ' << rational_to_string(c.im);
}

}  // namespace qramp
