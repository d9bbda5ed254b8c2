#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "kmwb/errors.hpp"

namespace kmwb {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Rat make_rat(const Int& num, const Int& den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p". Throws ParseError on malformed input or zero denominator.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    try {
        Rat r(s);
        if (r.get_den() == 0) throw parse_error("zero denominator in \"" + s + "\"");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational literal \"" + s + "\"");
    }
}

/// Canonical rendering: reduced, positive denominator, "/1" omitted.
inline std::string rational_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Int factorial(int n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Gaussian rational a + bi with exact rational parts.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussRat conj() const { return {re, Rat(-im)}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {Rat(a.re + b.re), Rat(a.im + b.im)};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {Rat(a.re - b.re), Rat(a.im - b.im)};
    }
    friend GaussRat operator-(const GaussRat& a) { return {Rat(-a.re), Rat(-a.im)}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {Rat(a.re * b.re - a.im * b.im), Rat(a.re * b.im + a.im * b.re)};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw verification_error("DivisionByZero", "division by zero Gaussian rational");
        return {Rat((a.re * b.re + a.im * b.im) / n), Rat((a.im * b.re - a.re * b.im) / n)};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline std::string gauss_str(const GaussRat& g) {
    if (g.im == 0) return rational_str(g.re);
    return rational_str(g.re) + (g.im > 0 ? "+" : "-") + rational_str(Rat(abs(g.im))) + "i";
}

}  // namespace kmwb
