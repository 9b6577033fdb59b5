#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diffract {

// Exact rational arithmetic on 64-bit numerator / denominator.
//
// Every value is kept normalised: den > 0 and gcd(|num|, den) = 1.
// Intermediate products are carried in 128 bits; a result whose reduced
// numerator or denominator does not fit in 64 bits throws overflow_error.
// The correlation recursions in this project keep denominators of size
// base^depth (depth ~ log base of the largest lag), so 64 bits leave a
// wide margin at the scales the toolkit runs at.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { *this = normalise(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        using I = __int128;
        return normalise(I(a.num_) * b.den_ + I(b.num_) * a.den_,
                         I(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + (-b);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        using I = __int128;
        return normalise(I(a.num_) * b.num_, I(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        using I = __int128;
        return normalise(I(a.num_) * b.den_, I(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        using I = __int128;
        I lhs = I(a.num_) * b.den_;
        I rhs = I(b.num_) * a.den_;
        return lhs < rhs   ? std::strong_ordering::less
               : lhs > rhs ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // Canonical "p/q" form, q >= 1, e.g. "-1/3", "5/1".
    std::string to_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" and "p/q".
    static Rational parse(std::string_view s);

private:
    static Rational normalise(__int128 n, __int128 d);

    std::int64_t num_;
    std::int64_t den_;
};

// Complex number with exact rational parts. Only the operations the
// correlation and homometry code need.
struct RatComplex {
    Rational re;
    Rational im;

    RatComplex() = default;
    RatComplex(Rational r) : re(r), im(0) {}
    RatComplex(Rational r, Rational i) : re(r), im(i) {}

    bool is_real() const { return im.is_zero(); }

    RatComplex conj() const { return {re, -im}; }
    Rational norm_sq() const { return re * re + im * im; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace diffract
