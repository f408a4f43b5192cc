#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace whitney {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). Thin value wrapper over GMP's mpq_class that keeps
/// expression templates out of user code.
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(implicit)
    Rational(long num, long den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    explicit Rational(const mpz_class& z) : q_(z) {}

    /// Parses "p/q" or "p". With `strict`, non-canonical input such as
    /// "2/4" or "3/1" is rejected.
    static Rational parse(std::string_view text, bool strict = false);

    /// Continued-fraction best approximation with denominator <= cap.
    static Rational from_double(double value, long denominator_cap);

    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    /// Largest integer <= value.
    mpz_class floor() const;
    /// Smallest integer >= value.
    mpz_class ceil() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// n choose r as an exact integer; 0 when r < 0 or r > n.
mpz_class binomial(long n, long r);

mpz_class factorial(long n);

}  // namespace whitney
