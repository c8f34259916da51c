#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace birnbaum {

/// Exact rational number. Always canonical: lowest terms, denominator > 0.
/// Backed by GMP so numerators and denominators are arbitrary precision.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d);
    explicit Rational(mpq_class q);
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& n, const mpz_class& d);

    /// Accepts "a", "-a", "a/b" with optional leading '-'; base 10 only.
    static std::optional<Rational> parse(std::string_view text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational reciprocal() const;
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    /// "a/b", or just "a" when the denominator is 1.
    std::string str() const;

    /// Exact decimal rendering rounded to `sig_digits` significant digits
    /// (round half to even). "0" renders as "0.000" at 4 digits.
    std::string decimal(int sig_digits = 4) const;

    double to_double() const { return q_.get_d(); }

private:
    mpq_class q_;
};

/// "a/b (0.####)" — the display form used in reports.
std::string display(const Rational& q);

} // namespace birnbaum
