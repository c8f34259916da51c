#include "birnbaum/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace birnbaum {

Rational::Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    if (sgn(q_.get_den()) == 0) throw std::invalid_argument("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (sgn(d) == 0) throw std::invalid_argument("rational with zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::invalid_argument("reciprocal of zero");
    return Rational(mpq_class(1) / q_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto digits_ok = [](std::string_view s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!digits_ok(text)) return std::nullopt;
        return Rational(mpq_class(mpz_class(std::string(text)), 1));
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-') return std::nullopt;
    mpz_class d{std::string(den)};
    if (sgn(d) == 0) return std::nullopt;
    return Rational(mpz_class(std::string(num)), d);
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_str();
}

std::string Rational::decimal(int sig_digits) const {
    if (sig_digits < 1) sig_digits = 1;
    if (is_zero()) {
        std::string s = "0.";
        s.append(static_cast<size_t>(sig_digits - 1), '0');
        return s == "0." ? "0" : s;
    }

    const bool neg = sign() < 0;
    mpz_class n = ::abs(q_.get_num());
    mpz_class d = q_.get_den();

    // exponent e with 10^e <= n/d < 10^(e+1)
    long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
    mpz_class pow10;
    auto cmp_pow = [&](long k) {
        // sign of n/d - 10^k
        if (k >= 0) {
            mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(k));
            return cmp(n, d * pow10);
        }
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-k));
        return cmp(n * pow10, d);
    };
    while (cmp_pow(e) < 0) --e;
    while (cmp_pow(e + 1) >= 0) ++e;

    // digits = round(n/d * 10^(sig-1-e)), half to even
    long shift = sig_digits - 1 - e;
    mpz_class sn = n, sd = d;
    if (shift >= 0) {
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        sn *= pow10;
    } else {
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        sd *= pow10;
    }
    mpz_class quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), sn.get_mpz_t(), sd.get_mpz_t());
    int half = cmp(rem * 2, sd);
    if (half > 0 || (half == 0 && mpz_odd_p(quot.get_mpz_t())))
        quot += 1;

    std::string digits = quot.get_str();
    if (static_cast<int>(digits.size()) > sig_digits) {
        // rounding carried (e.g. 9.99 -> 10.0)
        digits.pop_back();
        ++e;
    }

    std::string out;
    if (e >= sig_digits || e < -4) {
        // scientific form for extreme magnitudes
        out += digits.substr(0, 1);
        if (sig_digits > 1) {
            out += '.';
            out += digits.substr(1);
        }
        out += 'e';
        out += std::to_string(e);
    } else if (e >= 0) {
        out = digits.substr(0, static_cast<size_t>(e) + 1);
        if (e + 1 < sig_digits) {
            out += '.';
            out += digits.substr(static_cast<size_t>(e) + 1);
        }
    } else {
        out = "0.";
        out.append(static_cast<size_t>(-e - 1), '0');
        out += digits;
    }
    return neg ? "-" + out : out;
}

std::string display(const Rational& q) {
    return q.str() + " (" + q.decimal() + ")";
}

} // namespace birnbaum
