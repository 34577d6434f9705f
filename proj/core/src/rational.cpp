#include "subseries/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace subseries {

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const double da = mpq_get_d(a.v_);
    const double db = mpq_get_d(b.v_);
    // mpq_get_d has relative error below 2^-51; a gap beyond 1e-12 of the
    // larger magnitude cannot be a rounding artifact
    const double mag = std::max(std::fabs(da), std::fabs(db));
    if (std::isfinite(da) && std::isfinite(db) && std::fabs(da - db) > mag * 1e-12)
        return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
    const int c = mpq_cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational::Rational(long num, unsigned long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_init(v_);
    mpq_set_si(v_, num, den);
    mpq_canonicalize(v_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string num(text.substr(0, slash == std::string_view::npos ? text.size() : slash));
    if (!digits_ok(num, true)) return std::nullopt;
    std::string den = "1";
    if (slash != std::string_view::npos) {
        den = std::string(text.substr(slash + 1));
        if (!digits_ok(den, false)) return std::nullopt;
    }
    Rational r;
    if (mpz_set_str(mpq_numref(r.v_), num.c_str(), 10) != 0) return std::nullopt;
    if (mpz_set_str(mpq_denref(r.v_), den.c_str(), 10) != 0) return std::nullopt;
    if (mpz_sgn(mpq_denref(r.v_)) == 0) return std::nullopt;
    mpq_canonicalize(r.v_);
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
    Rational r;
    mpq_div(r.v_, a.v_, b.v_);
    return r;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::invalid_argument("Rational: reciprocal of zero");
    Rational r;
    mpq_inv(r.v_, v_);
    return r;
}

std::uint64_t Rational::floor_u64() const {
    if (sign() < 0) throw std::domain_error("Rational::floor_u64: negative value");
    mpz_t q;
    mpz_init(q);
    mpz_fdiv_q(q, mpq_numref(v_), mpq_denref(v_));
    if (!mpz_fits_ulong_p(q)) {
        mpz_clear(q);
        throw std::overflow_error("Rational::floor_u64: value too large");
    }
    const unsigned long out = mpz_get_ui(q);
    mpz_clear(q);
    return out;
}

std::string Rational::to_string() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

std::string Rational::to_decimal(std::size_t places) const {
    // round(|num| * 10^places / den), half away from zero
    mpz_t scaled, rem, den;
    mpz_init(scaled);
    mpz_init(rem);
    mpz_init(den);
    mpz_abs(scaled, mpq_numref(v_));
    mpz_ui_pow_ui(den, 10, places);
    mpz_mul(scaled, scaled, den);
    mpz_set(den, mpq_denref(v_));
    mpz_fdiv_qr(scaled, rem, scaled, den);
    mpz_mul_2exp(rem, rem, 1);
    if (mpz_cmp(rem, den) >= 0) mpz_add_ui(scaled, scaled, 1);

    char* s = mpz_get_str(nullptr, 10, scaled);
    std::string digits(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, digits.size() + 1);
    mpz_clear(scaled);
    mpz_clear(rem);
    mpz_clear(den);

    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out;
    if (sign() < 0 && digits.find_first_not_of('0') != std::string::npos) out += '-';
    out += digits.substr(0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - places);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational Rational::unit_over(std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("unit_over: zero denominator");
    Rational r;
    mpq_set_ui(r.v_, 1, den);
    return r;  // 1/n is already canonical
}

Rational Rational::signed_unit_over(bool negative, std::uint64_t den) {
    Rational r = unit_over(den);
    if (negative) mpq_neg(r.v_, r.v_);
    return r;
}

}  // namespace subseries
