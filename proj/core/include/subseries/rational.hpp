#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmp.h>

namespace subseries {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. All arithmetic is exact; there is no rounding
/// anywhere in this library. Decimal output is an annotation only.
class Rational {
  public:
    Rational() { mpq_init(v_); }
    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    /// num/den, canonicalized. den must be nonzero.
    Rational(long num, unsigned long den);

    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    /// Accepts "p", "-p", "p/q" with arbitrary-precision decimal digits.
    static std::optional<Rational> parse(std::string_view text);

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.v_, a.v_);
        return r;
    }

    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_, b.v_) != 0;
    }
    /// Exact comparison. A floating-point screen settles values that are
    /// far apart; the cross-multiplying mpq_cmp only runs when the screen
    /// is inconclusive, so ordering large partial sums stays cheap.
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    int sign() const { return mpq_sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }

    Rational abs() const {
        Rational r;
        mpq_abs(r.v_, v_);
        return r;
    }
    /// 1/x; x must be nonzero.
    Rational reciprocal() const;

    /// floor(x) for nonnegative x that fits in 64 bits; throws otherwise.
    std::uint64_t floor_u64() const;

    /// "p/q", or just "p" when the value is an integer.
    std::string to_string() const;
    /// Decimal rendering rounded half-away-from-zero to `places` digits.
    std::string to_decimal(std::size_t places) const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    /// Shared magnitudes used throughout the construction formulas.
    static Rational unit_over(std::uint64_t den_minus_zero);        // 1/n, n >= 1
    static Rational signed_unit_over(bool negative, std::uint64_t den);  // +-1/n

  private:
    mpq_t v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace subseries
