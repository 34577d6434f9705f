#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subseries/index_set.hpp"
#include "subseries/rational.hpp"

namespace subseries {

enum class SeriesClass { cc, ac, i, o, unknown };

constexpr std::string_view to_string(SeriesClass c) {
    switch (c) {
        case SeriesClass::cc: return "cc";
        case SeriesClass::ac: return "ac";
        case SeriesClass::i: return "i";
        case SeriesClass::o: return "o";
        default: return "unknown";
    }
}

enum class LimitKind { Finite, PlusInfinity, MinusInfinity, Oscillation };

struct LimitValue {
    LimitKind kind = LimitKind::Finite;
    Rational value;  // meaningful for Finite only
};

/// eps -> N such that every interval sum starting at or beyond N lies in
/// (-eps, eps). Builders attach sound analytic moduli; they need not be
/// minimal. Never inferred from finite data.
using ConvergenceModulus = std::function<index_t(const Rational&)>;

/// n -> N such that |a_i| <= 1/(n+1)^2 for all i >= N.
using DecayModulus = std::function<index_t(index_t)>;

/// A lazy series: a pure total term map plus optional analytic certificates.
/// Values are immutable; copies share the underlying closures.
class Series {
  public:
    Series();  // the zero series
    Series(std::function<Rational(index_t)> term, std::string desc);

    Rational term(index_t i) const { return term_(i); }
    const std::string& description() const { return desc_; }

    const std::optional<ConvergenceModulus>& convergence_modulus() const { return conv_; }
    const std::optional<DecayModulus>& decay_modulus() const { return decay_; }
    SeriesClass declared_class() const { return class_; }
    const std::optional<LimitValue>& known_limit() const { return limit_; }

    Series with_convergence_modulus(ConvergenceModulus m) const;
    Series with_decay_modulus(DecayModulus m) const;
    Series with_class(SeriesClass c) const;
    Series with_limit(LimitValue l) const;
    Series with_description(std::string desc) const;

  private:
    std::function<Rational(index_t)> term_;
    std::optional<ConvergenceModulus> conv_;
    std::optional<DecayModulus> decay_;
    SeriesClass class_ = SeriesClass::unknown;
    std::optional<LimitValue> limit_;
    std::string desc_;
};

// --- builders ---------------------------------------------------------------

/// (-1)^i / (i+1)
Series alternating_harmonic();
/// 1 / (i+1)^2
Series basel_series();
Series zero_series();

// --- pointwise transformations ----------------------------------------------

/// Termwise q*a. q must be nonzero; certificates transform exactly.
Series scale(const Series& a, const Rational& q);
/// a_i + t/(i+1)^2 (index shifted so the formula is defined at 0).
Series perturb_quadratic(const Series& a, const Rational& t);
/// Sign flip on X. Convergence modulus and class do not survive arbitrary
/// flips and are dropped; the decay modulus is magnitude-only and kept.
Series flip_signs_on(const Series& a, const IndexSet& x);
Series add_pointwise(const Series& a, const Series& b);

/// Subseries reindexed along X's increasing enumeration. X must be
/// certified infinite. Certificates are dropped (a subseries of a
/// conditionally convergent series need not be anything in particular).
Series restrict_series(const Series& a, const IndexSet& x);

struct SignSets {
    IndexSet positives, negatives, zeros;
};

/// Sign sets P/N/Z as lazy index sets. A set found to have at least
/// ceil(horizon/10) members below the horizon is flagged Heuristic-infinite;
/// the heuristic alone never satisfies a certified-infinite precondition.
SignSets sign_sets(const Series& a, index_t horizon);

// --- exact partial sums -----------------------------------------------------

/// Exact Sum_{i in X, i < k} a_i.
Rational partial_sum(const Series& a, const IndexSet& x, index_t k);
Rational partial_sum(const Series& a, index_t k);

/// Dense trace of partial sums for k = 0..horizon; sums[k] is over X∩k.
struct PartialSumTrace {
    index_t horizon = 0;
    std::vector<Rational> sums;
    std::string index_set_id;
};

/// Materializes the dense trace; guarded against huge horizons (the
/// classification engine streams instead of materializing).
PartialSumTrace build_trace(const Series& a, const IndexSet& x, index_t horizon);

}  // namespace subseries
