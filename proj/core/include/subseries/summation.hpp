#pragma once

#include <cstdint>
#include <functional>

#include "subseries/index_set.hpp"
#include "subseries/rational.hpp"
#include "subseries/series.hpp"

namespace subseries {

/// Balanced (divide and conquer) exact sum of f(i) for i in [lo, hi).
/// Keeps intermediate denominators near the lcm of the range instead of
/// letting a serial accumulator grow quadratically.
Rational tree_sum(index_t lo, index_t hi, const std::function<Rational(index_t)>& f);

enum class SignFilter { All, PositivePart, NegativePart, AbsoluteValue };

/// Exact sum of the selected terms of a over X ∩ [lo, hi).
/// x == nullptr means no index restriction.
Rational range_sum(const Series& a, const IndexSet* x, index_t lo, index_t hi,
                   SignFilter filter = SignFilter::All);

/// One pass, three accumulators: full sum, positive part, negative part,
/// all over X ∩ [lo, hi), plus counts of the contributing terms.
/// Terms are evaluated once.
struct TriSum {
    Rational all, positive, negative;
    index_t positive_terms = 0, negative_terms = 0;
    TriSum& operator+=(const TriSum& o);
};
TriSum range_sum3(const Series& a, const IndexSet* x, index_t lo, index_t hi);

}  // namespace subseries
