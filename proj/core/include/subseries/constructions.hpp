#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "subseries/classify.hpp"
#include "subseries/index_set.hpp"
#include "subseries/interval_partition.hpp"
#include "subseries/rational.hpp"
#include "subseries/series.hpp"

namespace subseries {

// --- product-space points for the covering-number construction --------------

/// Finite stem: block n is a tuple of naturals of length exactly 2n+2.
struct BaireStem {
    std::vector<std::vector<index_t>> blocks;
    void validate() const;
    index_t length() const { return blocks.size(); }
};

/// Point of the product space: an explicit prefix of blocks, all-zero
/// beyond. Block n has length 2n+2. Membership in the dense part Q
/// ("infinitely many nonzero blocks") is finite evidence only.
struct BairePoint {
    std::vector<std::vector<index_t>> blocks;
    void validate() const;
    std::vector<index_t> block(index_t n) const;  // zero-extends past the prefix
    index_t nonzero_blocks_below(index_t n) const;
};

/// sigma(s) = sum over blocks of (entry + 1).
index_t stem_weight(const BaireStem& s);
/// sigma(x restricted to its first k blocks).
index_t point_prefix_weight(const BairePoint& x, index_t k);

/// Least k <= search_bound with an extension t of s (|t| = k) such that
/// stem_weight(t) == point_prefix_weight(x, k). Surplus weight is absorbed
/// by the first entry of the first new block.
std::optional<std::pair<index_t, BaireStem>> suitable_extension_search(const BaireStem& s,
                                                                       const BairePoint& x,
                                                                       index_t search_bound);

/// The challenge series of the covering-number bound: block n occupies
/// 2n+2 positions starting at the prefix weight of y, with alternating
/// values +-1/(n+1). Zero elsewhere and beyond n_max blocks.
Series covm_series_from_point(const BairePoint& y, index_t n_max);

/// The response point: block n reads the switching-run lengths of X at
/// run indices n(n+1) .. n(n+1)+2n+1, entry = length - 1. X must be
/// certified infinite and coinfinite; throws when fewer than n_max(n_max+1)+1
/// switching points exist below horizon.
BairePoint covm_point_from_set(const IndexSet& x, index_t n_max, index_t horizon);

/// Inverse construction used to pair a point with a matching set: lays down
/// membership runs of lengths y_n(k)+1 in block order, alternating runs
/// starting inside or outside per zero_in_set, singleton runs beyond.
IndexSet set_with_switch_runs(const BairePoint& y, bool zero_in_set, index_t n_max);

// --- countable-family defeat -------------------------------------------------

struct PlacedBlock {
    index_t set_index = 0;
    index_t block_index = 0;  // k >= 1, block holds 2k points
    index_t lo = 0, hi = 0;   // enclosing interval [lo, hi)
};

struct DiagonalDefeat {
    Series series;
    std::vector<PlacedBlock> blocks;
};

/// For each set X_n and k = 1..blocks_per_set, places 2k increasing points
/// alternating inside/outside X_n and puts (-1)^m / k on them, so that
/// Sum_{X_n ∩ I_{n,k}} a = 1 exactly. Blocks are placed round by round in
/// increasing k, so magnitudes decrease along positions.
/// Every family member must be certified infinite and coinfinite.
DiagonalDefeat diagonal_defeat(const std::vector<IndexSet>& family, index_t blocks_per_set,
                               index_t horizon);

// --- splitting-number witness -------------------------------------------------

struct SplitWitness {
    Series series;
    IntervalPartition runs;  // maximal constant-membership runs of X
};

/// Block-constant alternating series over the run partition of X:
/// value (-1)^n / (|I_n| (n+1)) on run n, so run n sums to (-1)^n/(n+1).
/// X = union of even runs or of odd runs depending on whether 0 is in X.
SplitWitness split_witness_series(const IndexSet& x, index_t horizon);

// --- dominating-number maps ----------------------------------------------------

/// Greedy partition for modulus-certified series: each block accumulates
/// absolute sum >= 1, and the start of block n (n >= 1) clears the
/// convergence modulus at 1/(n+1)^2.
IntervalPartition d_bound_partition(const Series& a, index_t n_max,
                                    index_t scan_cap = index_t{1} << 24);
/// Same greedy, but stops after the partition covers `coverage` (or at
/// max_blocks, whichever comes first).
IntervalPartition d_bound_partition_covering(const Series& a, index_t coverage,
                                             index_t max_blocks,
                                             index_t scan_cap = index_t{1} << 24);

/// g(n) = max(decay_modulus(n), 2n), rounded up to an even value so the
/// range is constructively coinfinite. Materialized for n = 0..n_max.
std::vector<index_t> ac_decay_function(const Series& a, index_t n_max);

/// Series from a strictly increasing boundary map with f(0) = 0: block
/// [f(n), f(n+1)) carries (-1)^i / n for n >= 1; block 0 is zero-filled.
Series ac_series_from_f(const std::vector<index_t>& f);

/// ran(f) for a nondecreasing map; coinfiniteness stays uncertified unless
/// the caller attaches it.
IndexSet range_set(std::function<index_t(index_t)> f, std::string desc);
/// The unique increasing bijection onto X (n -> n-th member).
std::function<index_t(index_t)> increasing_bijection(const IndexSet& x);

// --- finite adjustment (translation case) --------------------------------------

/// Riemann-style greedy finite index set with exact sum inside the open
/// target interval, in pick order. Requires both signed parts of a to
/// escape +-1 below scan_bound (conditionality proxy).
std::vector<index_t> greedy_finite_adjust(const Series& a, const Rational& target_lo,
                                          const Rational& target_hi, index_t scan_bound);

// --- the three-set family and existential builders ------------------------------

/// X_i = omega without the residue class 3k+i, each infinite coinfinite.
std::array<IndexSet, 3> ssn_n_triple();

/// (-1)^m/(m+1) on the m-th member of A below horizon, zero elsewhere.
Series alternating_on(const IndexSet& a_set, index_t horizon);
/// Interleaved pairs: +1/(m+1) on the m-th pick from A, -1/(m+1) on the
/// m-th pick from B, picks strictly increasing A_0 < B_0 < A_1 < ...
/// A and B must be disjoint below horizon.
Series alternating_on_two(const IndexSet& a_set, const IndexSet& b_set, index_t horizon);

struct TwoSetDefeat {
    Series series;
    int dichotomy_case = 0;  // 1: outside both; 2: the two differences
};

/// A conditionally convergent series no two candidate sets keep conditional:
/// its signed supports avoid X_0 or X_1 the way the dichotomy dictates.
TwoSetDefeat two_set_defeat(const IndexSet& x0, const IndexSet& x1, index_t horizon,
                            index_t threshold = 10);

// --- sequential-composition maps ---------------------------------------------

/// Partition whose boundaries are the starts of count+1 extracted
/// oscillation intervals, with a prefix block so boundaries start at 0.
/// The orientation is recorded in the partition description.
IntervalPartition oscillation_interval_partition(const Series& a, const IndexSet& x,
                                                 const DiagnosticsConfig& cfg, index_t count);

/// { k : some J_n is contained in I_k }, judged below horizon.
IndexSet blocks_absorbing(const IntervalPartition& j, const IntervalPartition& i, index_t horizon);

/// (union over k in S of I_k ∩ X) united with (union over k not in S of
/// I_k ∖ X); outside the partition's coverage membership is false.
IndexSet compose_response(const IndexSet& x, const IntervalPartition& i, const IndexSet& s);

}  // namespace subseries
