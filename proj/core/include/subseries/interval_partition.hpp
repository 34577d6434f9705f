#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subseries/index_set.hpp"
#include "subseries/verdict.hpp"

namespace subseries {

/// Consecutive intervals I_n = [i_n, i_{n+1}) with i_0 = 0, represented by
/// their finite boundary list. Constructions truncate at an explicit
/// horizon; membership queries beyond coverage_end() report "outside".
class IntervalPartition {
  public:
    /// boundaries must start at 0 and be strictly increasing.
    static IntervalPartition from_boundaries(std::vector<index_t> boundaries,
                                             bool truncated = false, std::string desc = "");

    index_t block_count() const { return boundaries_.size() - 1; }
    index_t boundary(index_t n) const { return boundaries_.at(n); }
    index_t block_start(index_t n) const { return boundaries_.at(n); }
    index_t block_end(index_t n) const { return boundaries_.at(n + 1); }
    index_t block_size(index_t n) const { return block_end(n) - block_start(n); }
    index_t coverage_end() const { return boundaries_.back(); }
    bool truncated() const { return truncated_; }
    const std::string& description() const { return desc_; }
    const std::vector<index_t>& boundaries() const { return boundaries_; }

    /// Index of the block containing i, or nullopt beyond coverage.
    std::optional<index_t> block_of(index_t i) const;

  private:
    std::vector<index_t> boundaries_{0};
    bool truncated_ = false;
    std::string desc_;
};

IntervalPartition singleton_partition(index_t blocks);
/// |I_n| = n + 1, boundaries i_n = n(n+1)/2
IntervalPartition triangle_partition(index_t blocks);

/// Union of the selected blocks, as a lazy IndexSet. Membership beyond the
/// partition's coverage is false (truncation); the certificates describe the
/// untruncated set and are caller-asserted, so keep working horizons within
/// coverage. Even/odd selectors certify automatically.
IndexSet from_intervals(const IntervalPartition& ip, std::function<bool(index_t)> select,
                        Cert inf, Cert coinf, std::string desc);
IndexSet even_blocks(const IntervalPartition& ip);
IndexSet odd_blocks(const IntervalPartition& ip);

enum class DominanceMode { Star, Infty };

/// Finite-horizon verdict for "J dominates I": does J_n contain some I_k?
/// Counts only J-blocks that lie completely below `horizon`. Infty-mode
/// holds with at least `count` witnessing blocks; Star-mode (advisory)
/// holds when all but at most `count` scanned blocks witness.
TriVerdict ip_dominates(const IntervalPartition& I, const IntervalPartition& J, index_t horizon,
                        DominanceMode mode, index_t count = 5);

/// The inductive partition of g: j_0 = 0, j_{n+1} minimal with j_n < j_{n+1}
/// and g(x) < j_{n+1} for all x <= j_n. Truncates (with flag) at horizon.
IntervalPartition interval_partition_of_function(const std::function<index_t(index_t)>& g,
                                                 index_t horizon);

/// The map x -> i_{n+3} where x lies in block n. Defined for x below
/// boundary(block_count()-2); throws HorizonExhausted beyond.
class BlockSkipMap {
  public:
    explicit BlockSkipMap(IntervalPartition ip);
    index_t operator()(index_t x) const;
    index_t domain_end() const { return domain_end_; }

  private:
    IntervalPartition ip_;
    index_t domain_end_;
};

}  // namespace subseries
