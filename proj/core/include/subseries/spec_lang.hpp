#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subseries/index_set.hpp"
#include "subseries/interval_partition.hpp"
#include "subseries/rational.hpp"
#include "subseries/series.hpp"

namespace subseries::lang {

/// Parse tree of the series/set mini-language.
///   expr := name | name '(' args ')'
///   arg  := expr | number | 'p/q' | bit-string | '[' args ']'
/// Number-like lexemes keep their raw spelling so bit strings with leading
/// zeros round-trip; the builders type them at evaluation.
struct SpecExpr {
    enum class Kind { Call, Literal, List };
    Kind kind = Kind::Call;
    std::string name;            // Call: builder name; Literal: raw lexeme
    std::vector<SpecExpr> args;  // Call arguments or List elements

    bool operator==(const SpecExpr&) const = default;
};

/// Throws ParseError with a 1-based offset on malformed input.
SpecExpr parse_spec(std::string_view text);
std::string print_spec(const SpecExpr& e);

/// Evaluation. Horizon-truncated constructions use `horizon`.
Series build_series(const SpecExpr& e, index_t horizon);
IndexSet build_set(const SpecExpr& e);
IntervalPartition build_partition(const SpecExpr& e, index_t coverage);

Series build_series(std::string_view text, index_t horizon);
IndexSet build_set(std::string_view text);

}  // namespace subseries::lang
