#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subseries/errors.hpp"
#include "subseries/index_set.hpp"
#include "subseries/rational.hpp"
#include "subseries/series.hpp"
#include "subseries/verdict.hpp"

namespace subseries {

/// Finite-horizon diagnostics parameters. All comparisons against these
/// thresholds are exact rational comparisons.
struct DiagnosticsConfig {
    index_t horizon = 100000;
    Rational tail_fraction{1, 10};  // in (0,1)
    Rational tolerance{1, 1000};
    Rational oscillation_gap{1, 10};
    index_t revisit_count = 3;
    Rational escape_margin = Rational(1);

    void validate() const;
    /// First index of the tail window [tail_start, horizon].
    index_t tail_start() const;
    /// Head window is [0, head_end); same length as the tail window.
    index_t head_end() const;
};

enum class VerdictKind { Converged, TendsPlusInf, TendsMinusInf, Oscillates, Inconclusive };

constexpr std::string_view to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Converged: return "Converged";
        case VerdictKind::TendsPlusInf: return "TendsPlusInf";
        case VerdictKind::TendsMinusInf: return "TendsMinusInf";
        case VerdictKind::Oscillates: return "Oscillates";
        default: return "Inconclusive";
    }
}

/// Where the partial sums were evaluated. Horizons at or below the dense
/// cap are evaluated at every k; larger horizons use a deterministic grid:
/// dense start, geometric midpoints, and an evenly sampled tail window that
/// always contains tail_start, horizon-1 and horizon. All values are exact.
struct WindowEvidence {
    bool dense = true;
    index_t grid_points = 0;
    index_t head_points = 0, tail_points = 0;
    Rational head_min, head_max;
    Rational tail_min, tail_max;
    index_t revisit_high = 0, revisit_low = 0;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Rational> estimate;                      // Converged: midpoint of last two sums
    std::optional<std::pair<Rational, Rational>> band;     // tail accumulation band
    std::optional<Rational> escape;                        // level certified crossed
    WindowEvidence evidence;
};

/// Three-valued convergence diagnosis of Sum_{X} a at cfg.horizon.
/// X must be certified infinite.
Verdict classify(const Series& a, const IndexSet& x, const DiagnosticsConfig& cfg);

/// Do both sign-restricted sums over X escape (conditionality)? Holds when
/// the positive part passes the tends-to-+inf window test and the negative
/// part the mirror. Fails when a sign part is bounded by evidence: either
/// no terms of that sign exist below the horizon at all, or the tail window
/// is stagnant (growth below cfg.tolerance) while containing enough terms
/// of the part that the flatness is not a placement artifact. Unknown
/// otherwise or on conflicting evidence.
TriVerdict conditionality_check(const Series& a, const IndexSet& x, const DiagnosticsConfig& cfg);

/// Fused evaluation sharing one exact pass over the evaluation grid.
std::pair<Verdict, TriVerdict> classify_with_conditionality(const Series& a, const IndexSet& x,
                                                            const DiagnosticsConfig& cfg);

/// Earliest doubling checkpoint at which the positive part exceeds +level
/// and the negative part falls below -level, if that happens below horizon.
/// The two sums are monotone, so a checkpoint witness is sound.
struct EscapePair {
    bool positive_crossed = false, negative_crossed = false;
    index_t positive_at = 0, negative_at = 0;
    Rational positive_value, negative_value;
    bool both() const { return positive_crossed && negative_crossed; }
};
EscapePair signed_escape_scan(const Series& a, const IndexSet& x, const Rational& level,
                              index_t horizon);

// --- oscillation-interval extraction ----------------------------------------

enum class Orientation { PosInX, NegInX };

constexpr std::string_view to_string(Orientation o) {
    return o == Orientation::PosInX ? "PosInX" : "NegInX";
}

struct OscillationInterval {
    index_t lo = 0, hi = 0;  // [lo, hi)
    Rational in_sum;         // exact sum over [lo,hi) ∩ X
    Rational out_sum;        // exact sum over [lo,hi) ∖ X
};

struct ExtractionResult {
    Rational c;
    Orientation orientation = Orientation::PosInX;
    std::vector<OscillationInterval> intervals;
    VerdictKind base_kind = VerdictKind::Inconclusive;
    bool modulus_from_certificate = true;  // false: advisory scan fallback
};

struct ExtractionExhausted : HorizonExhausted {
    ExtractionResult partial;
    ExtractionExhausted(const std::string& what, ExtractionResult p, index_t requested)
        : HorizonExhausted(what, p.intervals.size(), requested), partial(std::move(p)) {}
};

/// Finds `count` pairwise disjoint intervals I with Sum_{I∩X} a > c and
/// Sum_{I∖X} a < -c (orientation PosInX) or the mirrored pair (NegInX),
/// following the divergence kind of classify(a, X, cfg). Every interval is
/// re-verified by exact summation before it is returned; throws
/// ExtractionExhausted with the verified partial list when the horizon runs
/// out.
ExtractionResult extract_oscillation_intervals(const Series& a, const IndexSet& x,
                                               const DiagnosticsConfig& cfg, index_t count);

}  // namespace subseries
