#include "subseries/classify.hpp"

#include <algorithm>
#include <stdexcept>

#include "subseries/errors.hpp"
#include "subseries/summation.hpp"

namespace subseries {

namespace {

constexpr index_t kDenseCap = index_t{1} << 14;
constexpr index_t kHeadSamples = 48;
constexpr index_t kTailSamples = 128;

index_t floor_mul(const Rational& frac, index_t n) {
    return (frac * Rational(static_cast<long>(n))).floor_u64();
}

struct Window {
    bool any_head = false, any_tail = false;
    Rational head_min, head_max;
    // tail statistics are kept as offsets against the sum at tail_start,
    // which keeps their denominators small; absolute values are assembled
    // at the end of the pass
    Rational base, tail_min, tail_max, tail_first, tail_last;
    void head_update(const Rational& v) {
        if (!any_head) {
            head_min = v;
            head_max = v;
            any_head = true;
            return;
        }
        if (v < head_min) head_min = v;
        if (v > head_max) head_max = v;
    }
    void tail_update(const Rational& delta) {
        if (!any_tail) {
            tail_min = tail_max = tail_first = delta;
            any_tail = true;
        } else {
            if (delta < tail_min) tail_min = delta;
            if (delta > tail_max) tail_max = delta;
        }
        tail_last = delta;
    }
    Rational abs_tail_min() const { return base + tail_min; }
    Rational abs_tail_max() const { return base + tail_max; }
    Rational tail_growth() const { return tail_last - tail_first; }
};

struct GridPass {
    Window all, pos, neg;
    std::vector<Rational> tail_deltas;  // offsets of S over X∩k for revisits
    Rational last_delta, second_last_delta;
    index_t points = 0, head_points = 0, tail_points = 0;
    bool dense = true;
    // term-activity evidence for the stagnation heuristic
    index_t pos_terms_total = 0, neg_terms_total = 0;
    index_t pos_terms_tail = 0, neg_terms_tail = 0;

    Rational final_value() const { return all.base + last_delta; }
    Rational penultimate_value() const { return all.base + second_last_delta; }
};

GridPass run_pass(const Series& a, const IndexSet& x, const DiagnosticsConfig& cfg) {
    const index_t h = cfg.horizon;
    const index_t head_end = cfg.head_end();
    const index_t tail_start = cfg.tail_start();
    GridPass g;
    g.dense = h <= kDenseCap;

    TriSum cum;       // exact sums up to the current checkpoint, before the tail
    TriSum delta;     // accumulated past tail_start, relative to the base
    bool in_tail = false;

    auto note_checkpoint = [&](index_t k) {
        ++g.points;
        if (k < head_end) {
            ++g.head_points;
            if (in_tail) {  // windows overlap when tail_fraction > 1/2
                g.all.head_update(g.all.base + delta.all);
                g.pos.head_update(g.pos.base + delta.positive);
                g.neg.head_update(g.neg.base + delta.negative);
            } else {
                g.all.head_update(cum.all);
                g.pos.head_update(cum.positive);
                g.neg.head_update(cum.negative);
            }
        }
        if (k >= tail_start) {
            if (!in_tail) {  // k == tail_start: freeze the base
                in_tail = true;
                g.all.base = cum.all;
                g.pos.base = cum.positive;
                g.neg.base = cum.negative;
            }
            ++g.tail_points;
            g.all.tail_update(delta.all);
            g.pos.tail_update(delta.positive);
            g.neg.tail_update(delta.negative);
            g.tail_deltas.push_back(delta.all);
            g.second_last_delta = std::move(g.last_delta);
            g.last_delta = delta.all;
        }
    };

    auto advance_to = [&](index_t k, index_t from) {
        TriSum seg = range_sum3(a, &x, from, k);
        if (in_tail)
            delta += seg;
        else
            cum += seg;
    };

    // dense prefix: every k gets a checkpoint, terms added one at a time
    const index_t dense_end = std::min(h, std::min(head_end, kDenseCap));
    note_checkpoint(0);
    index_t prev = 0;
    auto dense_walk = [&](index_t upto) {
        for (index_t k = prev + 1; k <= upto; ++k) {
            if (x.contains(k - 1)) {
                Rational t = a.term(k - 1);
                const int s = t.sign();
                TriSum& acc = in_tail ? delta : cum;
                if (s != 0) {
                    if (s > 0) {
                        acc.positive += t;
                        ++acc.positive_terms;
                    } else {
                        acc.negative += t;
                        ++acc.negative_terms;
                    }
                    acc.all += t;
                }
            }
            note_checkpoint(k);
        }
        prev = upto;
    };
    auto finalize = [&] {
        g.pos_terms_tail = delta.positive_terms;
        g.neg_terms_tail = delta.negative_terms;
        g.pos_terms_total = cum.positive_terms + delta.positive_terms;
        g.neg_terms_total = cum.negative_terms + delta.negative_terms;
    };

    if (g.dense) {
        dense_walk(h);
        finalize();
        return g;
    }

    dense_walk(dense_end);
    // sampled remainder of the head window
    if (head_end > dense_end) {
        for (index_t j = 1; j <= kHeadSamples; ++j) {
            const index_t k = dense_end + static_cast<index_t>(
                (static_cast<unsigned __int128>(head_end - 1 - dense_end) * j * j) /
                (kHeadSamples * kHeadSamples));
            if (k <= prev) continue;
            advance_to(k, prev);
            prev = k;
            note_checkpoint(k);
        }
        if (head_end - 1 > prev) {
            advance_to(head_end - 1, prev);
            prev = head_end - 1;
            note_checkpoint(prev);
        }
    }
    // one jump to the tail window, then evenly sampled tail offsets
    if (tail_start > prev) {
        advance_to(tail_start, prev);
        prev = tail_start;
        note_checkpoint(prev);
    }
    for (index_t j = 1; j <= kTailSamples; ++j) {
        const index_t k = tail_start + static_cast<index_t>(
            (static_cast<unsigned __int128>(h - tail_start) * j) / kTailSamples);
        if (k <= prev || k >= h - 1) continue;
        advance_to(k, prev);
        prev = k;
        note_checkpoint(k);
    }
    for (index_t k : {h - 1, h}) {
        if (k <= prev) continue;
        advance_to(k, prev);
        prev = k;
        note_checkpoint(k);
    }
    finalize();
    return g;
}

Verdict decide(const GridPass& g, const DiagnosticsConfig& cfg) {
    Verdict v;
    v.evidence.dense = g.dense;
    v.evidence.grid_points = g.points;
    v.evidence.head_points = g.head_points;
    v.evidence.tail_points = g.tail_points;
    v.evidence.head_min = g.all.head_min;
    v.evidence.head_max = g.all.head_max;
    v.evidence.tail_min = g.all.abs_tail_min();
    v.evidence.tail_max = g.all.abs_tail_max();

    const Rational& margin = cfg.escape_margin;
    if (v.evidence.tail_min > g.all.head_max + margin) {
        v.kind = VerdictKind::TendsPlusInf;
        v.escape = g.all.head_max + margin;
        return v;
    }
    if (v.evidence.tail_max < g.all.head_min - margin) {
        v.kind = VerdictKind::TendsMinusInf;
        v.escape = g.all.head_min - margin;
        return v;
    }
    // band width is base-independent: compare the tail offsets directly
    const Rational band_width = g.all.tail_max - g.all.tail_min;
    if (band_width < cfg.tolerance) {
        v.kind = VerdictKind::Converged;
        v.estimate = (g.penultimate_value() + g.final_value()) / Rational(2);
        v.band = std::make_pair(v.evidence.tail_min, v.evidence.tail_max);
        return v;
    }
    if (band_width >= cfg.oscillation_gap) {
        // an extreme counts as revisited only when the sums actually come
        // back to it: count alternating visits of the two extreme zones,
        // so a monotone drift across a wide band never reads as oscillation
        const Rational near = cfg.oscillation_gap / Rational(8);
        const Rational high_mark = g.all.tail_max - near;
        const Rational low_mark = g.all.tail_min + near;
        index_t high = 0, low = 0;
        int last_zone = 0;
        for (const auto& d : g.tail_deltas) {
            const int zone = d >= high_mark ? 1 : (d <= low_mark ? -1 : 0);
            if (zone != 0 && zone != last_zone) {
                (zone == 1 ? high : low) += 1;
                last_zone = zone;
            }
        }
        v.evidence.revisit_high = high;
        v.evidence.revisit_low = low;
        if (high >= cfg.revisit_count && low >= cfg.revisit_count) {
            v.kind = VerdictKind::Oscillates;
            v.band = std::make_pair(v.evidence.tail_min, v.evidence.tail_max);
            return v;
        }
    }
    v.kind = VerdictKind::Inconclusive;
    return v;
}

// Boundedness of a sign part is declared either from exact global emptiness
// (no terms of that sign anywhere below the horizon) or from a stagnant,
// well-populated tail window; a flat window that simply contains no terms of
// the part is a placement artifact, not evidence.
constexpr index_t kStagnationActivityFloor = 32;

TriVerdict decide_conditionality(const GridPass& g, const DiagnosticsConfig& cfg) {
    const Rational& margin = cfg.escape_margin;
    const bool pos_escapes = g.pos.abs_tail_min() > g.pos.head_max + margin;
    const bool neg_escapes = g.neg.abs_tail_max() < g.neg.head_min - margin;
    const bool pos_bounded =
        g.pos_terms_total == 0 ||
        (g.pos_terms_tail >= kStagnationActivityFloor && g.pos.tail_growth() < cfg.tolerance);
    const bool neg_bounded =
        g.neg_terms_total == 0 ||
        (g.neg_terms_tail >= kStagnationActivityFloor && -g.neg.tail_growth() < cfg.tolerance);
    const bool escape_both = pos_escapes && neg_escapes;
    const bool bounded_any = pos_bounded || neg_bounded;
    if (escape_both && !bounded_any) return TriVerdict::Holds;
    if (bounded_any && !escape_both) return TriVerdict::Fails;
    return TriVerdict::Unknown;
}

}  // namespace

void DiagnosticsConfig::validate() const {
    if (horizon < 2) throw std::invalid_argument("DiagnosticsConfig: horizon must be >= 2");
    if (tail_fraction.sign() <= 0 || tail_fraction >= Rational(1))
        throw std::invalid_argument("DiagnosticsConfig: tail_fraction must lie in (0,1)");
    if (tolerance.sign() <= 0 || oscillation_gap.sign() <= 0 || escape_margin.sign() <= 0)
        throw std::invalid_argument("DiagnosticsConfig: thresholds must be positive");
    if (revisit_count == 0)
        throw std::invalid_argument("DiagnosticsConfig: revisit_count must be >= 1");
    if (floor_mul(tail_fraction, horizon) == 0)
        throw std::invalid_argument("DiagnosticsConfig: tail window is empty");
}

index_t DiagnosticsConfig::tail_start() const { return horizon - floor_mul(tail_fraction, horizon); }

index_t DiagnosticsConfig::head_end() const {
    return std::max<index_t>(1, floor_mul(tail_fraction, horizon));
}

Verdict classify(const Series& a, const IndexSet& x, const DiagnosticsConfig& cfg) {
    cfg.validate();
    if (!x.certified_infinite())
        throw CertificateError("classification requires a certified-infinite index set");
    return decide(run_pass(a, x, cfg), cfg);
}

TriVerdict conditionality_check(const Series& a, const IndexSet& x, const DiagnosticsConfig& cfg) {
    cfg.validate();
    if (!x.certified_infinite())
        throw CertificateError("classification requires a certified-infinite index set");
    return decide_conditionality(run_pass(a, x, cfg), cfg);
}

std::pair<Verdict, TriVerdict> classify_with_conditionality(const Series& a, const IndexSet& x,
                                                            const DiagnosticsConfig& cfg) {
    cfg.validate();
    if (!x.certified_infinite())
        throw CertificateError("classification requires a certified-infinite index set");
    const GridPass g = run_pass(a, x, cfg);
    return {decide(g, cfg), decide_conditionality(g, cfg)};
}

EscapePair signed_escape_scan(const Series& a, const IndexSet& x, const Rational& level,
                              index_t horizon) {
    if (level.sign() <= 0) throw std::invalid_argument("signed_escape_scan: level must be positive");
    EscapePair out;
    const Rational neg_level = -level;
    TriSum cum;
    index_t at = 0;
    index_t width = 1024;
    while (at < horizon) {
        const index_t next = std::min<index_t>(horizon, at + width);
        cum += range_sum3(a, &x, at, next);
        at = next;
        width *= 2;
        if (!out.positive_crossed && cum.positive > level) {
            out.positive_crossed = true;
            out.positive_at = at;
            out.positive_value = cum.positive;
        }
        if (!out.negative_crossed && cum.negative < neg_level) {
            out.negative_crossed = true;
            out.negative_at = at;
            out.negative_value = cum.negative;
        }
        if (out.both()) break;
    }
    if (!out.positive_crossed) out.positive_value = cum.positive;
    if (!out.negative_crossed) out.negative_value = cum.negative;
    return out;
}

}  // namespace subseries
