#include <algorithm>

#include "subseries/classify.hpp"
#include "subseries/errors.hpp"
#include "subseries/summation.hpp"

namespace subseries {

namespace {

constexpr index_t kOscScanCap = index_t{1} << 17;

// Advisory fallback when no convergence modulus is attached: the first n
// below horizon past which every interval sum stays inside (-eps, eps).
index_t scan_for_quiet_point(const Series& a, const Rational& eps, index_t horizon) {
    if (horizon > kOscScanCap)
        throw CertificateError(
            "extraction without a convergence modulus needs horizon <= 131072 (advisory scan)");
    std::vector<Rational> prefix(horizon + 1);
    Rational acc;
    for (index_t k = 0; k < horizon; ++k) {
        prefix[k] = acc;
        acc += a.term(k);
    }
    prefix[horizon] = acc;
    // suffix extrema of the prefix sums
    Rational mx = prefix[horizon], mn = prefix[horizon];
    index_t best = horizon;
    for (index_t n = horizon; n-- > 0;) {
        if (prefix[n] > mx) mx = prefix[n];
        if (prefix[n] < mn) mn = prefix[n];
        if (mx - prefix[n] < eps && prefix[n] - mn < eps) best = n;
    }
    return best;
}

void verify_interval(const Series& a, const IndexSet& x, OscillationInterval& iv,
                     const Rational& c, Orientation orient) {
    iv.in_sum = range_sum(a, &x, iv.lo, iv.hi);
    iv.out_sum = tree_sum(iv.lo, iv.hi, [&](index_t i) -> Rational {
        return x.contains(i) ? Rational() : a.term(i);
    });
    const bool ok = orient == Orientation::PosInX ? (iv.in_sum > c && iv.out_sum < -c)
                                                  : (iv.in_sum < -c && iv.out_sum > c);
    if (!ok) throw Error("extraction: interval failed exact re-verification");
}

}  // namespace

ExtractionResult extract_oscillation_intervals(const Series& a, const IndexSet& x,
                                               const DiagnosticsConfig& cfg, index_t count) {
    if (count == 0) throw std::invalid_argument("extract_oscillation_intervals: count must be >= 1");
    const Verdict v = classify(a, x, cfg);
    if (v.kind != VerdictKind::Oscillates && v.kind != VerdictKind::TendsPlusInf &&
        v.kind != VerdictKind::TendsMinusInf)
        throw Error("extraction requires a divergent classification, got " +
                    std::string(to_string(v.kind)));

    ExtractionResult res;
    res.base_kind = v.kind;
    Rational d;
    if (v.kind == VerdictKind::Oscillates) {
        const Rational& lo = v.evidence.tail_min;
        const Rational& hi = v.evidence.tail_max;
        d = (hi + lo) / Rational(2);
        res.c = (hi - lo) / Rational(4);
        res.orientation = Orientation::PosInX;
    } else {
        res.c = Rational(1);
        res.orientation =
            v.kind == VerdictKind::TendsPlusInf ? Orientation::PosInX : Orientation::NegInX;
    }
    const Rational eps = res.c / Rational(2);
    index_t quiet;
    if (a.convergence_modulus()) {
        quiet = (*a.convergence_modulus())(eps);
        res.modulus_from_certificate = true;
    } else {
        quiet = scan_for_quiet_point(a, eps, cfg.horizon);
        res.modulus_from_certificate = false;
    }

    const Rational two_c = res.c + res.c;
    auto exhausted = [&](const char* what) {
        return ExtractionExhausted(std::string("horizon exhausted: ") + what, res, count);
    };

    if (v.kind == VerdictKind::Oscillates) {
        if (cfg.horizon > kOscScanCap)
            throw Error("oscillation extraction scans densely; use horizon <= 131072");
        const Rational low_mark = d - res.c;
        const Rational high_mark = d + res.c;
        Rational s;  // running prefix over X
        bool have_m = false;
        index_t m = 0;
        for (index_t k = 0; k <= cfg.horizon && res.intervals.size() < count; ++k) {
            if (k > quiet) {
                if (!have_m && s < low_mark) {
                    have_m = true;
                    m = k;
                } else if (have_m && s > high_mark) {
                    OscillationInterval iv{m, k, {}, {}};
                    verify_interval(a, x, iv, res.c, res.orientation);
                    res.intervals.push_back(std::move(iv));
                    have_m = false;
                }
            }
            if (k < cfg.horizon && x.contains(k)) s += a.term(k);
        }
        if (res.intervals.size() < count) throw exhausted("too few band crossings below horizon");
        return res;
    }

    // tends to +-infinity: consecutive blocks with restricted gain beyond 2c
    const bool positive = v.kind == VerdictKind::TendsPlusInf;
    auto past = [&](const Rational& g) { return positive ? g > two_c : g < -two_c; };
    index_t cur = quiet + 1;
    while (res.intervals.size() < count) {
        Rational gain;
        index_t lo = cur, hi = cur;
        index_t width = 256;
        bool found = false;
        while (hi < cfg.horizon) {
            const index_t next = std::min<index_t>(cfg.horizon, cur + width);
            const Rational seg = range_sum(a, &x, hi, next);
            width *= 2;
            if (past(gain + seg)) {
                lo = hi;
                hi = next;
                found = true;
                break;
            }
            gain += seg;
            lo = hi = next;
        }
        if (!found) throw exhausted("restricted gain stalls below horizon");
        // narrow to the first crossing inside the bracket
        while (hi - lo > 1) {
            const index_t mid = lo + (hi - lo) / 2;
            const Rational seg = range_sum(a, &x, lo, mid);
            if (past(gain + seg)) {
                hi = mid;
            } else {
                gain += seg;
                lo = mid;
            }
        }
        OscillationInterval iv{cur, hi, {}, {}};
        verify_interval(a, x, iv, res.c, res.orientation);
        res.intervals.push_back(std::move(iv));
        cur = hi;
    }
    return res;
}

}  // namespace subseries
