#include "subseries/constructions.hpp"

#include <algorithm>
#include <stdexcept>

#include "subseries/errors.hpp"
#include "subseries/summation.hpp"

namespace subseries {

namespace {

/// Sparse term table shared by the placed-points builders.
struct SparseTerms {
    std::vector<index_t> pos;
    std::vector<Rational> val;
    void add(index_t p, Rational v) {
        pos.push_back(p);
        val.push_back(std::move(v));
    }
    Rational at(index_t i) const {
        auto it = std::lower_bound(pos.begin(), pos.end(), i);
        if (it == pos.end() || *it != i) return Rational();
        return val[static_cast<std::size_t>(it - pos.begin())];
    }
};

Series series_from_table(std::shared_ptr<const SparseTerms> table, std::string desc) {
    return Series([table](index_t i) { return table->at(i); }, std::move(desc));
}

void require_inf_coinf(const IndexSet& x, const char* who) {
    if (!x.certified_infinite() || !x.certified_coinfinite())
        throw CertificateError(std::string(who) + ": index set must be certified infinite and coinfinite");
}

index_t quiet_block_for(const Rational& eps, index_t numerator) {
    if (eps.sign() <= 0) throw std::invalid_argument("modulus: epsilon must be positive");
    return (Rational(static_cast<long>(numerator)) / eps).floor_u64() + 1;
}

}  // namespace

// --- product-space points ----------------------------------------------------

void BaireStem::validate() const {
    for (std::size_t n = 0; n < blocks.size(); ++n)
        if (blocks[n].size() != 2 * n + 2)
            throw std::invalid_argument("BaireStem: block " + std::to_string(n) +
                                        " must have length " + std::to_string(2 * n + 2));
}

void BairePoint::validate() const {
    for (std::size_t n = 0; n < blocks.size(); ++n)
        if (blocks[n].size() != 2 * n + 2)
            throw std::invalid_argument("BairePoint: block " + std::to_string(n) +
                                        " must have length " + std::to_string(2 * n + 2));
}

std::vector<index_t> BairePoint::block(index_t n) const {
    if (n < blocks.size()) return blocks[n];
    return std::vector<index_t>(2 * n + 2, 0);
}

index_t BairePoint::nonzero_blocks_below(index_t n) const {
    index_t count = 0;
    for (index_t m = 0; m < std::min<index_t>(n, blocks.size()); ++m)
        for (index_t e : blocks[m])
            if (e != 0) {
                ++count;
                break;
            }
    return count;
}

index_t stem_weight(const BaireStem& s) {
    index_t w = 0;
    for (const auto& b : s.blocks)
        for (index_t e : b) w += e + 1;
    return w;
}

index_t point_prefix_weight(const BairePoint& x, index_t k) {
    index_t w = 0;
    for (index_t n = 0; n < k; ++n)
        for (index_t e : x.block(n)) w += e + 1;
    return w;
}

std::optional<std::pair<index_t, BaireStem>> suitable_extension_search(const BaireStem& s,
                                                                       const BairePoint& x,
                                                                       index_t search_bound) {
    s.validate();
    x.validate();
    const index_t base = stem_weight(s);
    const index_t len = s.length();
    index_t min_added = 0;  // all-zero extension weight: sum of 2n+2 over new blocks
    for (index_t k = std::max<index_t>(len, 1); k <= search_bound; ++k) {
        if (k > len) min_added += 2 * (k - 1) + 2;
        const index_t target = point_prefix_weight(x, k);
        if (k == len) {
            if (target == base) return std::make_pair(k, s);
            continue;
        }
        if (target < base + min_added) continue;
        BaireStem t = s;
        for (index_t n = len; n < k; ++n) t.blocks.emplace_back(2 * n + 2, 0);
        t.blocks[len][0] = target - (base + min_added);
        return std::make_pair(k, std::move(t));
    }
    return std::nullopt;
}

Series covm_series_from_point(const BairePoint& y, index_t n_max) {
    y.validate();
    auto table = std::make_shared<SparseTerms>();
    auto bases = std::make_shared<std::vector<index_t>>();
    index_t base = 0;
    for (index_t n = 0; n < n_max; ++n) {
        bases->push_back(base);
        const auto blk = y.block(n);
        index_t j = 0;
        for (index_t k = 0; k < 2 * n + 2; ++k) {
            table->add(base + j, Rational::signed_unit_over(k % 2 == 1, n + 1));
            j += blk[k] + 1;
        }
        base += j;
    }
    bases->push_back(base);
    Series s = series_from_table(table, "covm_from_y");
    s = s.with_convergence_modulus([bases, n_max](const Rational& eps) {
        const index_t quiet = quiet_block_for(eps, 2);
        return (*bases)[std::min<index_t>(quiet, n_max)];
    });
    return s.with_class(SeriesClass::cc).with_limit({LimitKind::Finite, Rational(0)});
}

BairePoint covm_point_from_set(const IndexSet& x, index_t n_max, index_t horizon) {
    require_inf_coinf(x, "covm_point_from_set");
    const auto sp = switching_points(x, horizon);
    const index_t needed = n_max * (n_max + 1) + 1;  // boundaries of runs 0 .. N_{n_max}-1
    if (sp.size() < needed)
        throw HorizonExhausted("covm_point_from_set: insufficient switching points below horizon",
                               sp.size(), needed);
    BairePoint p;
    for (index_t n = 0; n < n_max; ++n) {
        const index_t block_base = n * (n + 1);
        std::vector<index_t> blk(2 * n + 2);
        for (index_t k = 0; k < 2 * n + 2; ++k)
            blk[k] = sp[block_base + k + 1] - sp[block_base + k] - 1;
        p.blocks.push_back(std::move(blk));
    }
    return p;
}

IndexSet set_with_switch_runs(const BairePoint& y, bool zero_in_set, index_t n_max) {
    y.validate();
    auto starts = std::make_shared<std::vector<index_t>>();
    index_t pos = 0;
    for (index_t n = 0; n < n_max; ++n) {
        const auto blk = y.block(n);
        for (index_t e : blk) {
            starts->push_back(pos);
            pos += e + 1;
        }
    }
    const index_t total = pos;
    const index_t run_count = starts->size();
    return from_predicate(
        [starts, total, run_count, zero_in_set](index_t i) {
            index_t run;
            if (i < total) {
                auto it = std::upper_bound(starts->begin(), starts->end(), i);
                run = static_cast<index_t>(it - starts->begin()) - 1;
            } else {
                run = run_count + (i - total);  // singleton runs beyond the table
            }
            return (run % 2 == 0) == zero_in_set;
        },
        Cert::Yes, Cert::Yes, "switch_runs");
}

// --- countable-family defeat ---------------------------------------------------

DiagonalDefeat diagonal_defeat(const std::vector<IndexSet>& family, index_t blocks_per_set,
                               index_t horizon) {
    if (family.empty()) return DiagonalDefeat{zero_series(), {}};
    for (const auto& x : family) require_inf_coinf(x, "diagonal_defeat");

    auto table = std::make_shared<SparseTerms>();
    std::vector<PlacedBlock> placed;
    std::vector<index_t> round_start(blocks_per_set + 2, 0);
    index_t pos = 0;
    for (index_t k = 1; k <= blocks_per_set; ++k) {
        round_start[k] = pos;
        for (index_t n = 0; n < family.size(); ++n) {
            const IndexSet& x = family[n];
            index_t first = 0, last = 0;
            for (index_t m = 0; m < 2 * k; ++m) {
                const bool want = m % 2 == 0;
                while (pos < horizon && x.contains(pos) != want) ++pos;
                if (pos >= horizon)
                    throw HorizonExhausted(
                        "diagonal_defeat: cannot place block (" + std::to_string(n) + "," +
                            std::to_string(k) + ") below horizon",
                        placed.size(), family.size() * blocks_per_set);
                if (m == 0) first = pos;
                last = pos;
                table->add(pos, Rational::signed_unit_over(m % 2 == 1, k));
                ++pos;
            }
            placed.push_back(PlacedBlock{n, k, first, last + 1});
        }
    }
    round_start[blocks_per_set + 1] = pos;

    Series s = series_from_table(table, "diagonal_defeat");
    auto rs = std::make_shared<std::vector<index_t>>(std::move(round_start));
    const index_t last_round = blocks_per_set;
    s = s.with_convergence_modulus([rs, last_round](const Rational& eps) {
        const index_t quiet = quiet_block_for(eps, 2);
        return (*rs)[std::min<index_t>(quiet, last_round + 1)];
    });
    s = s.with_class(SeriesClass::cc).with_limit({LimitKind::Finite, Rational(0)});
    return DiagonalDefeat{std::move(s), std::move(placed)};
}

// --- splitting witness -----------------------------------------------------------

SplitWitness split_witness_series(const IndexSet& x, index_t horizon) {
    require_inf_coinf(x, "split_witness_series");
    auto sp = switching_points(x, horizon);
    if (sp.size() < 2)
        throw Error("split_witness_series: runs of X not alternating below horizon");
    std::vector<index_t> bounds = sp;
    bounds.push_back(horizon);
    auto runs = IntervalPartition::from_boundaries(std::move(bounds), true,
                                                   "runs(" + x.description() + ")");
    const index_t run_count = runs.block_count();
    Series s(
        [runs](index_t i) -> Rational {
            const auto n = runs.block_of(i);
            if (!n) return Rational();
            return Rational::signed_unit_over(*n % 2 == 1, runs.block_size(*n) * (*n + 1));
        },
        "split_witness(" + x.description() + ")");
    s = s.with_convergence_modulus([runs, run_count, horizon](const Rational& eps) {
        const index_t quiet = quiet_block_for(eps, 2);
        if (quiet >= run_count) return horizon;
        return runs.block_start(quiet);
    });
    s = s.with_class(SeriesClass::cc);
    return SplitWitness{std::move(s), std::move(runs)};
}

// --- dominating-number maps -------------------------------------------------------

namespace {

IntervalPartition d_bound_greedy(const Series& a, index_t scan_cap,
                                 const std::function<bool(index_t, index_t)>& done) {
    if (!a.convergence_modulus()) throw CertificateError("requires convergence modulus");
    const auto& modulus = *a.convergence_modulus();
    const Rational one(1);
    std::vector<index_t> bounds{0};
    for (index_t n = 0; !done(n, bounds.back()); ++n) {
        const index_t start = bounds.back();
        // least end > start with absolute sum >= 1 (monotone: double, then bisect)
        index_t lo = start, hi = start;  // abs sum over [start, lo) known < 1
        Rational acc;
        index_t width = 16;
        while (acc < one) {
            if (hi >= scan_cap)
                throw Error("d_bound_partition: absolute sums stagnate below scan cap");
            const index_t next = std::min<index_t>(scan_cap, hi + width);
            Rational seg = range_sum(a, nullptr, hi, next, SignFilter::AbsoluteValue);
            if (acc + seg < one) {
                acc += seg;
                lo = hi = next;
                width *= 2;
            } else {
                hi = next;
                break;
            }
        }
        while (hi - lo > 1) {
            const index_t mid = lo + (hi - lo) / 2;
            Rational seg = range_sum(a, nullptr, lo, mid, SignFilter::AbsoluteValue);
            if (acc + seg < one) {
                acc += seg;
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const index_t clears = modulus(Rational(1, (n + 2) * (n + 2)));
        bounds.push_back(std::max({hi, clears, start + 1}));
    }
    return IntervalPartition::from_boundaries(std::move(bounds), true,
                                              "dbound(" + a.description() + ")");
}

}  // namespace

IntervalPartition d_bound_partition(const Series& a, index_t n_max, index_t scan_cap) {
    if (n_max == 0) throw std::invalid_argument("d_bound_partition: need at least one block");
    return d_bound_greedy(a, scan_cap, [n_max](index_t n, index_t) { return n >= n_max; });
}

IntervalPartition d_bound_partition_covering(const Series& a, index_t coverage, index_t max_blocks,
                                             index_t scan_cap) {
    if (max_blocks == 0) throw std::invalid_argument("d_bound_partition_covering: max_blocks >= 1");
    return d_bound_greedy(a, scan_cap, [coverage, max_blocks](index_t n, index_t end) {
        return n >= max_blocks || (n > 0 && end >= coverage);
    });
}

std::vector<index_t> ac_decay_function(const Series& a, index_t n_max) {
    if (!a.decay_modulus()) throw CertificateError("requires decay modulus");
    const auto& d = *a.decay_modulus();
    std::vector<index_t> g(n_max + 1);
    for (index_t n = 0; n <= n_max; ++n) {
        index_t v = std::max<index_t>(d(n), 2 * n);
        if (v % 2 == 1) ++v;
        g[n] = v;
    }
    return g;
}

Series ac_series_from_f(const std::vector<index_t>& f) {
    if (f.size() < 2 || f[0] != 0) throw Error("ac_series_from_f: f must start at 0");
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] <= f[i - 1]) throw Error("ac_series_from_f: f not strictly increasing");
    auto bounds = std::make_shared<std::vector<index_t>>(f);
    Series s(
        [bounds](index_t i) -> Rational {
            if (i >= bounds->back()) return Rational();
            auto it = std::upper_bound(bounds->begin(), bounds->end(), i);
            const index_t n = static_cast<index_t>(it - bounds->begin()) - 1;
            if (n == 0) return Rational();  // zero-filled first block
            return Rational::signed_unit_over(i % 2 == 1, n);
        },
        "ac_from_f");
    const index_t last = f.size() - 1;
    s = s.with_convergence_modulus([bounds, last](const Rational& eps) {
        // signs strictly alternate and magnitudes are nonincreasing, so any
        // interval sum is bounded by its first magnitude 1/n
        const index_t quiet = eps.reciprocal().floor_u64() + 1;
        return (*bounds)[std::min<index_t>(quiet, last)];
    });
    s = s.with_decay_modulus([bounds, last](index_t n) {
        const index_t want = (n + 1) * (n + 1);
        return (*bounds)[std::min<index_t>(want, last)];
    });
    return s.with_class(SeriesClass::cc);
}

IndexSet range_set(std::function<index_t(index_t)> f, std::string desc) {
    return from_predicate(
        [f](index_t i) {
            for (index_t n = 0;; ++n) {
                const index_t v = f(n);
                if (v == i) return true;
                if (v > i) return false;
                if (n > i + (index_t{1} << 20))
                    throw Error("range_set: map stalls below its argument");
            }
        },
        Cert::No, Cert::No, "range(" + std::move(desc) + ")");
}

std::function<index_t(index_t)> increasing_bijection(const IndexSet& x) {
    if (!x.certified_infinite())
        throw CertificateError("increasing_bijection: index set must be certified infinite");
    return [x](index_t n) { return x.nth_member(n); };
}

// --- finite adjustment --------------------------------------------------------------

std::vector<index_t> greedy_finite_adjust(const Series& a, const Rational& target_lo,
                                          const Rational& target_hi, index_t scan_bound) {
    if (!(target_lo < target_hi))
        throw std::invalid_argument("greedy_finite_adjust: need target_lo < target_hi");
    const auto proxy = signed_escape_scan(a, omega(), Rational(1), scan_bound);
    if (!proxy.both())
        throw Error("greedy_finite_adjust: signed parts do not both escape below scan bound");

    std::vector<index_t> picks;
    Rational cur;
    index_t pos_cursor = 0, neg_cursor = 0;
    auto next_with_sign = [&](index_t& cursor, int want) {
        while (cursor < scan_bound && a.term(cursor).sign() != want) ++cursor;
        if (cursor >= scan_bound)
            throw HorizonExhausted("greedy_finite_adjust: scan bound exhausted after " +
                                       std::to_string(picks.size()) + " picks",
                                   picks.size(), picks.size() + 1);
        return cursor++;
    };
    while (!(target_lo < cur && cur < target_hi)) {
        const index_t i = cur <= target_lo ? next_with_sign(pos_cursor, 1)
                                           : next_with_sign(neg_cursor, -1);
        cur += a.term(i);
        picks.push_back(i);
    }
    return picks;
}

// --- three-set family and existential builders ----------------------------------------

std::array<IndexSet, 3> ssn_n_triple() {
    return {complement(mod_class(3, 0)), complement(mod_class(3, 1)), complement(mod_class(3, 2))};
}

namespace {

Series alternating_table(const std::vector<index_t>& plus_at, const std::vector<index_t>& minus_at,
                         std::string desc) {
    // plus_at[m] and minus_at[m] carry +-1/(m+1); merged positions must be
    // strictly alternating with nonincreasing magnitudes along positions.
    auto table = std::make_shared<SparseTerms>();
    std::vector<std::pair<index_t, Rational>> items;
    for (std::size_t m = 0; m < plus_at.size(); ++m)
        items.emplace_back(plus_at[m], Rational::signed_unit_over(false, m + 1));
    for (std::size_t m = 0; m < minus_at.size(); ++m)
        items.emplace_back(minus_at[m], Rational::signed_unit_over(true, m + 1));
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, v] : items) table->add(p, std::move(v));
    return series_from_table(table, std::move(desc));
}

}  // namespace

Series alternating_on(const IndexSet& a_set, index_t horizon) {
    if (!a_set.certified_infinite())
        throw CertificateError("alternating_on: index set must be certified infinite");
    const auto members = a_set.members_below(horizon);
    auto table = std::make_shared<SparseTerms>();
    for (std::size_t m = 0; m < members.size(); ++m)
        table->add(members[m], Rational::signed_unit_over(m % 2 == 1, m + 1));
    Series s = series_from_table(table, "alternating_on(" + a_set.description() + ")");
    auto shared = std::make_shared<std::vector<index_t>>(members);
    s = s.with_convergence_modulus([shared](const Rational& eps) -> index_t {
        if (shared->empty()) return 0;
        const index_t rank = eps.reciprocal().floor_u64();
        if (rank >= shared->size()) return shared->back() + 1;
        return (*shared)[rank] + 1;
    });
    s = s.with_decay_modulus([shared](index_t n) -> index_t {
        if (shared->empty()) return 0;
        const index_t rank = (n + 1) * (n + 1) - 1;
        if (rank >= shared->size()) return shared->back() + 1;
        return (*shared)[rank] + 1;
    });
    return s.with_class(SeriesClass::cc);
}

Series alternating_on_two(const IndexSet& a_set, const IndexSet& b_set, index_t horizon) {
    if (!a_set.certified_infinite() || !b_set.certified_infinite())
        throw CertificateError("alternating_on_two: index sets must be certified infinite");
    for (index_t i = 0; i < horizon; ++i)
        if (a_set.contains(i) && b_set.contains(i))
            throw Error("alternating_on_two: disjointness violated below horizon at " +
                        std::to_string(i));
    std::vector<index_t> plus_at, minus_at;
    index_t pos = 0;
    for (;;) {
        while (pos < horizon && !a_set.contains(pos)) ++pos;
        if (pos >= horizon) break;
        const index_t pa = pos++;
        while (pos < horizon && !b_set.contains(pos)) ++pos;
        if (pos >= horizon) break;
        plus_at.push_back(pa);
        minus_at.push_back(pos++);
    }
    Series s = alternating_table(
        plus_at, minus_at,
        "alternating_on_two(" + a_set.description() + "," + b_set.description() + ")");
    auto shared = std::make_shared<std::vector<index_t>>(plus_at);
    const index_t table_end = minus_at.empty() ? 0 : minus_at.back() + 1;
    s = s.with_convergence_modulus([shared, table_end](const Rational& eps) -> index_t {
        if (shared->empty()) return 0;
        const index_t rank = eps.reciprocal().floor_u64();
        if (rank >= shared->size()) return table_end;
        return (*shared)[rank] + 1;
    });
    return s.with_class(SeriesClass::cc).with_limit({LimitKind::Finite, Rational(0)});
}

TwoSetDefeat two_set_defeat(const IndexSet& x0, const IndexSet& x1, index_t horizon,
                            index_t threshold) {
    require_inf_coinf(x0, "two_set_defeat");
    require_inf_coinf(x1, "two_set_defeat");
    index_t outside = 0, only0 = 0, only1 = 0;
    for (index_t i = 0; i < horizon; ++i) {
        const bool in0 = x0.contains(i), in1 = x1.contains(i);
        if (!in0 && !in1) ++outside;
        if (in0 && !in1) ++only0;
        if (in1 && !in0) ++only1;
    }
    if (outside >= threshold) {
        auto z = from_predicate(
            [x0, x1](index_t i) { return !x0.contains(i) && !x1.contains(i); }, Cert::Yes,
            Cert::Yes, "outside(" + x0.description() + "," + x1.description() + ")");
        return TwoSetDefeat{alternating_on(z, horizon), 1};
    }
    if (only0 >= threshold && only1 >= threshold) {
        auto z0 = from_predicate(
            [x0, x1](index_t i) { return x0.contains(i) && !x1.contains(i); }, Cert::Yes,
            Cert::No, "diff(" + x0.description() + "," + x1.description() + ")");
        auto z1 = from_predicate(
            [x0, x1](index_t i) { return x1.contains(i) && !x0.contains(i); }, Cert::Yes,
            Cert::No, "diff(" + x1.description() + "," + x0.description() + ")");
        return TwoSetDefeat{alternating_on_two(z0, z1, horizon), 2};
    }
    throw Error("two_set_defeat: dichotomy not witnessed below horizon");
}

// --- sequential-composition maps ---------------------------------------------------------

IntervalPartition oscillation_interval_partition(const Series& a, const IndexSet& x,
                                                 const DiagnosticsConfig& cfg, index_t count) {
    const auto ext = extract_oscillation_intervals(a, x, cfg, count + 1);
    std::vector<index_t> bounds;
    if (ext.intervals.front().lo != 0) bounds.push_back(0);  // prefix block
    for (const auto& iv : ext.intervals) bounds.push_back(iv.lo);
    return IntervalPartition::from_boundaries(
        std::move(bounds), true,
        "osc_f(" + std::string(to_string(ext.orientation)) + ")");
}

IndexSet blocks_absorbing(const IntervalPartition& j, const IntervalPartition& i,
                          index_t horizon) {
    std::vector<index_t> members;
    index_t scanned = 0;
    const auto& jb = j.boundaries();
    for (index_t k = 0; k < i.block_count(); ++k) {
        if (i.block_end(k) > horizon) break;
        ++scanned;
        auto it = std::lower_bound(jb.begin(), jb.end(), i.block_start(k));
        const index_t n = static_cast<index_t>(it - jb.begin());
        if (n < j.block_count() && j.block_end(n) <= i.block_end(k)) members.push_back(k);
    }
    const Cert inf = members.size() >= 10 ? Cert::Heuristic : Cert::No;
    const Cert coinf = scanned - members.size() >= 10 ? Cert::Heuristic : Cert::No;
    auto shared = std::make_shared<std::vector<index_t>>(std::move(members));
    return from_predicate(
        [shared](index_t k) { return std::binary_search(shared->begin(), shared->end(), k); },
        inf, coinf, "absorbing_blocks");
}

IndexSet compose_response(const IndexSet& x, const IntervalPartition& i, const IndexSet& s) {
    return from_predicate(
        [x, i, s](index_t idx) {
            const auto k = i.block_of(idx);
            if (!k) return false;
            return s.contains(*k) ? x.contains(idx) : !x.contains(idx);
        },
        Cert::No, Cert::No,
        "compose(" + x.description() + "," + s.description() + ")");
}

}  // namespace subseries
