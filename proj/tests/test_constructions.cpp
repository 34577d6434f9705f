#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subseries/constructions.hpp"
#include "subseries/errors.hpp"
#include "subseries/summation.hpp"

using namespace subseries;

namespace {
std::uint64_t mix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
IndexSet random_periodic(std::uint64_t& s) {
    std::vector<bool> cycle(2 + mix(s) % 14);
    for (std::size_t i = 0; i < cycle.size(); ++i) cycle[i] = mix(s) & 1;
    cycle[0] = true;
    cycle[1] = false;
    return periodic_set({}, cycle);
}
}  // namespace

TEST_CASE("stem weight") {
    CHECK(stem_weight(BaireStem{}) == 0);
    BaireStem one{{{0, 0}}};
    CHECK(stem_weight(one) == 2);
    BaireStem two{{{0, 0}, {1, 0, 2, 0}}};
    CHECK(stem_weight(two) == 9);
    BaireStem bad{{{0}}};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("suitable extension search") {
    BairePoint x;
    x.blocks = {{0, 0}};
    const auto r = suitable_extension_search(BaireStem{}, x, 10);
    REQUIRE(r.has_value());
    CHECK(r->first == 1);
    CHECK(r->second.blocks == std::vector<std::vector<index_t>>{{0, 0}});
    CHECK(stem_weight(r->second) == point_prefix_weight(x, 1));

    // a stem already equal to a prefix comes back unchanged
    BaireStem s{{{0, 0}}};
    const auto same = suitable_extension_search(s, x, 10);
    REQUIRE(same.has_value());
    CHECK(same->first == 1);
    CHECK(same->second.blocks == s.blocks);

    // heavy stem: the search walks k until the prefix weight of a point with
    // nonzero blocks catches up with the stem's surplus
    BaireStem heavy{{{5, 0}}};
    CHECK(stem_weight(heavy) == 7);
    BairePoint rich;
    rich.blocks = {{3, 0}, {1, 1, 0, 0}};
    const auto ext = suitable_extension_search(heavy, rich, 32);
    REQUIRE(ext.has_value());
    CHECK(ext->first == 2);
    CHECK(stem_weight(ext->second) == point_prefix_weight(rich, ext->first));

    // against an all-zero point (outside the dense part) a surplus can never
    // be matched: the search signals exhaustion by returning none
    BairePoint zeros;
    CHECK(!suitable_extension_search(heavy, zeros, 32).has_value());
}

TEST_CASE("covm series from a point") {
    BairePoint y;
    y.blocks = {{0, 0}};
    const auto a = covm_series_from_point(y, 4);
    CHECK(a.term(0) == Rational(1));
    CHECK(a.term(1) == Rational(-1));
    // block 1 of an all-zero continuation: positions 2..5, values +-1/2
    CHECK(a.term(2) == Rational(1, 2));
    CHECK(a.term(3) == Rational(-1, 2));
    CHECK(a.term(4) == Rational(1, 2));
    CHECK(a.term(5) == Rational(-1, 2));
    // off-support positions are zero beyond the built blocks
    CHECK(a.term(1000) == Rational(0));
    CHECK(a.declared_class() == SeriesClass::cc);
    REQUIRE(a.known_limit().has_value());
    CHECK(a.known_limit()->value == Rational(0));
}

TEST_CASE("covm point from a set") {
    const auto from_evens = covm_point_from_set(evens(), 3, 1000);
    for (index_t n = 0; n < 3; ++n)
        for (index_t e : from_evens.block(n)) CHECK(e == 0);

    const auto blocky = periodic_set({}, {true, true, false, false});
    const auto from_blocky = covm_point_from_set(blocky, 3, 1000);
    for (index_t n = 0; n < 3; ++n)
        for (index_t e : from_blocky.block(n)) CHECK(e == 1);

    // the block-3 read position: N_3 = 12
    CHECK_THROWS_AS(covm_point_from_set(evens(), 30, 100), HorizonExhausted);
    CHECK_THROWS_AS(covm_point_from_set(omega(), 2, 1000), CertificateError);
}

TEST_CASE("covm block identity on reconstructed sets") {
    std::uint64_t s = 77;
    for (int round = 0; round < 10; ++round) {
        BairePoint y;
        const index_t n_max = 6;
        for (index_t n = 0; n < n_max; ++n) {
            std::vector<index_t> blk(2 * n + 2);
            for (auto& e : blk) e = mix(s) % 4;
            y.blocks.push_back(std::move(blk));
        }
        const bool zero_in = mix(s) & 1;
        const auto x = set_with_switch_runs(y, zero_in, n_max);
        const auto back = covm_point_from_set(x, n_max, 4096);
        for (index_t n = 0; n < n_max; ++n) CHECK(back.block(n) == y.block(n));

        const auto a = covm_series_from_point(y, n_max);
        index_t chi = 0;
        for (index_t n = 0; n < n_max; ++n) {
            const index_t next = point_prefix_weight(y, n + 1);
            const Rational block_sum = range_sum(a, &x, chi, next);
            CHECK(block_sum.abs() == Rational(1));
            chi = next;
        }
    }
}

TEST_CASE("diagonal defeat block identity") {
    const std::vector<IndexSet> family{evens(), odds()};
    const auto dd = diagonal_defeat(family, 2, 1000);
    REQUIRE(dd.blocks.size() == 4);
    for (const auto& b : dd.blocks) {
        CHECK(range_sum(dd.series, &family[b.set_index], b.lo, b.hi) == Rational(1));
    }
}

TEST_CASE("diagonal defeat: single-set anatomy") {
    const std::vector<IndexSet> family{evens()};
    const auto dd = diagonal_defeat(family, 1, 100);
    REQUIRE(dd.blocks.size() == 1);
    const auto& b = dd.blocks[0];
    CHECK(b.block_index == 1);
    // two points, first inside, second outside, values +1 and -1
    index_t inside = 0, outside = 0;
    for (index_t i = b.lo; i < b.hi; ++i) {
        const Rational t = dd.series.term(i);
        if (t.is_zero()) continue;
        if (evens().contains(i)) {
            CHECK(t == Rational(1));
            ++inside;
        } else {
            CHECK(t == Rational(-1));
            ++outside;
        }
    }
    CHECK(inside == 1);
    CHECK(outside == 1);
    CHECK(range_sum(dd.series, &family[0], b.lo, b.hi) == Rational(1));
}

TEST_CASE("diagonal defeat of the empty family is the zero series") {
    const auto dd = diagonal_defeat({}, 3, 100);
    for (index_t i = 0; i < 50; ++i) CHECK(dd.series.term(i) == Rational(0));
}

TEST_CASE("diagonal defeat exhaustion") {
    CHECK_THROWS_AS(diagonal_defeat({evens(), odds()}, 50, 60), HorizonExhausted);
}

TEST_CASE("split witness on a blocky set") {
    const auto blocky = periodic_set({}, {true, true, false, false});
    const auto w = split_witness_series(blocky, 2048);
    CHECK(w.series.term(0) == Rational(1, 2));
    CHECK(w.series.term(1) == Rational(1, 2));
    CHECK(w.series.term(2) == Rational(-1, 4));
    CHECK(w.series.term(3) == Rational(-1, 4));
    // block-sum identity: run n sums to (-1)^n/(n+1)
    for (index_t n = 0; n + 1 < w.runs.block_count(); ++n) {
        const Rational sum =
            range_sum(w.series, nullptr, w.runs.block_start(n), w.runs.block_end(n));
        CHECK(sum == Rational::signed_unit_over(n % 2 == 1, n + 1));
    }
}

TEST_CASE("split witness over the evens is the alternating harmonic") {
    const auto w = split_witness_series(evens(), 512);
    const auto ah = alternating_harmonic();
    for (index_t i = 0; i < 500; ++i) CHECK(w.series.term(i) == ah.term(i));
}

TEST_CASE("split witness partial sums stay within the telescoping envelope") {
    std::uint64_t s = 55;
    for (int round = 0; round < 8; ++round) {
        const auto x = random_periodic(s);
        const auto w = split_witness_series(x, 1024);
        // after run n the partial sums stay within 1/(n+1) of the prefix value
        for (index_t n = 2; n + 1 < std::min<index_t>(w.runs.block_count(), 40); ++n) {
            const Rational at_boundary = partial_sum(w.series, omega(), w.runs.block_start(n));
            for (index_t k = w.runs.block_start(n); k <= w.runs.block_end(n); ++k) {
                const Rational here = partial_sum(w.series, omega(), k);
                CHECK((here - at_boundary).abs() <= Rational(1, n + 1));
            }
        }
    }
}

TEST_CASE("splitting contrapositive: unsplit responses see one-signed terms") {
    // Y ∩ X empty below horizon and 0 in X: X occupies the even runs, which
    // carry the positive sign (the evens case pins that convention), so the
    // witness restricted to Y has no positive terms below the horizon.
    const auto x = periodic_set({}, {true, false, false, false});
    const auto y = mod_class(4, 2);  // disjoint from x's members (multiples of 4)
    const auto w = split_witness_series(x, 2048);
    REQUIRE(x.contains(0));
    for (index_t i = 0; i < 2048; ++i)
        if (y.contains(i)) CHECK(w.series.term(i).sign() <= 0);
}

TEST_CASE("greedy modulus partition trace") {
    const auto ip = d_bound_partition(alternating_harmonic(), 3);
    REQUIRE(ip.block_count() == 3);
    CHECK(ip.block_start(0) == 0);
    CHECK(ip.block_end(0) == 4);  // pushed to clear the modulus at 1/4
    CHECK(ip.block_start(1) == 4);
    // absolute sums over [4, 12) already reach 28271/27720 >= 1
    CHECK(ip.block_end(1) == 12);
    CHECK(range_sum(alternating_harmonic(), nullptr, 4, 12, SignFilter::AbsoluteValue) ==
          Rational(28271, 27720));
    CHECK(range_sum(alternating_harmonic(), nullptr, 4, 11, SignFilter::AbsoluteValue) <
          Rational(1));
    // every block: absolute sum >= 1; starts clear the modulus
    const auto& modulus = *alternating_harmonic().convergence_modulus();
    for (index_t n = 0; n < ip.block_count(); ++n) {
        CHECK(range_sum(alternating_harmonic(), nullptr, ip.block_start(n), ip.block_end(n),
                        SignFilter::AbsoluteValue) >= Rational(1));
        if (n >= 1) CHECK(ip.block_start(n) >= modulus(Rational(1, (n + 1) * (n + 1))));
    }
    CHECK(ip.block_start(2) >= 9);
}

TEST_CASE("greedy partition of a scaled series keeps its own invariants") {
    // scaling reaches absolute sum 1 sooner but tightens the modulus
    // constraint by the same factor, so compare against the scaled series'
    // own contract rather than the unscaled trace
    const auto doubled = scale(alternating_harmonic(), Rational(2));
    const auto scaled = d_bound_partition(doubled, 4);
    const auto& modulus = *doubled.convergence_modulus();
    for (index_t n = 0; n < 4; ++n) {
        CHECK(range_sum(doubled, nullptr, scaled.block_start(n), scaled.block_end(n),
                        SignFilter::AbsoluteValue) >= Rational(1));
        if (n >= 1) CHECK(scaled.block_start(n) >= modulus(Rational(1, (n + 1) * (n + 1))));
    }
}

TEST_CASE("greedy partition requires a modulus") {
    const Series bare([](index_t i) { return Rational(1, i + 1); }, "bare");
    CHECK_THROWS_AS(d_bound_partition(bare, 2), CertificateError);
    // stagnating absolute sums run into the scan cap
    CHECK_THROWS_AS(d_bound_partition(zero_series(), 1, 4096), Error);
}

TEST_CASE("decay-driven map") {
    const auto g = ac_decay_function(alternating_harmonic(), 8);
    CHECK(g[1] == 4);  // max(3, 2) rounded up to even
    const auto gb = ac_decay_function(basel_series(), 8);
    CHECK(gb[5] == 10);
    for (std::size_t n = 1; n < gb.size(); ++n) {
        CHECK(gb[n] >= gb[n - 1]);  // monotone
        CHECK(gb[n] % 2 == 0);      // range stays inside the evens
        CHECK(gb[n] >= 2 * n);
    }
    const Series bare([](index_t i) { return Rational(1, i + 1); }, "bare");
    CHECK_THROWS_AS(ac_decay_function(bare, 4), CertificateError);
}

TEST_CASE("series from a boundary map") {
    // f(n) = 2^n - 1
    const auto a = ac_series_from_f({0, 1, 3, 7, 15, 31});
    CHECK(a.term(0) == Rational(0));  // zero-filled first block
    CHECK(a.term(1) == Rational(-1));
    CHECK(a.term(2) == Rational(1));
    CHECK(a.term(3) == Rational(-1, 2));
    CHECK(a.term(4) == Rational(1, 2));
    CHECK(a.term(5) == Rational(-1, 2));
    CHECK(a.term(6) == Rational(1, 2));
    CHECK(a.term(31) == Rational(0));  // beyond the built blocks
    CHECK_THROWS_AS(ac_series_from_f({0, 3, 2}), Error);
    CHECK_THROWS_AS(ac_series_from_f({1, 2}), Error);
}

TEST_CASE("crossing-block lower bound for constructed pairs") {
    std::uint64_t s = 91;
    for (int round = 0; round < 10; ++round) {
        // fast boundary map and a periodic response set
        std::vector<index_t> f{0};
        index_t step = 1 + mix(s) % 3;
        while (f.size() < 40) {
            f.push_back(f.back() + step);
            step += 1 + mix(s) % 4;
        }
        const auto a = ac_series_from_f(f);
        const auto x = random_periodic(s);
        const auto g = increasing_bijection(x);
        // crossings: g(k) <= f(k), k_{n+1} > 2 k_n, clear of the zero block
        std::vector<index_t> crossings;
        index_t skip_zero_block = x.count_below_in(f[1], omega());
        for (index_t k = std::max<index_t>(skip_zero_block, 1); k + 1 < f.size(); ++k) {
            if (g(k) <= f[k] && (crossings.empty() || k > 2 * crossings.back()))
                crossings.push_back(k);
        }
        if (crossings.size() < 2) continue;
        for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
            const index_t lo = crossings[i], hi = crossings[i + 1];
            const Rational sum = tree_sum(lo, hi, [&](index_t idx) { return a.term(g(idx)).abs(); });
            CHECK(sum >= Rational(1, 2));
        }
    }
}

TEST_CASE("range and enumeration maps") {
    const auto bij = increasing_bijection(evens());
    CHECK(bij(0) == 0);
    CHECK(bij(5) == 10);
    CHECK(increasing_bijection(odds())(3) == 7);
    const auto r = range_set([](index_t n) { return 2 * n; }, "double");
    for (index_t i = 0; i < 40; ++i) CHECK(r.contains(i) == (i % 2 == 0));
    CHECK_THROWS_AS(increasing_bijection(finite_set({1})), CertificateError);
}

TEST_CASE("greedy finite adjustment follows the documented trace") {
    const auto picks =
        greedy_finite_adjust(alternating_harmonic(), Rational(1, 3), Rational(1, 2), 10000);
    CHECK(picks == std::vector<index_t>{0, 1, 3, 2, 5});
    Rational sum;
    for (index_t i : picks) sum += alternating_harmonic().term(i);
    CHECK(sum == Rational(5, 12));
}

TEST_CASE("greedy finite adjustment exactness on random targets") {
    std::uint64_t s = 130;
    for (int round = 0; round < 25; ++round) {
        const Rational lo(static_cast<long>(mix(s) % 300) - 150, 100);
        const Rational width(1 + mix(s) % 50, 100);
        const Rational hi = lo + width;
        const auto picks = greedy_finite_adjust(alternating_harmonic(), lo, hi, 100000);
        Rational sum;
        for (index_t i : picks) sum += alternating_harmonic().term(i);
        CHECK(lo < sum);
        CHECK(sum < hi);
        // picks are distinct
        std::vector<index_t> sorted = picks;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("greedy finite adjustment degenerate cases") {
    // an interval containing zero needs no picks
    CHECK(greedy_finite_adjust(alternating_harmonic(), Rational(-1, 10), Rational(1, 10), 1000)
              .empty());
    CHECK_THROWS(greedy_finite_adjust(alternating_harmonic(), Rational(1, 2), Rational(1, 3), 10));
    // one-signed series fail the conditionality proxy
    CHECK_THROWS_AS(greedy_finite_adjust(basel_series(), Rational(1, 3), Rational(1, 2), 4096),
                    Error);
    // flipped on the evens every term is negative: greedy uses only negatives
    const auto flipped = flip_signs_on(alternating_harmonic(), evens());
    CHECK_THROWS_AS(greedy_finite_adjust(flipped, Rational(-3, 2), Rational(-1), 4096), Error);
}

TEST_CASE("the three-set family") {
    const auto triple = ssn_n_triple();
    CHECK(!triple[0].contains(0));
    CHECK(triple[0].contains(1));
    CHECK(!triple[0].contains(3));
    CHECK(triple[1].contains(0));
    CHECK(!triple[1].contains(1));
    for (const auto& x : triple) {
        CHECK(x.certified_infinite());
        CHECK(x.certified_coinfinite());
        CHECK(x.count_below(300) == 200);  // density 2/3
    }
}

TEST_CASE("alternating builders") {
    const auto on_odds = alternating_on(odds(), 1000);
    CHECK(on_odds.term(1) == Rational(1));
    CHECK(on_odds.term(3) == Rational(-1, 2));
    CHECK(on_odds.term(5) == Rational(1, 3));
    CHECK(on_odds.term(0) == Rational(0));
    // prefix sums over omega stay in [0, 1]
    Rational acc;
    for (index_t i = 0; i < 1000; ++i) {
        acc += on_odds.term(i);
        CHECK(acc >= Rational(0));
        CHECK(acc <= Rational(1));
    }

    const auto mult3 = mod_class(3, 0);
    const auto a_set = symm_diff(mult3, finite_set({0})).with_certificates(Cert::Yes, Cert::Yes);
    const auto b_set = set_intersect(evens(), complement(mult3)).with_certificates(Cert::Yes, Cert::Yes);
    const auto two = alternating_on_two(a_set, b_set, 1000);
    CHECK(two.term(3) == Rational(1));
    CHECK(two.term(4) == Rational(-1));
    REQUIRE(two.known_limit().has_value());
    CHECK(two.known_limit()->value == Rational(0));
    CHECK_THROWS_AS(alternating_on_two(evens(), evens(), 100), Error);
}

TEST_CASE("two-set defeat dichotomy") {
    // disjoint union covering omega: case 2, picks interleave
    const auto d2 = two_set_defeat(evens(), odds(), 2048);
    CHECK(d2.dichotomy_case == 2);
    CHECK(d2.series.term(0) == Rational(1));
    // restricted to X_0 the series has no negative terms below the horizon
    for (index_t i = 0; i < 2048; ++i)
        if (evens().contains(i)) CHECK(d2.series.term(i).sign() >= 0);

    // equal sets leave an infinite outside: case 1, alternating on the odds
    const auto d1 = two_set_defeat(evens(), evens(), 2048);
    CHECK(d1.dichotomy_case == 1);
    const auto on_odds = alternating_on(odds(), 2048);
    for (index_t i = 0; i < 2048; ++i) CHECK(d1.series.term(i) == on_odds.term(i));

    // nested sets with a thin difference: dichotomy still witnessed via case 1
    const auto sub = mod_class(4, 0);
    const auto d3 = two_set_defeat(sub, evens(), 2048);
    CHECK(d3.dichotomy_case == 1);
}

TEST_CASE("builder moduli of the constructions are sound") {
    std::uint64_t s = 201;
    std::vector<Series> samples;
    samples.push_back(split_witness_series(random_periodic(s), 2048).series);
    samples.push_back(alternating_on(random_periodic(s), 2048));
    samples.push_back(diagonal_defeat({evens(), odds()}, 16, 8192).series);
    BairePoint y;
    y.blocks = {{1, 0}, {0, 2, 1, 0}};
    samples.push_back(covm_series_from_point(y, 6));
    samples.push_back(ac_series_from_f({0, 2, 5, 9, 14, 20, 27, 35, 44}));
    for (const auto& a : samples) {
        REQUIRE(a.convergence_modulus().has_value());
        for (const Rational eps : {Rational(1, 2), Rational(1, 5), Rational(2, 11)}) {
            const index_t n0 = (*a.convergence_modulus())(eps);
            for (int trial = 0; trial < 20; ++trial) {
                const index_t lo = n0 + mix(s) % 64;
                const index_t hi = lo + mix(s) % 128;
                CHECK(range_sum(a, nullptr, lo, hi).abs() < eps);
            }
        }
    }
}

TEST_CASE("oscillation partition and absorbing blocks") {
    const auto dd = diagonal_defeat({evens(), odds()}, 40, 32768);
    DiagnosticsConfig cfg;
    cfg.horizon = dd.blocks.back().hi;
    cfg.tail_fraction = Rational(1, 4);
    cfg.escape_margin = Rational(1, 4);
    cfg.oscillation_gap = Rational(1, 2);
    const auto j = oscillation_interval_partition(dd.series, evens(), cfg, 4);
    CHECK(j.boundary(0) == 0);
    CHECK(j.block_count() >= 4);

    // a partition absorbs itself everywhere
    const auto self = blocks_absorbing(j, j, j.coverage_end());
    for (index_t k = 0; k < j.block_count(); ++k)
        if (j.block_end(k) <= j.coverage_end()) CHECK(self.contains(k));

    // singleton sources fit everywhere; length-3 targets never hold 10-blocks
    const auto singles = singleton_partition(100);
    const auto wide = IntervalPartition::from_boundaries({0, 10, 20, 30, 40, 50});
    const auto all = blocks_absorbing(singles, wide, 50);
    for (index_t k = 0; k < 5; ++k) CHECK(all.contains(k));
    std::vector<index_t> threes{0};
    while (threes.back() < 60) threes.push_back(threes.back() + 3);
    const auto none = blocks_absorbing(wide, IntervalPartition::from_boundaries(threes), 60);
    for (index_t k = 0; k < 20; ++k) CHECK(!none.contains(k));
}

TEST_CASE("composed response") {
    const auto singles = singleton_partition(64);
    const auto with_all = compose_response(evens(), singles, omega());
    const auto with_none = compose_response(evens(), singles, empty_set());
    for (index_t i = 0; i < 64; ++i) {
        CHECK(with_all.contains(i) == evens().contains(i));
        CHECK(with_none.contains(i) == !evens().contains(i));
    }
    // flipping the block selector flips membership exactly on covered indices
    std::uint64_t s = 301;
    for (int round = 0; round < 10; ++round) {
        const auto x = random_periodic(s);
        const auto sel = random_periodic(s);
        std::vector<index_t> bounds{0};
        while (bounds.back() < 256) bounds.push_back(bounds.back() + 1 + mix(s) % 7);
        const auto ip = IntervalPartition::from_boundaries(bounds);
        const auto c1 = compose_response(x, ip, sel);
        const auto c2 = compose_response(x, ip, complement(sel));
        for (index_t i = 0; i < 256; ++i) CHECK(c1.contains(i) != c2.contains(i));
    }
}
