#include <stdexcept>

#include "subseries/constructions.hpp"
#include "subseries/errors.hpp"
#include "subseries/interval_partition.hpp"
#include "subseries/relsys.hpp"

namespace subseries {

namespace {

/// Deterministic, platform-independent generator for the samplers.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    bool coin() { return next() & 1; }
};

/// Eventually periodic set with a mixed cycle (never all ones or all zeros).
IndexSet sample_periodic(SplitMix& rng, index_t max_cycle = 64) {
    const index_t prefix_len = rng.below(5);
    const index_t cycle_len = 2 + rng.below(max_cycle - 1);
    std::vector<bool> prefix(prefix_len), cycle(cycle_len);
    for (index_t i = 0; i < prefix_len; ++i) prefix[i] = rng.coin();
    for (index_t i = 0; i < cycle_len; ++i) cycle[i] = rng.coin();
    const index_t a = rng.below(cycle_len);
    index_t b = rng.below(cycle_len - 1);
    if (b >= a) ++b;
    cycle[a] = true;
    cycle[b] = false;
    return periodic_set(std::move(prefix), std::move(cycle));
}

/// Union of 1..p-1 residue classes mod p; always infinite and coinfinite.
IndexSet sample_residue_union(SplitMix& rng) {
    const index_t p = 2 + rng.below(7);
    const index_t count = 1 + rng.below(p - 1);
    std::vector<bool> chosen(p, false);
    for (index_t c = 0; c < count; ++c) {
        index_t r = rng.below(p);
        while (chosen[r]) r = (r + 1) % p;
        chosen[r] = true;
    }
    std::string desc = "mod(" + std::to_string(p) + ",{";
    bool first = true;
    for (index_t r = 0; r < p; ++r)
        if (chosen[r]) {
            if (!first) desc += ",";
            desc += std::to_string(r);
            first = false;
        }
    desc += "})";
    auto shared = std::make_shared<std::vector<bool>>(std::move(chosen));
    return from_predicate([shared, p](index_t i) { return (*shared)[i % p]; }, Cert::Yes,
                          Cert::Yes, std::move(desc));
}

IndexSet sample_challenge_set(SplitMix& rng) {
    return rng.below(5) < 2 ? sample_residue_union(rng) : sample_periodic(rng);
}

Rational sample_nonzero_rational(SplitMix& rng) {
    const long num = 1 + static_cast<long>(rng.below(8));
    const unsigned long den = 1 + rng.below(4);
    Rational q(num, den);
    return rng.coin() ? q : -q;
}

/// Modulus-certified conditionally convergent challenge series. Truncated
/// builders get mass well past the working horizon so greedy partitions
/// opening near the horizon still find absolute sum 1.
Series sample_certified_series(SplitMix& rng, index_t horizon) {
    const index_t build = 8 * horizon;
    switch (rng.below(5)) {
        case 0: return alternating_harmonic();
        case 1: return scale(alternating_harmonic(), sample_nonzero_rational(rng));
        case 2: return split_witness_series(sample_periodic(rng), build).series;
        case 3: return alternating_on(sample_periodic(rng), build);
        default:
            return perturb_quadratic(alternating_harmonic(), sample_nonzero_rational(rng));
    }
}

/// Response partition covering at least `coverage`.
IntervalPartition sample_partition(SplitMix& rng, index_t coverage) {
    const auto flavour = rng.below(100);
    std::vector<index_t> bounds{0};
    if (flavour < 8) {  // singletons
        return singleton_partition(coverage);
    }
    if (flavour < 55) {
        // steep geometric growth: blocks wide enough (ratio beyond e^2) to
        // contain the ratio-e blocks of modulus partitions of our builders
        index_t next = 4 + rng.below(9);
        const index_t ratio = 7 + rng.below(3);
        while (bounds.back() < coverage) {
            bounds.push_back(next);
            next *= ratio;
        }
    } else {  // bounded random increments
        const index_t max_step = 2 + rng.below(63);
        while (bounds.back() < coverage) bounds.push_back(bounds.back() + 1 + rng.below(max_step));
    }
    return IntervalPartition::from_boundaries(std::move(bounds), false, "sampled");
}

TriVerdict classify_to_convergent(VerdictKind k) {
    switch (k) {
        case VerdictKind::Converged: return TriVerdict::Holds;
        case VerdictKind::TendsPlusInf:
        case VerdictKind::TendsMinusInf:
        case VerdictKind::Oscillates: return TriVerdict::Fails;
        default: return TriVerdict::Unknown;
    }
}

}  // namespace

RelationSpec relation_subseries_convergent() {
    return RelationSpec{"S_c", [](const std::any& ch, const std::any& rs,
                                  const DiagnosticsConfig& cfg) {
                            const auto& a = std::any_cast<const Series&>(ch);
                            const auto& x = std::any_cast<const IndexSet&>(rs);
                            return classify_to_convergent(classify(a, x, cfg).kind);
                        }};
}

RelationSpec relation_subseries_conditionally_convergent() {
    return RelationSpec{"S_cc", [](const std::any& ch, const std::any& rs,
                                   const DiagnosticsConfig& cfg) {
                            const auto& a = std::any_cast<const Series&>(ch);
                            const auto& x = std::any_cast<const IndexSet&>(rs);
                            const auto [verdict, conditional] =
                                classify_with_conditionality(a, x, cfg);
                            const TriVerdict conv = classify_to_convergent(verdict.kind);
                            if (conv == TriVerdict::Fails) return TriVerdict::Fails;
                            if (conv == TriVerdict::Holds) return conditional;
                            return TriVerdict::Unknown;
                        }};
}

RelationSpec relation_subseries_tends_to_infinity() {
    return RelationSpec{"S_i", [](const std::any& ch, const std::any& rs,
                                  const DiagnosticsConfig& cfg) {
                            const auto& a = std::any_cast<const Series&>(ch);
                            const auto& x = std::any_cast<const IndexSet&>(rs);
                            switch (classify(a, x, cfg).kind) {
                                case VerdictKind::TendsPlusInf:
                                case VerdictKind::TendsMinusInf: return TriVerdict::Holds;
                                case VerdictKind::Converged:
                                case VerdictKind::Oscillates: return TriVerdict::Fails;
                                default: return TriVerdict::Unknown;
                            }
                        }};
}

RelationSpec relation_split_by() {
    return RelationSpec{"split_by", [](const std::any& ch, const std::any& rs,
                                       const DiagnosticsConfig& cfg) {
                            const auto& x = std::any_cast<const IndexSet&>(ch);
                            const auto& y = std::any_cast<const IndexSet&>(rs);
                            return is_split_by(x, y, cfg.horizon, 10);
                        }};
}

RelationSpec relation_partition_dominates() {
    return RelationSpec{"ip_dominates_star", [](const std::any& ch, const std::any& rs,
                                                const DiagnosticsConfig& cfg) {
                            const auto& i = std::any_cast<const IntervalPartition&>(ch);
                            const auto& j = std::any_cast<const IntervalPartition&>(rs);
                            return ip_dominates(i, j, cfg.horizon, DominanceMode::Star, 5);
                        }};
}

namespace {

std::pair<Challenge, Response> splitting_sampler(std::uint64_t seed,
                                                 const DiagnosticsConfig&) {
    SplitMix rng(seed);
    IndexSet x = sample_challenge_set(rng);
    IndexSet y = sample_periodic(rng);
    Challenge ch{x, x.description()};
    Response rs{y, y.description()};
    return {std::move(ch), std::move(rs)};
}

std::pair<Challenge, Response> bcc_d_sampler(std::uint64_t seed, const DiagnosticsConfig& cfg) {
    SplitMix rng(seed);
    Series a = sample_certified_series(rng, cfg.horizon);
    IntervalPartition j = sample_partition(rng, cfg.horizon);
    Challenge ch{a, a.description()};
    Response rs{j, j.description() + "[" + std::to_string(j.block_count()) + " blocks]"};
    return {std::move(ch), std::move(rs)};
}

std::pair<Challenge, Response> series_set_sampler(std::uint64_t seed,
                                                  const DiagnosticsConfig& cfg) {
    SplitMix rng(seed);
    Series a = sample_certified_series(rng, cfg.horizon);
    IndexSet y = sample_periodic(rng);
    Challenge ch{a, a.description()};
    Response rs{y, y.description()};
    return {std::move(ch), std::move(rs)};
}

}  // namespace

TukeyCandidate splitting_candidate() {
    TukeyCandidate c;
    c.name = "splitting";
    c.source = relation_split_by();
    c.target = relation_subseries_conditionally_convergent();
    c.rho_minus = [](const std::any& x, const DiagnosticsConfig& cfg) -> std::any {
        return split_witness_series(std::any_cast<const IndexSet&>(x), cfg.horizon).series;
    };
    c.rho_plus = [](const std::any& y, const DiagnosticsConfig&) { return y; };
    c.sampler = splitting_sampler;
    return c;
}

TukeyCandidate splitting_candidate_control() {
    TukeyCandidate c = splitting_candidate();
    c.name = "splitting-control";
    // plausible bug: the response translation drops the response
    c.rho_plus = [](const std::any&, const DiagnosticsConfig&) -> std::any { return evens(); };
    return c;
}

TukeyCandidate bcc_d_candidate() {
    TukeyCandidate c;
    c.name = "bcc-d";
    c.source = relation_subseries_conditionally_convergent();
    c.target = relation_partition_dominates();
    c.rho_minus = [](const std::any& a, const DiagnosticsConfig& cfg) -> std::any {
        return d_bound_partition_covering(std::any_cast<const Series&>(a), cfg.horizon, 4096);
    };
    c.rho_plus = [](const std::any& j, const DiagnosticsConfig&) -> std::any {
        return even_blocks(std::any_cast<const IntervalPartition&>(j));
    };
    c.sampler = bcc_d_sampler;
    return c;
}

TukeyCandidate bcc_d_candidate_control() {
    TukeyCandidate c = bcc_d_candidate();
    c.name = "bcc-d-control";
    // plausible bug: forgets the modulus-driven greedy entirely
    c.rho_minus = [](const std::any&, const DiagnosticsConfig& cfg) -> std::any {
        return singleton_partition(cfg.horizon);
    };
    return c;
}

TukeyCandidate inclusion_cc_c_candidate() {
    return inclusion_connection(relation_subseries_convergent(),
                                relation_subseries_conditionally_convergent(), "inclusion-cc-c",
                                series_set_sampler);
}

TukeyCandidate inclusion_cc_c_candidate_control() {
    return inclusion_connection(relation_subseries_convergent(),
                                relation_subseries_tends_to_infinity(),
                                "inclusion-cc-c-control", series_set_sampler);
}

TukeyCandidate candidate_by_name(const std::string& name, bool control) {
    if (name == "splitting") return control ? splitting_candidate_control() : splitting_candidate();
    if (name == "bcc-d") return control ? bcc_d_candidate_control() : bcc_d_candidate();
    if (name == "inclusion-cc-c")
        return control ? inclusion_cc_c_candidate_control() : inclusion_cc_c_candidate();
    throw Error("unknown candidate: " + name);
}

std::vector<std::string> candidate_names() { return {"splitting", "bcc-d", "inclusion-cc-c"}; }

}  // namespace subseries
