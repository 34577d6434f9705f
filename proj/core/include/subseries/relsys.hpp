#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "subseries/classify.hpp"
#include "subseries/verdict.hpp"

namespace subseries {

/// A relational system's relation, evaluated at finite horizon with
/// three-valued semantics. Challenge/response payloads are type-erased;
/// each relation documents what it expects. evaluate must be pure.
struct RelationSpec {
    std::string name;
    std::function<TriVerdict(const std::any& challenge, const std::any& response,
                             const DiagnosticsConfig&)>
        evaluate;
};

/// Swaps challenge and response roles and negates verdicts.
RelationSpec dual(const RelationSpec& r);

/// Composite challenge for a sequential composition: a first-system
/// challenge plus a map from first-system responses to second-system
/// challenges.
struct ComposedChallenge {
    std::any first;
    std::function<std::any(const std::any&)> continuation;
};
struct ComposedResponse {
    std::any first, second;
};

/// Sequential composition: relation holds when both components hold;
/// verdicts conjoin (Fails dominates, then Unknown).
RelationSpec sequential_compose(const RelationSpec& r1, const RelationSpec& r2);

struct Challenge {
    std::any value;
    std::string spec;
};
struct Response {
    std::any value;
    std::string spec;
};

/// Candidate Tukey connection: translation maps between a source and a
/// target system plus a seeded sampler of (source challenge, target
/// response) pairs. Maps receive the config so constructions can pick
/// working horizons from it.
struct TukeyCandidate {
    std::string name;
    RelationSpec source, target;
    std::function<std::any(const std::any&, const DiagnosticsConfig&)> rho_minus;
    std::function<std::any(const std::any&, const DiagnosticsConfig&)> rho_plus;
    std::function<std::pair<Challenge, Response>(std::uint64_t seed, const DiagnosticsConfig&)>
        sampler;
};

/// Identity-maps candidate for a verdict-level inclusion: whenever `sub`
/// holds, `super` is expected to hold.
TukeyCandidate inclusion_connection(
    RelationSpec sub, RelationSpec super, std::string name,
    std::function<std::pair<Challenge, Response>(std::uint64_t, const DiagnosticsConfig&)> sampler);

struct TrialRecord {
    std::uint64_t seed = 0;
    std::string challenge, response;
    TriVerdict source = TriVerdict::Unknown;
    TriVerdict target = TriVerdict::Unknown;
};

struct VerificationReport {
    std::string candidate;
    std::uint64_t master_seed = 0;
    std::uint64_t trials = 0;
    DiagnosticsConfig cfg;
    std::vector<TrialRecord> records;     // every trial, in seed order
    std::vector<TrialRecord> violations;  // target Holds while source Fails
    std::uint64_t source_holds = 0, source_fails = 0, source_unknown = 0;
    std::uint64_t target_holds = 0, target_fails = 0, target_unknown = 0;

    /// Fraction of trials with a decisive source verdict.
    Rational decisive_fraction() const;
    /// Zero violations and at least half the trials decisive.
    bool pass() const;
    std::string to_json() const;
};

/// Runs the contract check per trial: a violation is recorded exactly when
/// the target relation holds and the source relation fails; Unknowns are
/// tallied, never violations. Trials are independent and run on `threads`
/// workers (0 = hardware concurrency); the report is deterministic for a
/// fixed (master_seed, trials, cfg).
VerificationReport verify_tukey(const TukeyCandidate& candidate, std::uint64_t master_seed,
                                std::uint64_t trials, const DiagnosticsConfig& cfg,
                                unsigned threads = 0);

// --- shipped relations, candidates and their negative controls ---------------

/// (Series a, IndexSet X): is the subseries over X convergent / conditionally
/// convergent / tending to an infinite limit?
RelationSpec relation_subseries_convergent();
RelationSpec relation_subseries_conditionally_convergent();
RelationSpec relation_subseries_tends_to_infinity();
/// (IndexSet X, IndexSet Y): is X split by Y?
RelationSpec relation_split_by();
/// (IntervalPartition I, IntervalPartition J): does J dominate I (star mode)?
RelationSpec relation_partition_dominates();

/// Splitting-number connection: X -> split-witness series, response identity.
TukeyCandidate splitting_candidate();
/// Broken sibling: the response translation ignores the response entirely.
TukeyCandidate splitting_candidate_control();

/// Conditional-convergence vs domination connection: series -> greedy
/// modulus partition, partition -> union of its even blocks.
TukeyCandidate bcc_d_candidate();
/// Broken sibling: the challenge translation ignores the modulus and maps
/// every series to the singleton partition.
TukeyCandidate bcc_d_candidate_control();

/// Verdict-level inclusion: conditionally convergent implies convergent.
TukeyCandidate inclusion_cc_c_candidate();
/// Broken sibling: pretends tending-to-infinity implies convergent.
TukeyCandidate inclusion_cc_c_candidate_control();

/// Lookup by CLI name ("splitting", "bcc-d", "inclusion-cc-c").
TukeyCandidate candidate_by_name(const std::string& name, bool control);
std::vector<std::string> candidate_names();

}  // namespace subseries
