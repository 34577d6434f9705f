#include "subseries/relsys.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

namespace subseries {

RelationSpec dual(const RelationSpec& r) {
    auto eval = r.evaluate;
    return RelationSpec{
        "dual(" + r.name + ")",
        [eval](const std::any& challenge, const std::any& response, const DiagnosticsConfig& cfg) {
            return negate(eval(response, challenge, cfg));
        }};
}

RelationSpec sequential_compose(const RelationSpec& r1, const RelationSpec& r2) {
    auto e1 = r1.evaluate;
    auto e2 = r2.evaluate;
    return RelationSpec{
        r1.name + ";" + r2.name,
        [e1, e2](const std::any& challenge, const std::any& response,
                 const DiagnosticsConfig& cfg) {
            const auto& ch = std::any_cast<const ComposedChallenge&>(challenge);
            const auto& rs = std::any_cast<const ComposedResponse&>(response);
            const TriVerdict first = e1(ch.first, rs.first, cfg);
            const TriVerdict second = e2(ch.continuation(rs.first), rs.second, cfg);
            return conjoin(first, second);
        }};
}

TukeyCandidate inclusion_connection(
    RelationSpec sub, RelationSpec super, std::string name,
    std::function<std::pair<Challenge, Response>(std::uint64_t, const DiagnosticsConfig&)>
        sampler) {
    TukeyCandidate c;
    c.name = std::move(name);
    c.source = std::move(sub);
    c.target = std::move(super);
    c.rho_minus = [](const std::any& x, const DiagnosticsConfig&) { return x; };
    c.rho_plus = [](const std::any& y, const DiagnosticsConfig&) { return y; };
    c.sampler = std::move(sampler);
    return c;
}

Rational VerificationReport::decisive_fraction() const {
    if (records.empty()) return Rational(0);
    return Rational(static_cast<long>(source_holds + source_fails)) /
           Rational(static_cast<long>(records.size()));
}

bool VerificationReport::pass() const {
    return violations.empty() && decisive_fraction() >= Rational(1, 2);
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["candidate"] = candidate;
    j["master_seed"] = master_seed;
    j["trials"] = trials;
    j["cfg"] = {{"horizon", cfg.horizon},
                {"tail_fraction", cfg.tail_fraction.to_string()},
                {"tolerance", cfg.tolerance.to_string()},
                {"oscillation_gap", cfg.oscillation_gap.to_string()},
                {"revisit_count", cfg.revisit_count},
                {"escape_margin", cfg.escape_margin.to_string()}};
    j["counts"] = {{"holds", source_holds}, {"fails", source_fails}, {"unknown", source_unknown}};
    j["target_counts"] = {
        {"holds", target_holds}, {"fails", target_fails}, {"unknown", target_unknown}};
    j["decisive_fraction"] = decisive_fraction().to_string();
    j["violations"] = nlohmann::json::array();
    for (const auto& t : violations)
        j["violations"].push_back({{"seed", t.seed},
                                   {"challenge", t.challenge},
                                   {"response", t.response},
                                   {"source", std::string(to_string(t.source))},
                                   {"target", std::string(to_string(t.target))}});
    j["pass"] = pass();
    return j.dump(2);
}

namespace {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

VerificationReport verify_tukey(const TukeyCandidate& candidate, std::uint64_t master_seed,
                                std::uint64_t trials, const DiagnosticsConfig& cfg,
                                unsigned threads) {
    if (trials == 0) throw std::invalid_argument("verify_tukey: trials must be >= 1");
    cfg.validate();
    VerificationReport report;
    report.candidate = candidate.name;
    report.master_seed = master_seed;
    report.trials = trials;
    report.cfg = cfg;
    report.records.resize(trials);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= trials) return;
            const std::uint64_t seed = mix_seed(master_seed, i);
            auto [challenge, response] = candidate.sampler(seed, cfg);
            TrialRecord rec;
            rec.seed = seed;
            rec.challenge = challenge.spec;
            rec.response = response.spec;
            rec.target = candidate.target.evaluate(candidate.rho_minus(challenge.value, cfg),
                                                   response.value, cfg);
            rec.source = candidate.source.evaluate(challenge.value,
                                                   candidate.rho_plus(response.value, cfg), cfg);
            report.records[i] = std::move(rec);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& rec : report.records) {
        switch (rec.source) {
            case TriVerdict::Holds: ++report.source_holds; break;
            case TriVerdict::Fails: ++report.source_fails; break;
            default: ++report.source_unknown;
        }
        switch (rec.target) {
            case TriVerdict::Holds: ++report.target_holds; break;
            case TriVerdict::Fails: ++report.target_fails; break;
            default: ++report.target_unknown;
        }
        if (rec.target == TriVerdict::Holds && rec.source == TriVerdict::Fails)
            report.violations.push_back(rec);
    }
    return report;
}

}  // namespace subseries
