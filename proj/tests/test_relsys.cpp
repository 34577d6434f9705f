#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subseries/relsys.hpp"

using namespace subseries;

namespace {

const DiagnosticsConfig& toy_cfg() {
    static DiagnosticsConfig cfg;
    return cfg;
}

RelationSpec toy_equality() {
    return RelationSpec{"eq", [](const std::any& c, const std::any& r, const DiagnosticsConfig&) {
                            return std::any_cast<int>(c) == std::any_cast<int>(r)
                                       ? TriVerdict::Holds
                                       : TriVerdict::Fails;
                        }};
}

RelationSpec toy_inequality() {
    return RelationSpec{"neq", [](const std::any& c, const std::any& r, const DiagnosticsConfig&) {
                            return std::any_cast<int>(c) != std::any_cast<int>(r)
                                       ? TriVerdict::Holds
                                       : TriVerdict::Fails;
                        }};
}

RelationSpec toy_unknown() {
    return RelationSpec{"unk", [](const std::any&, const std::any&, const DiagnosticsConfig&) {
                            return TriVerdict::Unknown;
                        }};
}

DiagnosticsConfig harness_cfg(index_t horizon) {
    DiagnosticsConfig cfg;
    cfg.horizon = horizon;
    cfg.tolerance = Rational(1, 100);
    cfg.escape_margin = Rational(1, 4);
    cfg.oscillation_gap = Rational(1, 10);
    cfg.revisit_count = 3;
    return cfg;
}

}  // namespace

TEST_CASE("dual negates and swaps; double dual is the identity") {
    const auto eq = toy_equality();
    const auto d = dual(eq);
    const auto dd = dual(d);
    for (int x : {0, 1})
        for (int y : {0, 1}) {
            CHECK(d.evaluate(std::any(x), std::any(y), toy_cfg()) ==
                  negate(eq.evaluate(std::any(y), std::any(x), toy_cfg())));
            CHECK(dd.evaluate(std::any(x), std::any(y), toy_cfg()) ==
                  eq.evaluate(std::any(x), std::any(y), toy_cfg()));
        }
    // equality's dual holds exactly on unequal pairs
    CHECK(d.evaluate(std::any(0), std::any(1), toy_cfg()) == TriVerdict::Holds);
    CHECK(d.evaluate(std::any(1), std::any(1), toy_cfg()) == TriVerdict::Fails);
    // the dual of an all-Unknown relation is all-Unknown
    const auto du = dual(toy_unknown());
    CHECK(du.evaluate(std::any(0), std::any(0), toy_cfg()) == TriVerdict::Unknown);
}

TEST_CASE("sequential composition truth table") {
    const auto k = sequential_compose(toy_equality(), toy_inequality());
    ComposedChallenge ch{std::any(0), [](const std::any& y) { return y; }};
    auto eval = [&](int y, int y2) {
        return k.evaluate(std::any(ch), std::any(ComposedResponse{std::any(y), std::any(y2)}),
                          toy_cfg());
    };
    CHECK(eval(0, 1) == TriVerdict::Holds);  // 0 == 0 and f(0)=0 != 1
    CHECK(eval(0, 0) == TriVerdict::Fails);  // second coordinate agrees
    CHECK(eval(1, 1) == TriVerdict::Fails);  // first coordinate already fails
    // Unknown propagates without masking a Fails
    const auto ku = sequential_compose(toy_unknown(), toy_inequality());
    CHECK(ku.evaluate(std::any(ch), std::any(ComposedResponse{std::any(0), std::any(1)}),
                      toy_cfg()) == TriVerdict::Unknown);
    CHECK(ku.evaluate(std::any(ch), std::any(ComposedResponse{std::any(0), std::any(0)}),
                      toy_cfg()) == TriVerdict::Fails);
}

TEST_CASE("composition is associative up to repackaging") {
    const auto left =
        sequential_compose(sequential_compose(toy_equality(), toy_inequality()), toy_equality());
    const auto right =
        sequential_compose(toy_equality(), sequential_compose(toy_inequality(), toy_equality()));
    auto identity = [](const std::any& y) { return y; };
    for (int y1 : {0, 1})
        for (int y2 : {0, 1})
            for (int y3 : {0, 1}) {
                ComposedChallenge inner{std::any(0), identity};
                ComposedChallenge left_ch{
                    std::any(inner), [](const std::any& r) -> std::any {
                        return std::any_cast<const ComposedResponse&>(r).second;
                    }};
                ComposedResponse left_rs{std::any(ComposedResponse{std::any(y1), std::any(y2)}),
                                         std::any(y3)};

                ComposedChallenge right_ch{std::any(0),
                                           [identity](const std::any& y) -> std::any {
                                               return ComposedChallenge{y, identity};
                                           }};
                ComposedResponse right_rs{std::any(y1),
                                          std::any(ComposedResponse{std::any(y2), std::any(y3)})};

                CHECK(left.evaluate(std::any(left_ch), std::any(left_rs), toy_cfg()) ==
                      right.evaluate(std::any(right_ch), std::any(right_rs), toy_cfg()));
            }
}

TEST_CASE("inclusion connections never violate structurally") {
    const auto cand = inclusion_cc_c_candidate();
    const auto report = verify_tukey(cand, 77, 40, harness_cfg(4096), 2);
    CHECK(report.violations.empty());
    CHECK(report.records.size() == 40);
    // whenever the conditionally-convergent proxy holds, the convergent one does
    for (const auto& rec : report.records)
        if (rec.target == TriVerdict::Holds) CHECK(rec.source == TriVerdict::Holds);
}

TEST_CASE("broken inclusion sibling is caught") {
    const auto report =
        verify_tukey(inclusion_cc_c_candidate_control(), 77, 40, harness_cfg(4096), 2);
    CHECK(!report.violations.empty());
    CHECK(!report.pass());
}

TEST_CASE("splitting candidate passes and its control fails") {
    const auto cfg = harness_cfg(4096);
    const auto good = verify_tukey(splitting_candidate(), 20250101, 60, cfg, 2);
    CHECK(good.violations.empty());
    CHECK(good.decisive_fraction() >= Rational(1, 2));
    CHECK(good.pass());
    const auto bad = verify_tukey(splitting_candidate_control(), 20250101, 60, cfg, 2);
    CHECK(!bad.violations.empty());
    CHECK(!bad.pass());
}

TEST_CASE("violations replay from their seeds") {
    const auto cfg = harness_cfg(4096);
    const auto cand = splitting_candidate_control();
    const auto report = verify_tukey(cand, 20250101, 60, cfg, 2);
    REQUIRE(!report.violations.empty());
    for (const auto& v : report.violations) {
        auto [challenge, response] = cand.sampler(v.seed, cfg);
        CHECK(challenge.spec == v.challenge);
        CHECK(response.spec == v.response);
        const auto target =
            cand.target.evaluate(cand.rho_minus(challenge.value, cfg), response.value, cfg);
        const auto source =
            cand.source.evaluate(challenge.value, cand.rho_plus(response.value, cfg), cfg);
        CHECK(target == v.target);
        CHECK(source == v.source);
        CHECK(target == TriVerdict::Holds);
        CHECK(source == TriVerdict::Fails);
    }
}

TEST_CASE("reports are deterministic and thread-count independent") {
    const auto cfg = harness_cfg(2048);
    const auto a = verify_tukey(splitting_candidate(), 5, 24, cfg, 1);
    const auto b = verify_tukey(splitting_candidate(), 5, 24, cfg, 2);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].seed == b.records[i].seed);
        CHECK(a.records[i].challenge == b.records[i].challenge);
        CHECK(a.records[i].source == b.records[i].source);
        CHECK(a.records[i].target == b.records[i].target);
    }
}

TEST_CASE("report JSON carries the documented fields") {
    const auto report = verify_tukey(splitting_candidate(), 9, 8, harness_cfg(2048), 2);
    const std::string j = report.to_json();
    for (const char* key :
         {"\"candidate\"", "\"master_seed\"", "\"trials\"", "\"cfg\"", "\"counts\"", "\"holds\"",
          "\"fails\"", "\"unknown\"", "\"violations\"", "\"pass\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("candidate registry") {
    for (const auto& name : candidate_names()) {
        CHECK(candidate_by_name(name, false).name == name);
        CHECK(candidate_by_name(name, true).name == name + "-control");
    }
    CHECK_THROWS(candidate_by_name("nope", false));
}

TEST_CASE("trials parameter is validated") {
    CHECK_THROWS(verify_tukey(splitting_candidate(), 1, 0, harness_cfg(2048)));
}
