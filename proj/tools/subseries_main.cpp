#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "subseries/classify.hpp"
#include "subseries/constructions.hpp"
#include "subseries/errors.hpp"
#include "subseries/relsys.hpp"
#include "subseries/spec_lang.hpp"

using namespace subseries;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct DiagFlags {
    std::string horizon = "100000";
    std::string tail = "1/10", tol = "1/1000", gap = "1/10", margin = "1";
    std::uint64_t revisit = 3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--horizon", horizon, "evaluation horizon (naturals below it are summed)");
        cmd->add_option("--tail", tail, "tail-window fraction, rational p/q in (0,1)");
        cmd->add_option("--tol", tol, "convergence band tolerance, rational");
        cmd->add_option("--gap", gap, "oscillation gap, rational");
        cmd->add_option("--revisit", revisit, "extreme revisit count for oscillation");
        cmd->add_option("--margin", margin, "escape margin, rational");
    }

    static Rational parse_rational(const std::string& text, const char* what) {
        auto q = Rational::parse(text);
        if (!q) throw Error(std::string("bad rational for ") + what + ": \"" + text + "\"");
        return *q;
    }

    DiagnosticsConfig to_config() const {
        DiagnosticsConfig cfg;
        cfg.horizon = std::stoull(horizon);
        cfg.tail_fraction = parse_rational(tail, "--tail");
        cfg.tolerance = parse_rational(tol, "--tol");
        cfg.oscillation_gap = parse_rational(gap, "--gap");
        cfg.revisit_count = revisit;
        cfg.escape_margin = parse_rational(margin, "--margin");
        cfg.validate();
        return cfg;
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

json verdict_json(const Verdict& v) {
    json j;
    j["kind"] = std::string(to_string(v.kind));
    if (v.estimate) {
        j["estimate"] = v.estimate->to_string();
        j["estimate_decimal"] = v.estimate->to_decimal(12);
    }
    if (v.band) j["band"] = {v.band->first.to_string(), v.band->second.to_string()};
    if (v.escape) j["escape"] = v.escape->to_string();
    j["evidence"] = {{"dense", v.evidence.dense},
                     {"grid_points", v.evidence.grid_points},
                     {"head_points", v.evidence.head_points},
                     {"tail_points", v.evidence.tail_points},
                     {"tail_min", v.evidence.tail_min.to_string()},
                     {"tail_max", v.evidence.tail_max.to_string()}};
    return j;
}

void print_verdict(const Verdict& v, TriVerdict conditional) {
    std::cout << "kind: " << to_string(v.kind) << "\n";
    if (v.estimate)
        std::cout << "estimate: " << v.estimate->to_string() << " ("
                  << v.estimate->to_decimal(12) << ")\n";
    if (v.band)
        std::cout << "band: [" << v.band->first.to_decimal(12) << ", "
                  << v.band->second.to_decimal(12) << "]\n";
    if (v.escape) std::cout << "escape: " << v.escape->to_decimal(12) << "\n";
    std::cout << "conditional: " << to_string(conditional) << "\n";
    std::cout << "evidence: " << (v.evidence.dense ? "dense" : "sampled") << ", "
              << v.evidence.grid_points << " grid points\n";
}

void write_csv(const std::string& path, const Series& a, const IndexSet& x, index_t horizon) {
    const auto tr = build_trace(a, x, horizon);
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "k,sum_exact,sum_decimal\n";
    for (index_t k = 0; k <= tr.horizon; ++k)
        out << k << "," << tr.sums[k].to_string() << "," << tr.sums[k].to_decimal(12) << "\n";
}

std::string naturals_list(const std::vector<index_t>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

std::string point_spec(const BairePoint& y) {
    std::string out = "[";
    for (std::size_t n = 0; n < y.blocks.size(); ++n) {
        if (n) out += ",";
        out += naturals_list(y.blocks[n]);
    }
    return out + "]";
}

BairePoint parse_point(const std::string& text) {
    const auto e = lang::parse_spec("covm_from_y(" + text + ")");
    BairePoint y;
    for (const auto& blk : e.args.at(0).args) {
        std::vector<index_t> entries;
        for (const auto& item : blk.args) entries.push_back(std::stoull(item.name));
        y.blocks.push_back(std::move(entries));
    }
    y.validate();
    return y;
}

int run_app(int argc, char** argv) {
    CLI::App app{"exact-rational laboratory for subseries experiments"};
    app.require_subcommand(1);

    // --- series eval | classify ------------------------------------------
    auto* series_cmd = app.add_subcommand("series", "evaluate or classify a series");
    series_cmd->require_subcommand(1);

    std::string eval_series;
    std::uint64_t eval_count = 10;
    std::uint64_t eval_build_horizon = 100000;
    auto* eval_cmd = series_cmd->add_subcommand("eval", "print leading terms");
    eval_cmd->add_option("--series", eval_series, "series spec")->required();
    eval_cmd->add_option("--count", eval_count, "number of terms to print");
    eval_cmd->add_option("--horizon", eval_build_horizon, "construction horizon");
    eval_cmd->callback([&] {
        const Series a = lang::build_series(eval_series, eval_build_horizon);
        for (index_t i = 0; i < eval_count; ++i) {
            const Rational t = a.term(i);
            std::cout << i << ": " << t.to_string() << " (" << t.to_decimal(12) << ")\n";
        }
    });

    std::string cls_series, cls_set;
    std::string cls_csv, cls_json;
    DiagFlags cls_flags;
    auto* cls_cmd = series_cmd->add_subcommand("classify", "finite-horizon convergence verdict");
    cls_cmd->add_option("--series", cls_series, "series spec")->required();
    cls_cmd->add_option("--set", cls_set, "index-set spec")->required();
    cls_flags.attach(cls_cmd);
    cls_cmd->add_option("--csv", cls_csv, "write the dense partial-sum trace (k,sum_exact,sum_decimal)");
    cls_cmd->add_option("--json", cls_json, "write the verdict as JSON");
    cls_cmd->callback([&] {
        const auto cfg = cls_flags.to_config();
        const Series a = lang::build_series(cls_series, cfg.horizon);
        const IndexSet x = lang::build_set(cls_set);
        const auto [verdict, conditional] = classify_with_conditionality(a, x, cfg);
        print_verdict(verdict, conditional);
        if (!cls_csv.empty()) write_csv(cls_csv, a, x, cfg.horizon);
        if (!cls_json.empty()) {
            json j = verdict_json(verdict);
            j["conditional"] = std::string(to_string(conditional));
            j["series"] = cls_series;
            j["set"] = cls_set;
            write_file(cls_json, j.dump(2));
        }
    });

    // --- construct ---------------------------------------------------------
    auto* con_cmd = app.add_subcommand("construct", "run a named construction, print a reusable spec");
    con_cmd->require_subcommand(1);
    std::uint64_t con_horizon = 100000;
    std::string con_set, con_set_b, con_series, con_bounds, con_point;
    std::uint64_t con_blocks = 8;
    std::string con_lo, con_hi;

    auto add_horizon = [&](CLI::App* c) { c->add_option("--horizon", con_horizon, "construction horizon"); };

    auto* c_sw = con_cmd->add_subcommand("split-witness", "alternating series over the runs of a set");
    c_sw->add_option("--set", con_set)->required();
    add_horizon(c_sw);
    c_sw->callback([&] {
        lang::build_series("split_witness(" + con_set + ")", con_horizon);
        std::cout << "split_witness(" << lang::print_spec(lang::parse_spec(con_set)) << ")\n";
    });

    auto* c_alt = con_cmd->add_subcommand("alternating", "alternating series along a set");
    c_alt->add_option("--set", con_set)->required();
    add_horizon(c_alt);
    c_alt->callback([&] {
        lang::build_series("alternating_on(" + con_set + ")", con_horizon);
        std::cout << "alternating_on(" << lang::print_spec(lang::parse_spec(con_set)) << ")\n";
    });

    auto* c_alt2 = con_cmd->add_subcommand("alternating-two", "paired alternating series over two sets");
    c_alt2->add_option("--set", con_set)->required();
    c_alt2->add_option("--set-b", con_set_b)->required();
    add_horizon(c_alt2);
    c_alt2->callback([&] {
        lang::build_series("alternating_on_two(" + con_set + "," + con_set_b + ")", con_horizon);
        std::cout << "alternating_on_two(" << lang::print_spec(lang::parse_spec(con_set)) << ","
                  << lang::print_spec(lang::parse_spec(con_set_b)) << ")\n";
    });

    auto* c_two = con_cmd->add_subcommand("two-set-defeat", "conditional series defeating two sets");
    c_two->add_option("--x0", con_set)->required();
    c_two->add_option("--x1", con_set_b)->required();
    add_horizon(c_two);
    c_two->callback([&] {
        const auto r = two_set_defeat(lang::build_set(con_set), lang::build_set(con_set_b), con_horizon);
        std::cout << "two_set_defeat(" << lang::print_spec(lang::parse_spec(con_set)) << ","
                  << lang::print_spec(lang::parse_spec(con_set_b)) << ")\n";
        std::cout << "case: " << r.dichotomy_case << "\n";
    });

    auto* c_dd = con_cmd->add_subcommand("diagonal-defeat", "unit-sum blocks against a finite family");
    c_dd->add_option("--sets", con_set, "list of set specs, e.g. [evens,odds]")->required();
    c_dd->add_option("--blocks", con_blocks, "blocks per set");
    add_horizon(c_dd);
    c_dd->callback([&] {
        const std::string spec = "diagonal_defeat(" + con_set + "," + std::to_string(con_blocks) + ")";
        lang::build_series(spec, con_horizon);
        std::cout << lang::print_spec(lang::parse_spec(spec)) << "\n";
    });

    auto* c_ssn = con_cmd->add_subcommand("ssn-triple", "the three residue-complement sets");
    c_ssn->callback([&] {
        for (int i = 0; i < 3; ++i) std::cout << "compl(mod(3," << i << "))\n";
    });

    auto* c_db = con_cmd->add_subcommand("d-bound", "greedy modulus partition of a certified series");
    c_db->add_option("--series", con_series)->required();
    c_db->add_option("--blocks", con_blocks, "number of blocks");
    add_horizon(c_db);
    c_db->callback([&] {
        const Series a = lang::build_series(con_series, con_horizon);
        const auto ip = d_bound_partition(a, con_blocks);
        std::cout << "boundaries(" << naturals_list(ip.boundaries()) << ")\n";
    });

    auto* c_acs = con_cmd->add_subcommand("ac-series", "blockwise alternating series from boundaries");
    c_acs->add_option("--boundaries", con_bounds, "strictly increasing list starting at 0")->required();
    c_acs->callback([&] {
        const std::string spec = "ac_from_f(" + con_bounds + ")";
        lang::build_series(spec, con_horizon);
        std::cout << lang::print_spec(lang::parse_spec(spec)) << "\n";
    });

    auto* c_acd = con_cmd->add_subcommand("ac-decay", "even-valued decay map of a certified series");
    c_acd->add_option("--series", con_series)->required();
    c_acd->add_option("--count", con_blocks, "entries to materialize");
    add_horizon(c_acd);
    c_acd->callback([&] {
        const Series a = lang::build_series(con_series, con_horizon);
        std::cout << naturals_list(ac_decay_function(a, con_blocks)) << "\n";
    });

    auto* c_cvs = con_cmd->add_subcommand("covm-series", "alternating-block series from a product-space point");
    c_cvs->add_option("--point", con_point, "list of blocks, e.g. [[0,0],[1,0,2,0]]")->required();
    c_cvs->callback([&] {
        const std::string spec = "covm_from_y(" + con_point + ")";
        lang::build_series(spec, con_horizon);
        std::cout << lang::print_spec(lang::parse_spec(spec)) << "\n";
    });

    auto* c_cvp = con_cmd->add_subcommand("covm-point", "product-space point from switching runs");
    c_cvp->add_option("--set", con_set)->required();
    c_cvp->add_option("--blocks", con_blocks, "blocks to read");
    add_horizon(c_cvp);
    c_cvp->callback([&] {
        const auto p = covm_point_from_set(lang::build_set(con_set), con_blocks, con_horizon);
        std::cout << point_spec(p) << "\n";
    });

    auto* c_search = con_cmd->add_subcommand("covm-search", "suitable extension of a stem against a point");
    std::string con_stem;
    std::uint64_t con_bound = 64;
    c_search->add_option("--stem", con_stem, "stem blocks, e.g. [[5,0]]")->required();
    c_search->add_option("--point", con_point)->required();
    c_search->add_option("--bound", con_bound);
    c_search->callback([&] {
        const auto yp = parse_point(con_point);
        BaireStem s;
        s.blocks = parse_point(con_stem).blocks;
        s.validate();
        const auto r = suitable_extension_search(s, yp, con_bound);
        if (!r) {
            std::cout << "none (bound exhausted)\n";
            throw Error("suitable extension not found below bound");
        }
        BairePoint t;
        t.blocks = r->second.blocks;
        std::cout << "k: " << r->first << "\nstem: " << point_spec(t)
                  << "\nweight: " << stem_weight(r->second) << "\n";
    });

    auto* c_phi = con_cmd->add_subcommand("phi", "inductive partition of an affine map");
    std::uint64_t phi_a = 1, phi_b = 0;
    c_phi->add_option("--slope", phi_a);
    c_phi->add_option("--offset", phi_b);
    add_horizon(c_phi);
    c_phi->callback([&] {
        const auto ip = interval_partition_of_function(
            [&](index_t x) { return phi_a * x + phi_b; }, con_horizon);
        std::cout << "boundaries(" << naturals_list(ip.boundaries()) << ")\n";
    });

    auto* c_skip = con_cmd->add_subcommand("block-skip", "the x -> i_{n+3} map of a partition");
    c_skip->add_option("--boundaries", con_bounds)->required();
    c_skip->add_option("--count", con_blocks, "arguments to print");
    c_skip->callback([&] {
        const auto ip = lang::build_partition(lang::parse_spec("boundaries(" + con_bounds + ")"),
                                              con_horizon);
        const BlockSkipMap f(ip);
        std::vector<index_t> vals;
        for (index_t x = 0; x < con_blocks && x < f.domain_end(); ++x) vals.push_back(f(x));
        std::cout << naturals_list(vals) << "\n";
    });

    auto* c_greedy = con_cmd->add_subcommand("greedy-adjust", "finite set with exact sum in a target interval");
    c_greedy->add_option("--series", con_series)->required();
    c_greedy->add_option("--lo", con_lo)->required();
    c_greedy->add_option("--hi", con_hi)->required();
    add_horizon(c_greedy);
    c_greedy->callback([&] {
        const Series a = lang::build_series(con_series, con_horizon);
        const auto picks = greedy_finite_adjust(a, DiagFlags::parse_rational(con_lo, "--lo"),
                                                DiagFlags::parse_rational(con_hi, "--hi"),
                                                con_horizon);
        Rational sum;
        for (index_t i : picks) sum += a.term(i);
        std::cout << "finite(" << naturals_list(picks) << ")\n";
        std::cout << "sum: " << sum.to_string() << " (" << sum.to_decimal(12) << ")\n";
    });

    auto* c_oscf = con_cmd->add_subcommand("osc-partition", "partition from extracted oscillation intervals");
    DiagFlags oscf_flags;
    c_oscf->add_option("--series", con_series)->required();
    c_oscf->add_option("--set", con_set)->required();
    c_oscf->add_option("--count", con_blocks);
    oscf_flags.attach(c_oscf);
    c_oscf->callback([&] {
        const auto cfg = oscf_flags.to_config();
        const Series a = lang::build_series(con_series, cfg.horizon);
        const auto ip = oscillation_interval_partition(a, lang::build_set(con_set), cfg, con_blocks);
        std::cout << "boundaries(" << naturals_list(ip.boundaries()) << ")\n";
        std::cout << ip.description() << "\n";
    });

    // --- extract oscillation ------------------------------------------------
    auto* ext_cmd = app.add_subcommand("extract", "extract witnesses from a divergent subseries");
    ext_cmd->require_subcommand(1);
    auto* osc_cmd = ext_cmd->add_subcommand("oscillation", "disjoint intervals with the paired inequalities");
    std::string ext_series, ext_set, ext_json;
    std::uint64_t ext_count = 3;
    DiagFlags ext_flags;
    osc_cmd->add_option("--series", ext_series)->required();
    osc_cmd->add_option("--set", ext_set)->required();
    osc_cmd->add_option("--count", ext_count);
    ext_flags.attach(osc_cmd);
    osc_cmd->add_option("--json", ext_json);
    osc_cmd->callback([&] {
        const auto cfg = ext_flags.to_config();
        const Series a = lang::build_series(ext_series, cfg.horizon);
        const IndexSet x = lang::build_set(ext_set);
        ExtractionResult res;
        bool complete = true;
        try {
            res = extract_oscillation_intervals(a, x, cfg, ext_count);
        } catch (const ExtractionExhausted& e) {
            res = e.partial;
            complete = false;
            std::cout << "horizon exhausted: found " << res.intervals.size() << " of "
                      << ext_count << "\n";
        }
        std::cout << "c: " << res.c.to_string() << "\norientation: " << to_string(res.orientation)
                  << "\nbase: " << to_string(res.base_kind) << "\n";
        for (const auto& iv : res.intervals)
            std::cout << "[" << iv.lo << "," << iv.hi << ") in=" << iv.in_sum.to_string()
                      << " out=" << iv.out_sum.to_string() << "\n";
        std::cout << "exact: " << (complete ? "pass" : "incomplete") << "\n";
        if (!ext_json.empty()) {
            json j;
            j["c"] = res.c.to_string();
            j["orientation"] = std::string(to_string(res.orientation));
            j["complete"] = complete;
            j["intervals"] = json::array();
            for (const auto& iv : res.intervals)
                j["intervals"].push_back({{"lo", iv.lo},
                                          {"hi", iv.hi},
                                          {"in", iv.in_sum.to_string()},
                                          {"out", iv.out_sum.to_string()}});
            write_file(ext_json, j.dump(2));
        }
        if (!complete) throw Error("extraction incomplete");
    });

    // --- verify tukey ---------------------------------------------------------
    auto* ver_cmd = app.add_subcommand("verify", "randomized contract verification");
    ver_cmd->require_subcommand(1);
    auto* tuk_cmd = ver_cmd->add_subcommand("tukey", "seeded trials of a shipped candidate");
    std::string tk_name, tk_json;
    bool tk_control = false;
    std::uint64_t tk_trials = 100, tk_seed = 20250101, tk_threads = 0;
    DiagFlags tk_flags;
    tuk_cmd->add_option("--candidate", tk_name, "splitting | bcc-d | inclusion-cc-c")->required();
    tuk_cmd->add_flag("--control", tk_control, "run the deliberately broken sibling");
    tuk_cmd->add_option("--trials", tk_trials);
    tuk_cmd->add_option("--seed", tk_seed);
    tuk_cmd->add_option("--threads", tk_threads);
    tk_flags.attach(tuk_cmd);
    tuk_cmd->add_option("--json", tk_json);
    tuk_cmd->callback([&] {
        const auto cfg = tk_flags.to_config();
        const auto cand = candidate_by_name(tk_name, tk_control);
        const auto report = verify_tukey(cand, tk_seed, tk_trials, cfg, tk_threads);
        std::cout << "candidate: " << report.candidate << "\n"
                  << "trials: " << report.trials << " (seed " << report.master_seed << ")\n"
                  << "source holds/fails/unknown: " << report.source_holds << "/"
                  << report.source_fails << "/" << report.source_unknown << "\n"
                  << "target holds/fails/unknown: " << report.target_holds << "/"
                  << report.target_fails << "/" << report.target_unknown << "\n"
                  << "decisive fraction: " << report.decisive_fraction().to_decimal(3) << "\n"
                  << "violations: " << report.violations.size() << "\n"
                  << "pass: " << (report.pass() ? "yes" : "no") << "\n";
        for (const auto& v : report.violations)
            std::cout << "  seed " << v.seed << ": " << v.challenge << " / " << v.response
                      << " target=" << to_string(v.target) << " source=" << to_string(v.source)
                      << "\n";
        if (!tk_json.empty()) write_file(tk_json, report.to_json());
        if (!report.pass()) throw Error("verification failed");
    });

    // --- demo ssn-n3 -------------------------------------------------------------
    auto* demo_cmd = app.add_subcommand("demo", "worked demonstrations");
    demo_cmd->require_subcommand(1);
    auto* n3_cmd = demo_cmd->add_subcommand("ssn-n3", "three residue complements defeat a conditional series");
    std::string n3_series, n3_level = "4";
    std::uint64_t n3_horizon = 1000000;
    n3_cmd->add_option("--series", n3_series)->required();
    n3_cmd->add_option("--level", n3_level, "escape level, rational");
    n3_cmd->add_option("--horizon", n3_horizon);
    n3_cmd->callback([&] {
        const Series a = lang::build_series(n3_series, n3_horizon);
        const Rational level = DiagFlags::parse_rational(n3_level, "--level");
        const auto triple = ssn_n_triple();
        std::optional<int> survivor;
        for (int j = 0; j < 3; ++j) {
            const auto esc = signed_escape_scan(a, triple[j], level, n3_horizon);
            std::cout << "j=" << j << ": positive "
                      << (esc.positive_crossed ? "crossed by " + std::to_string(esc.positive_at)
                                               : "stalled at " + esc.positive_value.to_decimal(6))
                      << ", negative "
                      << (esc.negative_crossed ? "crossed by " + std::to_string(esc.negative_at)
                                               : "stalled at " + esc.negative_value.to_decimal(6))
                      << "\n";
            if (esc.both() && !survivor) survivor = j;
        }
        if (!survivor) throw Error("no j in 3 keeps the series conditional at this level");
        std::cout << "surviving j: " << *survivor << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error at offset " << e.offset << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
}
