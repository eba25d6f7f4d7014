// quivdual: mutation scripting, fixed points, I-function dumps and identity checks.
#include "quivdual/checker.hpp"
#include "quivdual/errors.hpp"
#include "quivdual/families.hpp"
#include "quivdual/fixed_points.hpp"
#include "quivdual/ifunction.hpp"
#include "quivdual/quiver_io.hpp"
#include "quivdual/report_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace qd;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct RunConfig {
    std::string ranks;
    long box = 3;
    int trials = 3;
    std::uint64_t seed = 1;
    std::string out;
    int jobs = 1;
    bool verbose = false;
};

std::vector<int> parse_list(const std::string &s, const char *what) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw Error(Errc::usage, std::string("bad ") + what + " list '" + s + "'");
        }
    }
    if (v.empty()) throw Error(Errc::usage, std::string("empty ") + what + " list");
    return v;
}

Family parse_family(const std::string &s) {
    auto f = family_from_name(s);
    if (!f) throw Error(Errc::usage, "unknown family '" + s + "'");
    return *f;
}

void emit(const RunConfig &cfg, const std::string &text) {
    if (cfg.out.empty()) std::cout << text;
    else write_file_atomic(cfg.out, text);
}

void add_common(CLI::App *c, RunConfig &cfg) {
    c->add_option("--seed", cfg.seed, "seed for the generic equivariant points")->capture_default_str();
    c->add_option("--out", cfg.out, "output file (default: stdout)");
    c->add_flag("--verbose", cfg.verbose, "progress and timing on stderr");
}

int cmd_mutate(const RunConfig &cfg, const std::string &file, const std::string &seq, bool no_potential) {
    Quiver q = parse_quiver(read_file(file));
    auto steps = parse_list(seq, "node");
    Json log;
    log["input"] = file;
    log["sequence"] = steps;
    log["steps"] = Json::array();
    for (int k : steps) {
        // Potentials outside the supported rewriting patterns are dropped, not fatal.
        MutationResult r;
        try {
            r = mutate(q, k, !no_potential);
        } catch (const Error &e) {
            if (e.code() != Errc::potential_pattern) throw;
            if (cfg.verbose) std::cerr << "potential not tracked at " << k << ": " << e.what() << "\n";
            r = mutate(q, k, false);
        }
        Json s;
        s["node"] = k;
        s["kahler_case"] = kahler_case_name(r.kahler_case);
        s["rank"] = {r.before.rank(k), r.quiver.rank(k)};
        Json ann = Json::array();
        for (auto &[e, c] : r.annihilated) ann.push_back({{"pair", {e.first, e.second}}, {"count", c}});
        s["annihilated"] = ann;
        s["dropped_frame_arrows"] = r.dropped_frame_arrows;
        s["potential_tracked"] = r.potential_tracked;
        s["sign_normalized"] = r.sign_normalized;
        auto tv = kahler_var_names(r.quiver), sv = kahler_var_names(r.before);
        s["map"] = kahler_map_to_json(kahler_map_for(r, MapRule::conjecture), tv, sv);
        try {
            s["map_proved"] = kahler_map_to_json(kahler_map_for(r, MapRule::proved), tv, sv);
        } catch (const Error &e) {
            if (e.code() != Errc::not_catalogued) throw;
            s["map_proved"] = "NOT_CATALOGUED";
        }
        log["steps"].push_back(s);
        q = r.quiver;
        if (cfg.verbose) std::cerr << "mutated at " << k << "\n";
    }
    if (cfg.out.empty()) {
        log["quiver"] = quiver_to_json(q);
        std::cout << dump(log);
    } else {
        write_file_atomic(cfg.out, emit_quiver(q));
        std::cout << dump(log);
    }
    return kPass;
}

int cmd_fixpoints(const RunConfig &cfg, const std::string &fam) {
    Family f = parse_family(fam);
    auto ranks = parse_list(cfg.ranks, "rank");
    validate_ranks(f, ranks);
    auto pts = enumerate_fixed_points(f, ranks);
    Json j;
    j["family"] = family_name(f);
    j["ranks"] = ranks;
    j["count"] = pts.size();
    j["closed_form"] = closed_form_count(f, ranks).get_str();
    j["points"] = Json::array();
    for (auto &p : pts) j["points"].push_back(fixed_point_to_json(p));
    emit(cfg, dump(j));
    return kPass;
}

int cmd_ifun(const RunConfig &cfg, const std::string &fam, const std::string &selector) {
    Family f = parse_family(fam);
    auto ranks = parse_list(cfg.ranks, "rank");
    validate_ranks(f, ranks);
    if (cfg.box < 0) throw Error(Errc::usage, "box radius must be non-negative");
    auto model = family_model(f, ranks);
    auto pts = enumerate_fixed_points(f, ranks);
    std::vector<std::size_t> chosen;
    if (selector == "all") {
        for (std::size_t i = 0; i < pts.size(); ++i) chosen.push_back(i);
    } else {
        int i = parse_list(selector, "point index").front();
        if (i < 0 || std::size_t(i) >= pts.size())
            throw Error(Errc::usage, "fixed-point index " + selector + " out of range (" +
                                         std::to_string(pts.size()) + " points)");
        chosen.push_back(std::size_t(i));
    }
    std::uint64_t s = splitmix64(cfg.seed);
    auto at = generic_point(model.nparams(), s);
    DegreeDomain dom{uniform_box(model.gauge.size(), cfg.box), 2 * cfg.box + 2, {}};
    Json j;
    j["family"] = family_name(f);
    j["ranks"] = ranks;
    j["box"] = cfg.box;
    j["point"] = point_to_json(at, cfg.seed, model.param_names);
    j["series"] = Json::array();
    for (auto i : chosen) {
        auto series = restricted_I(model, pts[i], at, dom);
        j["series"].push_back({{"index", i}, {"fixed_point", fixed_point_to_json(pts[i])},
                               {"series", series_to_json(series)}});
    }
    emit(cfg, dump(j));
    return kPass;
}

int finish_check(const RunConfig &cfg, const CheckReport &r) {
    emit(cfg, dump(report_to_json(r)));
    if (cfg.verbose)
        std::cerr << r.identity << ": " << (r.pass ? "PASS" : "FAIL") << " in " << r.seconds << " s\n";
    return r.pass ? kPass : kFail;
}

CheckSpec spec_from(const RunConfig &cfg, int sample) {
    if (cfg.box < 0) throw Error(Errc::usage, "box radius must be non-negative");
    if (cfg.trials < 1) throw Error(Errc::usage, "at least one trial is needed");
    if (cfg.jobs < 1) throw Error(Errc::usage, "at least one job is needed");
    CheckSpec spec;
    spec.box = cfg.box;
    spec.trials = cfg.trials;
    spec.seed = cfg.seed;
    spec.jobs = cfg.jobs;
    spec.sample = sample;
    return spec;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quiver mutation and I-function duality checks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *mut = app.add_subcommand("mutate", "mutate a quiver file along a node sequence");
    std::string qfile, seq;
    bool no_potential = false;
    mut->add_option("file", qfile, "quiver JSON file")->required();
    mut->add_option("sequence", seq, "node or comma-separated sequence, e.g. 3,1,2")->required();
    mut->add_flag("--no-potential", no_potential, "skip potential rewriting");
    add_common(mut, cfg);

    auto *fix = app.add_subcommand("fixpoints", "list the torus fixed points of a family");
    std::string fam;
    fix->add_option("family", fam, "X0..X9, Xs, Zs, GrBlock, GrBlockDual")->required();
    fix->add_option("--ranks", cfg.ranks, "comma-separated ranks")->required();
    add_common(fix, cfg);

    auto *ifun = app.add_subcommand("ifun", "dump restricted I-function series");
    std::string selector = "0";
    ifun->add_option("family", fam, "family name")->required();
    ifun->add_option("--ranks", cfg.ranks, "comma-separated ranks")->required();
    ifun->add_option("--point", selector, "fixed-point index or 'all'")->capture_default_str();
    ifun->add_option("--box", cfg.box, "box radius")->capture_default_str();
    add_common(ifun, cfg);

    auto *chk = app.add_subcommand("check", "check an identity");
    std::string identity, step;
    int r = -1, n = -1, m = -1, sample = -1;
    chk->add_option("identity", identity, "building-block, d3-step, d3-cycle or star")->required();
    chk->add_option("--r", r, "building block: rank");
    chk->add_option("--n", n, "building block: outgoing frame dimension");
    chk->add_option("--m", m, "building block: incoming frame dimension");
    chk->add_option("--step", step, "d3-step: X0-Z1 ... X9-X0")->default_str("X0-Z1");
    chk->add_option("--sample", sample, "distinguished pair plus this many sampled pairs (default all)");
    chk->add_option("--ranks", cfg.ranks, "comma-separated ranks");
    chk->add_option("--box", cfg.box, "box radius")->capture_default_str();
    chk->add_option("--trials", cfg.trials, "generic points per pair")->capture_default_str();
    chk->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
    add_common(chk, cfg);

    auto *cyc = app.add_subcommand("cycle", "table rows, composition and every D3 chain step");
    cyc->add_option("--ranks", cfg.ranks, "comma-separated ranks")->default_str("2,2,3,4");
    cyc->add_option("--box", cfg.box, "box radius")->capture_default_str();
    cyc->add_option("--trials", cfg.trials, "generic points per pair")->capture_default_str();
    cyc->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
    cyc->add_option("--sample", sample, "distinguished pair plus this many sampled pairs (default all)");
    add_common(cyc, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*mut) return cmd_mutate(cfg, qfile, seq, no_potential);
        if (*fix) return cmd_fixpoints(cfg, fam);
        if (*ifun) return cmd_ifun(cfg, fam, selector);
        if (*cyc) {
            if (cfg.ranks.empty()) cfg.ranks = "2,2,3,4";
            auto ranks = parse_list(cfg.ranks, "rank");
            validate_ranks(Family::X0, ranks);
            return finish_check(cfg, check_cycle(ranks, spec_from(cfg, sample)));
        }
        if (identity == "building-block") {
            if (r < 0 || n < 0 || m < 0) throw Error(Errc::usage, "building-block needs --r, --n and --m");
            validate_ranks(Family::GrBlock, {r, n, m});
            return finish_check(cfg, check_building_block(r, n, m, spec_from(cfg, sample)));
        }
        if (identity == "star") {
            auto ranks = parse_list(cfg.ranks, "rank");
            validate_ranks(Family::Xs, ranks);
            return finish_check(cfg, check_star(ranks, spec_from(cfg, sample)));
        }
        if (identity == "d3-step") {
            auto s = step_from_name(step.empty() ? "X0-Z1" : step);
            if (!s || !is_d3(step_source(*s))) throw Error(Errc::usage, "unknown step '" + step + "'");
            auto ranks = parse_list(cfg.ranks.empty() ? "2,2,3,4" : cfg.ranks, "rank");
            validate_ranks(Family::X0, ranks);
            return finish_check(cfg, check_d3_step(*s, ranks, spec_from(cfg, sample)));
        }
        if (identity == "d3-cycle") {
            auto ranks = parse_list(cfg.ranks.empty() ? "2,2,3,4" : cfg.ranks, "rank");
            validate_ranks(Family::X0, ranks);
            return finish_check(cfg, check_cycle(ranks, spec_from(cfg, sample)));
        }
        throw Error(Errc::usage, "unknown identity '" + identity + "'");
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case Errc::usage:
        case Errc::rank_constraint:
        case Errc::parse:
        case Errc::invalid_quiver:
        case Errc::unknown_node:
        case Errc::framed_node:
        case Errc::not_in_family: return kUsage;
        default: return kFail;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
