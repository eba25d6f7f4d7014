#include "quivdual/checker.hpp"
#include "quivdual/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <thread>

namespace qd {

namespace {

using SeriesFn = std::function<LaurentSeries(const FixedPoint &, const EquivariantPoint &, const DegreeDomain &)>;

long cap_for(const Box &b) {
    long m = 0;
    for (auto &i : b) m = std::max({m, std::labs(i.lo), std::labs(i.hi)});
    return 2 * m + 2;
}

Box widened(const Box &b) {
    Box w = b;
    for (auto &i : w) --i.lo, ++i.hi;
    return w;
}

// Source exponents whose image can reach the target box: one bound per target
// variable (no lower bound for raised variables).
std::vector<LinearBound> image_bounds(const KahlerMap &m, const Box &box, const std::vector<int> &raised,
                                      int slack) {
    std::vector<LinearBound> out;
    for (std::size_t k = 0; k < m.target_size(); ++k) {
        LinearBound b;
        for (std::size_t j = 0; j < m.source_size(); ++j) b.coef.push_back(m.rows[j][k]);
        bool up = std::find(raised.begin(), raised.end(), int(k)) != raised.end();
        b.lo = up ? -(1L << 40) : box[k].lo - slack;
        b.hi = box[k].hi + slack;
        out.push_back(b);
    }
    return out;
}

std::string prefactor_string(const Prefactor &p, const std::vector<std::string> &vars,
                             const std::vector<std::string> &params) {
    if (p.is_one()) return "1";
    std::string s;
    for (auto &e : p.exps) {
        if (!s.empty()) s += "*";
        s += "exp(" + e.c.get_str() + "*" + vars[std::size_t(e.var)] + ")";
    }
    for (auto &u : p.units) {
        if (!s.empty()) s += "*";
        s += "(1" + std::string(u.unit.sign > 0 ? "+" : "-") + vars[std::size_t(u.unit.var)] + ")^(" +
             u.exponent.str(params) + ")";
    }
    return s;
}

std::vector<std::size_t> select_points(const std::vector<FixedPoint> &pts, const FixedPoint &dist,
                                       const CheckSpec &spec) {
    std::vector<std::size_t> idx;
    if (spec.sample < 0) {
        for (std::size_t i = 0; i < pts.size(); ++i) idx.push_back(i);
        return idx;
    }
    auto it = std::find(pts.begin(), pts.end(), dist);
    std::size_t d = it == pts.end() ? 0 : std::size_t(it - pts.begin());
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (i != d) rest.push_back(i);
    std::mt19937_64 rng(splitmix64(spec.seed ^ 0x5eed));
    for (std::size_t i = 0; i < rest.size(); ++i) std::swap(rest[i], rest[i + rng() % (rest.size() - i)]);
    rest.resize(std::min(rest.size(), std::size_t(spec.sample)));
    idx.push_back(d);
    idx.insert(idx.end(), rest.begin(), rest.end());
    std::sort(idx.begin(), idx.end());
    return idx;
}

struct StepContext {
    Step step;
    std::vector<int> ranks;
    FamilyModel left, right;
    KahlerMap map;
    SeriesFn left_fn, right_fn;
};

// Left series versus prefactor times the substituted right series.
struct Comparison {
    LaurentSeries left, sub;
    std::optional<Exponent> mismatch;
};

Comparison compare_once(const StepContext &c, const FixedPoint &p, const FixedPoint &q,
                        const EquivariantPoint &at, const Box &box, bool unit_prefactor, int slack) {
    EquivariantPoint atR = step_negates_params(c.step) ? negated(at) : at;
    Prefactor pref = step_prefactor(c.step, c.ranks, p.roots);
    NumericPrefactor np;
    if (!unit_prefactor) np = pref.evaluate(at);
    Comparison r;
    r.left = c.left_fn(p, at, DegreeDomain{box, cap_for(box) + slack, {}});
    auto raised = raised_vars(c.map, &np);
    Box pre = preimage_box(c.map, box, raised, c.right.cone);
    for (int i = 0; i < slack; ++i) pre = widened(pre);
    LaurentSeries right =
        c.right_fn(q, atR, DegreeDomain{pre, cap_for(pre) + slack, image_bounds(c.map, box, raised, slack)});
    r.sub = substitute(right, c.map, c.left.var_names, box, &np);
    r.mismatch = first_mismatch(r.left, r.sub);
    return r;
}

PairResult run_pair(const StepContext &c, const CheckSpec &spec, std::size_t index, const FixedPoint &p) {
    PairResult pr;
    pr.index = index;
    pr.source = format_fixed_point(p);
    try {
        FixedPoint q = iota(c.step, c.ranks, p);
        pr.target = format_fixed_point(q);
        Box box = uniform_box(c.left.gauge.size(), spec.box);
        bool all = true;
        for (int t = 0; t < spec.trials; ++t) {
            TrialResult tr;
            tr.trial = t;
            tr.seed = splitmix64(spec.seed + std::uint64_t(t));
            EquivariantPoint at = generic_point(c.left.nparams(), tr.seed);
            Comparison cmp = compare_once(c, p, q, at, box, spec.force_unit_prefactor, 0);
            tr.terms = cmp.left.size();
            tr.pass = !cmp.mismatch;
            if (cmp.mismatch) {
                tr.mismatch = cmp.mismatch;
                tr.left = to_string(cmp.left.coeff(*cmp.mismatch));
                tr.right = to_string(cmp.sub.coeff(*cmp.mismatch));
            }
            all = all && tr.pass;
            if (t == 0 && spec.audit) {
                Comparison wide = compare_once(c, p, q, at, box, spec.force_unit_prefactor, 1);
                pr.audit_run = true;
                pr.audit_pass = !first_mismatch(cmp.left, wide.left) && !first_mismatch(cmp.sub, wide.sub);
            }
            pr.trials.push_back(std::move(tr));
        }
        pr.pass = all && pr.audit_pass;
    } catch (const Error &e) {
        pr.error = e.what();
        pr.pass = false;
    }
    return pr;
}

CheckReport run_step(const std::string &identity, const StepContext &c, const CheckSpec &spec,
                     const FixedPoint &distinguished) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.identity = identity;
    rep.ranks = c.ranks;
    rep.box = spec.box;
    rep.trials = spec.trials;
    rep.seed = spec.seed;
    for (std::size_t j = 0; j < c.map.source_size(); ++j)
        rep.map.push_back(c.right.var_names[j] + "=" + format(image(c.map, j), c.left.var_names));

    auto pts = enumerate_fixed_points(step_source(c.step), c.ranks);
    rep.fixed_points = pts.size();
    auto idx = select_points(pts, distinguished, spec);
    rep.prefactor = prefactor_string(step_prefactor(c.step, c.ranks, pts[idx.front()].roots),
                                     c.left.var_names, c.left.param_names);
    rep.pairs.resize(idx.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < idx.size();) rep.pairs[i] = run_pair(c, spec, idx[i], pts[idx[i]]);
    };
    int jobs = std::max(1, std::min<int>(spec.jobs, int(idx.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();

    bool pass = std::all_of(rep.pairs.begin(), rep.pairs.end(), [](const PairResult &p) { return p.pass; });
    Prefactor pref = step_prefactor(c.step, c.ranks, pts[idx.front()].roots);
    if (spec.guard && !spec.force_unit_prefactor && !pref.is_one()) {
        rep.guard_run = true;
        try {
            const FixedPoint &p = pts[idx.front()];
            EquivariantPoint at = generic_point(c.left.nparams(), splitmix64(spec.seed));
            Comparison cmp = compare_once(c, p, iota(c.step, c.ranks, p), at,
                                          uniform_box(c.left.gauge.size(), spec.box), true, 0);
            rep.guard_failed = bool(cmp.mismatch);
            rep.guard_detail = cmp.mismatch ? "mismatch at " + format_exponent(*cmp.mismatch)
                                            : "identity still holds without the prefactor";
        } catch (const Error &e) {
            rep.guard_detail = e.what();
        }
        pass = pass && rep.guard_failed;
    }
    rep.pass = pass;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SeriesFn engine(const FamilyModel &m, EnumMode mode) {
    return [m, mode](const FixedPoint &p, const EquivariantPoint &at, const DegreeDomain &dom) {
        return restricted_I(m, p, at, dom, mode);
    };
}

std::string case_of(const Quiver &q, int k) {
    return kahler_case_name(classify(outgoing(q, k), incoming(q, k)));
}

CheckReport failed(const std::string &identity, const std::vector<int> &ranks, const CheckSpec &spec,
                   const Error &e) {
    CheckReport rep;
    rep.identity = identity;
    rep.ranks = ranks;
    rep.box = spec.box;
    rep.trials = spec.trials;
    rep.seed = spec.seed;
    rep.error = e.what();
    return rep;
}

} // namespace

FixedPoint distinguished_point(Family f, const std::vector<int> &N) {
    FamilyModel m = family_model(f, N);
    if (f == Family::Xs || f == Family::Zs) {
        auto first = [](const std::vector<int> &from, int k) {
            return std::vector<int>(from.begin(), from.begin() + k);
        };
        std::vector<int> c6, c7;
        for (int i = 0; i < N[5]; ++i) c6.push_back(i);
        for (int i = 0; i < N[6]; ++i) c7.push_back(N[7] + i);
        std::vector<int> U = c6;
        U.insert(U.end(), c7.begin(), c7.end());
        int n5 = m.size.at(5);
        std::vector<int> c5 = first(U, n5);
        std::vector<int> host = c5;
        if (f == Family::Zs) host = std::vector<int>(U.begin() + n5, U.end());
        std::vector<int> c3 = first(host, N[2]), c4 = first(host, N[3]);
        return FixedPoint{f, {first(c3, N[0]), first(c4, N[1]), c3, c4, c5, c6, c7}};
    }
    return enumerate_fixed_points(f, N).front();
}

CheckReport check_building_block(int r, int n, int m, const CheckSpec &spec) {
    std::vector<int> ranks{r, n, m};
    try {
        StepContext c{Step::Gr, ranks, family_model(Family::GrBlock, ranks),
                      family_model(Family::GrBlockDual, ranks), step_map(Step::Gr, ranks), {}, {}};
        c.left_fn = [=](const FixedPoint &p, const EquivariantPoint &at, const DegreeDomain &dom) {
            return building_block_I(r, n, m, p, at, dom.sums[0].hi);
        };
        c.right_fn = [=](const FixedPoint &p, const EquivariantPoint &at, const DegreeDomain &dom) {
            const Interval &b = dom.sums[0];
            return building_block_I_dual(r, n, m, p, at, std::max(std::labs(b.lo), std::labs(b.hi)));
        };
        CheckReport rep = run_step("building-block", c, spec, distinguished_point(Family::GrBlock, ranks));
        rep.kahler_case = kahler_case_name(classify(n, m));
        return rep;
    } catch (const Error &e) {
        return failed("building-block", ranks, spec, e);
    }
}

CheckReport check_star(const std::vector<int> &ranks, const CheckSpec &spec) {
    try {
        StepContext c{Step::Star, ranks, family_model(Family::Xs, ranks), family_model(Family::Zs, ranks),
                      step_map(Step::Star, ranks), {}, {}};
        c.left_fn = engine(c.left, spec.mode);
        c.right_fn = engine(c.right, spec.mode);
        CheckReport rep = run_step("star", c, spec, distinguished_point(Family::Xs, ranks));
        rep.kahler_case = case_of(family_quiver(Family::Xs, ranks), 5);
        return rep;
    } catch (const Error &e) {
        return failed("star", ranks, spec, e);
    }
}

CheckReport check_d3_step(Step s, const std::vector<int> &ranks, const CheckSpec &spec) {
    std::string id = std::string("d3-step ") + step_name(s);
    try {
        if (!is_d3(step_source(s))) throw Error(Errc::usage, "not a D3 chain step");
        StepContext c{s, ranks, family_model(step_source(s), ranks), family_model(step_target(s), ranks),
                      step_map(s, ranks), {}, {}};
        c.left_fn = engine(c.left, spec.mode);
        c.right_fn = engine(c.right, spec.mode);
        CheckReport rep = run_step(id, c, spec, distinguished_point(step_source(s), ranks));
        int i = int(s);
        rep.kahler_case = s == Step::X9_X0 ? "RELABEL"
                                           : case_of(d3_mutation_sequence(ranks)[std::size_t(i)], kD3Sequence[i]);
        return rep;
    } catch (const Error &e) {
        return failed(id, ranks, spec, e);
    }
}

CheckReport check_cycle(const std::vector<int> &ranks, const CheckSpec &spec, bool run_steps) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.identity = "d3-cycle";
    rep.ranks = ranks;
    rep.box = spec.box;
    rep.trials = spec.trials;
    rep.seed = spec.seed;
    try {
        std::vector<std::string> names{"q1", "q2", "q3"};
        auto expected = cycle_table_rows(ranks);
        auto chain = d3_chain();
        KahlerMap cum = KahlerMap::identity(3);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (i > 0) cum = compose(cum, step_map(d3_steps()[i - 1], ranks));
            std::string row = std::string(family_name(chain[i])) + ":";
            bool ok = true;
            for (std::size_t j = 0; j < 3; ++j) {
                KExpr got = image(cum, j);
                ok = ok && got == expected[i][j];
                row += " " + format(got, names);
            }
            if (!ok) {
                row += " (expected";
                for (std::size_t j = 0; j < 3; ++j) row += " " + format(expected[i][j], names);
                row += ")";
            }
            rep.table.push_back(row);
            rep.table_pass = rep.table_pass && ok;
        }
        KahlerMap full = compose(cum, step_map(Step::X9_X0, ranks));
        rep.composition_identity = is_identity(full);
        for (std::size_t j = 0; j < 3; ++j) rep.map.push_back(names[j] + "=" + format(image(full, j), names));
        bool pass = rep.table_pass && rep.composition_identity;
        if (run_steps)
            for (Step s : d3_steps()) {
                rep.steps.push_back(check_d3_step(s, ranks, spec));
                pass = pass && rep.steps.back().pass;
            }
        rep.pass = pass;
    } catch (const Error &e) {
        rep.error = e.what();
        rep.pass = false;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace qd
