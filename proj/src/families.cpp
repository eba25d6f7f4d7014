#include "quivdual/families.hpp"
#include "quivdual/errors.hpp"

#include <numeric>

namespace qd {

namespace {

struct FamilyInfo {
    Family f;
    const char *name;
};

const FamilyInfo kFamilies[] = {
    {Family::X0, "X0"}, {Family::Z1, "Z1"}, {Family::Z2, "Z2"}, {Family::Z3, "Z3"},
    {Family::X4, "X4"}, {Family::X5, "X5"}, {Family::X6, "X6"}, {Family::X7, "X7"},
    {Family::X8, "X8"}, {Family::X9, "X9"}, {Family::Xs, "Xs"}, {Family::Zs, "Zs"},
    {Family::GrBlock, "GrBlock"}, {Family::GrBlockDual, "GrBlockDual"},
};

const char *kStepNames[] = {"X0-Z1", "Z1-Z2", "Z2-Z3", "Z3-X4", "X4-X5", "X5-X6",
                            "X6-X7", "X7-X8", "X8-X9", "X9-X0", "star", "building-block"};

[[noreturn]] void rank_error(const std::string &s) { throw Error(Errc::rank_constraint, s); }

HalfSpace hs(std::vector<int> c) { return HalfSpace{std::move(c)}; }

int chain_index(Family f) {
    auto c = d3_chain();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] == f) return int(i);
    return -1;
}

// Gauge ranks at nodes 1,2,3 of each chain member.
std::vector<int> d3_node_ranks(Family f, const std::vector<int> &N) {
    int N1 = N[0], N2 = N[1], N3 = N[2], N4 = N[3], N3p = N4 - N3;
    switch (f) {
    case Family::X0: return {N1, N2, N3};
    case Family::Z1: return {N1, N2, N3p};
    case Family::Z2: return {N2, N2, N3p};
    case Family::Z3: return {N2, N1, N3p};
    case Family::X4: return {N2, N1, N3};
    case Family::X5: return {N3 - N2, N1, N3};
    case Family::X6:
    case Family::X7: return {N3 - N2, N3 - N1, N3};
    case Family::X8: return {N2, N3 - N1, N3};
    case Family::X9: return {N2, N1, N3};
    default: break;
    }
    throw Error(Errc::not_in_family, "not a D3 chain member");
}

std::vector<std::string> d3_phase(Family f) {
    switch (f) {
    case Family::X0: return {"sigma1>0", "sigma2>0", "sigma3>0"};
    case Family::Z1: return {"sigma1>0", "sigma2>0", "sigma3<0"};
    case Family::Z2: return {"sigma1<0", "sigma2>0", "sigma3<0"};
    case Family::Z3: return {"sigma1<0", "sigma2<0", "sigma3>0"};
    case Family::X4: return {"sigma1<0", "sigma2<0", "sigma3<0"};
    case Family::X5: return {"sigma1>0", "sigma2<0", "sigma3<0", "(N3-N2)sigma1+sigma3<0"};
    case Family::X6:
        return {"sigma1>0", "sigma2>0", "sigma3<0", "(N3-N2)sigma1+(N3-N1)sigma2+sigma3<0"};
    case Family::X7:
        return {"sigma1<0", "sigma2<0", "sigma3>0", "(N3-N2)sigma1+(N3-N1)sigma2+sigma3>0"};
    case Family::X8: return {"sigma1>0", "sigma2<0", "sigma3>0", "(N3-N1)sigma2+sigma3>0"};
    case Family::X9: return {"sigma1>0", "sigma2>0", "sigma3>0"};
    default: return {};
    }
}

Quiver d3_base(const std::vector<int> &N) {
    Quiver q;
    q.add_node(1, N[0], false);
    q.add_node(2, N[1], false);
    q.add_node(3, N[2], false);
    q.add_node(4, N[3], true);
    q.add_arrow(1, 3);
    q.add_arrow(2, 3);
    q.add_arrow(3, 4);
    q.meta.family = "X0";
    q.meta.phase = d3_phase(Family::X0);
    return q;
}

Quiver star_base(const std::vector<int> &N) {
    Quiver q;
    for (int i = 1; i <= 7; ++i) q.add_node(i, N[i - 1], false);
    q.add_node(8, N[7], true);
    q.add_node(9, N[8], true);
    for (auto [s, d] : std::vector<Edge>{{1, 3}, {2, 4}, {3, 5}, {4, 5}, {5, 6}, {5, 7}, {6, 8}, {7, 9}})
        q.add_arrow(s, d);
    q.meta.family = "Xs";
    for (int i = 1; i <= 7; ++i) q.meta.phase.push_back("sigma" + std::to_string(i) + ">0");
    return q;
}

Quiver gr_base(const std::vector<int> &R) {
    Quiver q;
    q.add_node(1, R[0], false);
    q.add_node(2, R[1], true);
    q.add_node(3, R[2], true);
    q.add_arrow(3, 1);
    q.add_arrow(1, 2);
    q.meta.family = "GrBlock";
    q.meta.phase = {"sigma1>0"};
    return q;
}

} // namespace

const int kD3Sequence[9] = {3, 1, 2, 3, 1, 2, 3, 1, 2};

const char *family_name(Family f) {
    for (auto &i : kFamilies)
        if (i.f == f) return i.name;
    return "?";
}

std::optional<Family> family_from_name(const std::string &s) {
    for (auto &i : kFamilies)
        if (s == i.name) return i.f;
    return std::nullopt;
}

std::vector<Family> d3_chain() {
    return {Family::X0, Family::Z1, Family::Z2, Family::Z3, Family::X4,
            Family::X5, Family::X6, Family::X7, Family::X8, Family::X9};
}

bool is_d3(Family f) { return chain_index(f) >= 0; }

void validate_ranks(Family f, const std::vector<int> &N) {
    if (is_d3(f)) {
        if (N.size() != 4) rank_error("D3 families take four ranks N1,N2,N3,N4");
        for (int x : N)
            if (x < 1) rank_error("ranks must be positive");
        if (N[3] != N[0] + N[1]) rank_error("N4 = N1 + N2 required");
        if (!(N[3] > N[2] && N[2] > N[0] && N[2] > N[1])) rank_error("N4 > N3 > N1, N2 required");
        return;
    }
    if (f == Family::Xs || f == Family::Zs) {
        if (N.size() != 9) rank_error("star families take nine ranks N1..N9");
        for (int x : N)
            if (x < 1) rank_error("ranks must be positive");
        auto r = [&](int i) { return N[std::size_t(i - 1)]; };
        // non-strict along the legs, see README
        for (auto [i, j] : std::vector<Edge>{{1, 3}, {2, 4}, {3, 5}, {4, 5}, {6, 8}, {7, 9}})
            if (r(j) < r(i))
                rank_error("N" + std::to_string(j) + " >= N" + std::to_string(i) + " required");
        if (!(r(6) + r(7) > r(5))) rank_error("N6 + N7 > N5 required");
        if (!(r(6) + r(7) >= r(3) + r(4))) rank_error("N6 + N7 >= N3 + N4 required");
        return;
    }
    if (N.size() != 3) rank_error("building block takes r,n,m");
    if (!(0 < N[0] && N[0] < N[1])) rank_error("0 < r < n required");
    if (N[2] < 0) rank_error("m >= 0 required");
}

FamilyModel family_model(Family f, const std::vector<int> &N) {
    validate_ranks(f, N);
    FamilyModel m;
    m.family = f;
    m.ranks = N;
    if (is_d3(f)) {
        auto r = d3_node_ranks(f, N);
        m.gauge = {1, 2, 3};
        for (int i = 0; i < 3; ++i) m.size[i + 1] = r[std::size_t(i)];
        m.size[4] = N[3];
        m.frame_params[4].resize(std::size_t(N[3]));
        std::iota(m.frame_params[4].begin(), m.frame_params[4].end(), 0);
        for (int i = 1; i <= N[3]; ++i) m.param_names.push_back("lambda" + std::to_string(i));
        m.var_names = {"q1", "q2", "q3"};
        switch (f) {
        case Family::X0:
            m.arrows = {{1, 3}, {2, 3}, {3, 4}};
            m.cone = {hs({1, 0, 0}), hs({0, 1, 0}), hs({0, 0, 1})};
            break;
        case Family::Z1:
            m.arrows = {{1, 4}, {2, 4}, {4, 3}};
            m.lefschetz = {{1, 3}, {2, 3}};
            m.cone = {hs({1, 0, 0}), hs({0, 1, 0}), hs({0, 0, -1})};
            break;
        case Family::Z2:
            m.arrows = {{4, 1}, {1, 3}, {2, 4}};
            m.lefschetz = {{2, 3}};
            m.cone = {hs({-1, 0, 0}), hs({0, 1, 0}), hs({0, 0, -1})};
            break;
        case Family::Z3:
            m.arrows = {{3, 4}, {4, 1}, {4, 2}};
            m.lefschetz = {{3, 1}, {3, 2}};
            m.cone = {hs({-1, 0, 0}), hs({0, -1, 0}), hs({0, 0, 1})};
            break;
        case Family::X4:
            m.arrows = {{4, 3}, {3, 1}, {3, 2}};
            m.cone = {hs({-1, 0, 0}), hs({0, -1, 0}), hs({0, 0, -1})};
            break;
        case Family::X5:
            m.arrows = {{4, 3}, {1, 3}, {3, 2}};
            m.cone = {hs({0, -1, 0}), hs({0, 0, -1}), hs({1, 0, -1})};
            break;
        case Family::X6:
            m.arrows = {{4, 3}, {1, 3}, {2, 3}};
            m.cone = {hs({0, 0, -1}), hs({1, 0, -1}), hs({0, 1, -1})};
            break;
        case Family::X7:
            m.arrows = {{3, 4}, {3, 1}, {3, 2}};
            m.cone = {hs({0, 0, 1}), hs({-1, 0, 1}), hs({0, -1, 1})};
            break;
        case Family::X8:
            m.arrows = {{3, 4}, {1, 3}, {3, 2}};
            m.cone = {hs({1, 0, 0}), hs({0, 0, 1}), hs({0, -1, 1})};
            break;
        case Family::X9:
            m.arrows = {{3, 4}, {1, 3}, {2, 3}};
            m.cone = {hs({1, 0, 0}), hs({0, 1, 0}), hs({0, 0, 1})};
            break;
        default: break;
        }
        for (auto &a : m.arrows) m.blocks.push_back({a});
        return m;
    }
    if (f == Family::Xs || f == Family::Zs) {
        auto r = [&](int i) { return N[std::size_t(i - 1)]; };
        m.gauge = {1, 2, 3, 4, 5, 6, 7};
        for (int i = 1; i <= 7; ++i) m.size[i] = r(i);
        if (f == Family::Zs) m.size[5] = r(6) + r(7) - r(5);
        m.size[8] = r(8);
        m.size[9] = r(9);
        for (int i = 0; i < r(8); ++i) m.frame_params[8].push_back(i);
        for (int i = 0; i < r(9); ++i) m.frame_params[9].push_back(r(8) + i);
        for (int i = 1; i <= r(8) + r(9); ++i) m.param_names.push_back("lambda" + std::to_string(i));
        for (int i = 1; i <= 7; ++i) m.var_names.push_back("q" + std::to_string(i));
        if (f == Family::Xs) {
            m.arrows = {{1, 3}, {2, 4}, {3, 5}, {4, 5}, {5, 6}, {5, 7}, {6, 8}, {7, 9}};
            m.blocks = {{{1, 3}}, {{2, 4}}, {{3, 5}}, {{4, 5}}, {{5, 6}, {5, 7}}, {{6, 8}}, {{7, 9}}};
            for (int i = 0; i < 7; ++i) {
                std::vector<int> c(7, 0);
                c[std::size_t(i)] = 1;
                m.cone.push_back(hs(c));
            }
        } else {
            m.arrows = {{1, 3}, {2, 4}, {3, 6}, {3, 7}, {4, 6}, {4, 7}, {6, 5}, {7, 5}, {6, 8}, {7, 9}};
            m.lefschetz = {{3, 5}, {4, 5}};
            m.blocks = {{{1, 3}},         {{2, 4}},         {{3, 6}, {3, 7}}, {{4, 6}, {4, 7}},
                        {{6, 5}, {7, 5}}, {{6, 8}},         {{7, 9}}};
            for (int i : {0, 1, 2, 3, 5, 6}) {
                std::vector<int> c(7, 0);
                c[std::size_t(i)] = 1;
                m.cone.push_back(hs(c));
            }
            m.cone.push_back(hs({0, 0, 0, 0, -1, 1, 1}));
            m.order = {6, 7, 3, 4, 1, 2, 5};
        }
        return m;
    }
    int r = N[0], n = N[1], mm = N[2];
    m.gauge = {1};
    m.size[1] = f == Family::GrBlock ? r : n - r;
    m.size[2] = n;
    m.size[3] = mm;
    m.frame_params[2] = {};
    m.frame_params[3] = {}; // an empty frame still needs its (empty) parameter list
    for (int i = 0; i < n; ++i) m.frame_params[2].push_back(i);
    for (int i = 0; i < mm; ++i) m.frame_params[3].push_back(n + i);
    for (int i = 1; i <= n; ++i) m.param_names.push_back("lambda" + std::to_string(i));
    for (int i = 1; i <= mm; ++i) m.param_names.push_back("eta" + std::to_string(i));
    m.var_names = {"q"};
    if (f == Family::GrBlock) {
        m.arrows = {{3, 1}, {1, 2}};
        m.blocks = {{{1, 2}}};
        m.cone = {hs({1})};
    } else {
        m.arrows = {{2, 1}};
        m.lefschetz = {{3, 1}};
        m.blocks = {{{2, 1}}};
        m.cone = {hs({-1})};
    }
    return m;
}

std::vector<Quiver> d3_mutation_sequence(const std::vector<int> &N) {
    validate_ranks(Family::X0, N);
    std::vector<Quiver> out{d3_base(N)};
    auto chain = d3_chain();
    for (int i = 0; i < 9; ++i) {
        Quiver q = mutate(out.back(), kD3Sequence[i], true).quiver;
        q.meta.family = family_name(chain[std::size_t(i + 1)]);
        q.meta.phase = d3_phase(chain[std::size_t(i + 1)]);
        out.push_back(q);
    }
    return out;
}

Quiver family_quiver(Family f, const std::vector<int> &N) {
    validate_ranks(f, N);
    if (is_d3(f)) return d3_mutation_sequence(N)[std::size_t(chain_index(f))];
    if (f == Family::Xs) return star_base(N);
    if (f == Family::Zs) {
        Quiver q = mutate(star_base(N), 5, true).quiver;
        q.meta.family = "Zs";
        q.meta.phase = {"sigma_i>0 (i!=5)", "sigma5<0", "N5'sigma5+sigma6>0", "N5'sigma5+sigma7>0"};
        return q;
    }
    if (f == Family::GrBlock) return gr_base(N);
    Quiver q = mutate(gr_base(N), 1, true).quiver;
    q.meta.family = "GrBlockDual";
    q.meta.phase = {"sigma1>0"};
    return q;
}

const char *step_name(Step s) { return kStepNames[int(s)]; }

std::optional<Step> step_from_name(const std::string &s) {
    for (int i = 0; i <= int(Step::Gr); ++i)
        if (s == kStepNames[i]) return Step(i);
    return std::nullopt;
}

std::vector<Step> d3_steps() {
    std::vector<Step> v;
    for (int i = 0; i <= int(Step::X9_X0); ++i) v.push_back(Step(i));
    return v;
}

Family step_source(Step s) {
    if (s == Step::Star) return Family::Xs;
    if (s == Step::Gr) return Family::GrBlock;
    return d3_chain()[std::size_t(s)];
}

Family step_target(Step s) {
    if (s == Step::Star) return Family::Zs;
    if (s == Step::Gr) return Family::GrBlockDual;
    return d3_chain()[(std::size_t(s) + 1) % 10];
}

bool step_negates_params(Step s) { return s == Step::Z2_Z3 || s == Step::X6_X7; }

StarCase star_case(const std::vector<int> &N) {
    int n = N[5] + N[6], m = N[2] + N[3];
    if (n >= m + 2) return StarCase::a;
    if (n == m + 1) return StarCase::b;
    if (n == m) return StarCase::c;
    rank_error("N6 + N7 >= N3 + N4 required");
}

int building_block_case(int, int n, int m) {
    if (n >= m + 2) return 1;
    if (n == m + 1) return 2;
    if (n == m) return 3;
    rank_error("building block requires n >= m");
}

static KahlerMap rows_map(std::vector<std::vector<int>> rows) {
    KahlerMap k;
    k.rows = std::move(rows);
    k.sign.assign(k.rows.size(), 1);
    k.unit_exp.assign(k.rows.size(), {});
    return k;
}

static void add_unit(KahlerMap &k, Unit u, const std::vector<int> &exps) {
    k.units.push_back(u);
    for (std::size_t j = 0; j < k.rows.size(); ++j) k.unit_exp[j].push_back(exps[j]);
}

KahlerMap step_map(Step s, const std::vector<int> &N) {
    validate_ranks(step_source(s), N);
    if (s == Step::Gr) return rows_map({{-1}});
    if (s == Step::Star) {
        std::vector<std::vector<int>> rows(7, std::vector<int>(7, 0));
        for (int i = 0; i < 7; ++i) rows[std::size_t(i)][std::size_t(i)] = 1;
        rows[4][4] = -1;
        rows[5][4] = 1;
        rows[6][4] = 1;
        KahlerMap k = rows_map(rows);
        if (star_case(N) == StarCase::c) {
            int n5p = N[5] + N[6] - N[4];
            add_unit(k, Unit{4, n5p % 2 ? -1 : 1}, {0, 0, 1, 1, 0, -1, -1});
        }
        return k;
    }
    int n3p = N[3] - N[2];
    Unit u{2, n3p % 2 ? -1 : 1};
    switch (s) {
    case Step::X0_Z1:
    case Step::Z3_X4: {
        KahlerMap k = rows_map({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
        add_unit(k, u, {1, 1, 0});
        return k;
    }
    case Step::Z1_Z2: return rows_map({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    case Step::Z2_Z3: return rows_map({{0, -1, 0}, {1, 0, 0}, {0, 0, -1}});
    case Step::X4_X5:
    case Step::X7_X8: return rows_map({{-1, 0, 0}, {0, 1, 0}, {1, 0, 1}});
    case Step::X5_X6:
    case Step::X8_X9: return rows_map({{1, 0, 0}, {0, -1, 0}, {0, 1, 1}});
    case Step::X6_X7: return rows_map({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
    case Step::X9_X0: return KahlerMap::relabel({1, 0, 2});
    default: break;
    }
    throw Error(Errc::not_catalogued, "unknown step");
}

Prefactor step_prefactor(Step s, const std::vector<int> &N,
                         const std::vector<std::vector<int>> &chern) {
    validate_ranks(step_source(s), N);
    Prefactor p;
    auto add_sum = [](AffineForm &a, const std::vector<int> &params, int sign) {
        for (int x : params) a.coef[x] += sign;
    };
    if (s == Step::Gr) {
        int r = N[0], n = N[1], m = N[2];
        int sg = (n - r) % 2 ? -1 : 1;
        int c = building_block_case(r, n, m);
        if (c == 2) p.exps.push_back({Q(sg), 0});
        if (c == 3) {
            AffineForm E;
            for (int i = 0; i < n; ++i) E.coef[i] -= 1;
            for (int i = 0; i < m; ++i) E.coef[n + i] += 1;
            E.constant = n - r;
            p.units.push_back({Unit{0, sg}, E});
        }
        return p;
    }
    if (s == Step::Star) {
        int n5p = N[5] + N[6] - N[4];
        int sg = n5p % 2 ? -1 : 1;
        StarCase c = star_case(N);
        if (c == StarCase::b) p.exps.push_back({Q(sg), 4});
        if (c == StarCase::c) {
            AffineForm E;
            add_sum(E, chern.at(2), 1);
            add_sum(E, chern.at(3), 1);
            add_sum(E, chern.at(5), -1);
            add_sum(E, chern.at(6), -1);
            E.constant = n5p;
            p.units.push_back({Unit{4, sg}, E});
        }
        return p;
    }
    if (s == Step::X0_Z1 || s == Step::Z3_X4) {
        int n3p = N[3] - N[2];
        AffineForm E;
        add_sum(E, chern.at(0), 1);
        add_sum(E, chern.at(1), 1);
        for (int i = 0; i < N[3]; ++i) E.coef[i] -= 1;
        E.constant = s == Step::X0_Z1 ? n3p : -n3p;
        p.units.push_back({Unit{2, n3p % 2 ? -1 : 1}, E});
    }
    for (auto &u : p.units)
        for (auto it = u.exponent.coef.begin(); it != u.exponent.coef.end();)
            it = it->second == 0 ? u.exponent.coef.erase(it) : std::next(it);
    return p;
}

std::vector<std::vector<KExpr>> cycle_table_rows(const std::vector<int> &N) {
    validate_ranks(Family::X0, N);
    int n3p = N[3] - N[2];
    Unit u{2, n3p % 2 ? -1 : 1};
    auto q = [](int a, int b, int c) {
        KExpr e;
        e.mono = {a, b, c};
        return e;
    };
    auto U = [&](int e) { return unit_power(3, u, e); };
    return {
        {q(1, 0, 0), q(0, 1, 0), q(0, 0, 1)},
        {U(1) * q(1, 0, 0), U(1) * q(0, 1, 0), q(0, 0, -1)},
        {U(-1) * q(-1, 0, 0), U(1) * q(0, 1, 0), q(0, 0, -1)},
        {U(-1) * q(0, -1, 0), U(-1) * q(-1, 0, 0), q(0, 0, 1)},
        {q(0, -1, 0), q(-1, 0, 0), q(0, 0, -1)},
        {q(0, 1, 0), q(-1, 0, 0), q(0, -1, -1)},
        {q(0, 1, 0), q(1, 0, 0), q(-1, -1, -1)},
        {q(0, -1, 0), q(-1, 0, 0), q(1, 1, 1)},
        {q(0, 1, 0), q(-1, 0, 0), q(1, 0, 1)},
        {q(0, 1, 0), q(1, 0, 0), q(0, 0, 1)},
    };
}

} // namespace qd
