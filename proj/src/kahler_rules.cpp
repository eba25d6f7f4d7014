#include "quivdual/errors.hpp"
#include "quivdual/families.hpp"
#include "quivdual/quiver.hpp"

#include <algorithm>

namespace qd {

namespace {

int parity_sign(long n) { return n % 2 ? -1 : 1; }

KahlerMap conjecture_map(const MutationResult &r) {
    const Quiver &q = r.before;
    const Quiver &nq = r.quiver;
    auto gauge = q.gauge_ids();
    std::size_t n = gauge.size();
    std::size_t kpos = std::size_t(std::find(gauge.begin(), gauge.end(), r.k) - gauge.begin());
    int out = outgoing(q, r.k), in = incoming(q, r.k);
    int nkp = nq.rank(r.k);
    int sk = parity_sign(nkp);

    KahlerMap m;
    m.rows.assign(n, std::vector<int>(n, 0));
    m.sign.assign(n, 1);
    m.unit_exp.assign(n, {});
    bool eq = out == in;
    if (eq) m.units.push_back(Unit{int(kpos), sk});

    for (std::size_t jp = 0; jp < n; ++jp) {
        int j = gauge[jp];
        auto &row = m.rows[jp];
        if (eq) m.unit_exp[jp].push_back(0);
        if (j == r.k) {
            row[kpos] = -1;
            continue;
        }
        row[jp] = 1;
        long sgn_exp = long(outgoing(q, j)) - outgoing(nq, j);
        for (auto &[id, node] : q.nodes())
            if (id != r.k) sgn_exp += long(node.rank) * r.a(id, j);
        int b = q.b(r.k, j), bp = std::max(b, 0), bm = std::max(-b, 0);
        if (out > in) {
            row[kpos] += bp;
            sgn_exp += long(nkp) * (bp + bm);
        } else if (eq) {
            row[kpos] += bp;
            sgn_exp += long(nkp) * (bp + bm);
            m.unit_exp[jp][0] += bm - bp;
        } else {
            row[kpos] -= bm;
            sgn_exp += long(nkp) * bp + long(out - q.rank(r.k)) * bm;
        }
        m.sign[jp] = parity_sign(sgn_exp < 0 ? -sgn_exp : sgn_exp);
    }
    return m;
}

// (N1,N2,N3,N4) from the gauge ranks of the i-th chain member.
std::vector<int> d3_recover(int i, const Quiver &q) {
    int r1 = q.rank(1), r2 = q.rank(2), r3 = q.rank(3), N4 = q.rank(4);
    switch (i) {
    case 0: return {r1, r2, r3, N4};
    case 1: return {r1, r2, N4 - r3, N4};
    case 2: return {N4 - r1, r1, N4 - r3, N4};
    case 3: return {r2, r1, N4 - r3, N4};
    case 4: return {r2, r1, r3, N4};
    case 5: return {r2, r3 - r1, r3, N4};
    case 6:
    case 7: return {r3 - r2, r3 - r1, r3, N4};
    case 8: return {r3 - r2, r1, r3, N4};
    }
    return {};
}

bool has_nodes(const Quiver &q, std::initializer_list<std::pair<int, bool>> want) {
    if (q.nodes().size() != want.size()) return false;
    for (auto [id, framed] : want)
        if (!q.has_node(id) || q.framed(id) != framed) return false;
    return true;
}

template <class F> bool attempt(F f) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.code() == Errc::rank_constraint) return false;
        throw;
    }
}

KahlerMap proved_map(const MutationResult &r) {
    const Quiver &q = r.before;
    if (has_nodes(q, {{1, false}, {2, false}, {3, false}, {4, true}})) {
        for (int i = 0; i < 9; ++i) {
            if (kD3Sequence[i] != r.k) continue;
            auto N = d3_recover(i, q);
            KahlerMap out;
            bool ok = attempt([&] {
                validate_ranks(Family::X0, N);
                if (!d3_mutation_sequence(N)[std::size_t(i)].same_shape(q)) return false;
                out = step_map(d3_steps()[std::size_t(i)], N);
                return true;
            });
            if (ok) return out;
        }
    }
    if (r.k == 5 && has_nodes(q, {{1, false}, {2, false}, {3, false}, {4, false}, {5, false},
                                  {6, false}, {7, false}, {8, true}, {9, true}})) {
        std::vector<int> N;
        for (int i = 1; i <= 9; ++i) N.push_back(q.rank(i));
        KahlerMap out;
        bool ok = attempt([&] {
            validate_ranks(Family::Xs, N);
            if (!family_quiver(Family::Xs, N).same_shape(q)) return false;
            out = step_map(Step::Star, N);
            return true;
        });
        if (ok) return out;
    }
    // Grassmannian building block: one gauge node between two frames, E -> G -> L.
    auto gauge = q.gauge_ids();
    if (gauge.size() == 1 && gauge[0] == r.k) {
        int ins = 0, outs = 0;
        bool simple = true;
        for (auto &[e, m] : q.arrows()) {
            if (m != 1) simple = false;
            if (e.second == r.k) ++ins;
            if (e.first == r.k) ++outs;
        }
        if (simple && ins <= 1 && outs == 1 && q.arrows().size() == std::size_t(ins + outs) &&
            outgoing(q, r.k) > q.rank(r.k) && outgoing(q, r.k) >= incoming(q, r.k))
            return KahlerMap{{1}, {{-1}}, {}, {{}}};
    }
    throw Error(Errc::not_catalogued, "mutation at node " + std::to_string(r.k) +
                                          " is not covered by a proved identity");
}

} // namespace

KahlerMap kahler_map_for(const MutationResult &r, MapRule rule) {
    return rule == MapRule::conjecture ? conjecture_map(r) : proved_map(r);
}

} // namespace qd
