#include "quivdual/ifunction.hpp"
#include "quivdual/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace qd {

namespace {

// A Chern root of a gauge node (slot >= 0) or a frame parameter (slot = -1).
struct End {
    int slot = -1;
    int param = 0;
};

struct Slots {
    std::vector<int> node;   // slot -> gauge index
    std::vector<int> param;  // slot -> parameter index
    std::vector<std::vector<int>> of_node;
    std::map<int, int> gauge_index;
};

Slots make_slots(const FamilyModel &m, const FixedPoint &p) {
    if (p.roots.size() != m.gauge.size())
        throw Error(Errc::not_in_family, "fixed point does not match the family");
    Slots s;
    s.of_node.resize(m.gauge.size());
    for (std::size_t g = 0; g < m.gauge.size(); ++g) s.gauge_index[m.gauge[g]] = int(g);
    std::vector<int> order = m.order.empty() ? m.gauge : m.order;
    for (int id : order) {
        std::size_t g = std::size_t(s.gauge_index.at(id));
        if (int(p.roots[g].size()) != m.size.at(m.gauge[g]))
            throw Error(Errc::not_in_family, "root count differs from the node rank");
        for (int par : p.roots[g]) {
            s.of_node[g].push_back(int(s.node.size()));
            s.node.push_back(int(g));
            s.param.push_back(par);
        }
    }
    return s;
}

std::vector<End> ends(const FamilyModel &m, const Slots &s, int id) {
    std::vector<End> e;
    if (m.is_frame(id)) {
        for (int par : m.frame_params.at(id)) e.push_back({-1, par});
    } else {
        for (int sl : s.of_node[std::size_t(s.gauge_index.at(id))]) e.push_back({sl, s.param[std::size_t(sl)]});
    }
    return e;
}

struct Factor {
    End a, b;
    int kind; // +1: sfr(x_a - x_b, n_a - n_b); -1: its inverse
};

std::vector<Factor> factors(const FamilyModel &m, const Slots &s) {
    std::vector<Factor> f;
    for (auto &slots : s.of_node)
        for (int i : slots)
            for (int j : slots)
                if (i != j) f.push_back({{i, s.param[std::size_t(i)]}, {j, s.param[std::size_t(j)]}, +1});
    auto pairs = [&](const std::vector<Edge> &es, int kind) {
        for (auto [a, b] : es)
            for (auto ea : ends(m, s, a))
                for (auto eb : ends(m, s, b)) f.push_back({ea, eb, kind});
    };
    pairs(m.arrows, -1);
    pairs(m.lefschetz, +1);
    return f;
}

int deg(const DegreeVector &d, const Slots &s, const End &e) {
    if (e.slot < 0) return 0;
    int g = s.node[std::size_t(e.slot)];
    auto &list = s.of_node[std::size_t(g)];
    return d[std::size_t(g)][std::size_t(std::find(list.begin(), list.end(), e.slot) - list.begin())];
}

void check_degrees(const FamilyModel &m, const DegreeVector &d) {
    if (d.size() != m.gauge.size()) throw Error(Errc::not_in_family, "degree vector shape");
    for (std::size_t g = 0; g < d.size(); ++g)
        if (int(d[g].size()) != m.size.at(m.gauge[g])) throw Error(Errc::not_in_family, "degree vector shape");
}

// Endpoints of a block: distinct source nodes' roots and distinct target nodes' roots.
struct BlockGraph {
    std::vector<End> left, right;
    std::vector<std::vector<int>> delta; // INT_MIN where there is no arrow
};

BlockGraph block_graph(const FamilyModel &m, const Slots &s, const std::vector<Edge> &block,
                       const DegreeVector &d) {
    std::vector<int> srcs, dsts;
    for (auto [a, b] : block) {
        if (std::find(srcs.begin(), srcs.end(), a) == srcs.end()) srcs.push_back(a);
        if (std::find(dsts.begin(), dsts.end(), b) == dsts.end()) dsts.push_back(b);
    }
    BlockGraph g;
    std::vector<int> lnode, rnode;
    for (int a : srcs)
        for (auto e : ends(m, s, a)) {
            g.left.push_back(e);
            lnode.push_back(a);
        }
    for (int b : dsts)
        for (auto e : ends(m, s, b)) {
            g.right.push_back(e);
            rnode.push_back(b);
        }
    g.delta.assign(g.left.size(), std::vector<int>(g.right.size(), INT32_MIN));
    for (std::size_t i = 0; i < g.left.size(); ++i)
        for (std::size_t j = 0; j < g.right.size(); ++j)
            if (std::find(block.begin(), block.end(), Edge{lnode[i], rnode[j]}) != block.end())
                g.delta[i][j] = deg(d, s, g.left[i]) - deg(d, s, g.right[j]);
    return g;
}

std::size_t max_matching(const std::vector<std::vector<int>> &delta, std::size_t ncols) {
    std::vector<int> match(ncols, -1);
    std::size_t size = 0;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        std::vector<char> seen(ncols, 0);
        std::function<bool(std::size_t)> aug = [&](std::size_t r) {
            for (std::size_t c = 0; c < ncols; ++c) {
                if (delta[r][c] < 0 || seen[c]) continue;
                seen[c] = 1;
                if (match[c] < 0 || aug(std::size_t(match[c]))) {
                    match[c] = int(r);
                    return true;
                }
            }
            return false;
        };
        if (aug(i)) ++size;
    }
    return size;
}

std::size_t rank_of(std::vector<std::vector<Q>> a) {
    std::size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Q f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

Z lcm_denominators(const EquivariantPoint &at) {
    Z D = 1;
    for (auto &x : at) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
    return D;
}

// Combined factors between a slot x and an earlier slot y (or the frames, y = -1),
// tabulated over delta = n_x - n_y.
struct Link {
    int x = 0, y = -1;
    long lo = 0, hi = -1;
    std::vector<Z> num, den;
    std::vector<long> e; // power of the common denominator
    std::vector<char> pole;
};

} // namespace

Q term_value(const FamilyModel &m, const FixedPoint &p, const EquivariantPoint &at, const DegreeVector &d) {
    check_degrees(m, d);
    Slots s = make_slots(m, p);
    Q t = 1;
    for (auto &f : factors(m, s)) {
        Q w = at.at(std::size_t(f.a.param)) - at.at(std::size_t(f.b.param));
        int delta = deg(d, s, f.a) - deg(d, s, f.b);
        t *= f.kind > 0 ? sfr(w, delta) : inv_sfr(w, delta);
        if (t == 0) return t;
    }
    return t;
}

Q lefschetz_factor(const FamilyModel &m, const FixedPoint &p, const EquivariantPoint &at,
                   const DegreeVector &d) {
    check_degrees(m, d);
    Slots s = make_slots(m, p);
    Q t = 1;
    for (auto [a, b] : m.lefschetz)
        for (auto ea : ends(m, s, a))
            for (auto eb : ends(m, s, b))
                t *= sfr(at.at(std::size_t(ea.param)) - at.at(std::size_t(eb.param)),
                         deg(d, s, ea) - deg(d, s, eb));
    return t;
}

bool effectivity_prune(const FamilyModel &m, const DegreeVector &d) {
    check_degrees(m, d);
    FixedPoint dummy;
    for (int g : m.gauge) dummy.roots.push_back(std::vector<int>(std::size_t(m.size.at(g)), 0));
    Slots s = make_slots(m, dummy);
    for (auto &block : m.blocks) {
        BlockGraph g = block_graph(m, s, block, d);
        if (max_matching(g.delta, g.right.size()) < std::min(g.left.size(), g.right.size())) return false;
    }
    return true;
}

bool effectivity_literal(const FamilyModel &m, const DegreeVector &d) {
    check_degrees(m, d);
    FixedPoint dummy;
    for (int g : m.gauge) dummy.roots.push_back(std::vector<int>(std::size_t(m.size.at(g)), 0));
    Slots s = make_slots(m, dummy);
    for (auto &block : m.blocks) {
        BlockGraph g = block_graph(m, s, block, d);
        std::size_t R = g.left.size(), C = g.right.size();
        std::vector<char> row_ok(R, 0), col_ok(C, 0);
        std::vector<std::vector<Q>> clipped(R, std::vector<Q>(C, 0));
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < C; ++j) {
                if (g.delta[i][j] == INT32_MIN) continue;
                if (g.delta[i][j] >= 0) row_ok[i] = col_ok[j] = 1;
                clipped[i][j] = std::max(g.delta[i][j], 0);
            }
        if (std::count(row_ok.begin(), row_ok.end(), 0) || std::count(col_ok.begin(), col_ok.end(), 0))
            return false;
        std::size_t rk = rank_of(clipped);
        if (rk != R && rk != C) return false;
    }
    return true;
}

LaurentSeries restricted_I(const FamilyModel &m, const FixedPoint &p, const EquivariantPoint &at,
                           const DegreeDomain &dom, EnumMode mode, EnumStats *stats) {
    if (at.size() != m.nparams()) throw Error(Errc::not_in_family, "parameter count differs from the family");
    if (dom.sums.size() != m.gauge.size()) throw Error(Errc::box_mismatch, "sum box has the wrong dimension");
    Slots s = make_slots(m, p);
    const std::size_t n = s.node.size();
    const std::size_t G = m.gauge.size();
    LaurentSeries out(m.var_names, dom.sums, m.cone);
    EnumStats local;
    EnumStats &st = stats ? *stats : local;

    Z D = lcm_denominators(at);
    std::vector<Z> scaled;
    for (auto &x : at) scaled.push_back(Z(x.get_num() * (D / x.get_den())));
    auto fs = factors(m, s);

    // Static bounds.
    std::vector<long> lo(n, -dom.cap), hi(n, dom.cap);
    std::vector<std::pair<int, int>> geq; // n_a >= n_b, -1 is a frame (degree 0)
    if (mode == EnumMode::pivot)
        for (auto &f : fs)
            if (f.kind < 0 && f.a.param == f.b.param) geq.push_back({f.a.slot, f.b.slot});
    for (bool changed = true; changed;) {
        changed = false;
        auto tighten_lo = [&](int sl, long v) {
            if (v > lo[std::size_t(sl)]) lo[std::size_t(sl)] = v, changed = true;
        };
        auto tighten_hi = [&](int sl, long v) {
            if (v < hi[std::size_t(sl)]) hi[std::size_t(sl)] = v, changed = true;
        };
        for (auto [a, b] : geq) {
            long lb = b < 0 ? 0 : lo[std::size_t(b)];
            long ha = a < 0 ? 0 : hi[std::size_t(a)];
            if (a >= 0) tighten_lo(a, lb);
            if (b >= 0) tighten_hi(b, ha);
        }
        for (std::size_t g = 0; g < G; ++g) {
            long slo = 0, shi = 0;
            for (int sl : s.of_node[g]) slo += lo[std::size_t(sl)], shi += hi[std::size_t(sl)];
            for (int sl : s.of_node[g]) {
                tighten_lo(sl, dom.sums[g].lo - (shi - hi[std::size_t(sl)]));
                tighten_hi(sl, dom.sums[g].hi - (slo - lo[std::size_t(sl)]));
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (lo[i] > hi[i]) return out;
    }

    // Dynamic constraints against earlier slots.
    std::vector<std::vector<int>> lower_by(n), upper_by(n);
    for (auto [a, b] : geq) {
        if (a < 0 || b < 0) continue;
        if (a > b) lower_by[std::size_t(a)].push_back(b);
        else upper_by[std::size_t(b)].push_back(a);
    }

    // Links.
    std::map<std::pair<int, int>, std::size_t> link_index;
    std::vector<Link> links;
    auto bound_lo = [&](int sl) { return sl < 0 ? 0L : lo[std::size_t(sl)]; };
    auto bound_hi = [&](int sl) { return sl < 0 ? 0L : hi[std::size_t(sl)]; };
    for (auto &f : fs) {
        End x = f.a, y = f.b;
        int sign = 1;
        if (x.slot < y.slot) std::swap(x, y), sign = -1;
        auto key = std::make_pair(x.slot, y.slot);
        auto it = link_index.find(key);
        if (it == link_index.end()) {
            Link L;
            L.x = x.slot;
            L.y = y.slot;
            L.lo = bound_lo(x.slot) - bound_hi(y.slot);
            L.hi = bound_hi(x.slot) - bound_lo(y.slot);
            std::size_t len = std::size_t(L.hi - L.lo + 1);
            L.num.assign(len, Z(1));
            L.den.assign(len, Z(1));
            L.e.assign(len, 0);
            L.pole.assign(len, 0);
            it = link_index.emplace(key, links.size()).first;
            links.push_back(std::move(L));
        }
        Link &L = links[it->second];
        Z W = scaled[std::size_t(f.a.param)] - scaled[std::size_t(f.b.param)];
        for (long dl = L.lo; dl <= L.hi; ++dl) {
            std::size_t k = std::size_t(dl - L.lo);
            long delta = sign * dl;
            Z prod = 1;
            if (delta > 0)
                for (long l = 1; l <= delta; ++l) prod *= W + l * D;
            else
                for (long l = delta + 1; l <= 0; ++l) prod *= W + l * D;
            // sfr = prod / D^delta for delta >= 0, D^-delta / prod otherwise
            bool up = (delta > 0) == (f.kind > 0);
            if (up) L.num[k] *= prod;
            else {
                if (prod == 0) L.pole[k] = 1;
                L.den[k] *= prod;
            }
            L.e[k] += f.kind > 0 ? -delta : delta;
        }
    }
    std::vector<std::vector<std::size_t>> links_at(n);
    for (std::size_t i = 0; i < links.size(); ++i) links_at[std::size_t(links[i].x)].push_back(i);

    std::vector<Z> num(n + 1, Z(1)), den(n + 1, Z(1));
    std::vector<long> epow(n + 1, 0);
    std::vector<int> d(n, 0);
    std::vector<long> sum(G, 0);
    std::vector<long> rest_lo(n, 0), rest_hi(n, 0); // bounds of the later slots of the same node
    for (std::size_t g = 0; g < G; ++g) {
        long a = 0, b = 0;
        for (auto it = s.of_node[g].rbegin(); it != s.of_node[g].rend(); ++it) {
            rest_lo[std::size_t(*it)] = a;
            rest_hi[std::size_t(*it)] = b;
            a += lo[std::size_t(*it)];
            b += hi[std::size_t(*it)];
        }
    }
    std::map<long, Z> dpow;
    auto power = [&](long e) -> const Z & {
        auto it = dpow.find(e);
        if (it != dpow.end()) return it->second;
        Z z;
        mpz_pow_ui(z.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(e));
        return dpow.emplace(e, z).first->second;
    };
    // Extra bounds are applied at the last node (in enumeration order) they involve.
    std::vector<std::size_t> node_order;
    for (std::size_t k = 0; k < n; ++k)
        if (k == 0 || s.node[k] != s.node[k - 1]) node_order.push_back(std::size_t(s.node[k]));
    std::vector<std::vector<const LinearBound *>> bound_at(G);
    for (auto &b : dom.extra) {
        if (b.coef.size() != G) throw Error(Errc::box_mismatch, "linear bound has the wrong dimension");
        std::size_t last = G;
        for (std::size_t g : node_order)
            if (b.coef[g] != 0) last = g;
        if (last < G) bound_at[last].push_back(&b);
    }
    std::vector<long> nlo(G), nhi(G);
    for (std::size_t g = 0; g < G; ++g) nlo[g] = dom.sums[g].lo, nhi[g] = dom.sums[g].hi;
    auto fdiv = [](long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
    auto enter_node = [&](std::size_t g) {
        nlo[g] = dom.sums[g].lo;
        nhi[g] = dom.sums[g].hi;
        for (const LinearBound *b : bound_at[g]) {
            long rest = 0;
            for (std::size_t o = 0; o < G; ++o)
                if (o != g) rest += long(b->coef[o]) * sum[o];
            long c = b->coef[g];
            constexpr long big = 1L << 40;
            long L = b->lo <= -big ? -big : b->lo - rest, H = b->hi >= big ? big : b->hi - rest;
            if (c > 0) {
                nlo[g] = std::max(nlo[g], -fdiv(-L, c));
                nhi[g] = std::min(nhi[g], fdiv(H, c));
            } else {
                nlo[g] = std::max(nlo[g], -fdiv(-H, c));
                nhi[g] = std::min(nhi[g], fdiv(L, c));
            }
        }
    };

    DegreeVector dv(G);
    for (std::size_t g = 0; g < G; ++g) dv[g].resize(s.of_node[g].size());
    std::vector<int> pos_in_node(n);
    for (std::size_t g = 0; g < G; ++g)
        for (std::size_t i = 0; i < s.of_node[g].size(); ++i) pos_in_node[std::size_t(s.of_node[g][i])] = int(i);

    Exponent ex(G);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == n) {
            ++st.leaves;
            if (mode == EnumMode::effective) {
                for (std::size_t i = 0; i < n; ++i) dv[std::size_t(s.node[i])][std::size_t(pos_in_node[i])] = d[i];
                if (!effectivity_prune(m, dv)) {
                    ++st.filtered;
                    return;
                }
            }
            for (std::size_t g = 0; g < G; ++g) ex[g] = int(sum[g]);
            Q t;
            if (epow[n] >= 0) t = Q(num[n] * power(epow[n]), den[n]);
            else t = Q(num[n], den[n] * power(-epow[n]));
            t.canonicalize();
            ++st.nonzero;
            out.add(ex, t);
            return;
        }
        std::size_t g = std::size_t(s.node[k]);
        long a = lo[k], b = hi[k];
        for (int y : lower_by[k]) a = std::max(a, long(d[std::size_t(y)]));
        for (int y : upper_by[k]) b = std::min(b, long(d[std::size_t(y)]));
        if (k == 0 || std::size_t(s.node[k - 1]) != g) enter_node(g);
        a = std::max(a, nlo[g] - sum[g] - rest_hi[k]);
        b = std::min(b, nhi[g] - sum[g] - rest_lo[k]);
        for (long v = a; v <= b; ++v) {
            d[k] = int(v);
            Z &nu = num[k + 1];
            Z &de = den[k + 1];
            nu = num[k];
            de = den[k];
            long e = epow[k];
            bool zero = false;
            for (std::size_t li : links_at[k]) {
                const Link &L = links[li];
                long dl = v - (L.y < 0 ? 0 : d[std::size_t(L.y)]);
                std::size_t idx = std::size_t(dl - L.lo);
                if (L.pole[idx]) throw Error(Errc::pole, "non-generic equivariant point");
                if (L.num[idx] == 0) {
                    zero = true;
                    break;
                }
                nu *= L.num[idx];
                de *= L.den[idx];
                e += L.e[idx];
            }
            if (zero) continue;
            epow[k + 1] = e;
            sum[g] += v;
            rec(k + 1);
            sum[g] -= v;
        }
    };
    rec(0);
    return out;
}

namespace {

LaurentSeries block_series(int r, int n, int m, const FixedPoint &p, const EquivariantPoint &at,
                           long radius, bool dual) {
    validate_ranks(Family::GrBlock, {r, n, m});
    int k = dual ? n - r : r;
    if (p.roots.size() != 1 || int(p.roots[0].size()) != k)
        throw Error(Errc::not_in_family, "building-block fixed point");
    if (at.size() != std::size_t(n + m)) throw Error(Errc::not_in_family, "building-block parameters");
    auto lam = [&](int F) { return at[std::size_t(F)]; };
    auto eta = [&](int A) { return at[std::size_t(n + A)]; };
    const auto &f = p.roots[0];
    LaurentSeries out({"q"}, {{-radius, radius}}, {HalfSpace{{dual ? -1 : 1}}});
    std::vector<int> d(std::size_t(k), 0);
    std::function<void(int, long)> rec = [&](int i, long total) {
        if (i == k) {
            Q t = 1;
            for (int I = 0; I < k; ++I)
                for (int J = 0; J < k; ++J)
                    if (I != J) t *= sfr(lam(f[std::size_t(I)]) - lam(f[std::size_t(J)]), d[std::size_t(I)] - d[std::size_t(J)]);
            for (int I = 0; I < k; ++I) {
                Q x = lam(f[std::size_t(I)]);
                int dI = d[std::size_t(I)];
                if (!dual) {
                    for (int A = 0; A < m; ++A)
                        for (int l = 0; l <= dI - 1; ++l) t *= -x + eta(A) - l;
                    for (int F = 0; F < n; ++F)
                        for (int l = 1; l <= dI; ++l) t /= x - lam(F) + l;
                } else {
                    for (int A = 0; A < m; ++A)
                        for (int l = 1; l <= -dI; ++l) t *= -x + eta(A) + l;
                    for (int F = 0; F < n; ++F)
                        for (int l = 1; l <= -dI; ++l) t /= -x + lam(F) + l;
                }
            }
            out.add({int(dual ? -total : total)}, t);
            return;
        }
        for (long v = 0; total + v <= radius; ++v) {
            d[std::size_t(i)] = int(dual ? -v : v);
            rec(i + 1, total + v);
        }
    };
    rec(0, 0);
    return out;
}

} // namespace

LaurentSeries building_block_I(int r, int n, int m, const FixedPoint &p, const EquivariantPoint &at,
                               long radius) {
    return block_series(r, n, m, p, at, radius, false);
}

LaurentSeries building_block_I_dual(int r, int n, int m, const FixedPoint &p,
                                    const EquivariantPoint &at, long radius) {
    return block_series(r, n, m, p, at, radius, true);
}

} // namespace qd
