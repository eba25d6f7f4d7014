#include "quivdual/series.hpp"
#include "quivdual/errors.hpp"

#include <algorithm>
#include <set>

namespace qd {

Box uniform_box(std::size_t n, long radius) { return Box(n, Interval{-radius, radius}); }

bool box_contains(const Box &outer, const Box &inner) {
    if (outer.size() != inner.size()) return false;
    for (std::size_t i = 0; i < outer.size(); ++i)
        if (inner[i].lo < outer[i].lo || inner[i].hi > outer[i].hi) return false;
    return true;
}

static std::string box_str(const Box &b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += ",";
        s += "[" + std::to_string(b[i].lo) + "," + std::to_string(b[i].hi) + "]";
    }
    return s + "]";
}

std::string format_exponent(const Exponent &e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

Q sfr(const Q &x, int a) {
    Q r = 1;
    if (a > 0) {
        for (int l = 1; l <= a; ++l) r *= x + l;
    } else if (a < 0) {
        for (int l = a + 1; l <= 0; ++l) {
            Q v = x + l;
            if (v == 0) throw Error(Errc::pole, "sfr(" + to_string(x) + "," + std::to_string(a) + ")");
            r /= v;
        }
    }
    return r;
}

Q inv_sfr(const Q &x, int a) {
    Q r = 1;
    if (a < 0) {
        for (int l = a + 1; l <= 0; ++l) r *= x + l;
    } else if (a > 0) {
        for (int l = 1; l <= a; ++l) {
            Q v = x + l;
            if (v == 0)
                throw Error(Errc::pole, "1/sfr(" + to_string(x) + "," + std::to_string(a) + ")");
            r /= v;
        }
    }
    return r;
}

LaurentSeries::LaurentSeries(std::vector<std::string> vars, Box box, Cone cone)
    : vars_(std::move(vars)), box_(std::move(box)), cone_(std::move(cone)) {
    if (vars_.size() != box_.size()) throw Error(Errc::box_mismatch, "series: vars/box size");
}

LaurentSeries LaurentSeries::one(std::vector<std::string> vars, Box box) {
    LaurentSeries s(std::move(vars), std::move(box));
    s.add(Exponent(s.nvars(), 0), Q(1));
    return s;
}

bool LaurentSeries::in_box(const Exponent &e) const {
    if (e.size() != box_.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!box_[i].contains(e[i])) return false;
    return true;
}

Q LaurentSeries::coeff(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Q(0) : it->second;
}

void LaurentSeries::add(const Exponent &e, const Q &c) {
    if (c == 0 || !in_box(e)) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentSeries LaurentSeries::truncated(const Box &b) const {
    if (!box_contains(box_, b))
        throw Error(Errc::box_mismatch, "truncate: " + box_str(b) + " not inside " + box_str(box_));
    LaurentSeries r(vars_, b, cone_);
    for (auto &[e, c] : terms_) r.add(e, c);
    return r;
}

LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b) {
    if (a.box() != b.box() || a.vars() != b.vars())
        throw Error(Errc::box_mismatch, "mul: operands differ in vars or box");
    LaurentSeries r(a.vars(), a.box());
    Exponent e(a.nvars());
    for (auto &[ea, ca] : a.terms())
        for (auto &[eb, cb] : b.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add(e, ca * cb);
        }
    return r;
}

Q AffineForm::eval(const std::vector<Q> &params) const {
    Q r = constant;
    for (auto &[p, c] : coef) r += c * params.at(std::size_t(p));
    return r;
}

std::string AffineForm::str(const std::vector<std::string> &names) const {
    std::string s;
    for (auto &[p, c] : coef) {
        if (c == 0) continue;
        std::string n = names.at(std::size_t(p));
        if (c == 1) s += (s.empty() ? "" : "+") + n;
        else if (c == -1) s += "-" + n;
        else s += (c > 0 && !s.empty() ? "+" : "") + c.get_str() + "*" + n;
    }
    if (constant != 0 || s.empty()) s += (constant >= 0 && !s.empty() ? "+" : "") + constant.get_str();
    return s;
}

NumericPrefactor Prefactor::evaluate(const std::vector<Q> &params) const {
    NumericPrefactor n;
    n.exps = exps;
    for (auto &u : units) n.units.emplace_back(u.unit, u.exponent.eval(params));
    return n;
}

std::vector<int> raised_vars(const KahlerMap &m, const NumericPrefactor *p) {
    std::set<int> r;
    for (std::size_t u = 0; u < m.units.size(); ++u)
        for (std::size_t j = 0; j < m.source_size(); ++j)
            if (m.unit_exp[j][u] != 0) r.insert(m.units[u].var);
    if (p) {
        for (auto &e : p->exps) r.insert(e.var);
        for (auto &[u, E] : p->units) r.insert(u.var);
    }
    return {r.begin(), r.end()};
}

namespace {

constexpr long INF = 1000000000000L;

long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
long ceil_div(long a, long b) { return -floor_div(-a, b); }

struct Row {
    std::vector<long> a;
    long lo, hi;
};

} // namespace

Box preimage_box(const KahlerMap &m, const Box &target, const std::vector<int> &raised,
                 const Cone &cone) {
    std::size_t n = m.source_size(), t = m.target_size();
    if (target.size() != t) throw Error(Errc::box_mismatch, "preimage: target box size");
    std::vector<Row> rows;
    for (std::size_t k = 0; k < t; ++k) {
        Row r{std::vector<long>(n), target[k].lo, target[k].hi};
        for (std::size_t j = 0; j < n; ++j) r.a[j] = m.rows[j][k];
        if (std::find(raised.begin(), raised.end(), int(k)) != raised.end()) r.lo = -INF;
        rows.push_back(r);
    }
    for (auto &h : cone) {
        if (h.coef.size() != n) throw Error(Errc::box_mismatch, "preimage: cone dimension");
        Row r{std::vector<long>(h.coef.begin(), h.coef.end()), 0, INF};
        rows.push_back(r);
    }
    std::vector<long> lo(n, -INF), hi(n, INF);
    auto sat = [](long x) { return std::clamp(x, -INF, INF); };
    for (int round = 0; round < 200; ++round) {
        bool changed = false;
        for (auto &r : rows) {
            for (std::size_t i = 0; i < n; ++i) {
                long ai = r.a[i];
                if (ai == 0) continue;
                // range of the rest
                long rmin = 0, rmax = 0;
                bool minf = false, maxf = false;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || r.a[k] == 0) continue;
                    long x = r.a[k] > 0 ? lo[k] : hi[k];
                    long y = r.a[k] > 0 ? hi[k] : lo[k];
                    if (std::abs(x) >= INF) minf = true;
                    else rmin += r.a[k] * x;
                    if (std::abs(y) >= INF) maxf = true;
                    else rmax += r.a[k] * y;
                }
                // lo_r - rmax <= ai*v <= hi_r - rmin
                bool has_lo = r.lo > -INF && !maxf, has_hi = r.hi < INF && !minf;
                long L = has_lo ? r.lo - rmax : 0, U = has_hi ? r.hi - rmin : 0;
                long nlo = lo[i], nhi = hi[i];
                if (ai > 0) {
                    if (has_lo) nlo = std::max(nlo, ceil_div(L, ai));
                    if (has_hi) nhi = std::min(nhi, floor_div(U, ai));
                } else {
                    if (has_hi) nlo = std::max(nlo, ceil_div(U, ai));
                    if (has_lo) nhi = std::min(nhi, floor_div(L, ai));
                }
                nlo = sat(nlo);
                nhi = sat(nhi);
                if (nlo != lo[i] || nhi != hi[i]) {
                    lo[i] = nlo;
                    hi[i] = nhi;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    Box b(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (lo[i] <= -INF / 2 || hi[i] >= INF / 2)
            throw Error(Errc::insufficient_box,
                        "preimage of " + box_str(target) + " unbounded in source variable " +
                            std::to_string(i + 1));
        if (lo[i] > hi[i]) lo[i] = hi[i] = 0;
        b[i] = {lo[i], hi[i]};
    }
    return b;
}

namespace {

struct Factor1D {
    std::vector<std::size_t> map_units;         // indices into m.units
    std::vector<std::pair<int, Q>> const_units;  // (sign, exponent) from prefactor
    Q exp_c = 0;
};

std::vector<Q> series_1d(const Factor1D &f, const std::vector<int> &map_pows,
                         const KahlerMap &m, std::size_t len) {
    std::vector<Q> r(len, Q(0));
    if (len == 0) return r;
    r[0] = 1;
    auto convolve = [&](const std::vector<Q> &g) {
        std::vector<Q> out(len, Q(0));
        for (std::size_t i = 0; i < len; ++i) {
            if (r[i] == 0) continue;
            for (std::size_t j = 0; i + j < len; ++j) out[i + j] += r[i] * g[j];
        }
        r.swap(out);
    };
    auto binom_series = [&](int s, const Q &E) {
        std::vector<Q> g(len);
        g[0] = 1;
        for (std::size_t j = 1; j < len; ++j) {
            g[j] = g[j - 1] * (E - Q(long(j) - 1)) / long(j);
            if (s < 0) g[j] = -g[j];
        }
        return g;
    };
    for (std::size_t i = 0; i < f.map_units.size(); ++i)
        if (map_pows[i] != 0) convolve(binom_series(m.units[f.map_units[i]].sign, Q(map_pows[i])));
    for (auto &[s, E] : f.const_units) convolve(binom_series(s, E));
    if (f.exp_c != 0) {
        std::vector<Q> g(len);
        g[0] = 1;
        for (std::size_t j = 1; j < len; ++j) g[j] = g[j - 1] * f.exp_c / long(j);
        convolve(g);
    }
    return r;
}

} // namespace

LaurentSeries substitute(const LaurentSeries &s, const KahlerMap &m,
                         std::vector<std::string> target_vars, const Box &target_box,
                         const NumericPrefactor *pref) {
    std::size_t n = m.source_size(), t = m.target_size();
    if (s.nvars() != n || target_vars.size() != t || target_box.size() != t)
        throw Error(Errc::box_mismatch, "substitute: variable count mismatch");
    std::vector<int> raised = raised_vars(m, pref);
    Box pre = preimage_box(m, target_box, raised, s.cone());
    if (!box_contains(s.box(), pre))
        throw Error(Errc::insufficient_box, "substitute: source box " + box_str(s.box()) +
                                                " does not cover preimage " + box_str(pre));

    std::vector<Factor1D> fac(raised.size());
    for (std::size_t r = 0; r < raised.size(); ++r) {
        int k = raised[r];
        for (std::size_t u = 0; u < m.units.size(); ++u)
            if (m.units[u].var == k) fac[r].map_units.push_back(u);
        if (pref) {
            for (auto &[u, E] : pref->units)
                if (u.var == k) fac[r].const_units.emplace_back(u.sign, E);
            for (auto &e : pref->exps)
                if (e.var == k) fac[r].exp_c += e.c;
        }
    }
    std::map<std::pair<std::size_t, std::vector<int>>, std::vector<Q>> cache;

    LaurentSeries out(std::move(target_vars), target_box);
    Exponent w(t), e(t);
    std::vector<const std::vector<Q> *> ser(raised.size());
    std::vector<long> jlo(raised.size()), jhi(raised.size());
    for (auto &[v, c] : s.terms()) {
        int neg = 0;
        std::fill(w.begin(), w.end(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            if (m.sign[j] < 0) neg += v[j];
            for (std::size_t k = 0; k < t; ++k) w[k] += m.rows[j][k] * v[j];
        }
        bool skip = false;
        for (std::size_t k = 0; k < t && !skip; ++k) {
            bool is_raised = std::find(raised.begin(), raised.end(), int(k)) != raised.end();
            if (w[k] > target_box[k].hi || (!is_raised && w[k] < target_box[k].lo)) skip = true;
        }
        if (skip) continue;
        Q base = (neg % 2 != 0) ? Q(-c) : c;
        for (std::size_t r = 0; r < raised.size(); ++r) {
            int k = raised[r];
            std::vector<int> pows;
            for (auto u : fac[r].map_units) {
                int p = 0;
                for (std::size_t j = 0; j < n; ++j) p += m.unit_exp[j][u] * v[j];
                pows.push_back(p);
            }
            jlo[r] = std::max(0L, target_box[k].lo - w[k]);
            jhi[r] = target_box[k].hi - w[k];
            std::size_t len = std::size_t(jhi[r] + 1);
            auto &entry = cache[{r, pows}];
            if (entry.size() < len) entry = series_1d(fac[r], pows, m, std::max(len, entry.size() * 2));
            ser[r] = &entry;
        }
        // iterate over shifts in the raised variables
        std::vector<long> j(jlo);
        e = w;
        for (std::size_t r = 0; r < raised.size(); ++r) e[raised[r]] = int(w[raised[r]] + j[r]);
        while (true) {
            Q cc = base;
            for (std::size_t r = 0; r < raised.size() && cc != 0; ++r) cc *= (*ser[r])[std::size_t(j[r])];
            out.add(e, cc);
            std::size_t r = 0;
            for (; r < raised.size(); ++r) {
                if (j[r] < jhi[r]) {
                    ++j[r];
                    e[raised[r]] = int(w[raised[r]] + j[r]);
                    break;
                }
                j[r] = jlo[r];
                e[raised[r]] = int(w[raised[r]] + j[r]);
            }
            if (r == raised.size()) break;
        }
    }
    return out;
}

LaurentSeries expand_prefactor(const Prefactor &p, const std::vector<Q> &params,
                               std::vector<std::string> vars, const Box &box) {
    std::size_t n = vars.size();
    NumericPrefactor np = p.evaluate(params);
    Cone point;
    for (std::size_t k = 0; k < n; ++k) {
        HalfSpace h{std::vector<int>(n, 0)};
        h.coef[k] = 1;
        point.push_back(h);
        h.coef[k] = -1;
        point.push_back(h);
    }
    LaurentSeries src(vars, Box(n, Interval{0, 0}), point);
    src.add(Exponent(n, 0), Q(1));
    KahlerMap id = KahlerMap::identity(n);
    Box b = box;
    for (auto &iv : b) iv.lo = std::min(iv.lo, 0L), iv.hi = std::max(iv.hi, 0L);
    for (std::size_t k = 0; k < n; ++k) {
        bool used = false;
        for (auto &e : np.exps) used |= std::size_t(e.var) == k;
        for (auto &[u, E] : np.units) used |= std::size_t(u.var) == k;
        if (!used) {
            np.exps.push_back({Q(0), int(k)});
        }
    }
    return substitute(src, id, std::move(vars), b, &np).truncated(box);
}

std::optional<Exponent> first_mismatch(const LaurentSeries &a, const LaurentSeries &b) {
    if (a.box() != b.box()) throw Error(Errc::box_mismatch, "compare: boxes differ");
    auto ia = a.terms().begin(), ib = b.terms().begin();
    auto ea = a.terms().end(), eb = b.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) return ia->first;
        if (ia == ea || ib->first < ia->first) return ib->first;
        if (ia->second != ib->second) return ia->first;
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

} // namespace qd
