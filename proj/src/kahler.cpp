#include "quivdual/kahler.hpp"
#include "quivdual/errors.hpp"
#include "quivdual/rational.hpp"

#include <cstdlib>

namespace qd {

KahlerMap KahlerMap::identity(std::size_t n) {
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = int(i);
    return relabel(perm);
}

KahlerMap KahlerMap::relabel(const std::vector<int> &perm) {
    KahlerMap m;
    std::size_t n = perm.size();
    m.sign.assign(n, 1);
    m.rows.assign(n, std::vector<int>(n, 0));
    m.unit_exp.assign(n, {});
    for (std::size_t j = 0; j < n; ++j) m.rows[j][perm[j]] = 1;
    return m;
}

void KahlerMap::validate() const {
    std::size_t n = rows.size();
    if (sign.size() != n || unit_exp.size() != n)
        throw Error(Errc::usage, "kahler map: inconsistent sizes");
    std::size_t t = target_size();
    for (std::size_t j = 0; j < n; ++j) {
        if (rows[j].size() != t) throw Error(Errc::usage, "kahler map: ragged rows");
        if (unit_exp[j].size() != units.size())
            throw Error(Errc::usage, "kahler map: unit exponent row size");
        if (sign[j] != 1 && sign[j] != -1) throw Error(Errc::usage, "kahler map: sign not +-1");
    }
    for (auto &u : units)
        if (u.var < 0 || std::size_t(u.var) >= t || (u.sign != 1 && u.sign != -1))
            throw Error(Errc::usage, "kahler map: bad unit");
    if (n != t) throw Error(Errc::usage, "kahler map: exponent matrix not square");
    std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error(Errc::usage, "kahler map: exponent matrix singular");
        std::swap(a[p], a[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Q f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
}

KExpr variable(std::size_t n, std::size_t k) {
    KExpr e;
    e.mono.assign(n, 0);
    e.mono[k] = 1;
    return e;
}

KExpr unit_power(std::size_t n, Unit u, int e) {
    KExpr r;
    r.mono.assign(n, 0);
    if (e != 0) r.units[u] = e;
    return r;
}

KExpr operator*(const KExpr &a, const KExpr &b) {
    KExpr r = a;
    r.sign *= b.sign;
    if (r.mono.size() < b.mono.size()) r.mono.resize(b.mono.size(), 0);
    for (std::size_t i = 0; i < b.mono.size(); ++i) r.mono[i] += b.mono[i];
    for (auto &[u, e] : b.units) {
        int v = (r.units[u] += e);
        if (v == 0) r.units.erase(u);
    }
    return r;
}

KExpr inverse(const KExpr &a) { return power(a, -1); }

KExpr power(const KExpr &a, int e) {
    KExpr r;
    r.sign = (e % 2 != 0) ? a.sign : 1;
    r.mono = a.mono;
    for (auto &x : r.mono) x *= e;
    if (e != 0)
        for (auto &[u, p] : a.units) r.units[u] = p * e;
    return r;
}

KExpr image(const KahlerMap &m, std::size_t j) {
    KExpr e;
    e.sign = m.sign[j];
    e.mono = m.rows[j];
    for (std::size_t u = 0; u < m.units.size(); ++u)
        if (m.unit_exp[j][u] != 0) {
            int v = (e.units[m.units[u]] += m.unit_exp[j][u]);
            if (v == 0) e.units.erase(m.units[u]);
        }
    return e;
}

KahlerMap from_images(const std::vector<KExpr> &images, std::size_t n_target) {
    KahlerMap m;
    std::map<Unit, int> index;
    for (auto &e : images)
        for (auto &[u, p] : e.units) index.emplace(u, 0);
    for (auto &[u, i] : index) {
        i = int(m.units.size());
        m.units.push_back(u);
    }
    for (auto &e : images) {
        m.sign.push_back(e.sign);
        std::vector<int> row = e.mono;
        row.resize(n_target, 0);
        m.rows.push_back(row);
        std::vector<int> ue(m.units.size(), 0);
        for (auto &[u, p] : e.units) ue[index[u]] = p;
        m.unit_exp.push_back(ue);
    }
    return m;
}

KahlerMap compose(const KahlerMap &first, const KahlerMap &then) {
    if (then.target_size() != first.source_size())
        throw Error(Errc::usage, "compose: variable count mismatch");
    std::size_t n = first.target_size();
    std::vector<KExpr> out;
    for (std::size_t i = 0; i < then.source_size(); ++i) {
        KExpr img = image(then, i);
        KExpr r;
        r.sign = img.sign;
        r.mono.assign(n, 0);
        for (std::size_t j = 0; j < img.mono.size(); ++j)
            if (img.mono[j] != 0) r = r * power(image(first, j), img.mono[j]);
        for (auto &[u, e] : img.units) {
            KExpr base = image(first, std::size_t(u.var));
            int l = -1, p = 0, nz = 0;
            for (std::size_t t = 0; t < base.mono.size(); ++t)
                if (base.mono[t] != 0) {
                    l = int(t);
                    p = base.mono[t];
                    ++nz;
                }
            if (!base.units.empty() || nz != 1 || std::abs(p) != 1)
                throw Error(Errc::not_catalogued, "compose: unit argument is not a single variable");
            int s = u.sign * base.sign;
            if (p == 1) {
                r = r * unit_power(n, Unit{l, s}, e);
            } else {
                // 1 + s q^-1 = s q^-1 (1 + s q)
                KExpr f;
                f.sign = s;
                f.mono.assign(n, 0);
                f.mono[l] = -1;
                r = r * power(f, e) * unit_power(n, Unit{l, s}, e);
            }
        }
        out.push_back(r);
    }
    return from_images(out, n);
}

bool is_identity(const KahlerMap &m) {
    for (std::size_t j = 0; j < m.source_size(); ++j) {
        KExpr e = image(m, j);
        if (e != variable(m.target_size(), j)) return false;
    }
    return true;
}

std::string format(const KExpr &e, const std::vector<std::string> &names) {
    std::string s;
    if (e.sign < 0) s += "-";
    bool first = true;
    auto sep = [&] {
        if (!first) s += "*";
        first = false;
    };
    for (auto &[u, p] : e.units) {
        sep();
        s += "(1" + std::string(u.sign > 0 ? "+" : "-") + names[u.var] + ")";
        if (p != 1) s += "^" + std::to_string(p);
    }
    for (std::size_t i = 0; i < e.mono.size(); ++i) {
        if (e.mono[i] == 0) continue;
        sep();
        s += names[i];
        if (e.mono[i] != 1) s += "^" + std::to_string(e.mono[i]);
    }
    if (first) s += "1";
    return s;
}

} // namespace qd
