#include "quivdual/fixed_points.hpp"
#include "quivdual/errors.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace qd {

namespace {

using Set = std::vector<int>;

void for_subsets(const Set &from, int k, const std::function<void(const Set &)> &fn) {
    int n = int(from.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
    Set cur(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i) cur[std::size_t(i)] = from[std::size_t(idx[std::size_t(i)])];
        fn(cur);
        int i = k - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < k; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
}

Set range(int lo, int hi) {
    Set s;
    for (int i = lo; i < hi; ++i) s.push_back(i);
    return s;
}

Set minus(const Set &a, const Set &b) {
    Set out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Set unite(const Set &a, const Set &b) {
    Set out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool subset(const Set &a, const Set &b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool disjoint(const Set &a, const Set &b) {
    Set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out.empty();
}

bool valid_set(const Set &s, std::size_t size) {
    return s.size() == size && std::is_sorted(s.begin(), s.end()) &&
           std::adjacent_find(s.begin(), s.end()) == s.end();
}

enum class Shape { X, Z, Z2, Star, StarDual, Gr };

Shape shape_of(Family f) {
    switch (f) {
    case Family::Z1:
    case Family::Z3: return Shape::Z;
    case Family::Z2: return Shape::Z2;
    case Family::Xs: return Shape::Star;
    case Family::Zs: return Shape::StarDual;
    case Family::GrBlock:
    case Family::GrBlockDual: return Shape::Gr;
    default: return Shape::X;
    }
}

std::vector<int> gauge_sizes(const FamilyModel &m) {
    std::vector<int> r;
    for (int g : m.gauge) r.push_back(m.size.at(g));
    return r;
}

Z binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Z z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return z;
}

} // namespace

std::vector<FixedPoint> enumerate_fixed_points(Family f, const std::vector<int> &N) {
    FamilyModel m = family_model(f, N);
    auto r = gauge_sizes(m);
    std::vector<FixedPoint> out;
    auto emit = [&](std::vector<Set> roots) { out.push_back(FixedPoint{f, std::move(roots)}); };
    switch (shape_of(f)) {
    case Shape::X: {
        Set all = range(0, N[3]);
        for_subsets(all, r[2], [&](const Set &c3) {
            for_subsets(c3, r[0], [&](const Set &c1) {
                for_subsets(c3, r[1], [&](const Set &c2) { emit({c1, c2, c3}); });
            });
        });
        break;
    }
    case Shape::Z: {
        Set all = range(0, N[3]);
        for_subsets(all, r[2], [&](const Set &c3) {
            Set rest = minus(all, c3);
            for_subsets(rest, r[0], [&](const Set &c1) {
                for_subsets(rest, r[1], [&](const Set &c2) { emit({c1, c2, c3}); });
            });
        });
        break;
    }
    case Shape::Z2: {
        Set all = range(0, N[3]);
        for_subsets(all, r[0], [&](const Set &a) {
            for_subsets(a, r[2], [&](const Set &c) {
                for_subsets(minus(all, c), r[1], [&](const Set &b) {
                    // B must avoid C; B may meet A outside C
                    emit({a, b, c});
                });
            });
        });
        break;
    }
    case Shape::Star:
    case Shape::StarDual: {
        int N8 = N[7], N9 = N[8];
        bool dual = shape_of(f) == Shape::StarDual;
        for_subsets(range(0, N8), r[5], [&](const Set &c6) {
            for_subsets(range(N8, N8 + N9), r[6], [&](const Set &c7) {
                Set U = unite(c6, c7);
                for_subsets(U, r[4], [&](const Set &c5) {
                    Set host = dual ? minus(U, c5) : c5;
                    for_subsets(host, r[2], [&](const Set &c3) {
                        for_subsets(host, r[3], [&](const Set &c4) {
                            for_subsets(c3, r[0], [&](const Set &c1) {
                                for_subsets(c4, r[1], [&](const Set &c2) {
                                    emit({c1, c2, c3, c4, c5, c6, c7});
                                });
                            });
                        });
                    });
                });
            });
        });
        break;
    }
    case Shape::Gr:
        for_subsets(range(0, N[1]), r[0], [&](const Set &c) { emit({c}); });
        break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_member(Family f, const std::vector<int> &N, const FixedPoint &p) {
    if (p.family != f) return false;
    FamilyModel m = family_model(f, N);
    auto r = gauge_sizes(m);
    if (p.roots.size() != r.size()) return false;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!valid_set(p.roots[i], std::size_t(r[i]))) return false;
    auto &R = p.roots;
    switch (shape_of(f)) {
    case Shape::X: {
        Set all = range(0, N[3]);
        return subset(R[2], all) && subset(R[0], R[2]) && subset(R[1], R[2]);
    }
    case Shape::Z: {
        Set all = range(0, N[3]);
        return subset(R[0], all) && subset(R[1], all) && subset(R[2], all) && disjoint(R[0], R[2]) &&
               disjoint(R[1], R[2]);
    }
    case Shape::Z2: {
        Set all = range(0, N[3]);
        return subset(R[0], all) && subset(R[1], all) && subset(R[2], R[0]) && disjoint(R[1], R[2]);
    }
    case Shape::Star:
    case Shape::StarDual: {
        Set U = unite(R[5], R[6]);
        if (!subset(R[5], range(0, N[7])) || !subset(R[6], range(N[7], N[7] + N[8]))) return false;
        if (!subset(R[4], U)) return false;
        bool ok34 = shape_of(f) == Shape::Star
                        ? subset(R[2], R[4]) && subset(R[3], R[4])
                        : subset(R[2], U) && subset(R[3], U) && disjoint(R[2], R[4]) && disjoint(R[3], R[4]);
        return ok34 && subset(R[0], R[2]) && subset(R[1], R[3]);
    }
    case Shape::Gr: return subset(R[0], range(0, N[1]));
    }
    return false;
}

Z closed_form_count(Family f, const std::vector<int> &N) {
    validate_ranks(f, N);
    if (is_d3(f)) {
        long N1 = N[0], N2 = N[1], N3 = N[2], N4 = N[3], N3p = N4 - N3;
        switch (shape_of(f)) {
        case Shape::Z: return binom(N4, N3p) * binom(N3, N1) * binom(N3, N2);
        case Shape::Z2: return binom(N4, N2) * binom(N2, N3p) * binom(N3, N2);
        default: return binom(N4, N3) * binom(N3, N1) * binom(N3, N2);
        }
    }
    if (f == Family::Xs || f == Family::Zs) {
        auto n = [&](int i) { return long(N[std::size_t(i - 1)]); };
        return binom(n(8), n(6)) * binom(n(9), n(7)) * binom(n(6) + n(7), n(5)) * binom(n(5), n(3)) *
               binom(n(5), n(4)) * binom(n(3), n(1)) * binom(n(4), n(2));
    }
    return binom(N[1], N[0]);
}

FixedPoint iota(Step s, const std::vector<int> &N, const FixedPoint &p) {
    Family src = step_source(s), dst = step_target(s);
    if (!is_member(src, N, p)) throw Error(Errc::not_in_family, format_fixed_point(p));
    FixedPoint q{dst, p.roots};
    auto &R = q.roots;
    Set all = s == Step::Gr ? range(0, N[1]) : range(0, is_d3(src) ? N[3] : 0);
    switch (s) {
    case Step::X0_Z1:
    case Step::Z3_X4: R[2] = minus(all, p.roots[2]); break;
    case Step::Z1_Z2: R[0] = minus(all, p.roots[0]); break;
    case Step::Z2_Z3:
        R[0] = p.roots[1];
        R[1] = minus(all, p.roots[0]);
        break;
    case Step::X4_X5:
    case Step::X7_X8: R[0] = minus(p.roots[2], p.roots[0]); break;
    case Step::X5_X6:
    case Step::X8_X9: R[1] = minus(p.roots[2], p.roots[1]); break;
    case Step::X6_X7: break;
    case Step::X9_X0: std::swap(R[0], R[1]); break;
    case Step::Star: R[4] = minus(unite(p.roots[5], p.roots[6]), p.roots[4]); break;
    case Step::Gr: R[0] = minus(all, p.roots[0]); break;
    }
    return q;
}

FixedPoint iota_inverse(Step s, const std::vector<int> &N, const FixedPoint &p) {
    Family src = step_source(s), dst = step_target(s);
    if (!is_member(dst, N, p)) throw Error(Errc::not_in_family, format_fixed_point(p));
    FixedPoint q{src, p.roots};
    if (s == Step::Z2_Z3) {
        q.roots[0] = minus(range(0, N[3]), p.roots[1]);
        q.roots[1] = p.roots[0];
        return q;
    }
    // every other pairing is an involution on root lists
    auto &R = q.roots;
    Set all = s == Step::Gr ? range(0, N[1]) : range(0, is_d3(src) ? N[3] : 0);
    switch (s) {
    case Step::X0_Z1:
    case Step::Z3_X4: R[2] = minus(all, p.roots[2]); break;
    case Step::Z1_Z2: R[0] = minus(all, p.roots[0]); break;
    case Step::X4_X5:
    case Step::X7_X8: R[0] = minus(p.roots[2], p.roots[0]); break;
    case Step::X5_X6:
    case Step::X8_X9: R[1] = minus(p.roots[2], p.roots[1]); break;
    case Step::X9_X0: std::swap(R[0], R[1]); break;
    case Step::Star: R[4] = minus(unite(p.roots[5], p.roots[6]), p.roots[4]); break;
    case Step::Gr: R[0] = minus(all, p.roots[0]); break;
    default: break;
    }
    return q;
}

std::string format_fixed_point(const FixedPoint &p) {
    std::string s = std::string(family_name(p.family)) + "[";
    for (std::size_t i = 0; i < p.roots.size(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < p.roots[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(p.roots[i][j]);
        }
    }
    return s + "]";
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

EquivariantPoint generic_point(std::size_t nparams, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<long> used;
    EquivariantPoint p;
    for (std::size_t i = 0; i < nparams; ++i) {
        long whole = long(rng() % 101) - 50;
        long b;
        do b = long(rng() % 10006) + 1;
        while (!used.insert(b).second);
        p.push_back(Q(whole) + Q(Z(b), Z(10007)));
    }
    return p;
}

EquivariantPoint negated(const EquivariantPoint &p) {
    EquivariantPoint q;
    for (auto &x : p) q.push_back(-x);
    return q;
}

} // namespace qd
