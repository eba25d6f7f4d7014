#include "quivdual/quiver.hpp"
#include "quivdual/errors.hpp"

#include <algorithm>

namespace qd {

std::vector<Edge> least_rotation(const std::vector<Edge> &path) {
    std::vector<Edge> best = path;
    std::vector<Edge> cur = path;
    for (std::size_t r = 1; r < path.size(); ++r) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

Potential canonical_potential(Potential w, bool normalize_sign, bool *flipped) {
    std::map<std::vector<Edge>, Q> acc;
    for (auto &t : w) acc[least_rotation(t.path)] += t.coeff;
    Potential out;
    for (auto &[p, c] : acc)
        if (c != 0) out.push_back({c, p});
    bool f = false;
    if (normalize_sign && !out.empty() && out.front().coeff < 0) {
        for (auto &t : out) t.coeff = -t.coeff;
        f = true;
    }
    if (flipped) *flipped = f;
    return out;
}

void Quiver::add_node(int id, int rank, bool framed) {
    if (nodes_.count(id)) throw Error(Errc::invalid_quiver, "duplicate node id " + std::to_string(id));
    if (rank < 0) throw Error(Errc::negative_rank, "node " + std::to_string(id));
    nodes_[id] = Node{id, rank, framed};
}

void Quiver::add_arrow(int src, int dst, int mult) {
    if (mult <= 0) throw Error(Errc::invalid_quiver, "arrow multiplicity must be positive");
    arrows_[{src, dst}] += mult;
}

void Quiver::set_mult(int src, int dst, int mult) {
    if (mult <= 0) arrows_.erase({src, dst});
    else arrows_[{src, dst}] = mult;
}

const Node &Quiver::node(int id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error(Errc::unknown_node, "node " + std::to_string(id));
    return it->second;
}

void Quiver::set_rank(int id, int rank) {
    node(id);
    if (rank < 0) throw Error(Errc::negative_rank, "node " + std::to_string(id));
    nodes_[id].rank = rank;
}

int Quiver::mult(int src, int dst) const {
    auto it = arrows_.find({src, dst});
    return it == arrows_.end() ? 0 : it->second;
}

std::vector<int> Quiver::gauge_ids() const {
    std::vector<int> g;
    for (auto &[id, n] : nodes_)
        if (!n.framed) g.push_back(id);
    return g;
}

std::vector<Arrow> Quiver::arrow_list() const {
    std::vector<Arrow> a;
    for (auto &[e, m] : arrows_) a.push_back({e.first, e.second, m});
    return a;
}

void Quiver::validate() const {
    auto bad = [](const std::string &s) { throw Error(Errc::invalid_quiver, s); };
    for (auto &[id, n] : nodes_)
        if (n.rank < 0) bad("negative rank at node " + std::to_string(id));
    for (auto &[e, m] : arrows_) {
        auto [s, d] = e;
        std::string name = std::to_string(s) + "->" + std::to_string(d);
        if (!has_node(s) || !has_node(d)) bad("arrow " + name + " references an unknown node");
        if (s == d) bad("loop at node " + std::to_string(s));
        if (m <= 0) bad("arrow " + name + " has non-positive multiplicity");
        if (mult(d, s) > 0) bad("2-cycle between " + std::to_string(s) + " and " + std::to_string(d));
        if (framed(s) && framed(d)) bad("arrow " + name + " joins two framed nodes");
    }
    for (auto &t : potential) {
        if (t.path.empty()) bad("empty cycle word");
        for (std::size_t i = 0; i < t.path.size(); ++i) {
            auto &e = t.path[i];
            auto &n = t.path[(i + 1) % t.path.size()];
            if (mult(e.first, e.second) == 0)
                bad("potential uses missing arrow " + std::to_string(e.first) + "->" +
                    std::to_string(e.second));
            if (e.second != n.first) bad("cycle word does not compose");
        }
    }
}

int outgoing(const Quiver &q, int k) {
    q.node(k);
    int s = 0;
    for (auto &[e, m] : q.arrows())
        if (e.first == k) s += m * q.rank(e.second);
    return s;
}

int incoming(const Quiver &q, int k) {
    q.node(k);
    int s = 0;
    for (auto &[e, m] : q.arrows())
        if (e.second == k) s += m * q.rank(e.first);
    return s;
}

const char *kahler_case_name(KahlerCase c) {
    switch (c) {
    case KahlerCase::OUT_GT_IN: return "OUT_GT_IN";
    case KahlerCase::OUT_EQ_IN_PLUS1: return "OUT_EQ_IN_PLUS1";
    case KahlerCase::OUT_EQ_IN: return "OUT_EQ_IN";
    case KahlerCase::IN_GT_OUT: return "IN_GT_OUT";
    }
    return "?";
}

KahlerCase classify(int out, int in) {
    if (out >= in + 2) return KahlerCase::OUT_GT_IN;
    if (out == in + 1) return KahlerCase::OUT_EQ_IN_PLUS1;
    if (out == in) return KahlerCase::OUT_EQ_IN;
    return KahlerCase::IN_GT_OUT;
}

int MutationResult::a(int i, int j) const {
    auto it = annihilated.find({std::min(i, j), std::max(i, j)});
    return it == annihilated.end() ? 0 : it->second;
}

namespace {

void reduce_quadratic(Potential &w) {
    for (int guard = 0; guard < 1000; ++guard) {
        w = canonical_potential(w, false);
        auto quad = std::find_if(w.begin(), w.end(), [](const CycleWord &t) { return t.path.size() == 2; });
        if (quad == w.end()) return;
        Edge X = quad->path[0], Y = quad->path[1];
        Q c = quad->coeff;
        std::vector<std::pair<Q, std::vector<Edge>>> Ps, Qs;
        Potential rest;
        for (auto it = w.begin(); it != w.end(); ++it) {
            if (it == quad) continue;
            auto nx = std::count(it->path.begin(), it->path.end(), X);
            auto ny = std::count(it->path.begin(), it->path.end(), Y);
            if (nx && ny) throw Error(Errc::potential_pattern, "both quadratic partners in one term");
            if (nx > 1 || ny > 1) throw Error(Errc::potential_pattern, "repeated quadratic partner in a term");
            if (nx + ny == 0) {
                rest.push_back(*it);
                continue;
            }
            Edge e = nx ? X : Y;
            auto p = it->path;
            std::rotate(p.begin(), std::find(p.begin(), p.end(), e), p.end());
            p.erase(p.begin());
            (nx ? Ps : Qs).emplace_back(it->coeff, p);
        }
        // dW/dY = 0: X = -(1/c) sum b Q ; dW/dX = 0: Y = -(1/c) sum a P
        for (auto &[a, P] : Ps)
            for (auto &[b, Qp] : Qs) {
                std::vector<Edge> path = Qp;
                path.insert(path.end(), P.begin(), P.end());
                rest.push_back({-(a * b) / c, path});
            }
        w = rest;
    }
    throw Error(Errc::potential_pattern, "quadratic reduction does not terminate");
}

} // namespace

Potential mutate_potential(const Potential &w, const Quiver &before, int k, const Quiver &after,
                           bool *flipped) {
    Potential out;
    for (auto &t : w) {
        auto p = t.path;
        if (!p.empty() && p.front().first == k) std::rotate(p.begin(), p.begin() + 1, p.end());
        std::vector<Edge> np;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i].second == k) {
                if (i + 1 >= p.size() || p[i + 1].first != k)
                    throw Error(Errc::potential_pattern, "cycle word does not pass through node cleanly");
                int a = p[i].first, b = p[i + 1].second;
                if (before.framed(a) && before.framed(b))
                    throw Error(Errc::potential_pattern, "composite arrow between framed nodes");
                np.push_back({a, b});
                ++i;
            } else {
                np.push_back(p[i]);
            }
        }
        out.push_back({t.coeff, np});
    }
    for (auto &[ein, m1] : before.arrows()) {
        if (ein.second != k) continue;
        for (auto &[eout, m2] : before.arrows()) {
            if (eout.first != k) continue;
            int i = ein.first, j = eout.second;
            if (before.framed(i) && before.framed(j)) continue;
            out.push_back({Q(1), {{j, k}, {k, i}, {i, j}}});
        }
    }
    reduce_quadratic(out);
    out = canonical_potential(out, true, flipped);
    for (auto &t : out)
        for (auto &e : t.path)
            if (after.mult(e.first, e.second) == 0)
                throw Error(Errc::potential_pattern, "reduced potential uses removed arrow " +
                                                         std::to_string(e.first) + "->" +
                                                         std::to_string(e.second));
    return out;
}

MutationResult mutate(const Quiver &q, int k, bool track_potential) {
    const Node &nk = q.node(k);
    if (nk.framed) throw Error(Errc::framed_node, "cannot mutate at framed node " + std::to_string(k));
    q.validate();
    MutationResult r;
    r.before = q;
    r.k = k;
    int out = outgoing(q, k), in = incoming(q, k);
    r.kahler_case = classify(out, in);
    int nr = std::max(out, in) - nk.rank;
    if (nr < 0) throw Error(Errc::negative_rank, "mutated rank at node " + std::to_string(k));

    std::vector<std::pair<int, int>> ins, outs;
    for (auto &[e, m] : q.arrows()) {
        if (e.second == k) ins.emplace_back(e.first, m);
        if (e.first == k) outs.emplace_back(e.second, m);
    }
    if (track_potential) {
        for (auto &[i, m] : ins)
            if (m != 1) throw Error(Errc::potential_pattern, "multiple arrows at mutated node");
        for (auto &[j, m] : outs)
            if (m != 1) throw Error(Errc::potential_pattern, "multiple arrows at mutated node");
        for (auto &[i, m1] : ins)
            for (auto &[j, m2] : outs)
                if (q.mult(i, j) > 0 && !(q.framed(i) && q.framed(j)))
                    throw Error(Errc::potential_pattern, "mutation creates parallel arrows");
    }

    std::map<Edge, int> arr = q.arrows();
    for (auto &[i, m1] : ins)
        for (auto &[j, m2] : outs) {
            if (q.framed(i) && q.framed(j)) {
                r.dropped_frame_arrows += m1 * m2;
                continue;
            }
            arr[{i, j}] += m1 * m2;
        }
    for (auto &[i, m] : ins) {
        arr.erase({i, k});
        arr[{k, i}] += m;
    }
    for (auto &[j, m] : outs) {
        arr.erase({k, j});
        arr[{j, k}] += m;
    }
    for (auto &[e, m] : arr) {
        auto [i, j] = e;
        if (i > j) continue;
        auto it = arr.find({j, i});
        if (it == arr.end() || it->second == 0 || m == 0) continue;
        int c = std::min(m, it->second);
        m -= c;
        it->second -= c;
        r.annihilated[{i, j}] += c;
    }

    Quiver nq;
    for (auto &[id, n] : q.nodes()) nq.add_node(id, id == k ? nr : n.rank, n.framed);
    for (auto &[e, m] : arr)
        if (m > 0) nq.add_arrow(e.first, e.second, m);
    nq.meta = q.meta;
    nq.meta.family.clear();
    nq.meta.phase.clear();
    if (track_potential) {
        nq.potential = mutate_potential(q.potential, q, k, nq, &r.sign_normalized);
        r.potential_tracked = true;
    }
    nq.validate();
    r.quiver = nq;
    return r;
}

std::vector<std::string> kahler_var_names(const Quiver &q) {
    std::vector<std::string> v;
    for (int id : q.gauge_ids()) v.push_back("q" + std::to_string(id));
    return v;
}

} // namespace qd
