#pragma once
#include "quivdual/kahler.hpp"
#include "quivdual/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qd {

struct Node {
    int id = 0;
    int rank = 0;
    bool framed = false;
    bool operator==(const Node &) const = default;
};

using Edge = std::pair<int, int>;

struct Arrow {
    int src = 0;
    int dst = 0;
    int mult = 1;
};

// A closed walk; stored in its lexicographically least rotation.
struct CycleWord {
    Q coeff = 1;
    std::vector<Edge> path;
    bool operator==(const CycleWord &o) const { return coeff == o.coeff && path == o.path; }
};
using Potential = std::vector<CycleWord>;

std::vector<Edge> least_rotation(const std::vector<Edge> &path);
// Rotates, merges equal words, drops zeros and sorts. With normalize_sign the
// first coefficient is made positive; *flipped reports whether that happened.
Potential canonical_potential(Potential w, bool normalize_sign = true, bool *flipped = nullptr);

struct QuiverMeta {
    std::vector<std::string> phase;
    std::string family;
    bool operator==(const QuiverMeta &) const = default;
};

class Quiver {
  public:
    void add_node(int id, int rank, bool framed);
    void add_arrow(int src, int dst, int mult = 1);
    void set_mult(int src, int dst, int mult);

    bool has_node(int id) const { return nodes_.count(id) != 0; }
    const Node &node(int id) const;
    int rank(int id) const { return node(id).rank; }
    bool framed(int id) const { return node(id).framed; }
    void set_rank(int id, int rank);

    int mult(int src, int dst) const;
    // b_ij = mult(i->j) - mult(j->i)
    int b(int i, int j) const { return mult(i, j) - mult(j, i); }

    const std::map<int, Node> &nodes() const { return nodes_; }
    const std::map<Edge, int> &arrows() const { return arrows_; }
    std::vector<int> gauge_ids() const;
    std::vector<Arrow> arrow_list() const;

    Potential potential;
    QuiverMeta meta;

    // Cluster conditions, node references, potential paths. Throws INVALID_QUIVER.
    void validate() const;

    // Same nodes, ranks and arrows (potential and meta ignored).
    bool same_shape(const Quiver &o) const { return nodes_ == o.nodes_ && arrows_ == o.arrows_; }

  private:
    std::map<int, Node> nodes_;
    std::map<Edge, int> arrows_;
};

int outgoing(const Quiver &q, int k);
int incoming(const Quiver &q, int k);

enum class KahlerCase { OUT_GT_IN, OUT_EQ_IN_PLUS1, OUT_EQ_IN, IN_GT_OUT };
const char *kahler_case_name(KahlerCase c);
KahlerCase classify(int out, int in);

struct MutationResult {
    Quiver before;
    Quiver quiver;
    int k = 0;
    std::map<Edge, int> annihilated; // key (min,max)
    KahlerCase kahler_case = KahlerCase::OUT_EQ_IN;
    int dropped_frame_arrows = 0;
    bool potential_tracked = false;
    bool sign_normalized = false;

    int a(int i, int j) const;
};

// Throws UNKNOWN_NODE, FRAMED_NODE, NEGATIVE_RANK, POTENTIAL_PATTERN.
MutationResult mutate(const Quiver &q, int k, bool track_potential = true);

// Potential rewriting for mutation at k; `after` is the mutated quiver shape.
Potential mutate_potential(const Potential &w, const Quiver &before, int k, const Quiver &after,
                           bool *flipped = nullptr);

enum class MapRule { conjecture, proved };

// Kahler variables are the gauge nodes in increasing id order; the map expresses
// the variables of the mutated quiver through those of the original.
// proved: throws NOT_CATALOGUED for mutations outside the proved catalogue.
KahlerMap kahler_map_for(const MutationResult &r, MapRule rule);

std::vector<std::string> kahler_var_names(const Quiver &q);

} // namespace qd
