#pragma once
#include "quivdual/kahler.hpp"
#include "quivdual/quiver.hpp"
#include "quivdual/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qd {

// Catalogued varieties. D3 chain members take the ranks (N1,N2,N3,N4) of the
// original D3 quiver; the star pair takes (N1..N7,N8,N9); the Grassmannian
// building block takes (r,n,m).
enum class Family { X0, Z1, Z2, Z3, X4, X5, X6, X7, X8, X9, Xs, Zs, GrBlock, GrBlockDual };

const char *family_name(Family f);
std::optional<Family> family_from_name(const std::string &s);
std::vector<Family> d3_chain();
bool is_d3(Family f);

// Throws RANK_CONSTRAINT.
void validate_ranks(Family f, const std::vector<int> &ranks);

// Data consumed by the I-function evaluator.
struct FamilyModel {
    Family family = Family::X0;
    std::vector<int> ranks;
    std::vector<int> gauge;                     // node ids in Kahler-variable order
    std::map<int, int> size;                    // node id -> rank (gauge) or frame dimension
    std::map<int, std::vector<int>> frame_params; // frame id -> equivariant parameter indices
    std::vector<Edge> arrows;                   // factors 1/sfr(x_a - x_b, n_a - n_b)
    std::vector<Edge> lefschetz;                // factors sfr(x_a - x_b, n_a - n_b)
    std::vector<std::vector<Edge>> blocks;      // arrow groups required non-degenerate
    Cone cone;                                  // declared support of the series
    std::vector<std::string> var_names;
    std::vector<std::string> param_names;
    std::vector<int> order;                     // enumeration order of gauge nodes (empty: gauge order)

    bool is_frame(int id) const { return frame_params.count(id) != 0; }
    std::size_t nparams() const { return param_names.size(); }
};

FamilyModel family_model(Family f, const std::vector<int> &ranks);

// The catalogued quiver with potential and phase metadata.
Quiver family_quiver(Family f, const std::vector<int> &ranks);

// Quivers met along mu3,mu1,mu2,... starting from X0 (entries 0..9, then X0 relabelled).
std::vector<Quiver> d3_mutation_sequence(const std::vector<int> &ranks);
extern const int kD3Sequence[9];

// A dual pair of families together with the identity relating them.
enum class Step {
    X0_Z1, Z1_Z2, Z2_Z3, Z3_X4, X4_X5, X5_X6, X6_X7, X7_X8, X8_X9, X9_X0,
    Star,
    Gr,
};

const char *step_name(Step s);
std::optional<Step> step_from_name(const std::string &s);
std::vector<Step> d3_steps();
Family step_source(Step s);
Family step_target(Step s);
// The identity is checked with the target family at negated parameters.
bool step_negates_params(Step s);

enum class StarCase { a, b, c };
StarCase star_case(const std::vector<int> &ranks);
int building_block_case(int r, int n, int m);

// Variables of the target family expressed through those of the source family.
KahlerMap step_map(Step s, const std::vector<int> &ranks);

// Prefactor multiplying the target-side series, as an affine form in the
// equivariant parameters; chern is the source point's Chern-root assignment.
Prefactor step_prefactor(Step s, const std::vector<int> &ranks,
                         const std::vector<std::vector<int>> &chern);

// Cumulative cycle table rows: variables of the i-th chain member through X0's.
std::vector<std::vector<KExpr>> cycle_table_rows(const std::vector<int> &ranks);

} // namespace qd
