#pragma once
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace qd {

// u = 1 + sign * q_var
struct Unit {
    int var = 0;
    int sign = 1;
    auto operator<=>(const Unit &) const = default;
};

// Expresses the source variables q'_j through target variables q:
//   q'_j = sign[j] * q^rows[j] * prod_u units[u]^unit_exp[j][u]
struct KahlerMap {
    std::vector<int> sign;
    std::vector<std::vector<int>> rows;
    std::vector<Unit> units;
    std::vector<std::vector<int>> unit_exp;

    std::size_t source_size() const { return rows.size(); }
    std::size_t target_size() const { return rows.empty() ? 0 : rows[0].size(); }

    static KahlerMap identity(std::size_t n);
    // q'_j = q_{perm[j]}
    static KahlerMap relabel(const std::vector<int> &perm);

    // Shapes, signs and invertibility of the exponent matrix.
    void validate() const;
};

// Symbolic monomial-times-units expression in the target variables.
struct KExpr {
    int sign = 1;
    std::vector<int> mono;
    std::map<Unit, int> units;

    bool operator==(const KExpr &) const = default;
};

KExpr variable(std::size_t n, std::size_t k);
KExpr unit_power(std::size_t n, Unit u, int e);
KExpr operator*(const KExpr &a, const KExpr &b);
KExpr inverse(const KExpr &a);
KExpr power(const KExpr &a, int e);

KExpr image(const KahlerMap &m, std::size_t j);
KahlerMap from_images(const std::vector<KExpr> &images, std::size_t n_target);

// first: q' in terms of q; then: q'' in terms of q'. Result: q'' in terms of q.
KahlerMap compose(const KahlerMap &first, const KahlerMap &then);

bool is_identity(const KahlerMap &m);

std::string format(const KExpr &e, const std::vector<std::string> &names);

} // namespace qd
