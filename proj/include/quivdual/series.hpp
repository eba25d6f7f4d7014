#pragma once
#include "quivdual/kahler.hpp"
#include "quivdual/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qd {

struct Interval {
    long lo = 0;
    long hi = 0;
    bool contains(long x) const { return lo <= x && x <= hi; }
    bool operator==(const Interval &) const = default;
};
using Box = std::vector<Interval>;
using Exponent = std::vector<int>;

Box uniform_box(std::size_t n, long radius);
bool box_contains(const Box &outer, const Box &inner);

// coef . e >= 0
struct HalfSpace {
    std::vector<int> coef;
};
using Cone = std::vector<HalfSpace>;

// sfr(x,a) = prod_{l<=a}(x+l) / prod_{l<=0}(x+l). Throws POLE.
Q sfr(const Q &x, int a);
// 1/sfr(x,a); zero where sfr has a pole, POLE where sfr vanishes.
Q inv_sfr(const Q &x, int a);

class LaurentSeries {
  public:
    LaurentSeries() = default;
    LaurentSeries(std::vector<std::string> vars, Box box, Cone cone = {});

    static LaurentSeries one(std::vector<std::string> vars, Box box);

    const std::vector<std::string> &vars() const { return vars_; }
    const Box &box() const { return box_; }
    const Cone &cone() const { return cone_; }
    const std::map<Exponent, Q> &terms() const { return terms_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t size() const { return terms_.size(); }

    bool in_box(const Exponent &e) const;
    Q coeff(const Exponent &e) const;
    // Out-of-box exponents are dropped; zero sums are erased.
    void add(const Exponent &e, const Q &c);
    void set_cone(Cone c) { cone_ = std::move(c); }

    // Restriction to a sub-box.
    LaurentSeries truncated(const Box &b) const;

  private:
    std::vector<std::string> vars_;
    Box box_;
    Cone cone_;
    std::map<Exponent, Q> terms_;
};

LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b);

// constant + sum coef[p] * param[p]
struct AffineForm {
    Q constant;
    std::map<int, Q> coef;

    Q eval(const std::vector<Q> &params) const;
    std::string str(const std::vector<std::string> &param_names) const;
};

struct ExpTerm {
    Q c;
    int var = 0;
};

struct UnitTerm {
    Unit unit;
    AffineForm exponent;
};

struct NumericPrefactor {
    std::vector<ExpTerm> exps;
    std::vector<std::pair<Unit, Q>> units;
};

struct Prefactor {
    std::vector<ExpTerm> exps;
    std::vector<UnitTerm> units;

    bool is_one() const { return exps.empty() && units.empty(); }
    NumericPrefactor evaluate(const std::vector<Q> &params) const;
};

LaurentSeries expand_prefactor(const Prefactor &p, const std::vector<Q> &params,
                               std::vector<std::string> vars, const Box &box);

// Variables whose exponent can only grow under substitution with m and prefactor p.
std::vector<int> raised_vars(const KahlerMap &m, const NumericPrefactor *p);

// Bounding box of the source exponents v whose image under m can land in target
// (raised target variables are unbounded below) and satisfying the cone.
// Throws INSUFFICIENT_BOX when the region is unbounded.
Box preimage_box(const KahlerMap &m, const Box &target, const std::vector<int> &raised,
                 const Cone &cone);

// Rewrites a series in the source variables q' as a series in q, optionally
// multiplied by a prefactor in q. Throws INSUFFICIENT_BOX when the source box
// does not cover the preimage of the target box.
LaurentSeries substitute(const LaurentSeries &s, const KahlerMap &m,
                         std::vector<std::string> target_vars, const Box &target_box,
                         const NumericPrefactor *prefactor = nullptr);

// First exponent (lexicographic) where the coefficients differ. Boxes must agree.
std::optional<Exponent> first_mismatch(const LaurentSeries &a, const LaurentSeries &b);

std::string format_exponent(const Exponent &e);

} // namespace qd
