// Exact arithmetic in an iterated field extension of Q: each level adjoins a
// root of a monic polynomial whose coefficients live in the tower below.
// Elements are dense coefficient vectors in the mixed-radix monomial basis
// (innermost level fastest).  Inversion is recursive extended Euclid, so a
// zero divisor (a level that is not a field) throws instead of corrupting.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obstrukt/exact/ball.hpp"
#include "obstrukt/exact/numtheory.hpp"

namespace obstrukt {

class Tower {
  public:
    using Elem = std::vector<Rat>;  // always full dimension

    // minpoly_low: coefficients 0..degree-1 of the monic minimal polynomial,
    // each an element of the tower as built so far (size = current dim)
    void push_level(int degree, std::vector<Elem> minpoly_low);

    int dim() const { return dim_; }
    int levels() const { return (int)levels_.size(); }
    int degree(int level) const { return levels_[level].deg; }

    Elem zero() const { return Elem(dim_, Rat(0)); }
    Elem from_rat(const Rat& a) const;
    Elem one() const { return from_rat(Rat(1)); }
    // the generator adjoined at the given level
    Elem gen(int level) const;
    // lift an element of the partial tower (first `level` levels) into the
    // full tower
    Elem lift(const Elem& partial) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scale(const Elem& a, const Rat& s) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;  // throws std::domain_error on 0 / zero divisor
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long e) const;

    bool is_zero(const Elem& a) const;
    bool is_rational(const Elem& a, Rat* out = nullptr) const;

    // generator -> -generator at a level whose minimal polynomial is pure
    // (x^d - const shape with zero lower odd terms); here: degree 2 with zero
    // linear term.  Negates the odd strata.
    Elem conj_sqrt(int level, const Elem& a) const;

    // coordinates of a in the power basis {1, b, b^2, ...} of the subfield
    // generated by b, if a lies in it (dimension = deg); nullopt otherwise
    std::optional<std::vector<Rat>> in_subfield(const Elem& a, const Elem& b, int deg) const;

    // numeric evaluation: generator images as complex balls, one per level
    CBall embed(const Elem& a, const std::vector<CBall>& gen_images) const;

    std::string str(const Elem& a) const;

  private:
    struct Level {
        int deg;
        std::vector<Elem> mp;  // coefficients as elements of the sub-tower
    };
    std::vector<Level> levels_;
    int dim_ = 1;

    // arithmetic on contiguous slices of length subdim(level+1)
    void mul_rec(int level, const Rat* a, const Rat* b, Rat* out, Rat* scratch) const;
    std::vector<Rat> inv_rec(int level, const std::vector<Rat>& a) const;
    int subdim(int level) const;  // product of degrees of levels < level
};

}  // namespace obstrukt
