// The etale algebra A_f = Q[x]/(f) attached to a genus-2 curve y^2 = n f(x),
// square classes of its elements, and the local eligibility tests that feed
// the descent pipeline.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obstrukt/exact/numtheory.hpp"
#include "obstrukt/exact/poly.hpp"

namespace obstrukt {

struct Curve {
    PolyQ f;                     // degree 6, squarefree
    std::vector<PolyQ> factors;  // irreducible factorization if known (may be empty)
    Int n = 1;                   // twist multiplier: y^2 = n f(x)

    // throws std::invalid_argument on a violated invariant (degree, square-
    // freeness, factor degrees, positivity of n)
    void validate() const;
};

struct EtaleElement {
    PolyQ rep;  // degree < 6, invertible mod parent.f
    Curve parent;

    void validate() const;
};

enum class SquareVerdict { square, nonsquare };

struct ComponentValue {
    Int root;       // lifted root of f, known mod p^precision
    int precision;  // the k in p^k
    Rat value;      // rep evaluated at the lift (exact rational)
    SquareVerdict verdict;
};

enum class Eligibility { eligible, ineligible, undecided };

struct SquareClassReport {
    Int place;  // 0 denotes the real place
    std::vector<ComponentValue> components;
    // true when the twist multiplier n is a square in Q_p, so the report for
    // the untwisted curve carries over unchanged
    bool inherited = false;
    Eligibility overall = Eligibility::undecided;
};

// Norm from A_f to Q: the product of rep over the roots of f, computed as
// resultant(rep, f) / lc(f)^deg(rep).  Multiplicative in rep.
Rat norm_to_base(const EtaleElement& d);

// True iff some irreducible factor of f has odd degree.  This is the
// sufficient condition under which the "fake" 2-Selmer set computed in
// A_f*/squares faithfully represents the true one.  Requires the
// factorization to be present; returns nullopt when it is not.
std::optional<bool> has_odd_degree_factor(const Curve& c);

// For an odd prime p not dividing disc(f) at which f splits into six distinct
// linear factors, Hensel-lift each root to Z/p^k and evaluate rep there.  The
// square verdict is exact: the working precision is raised automatically
// until the valuation of each value is pinned down.  Throws when p is even,
// divides disc(f), or f does not split.
std::vector<ComponentValue> component_values(const EtaleElement& d, const Int& p,
                                             int precision = 20);

// Sieve for twist multipliers: true iff both witness polynomials split
// completely mod p and 2 and -739 are quadratic residues mod p.  Splitting of
// the witnesses forces every line on the flagship surface (and every
// component value of its delta) to become p-adically rational, which is what
// the twist-family argument needs.  Ramified p are reported ineligible.
bool twist_prime_eligible(const Int& p);
const PolyQ& twist_witness_quadratic();  // x^2 - 35x + 49
const PolyQ& twist_witness_sextic();     // x^6 - 126x^4 + 7938x^2 + 250047

// Local eligibility of delta as a 2-Selmer class of the twisted curve at one
// of the places that actually require checking: the fixed set {oo, 2, 7, 739}
// (where the answer is inherited from the untwisted curve whenever n is a
// p-adic square) together with the primes dividing n (where the component
// values decide).  Any other place throws std::invalid_argument.
SquareClassReport selmer_local_eligibility(const EtaleElement& d, const Int& p);

}  // namespace obstrukt
