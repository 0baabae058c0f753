// Automorphisms of the line configuration: translations by (Z/2)^6 modulo
// the all-ones vector, extended by S6 permuting the six coordinates.  This
// header covers the induced action on the rank-17 lattice, the arithmetic
// containment of the Galois image in the order-96 subgroup, first group
// cohomology with lattice coefficients, and the divisor bookkeeping built on
// top of it (distinguished class, coset divisor table).
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/etale.hpp"
#include "obstrukt/lattice.hpp"

namespace obstrukt {

// (t, pi) acts on a line class by s -> pi(s) + t, where pi moves the bit at
// position i to position pi(i).  Composition applies the right factor first:
// (t1,p1)(t2,p2) = (t1 + p1(t2), p1 p2).
struct AutElement {
    unsigned t = 0;                                 // canonical label < 32
    std::array<int, 6> perm = {0, 1, 2, 3, 4, 5};   // 0-indexed images

    static AutElement translation(const std::array<int, 6>& bits);
    static AutElement transposition(int i, int j);        // positions 1..6
    static AutElement cycle(const std::vector<int>& pos);  // positions 1..6

    AutElement operator*(const AutElement& o) const;  // apply o, then this
    AutElement inverse() const;
    bool operator==(const AutElement&) const = default;

    unsigned apply_mask(unsigned raw) const;  // raw 6-bit translation vector
    LineIndex apply(LineIndex s) const;
    Divisor apply(const Divisor& d) const;

    bool is_identity() const;
    unsigned key_of_perm() const;  // Lehmer code, 0..719
    uint32_t key() const;          // t * 720 + key_of_perm(); total order
    std::string str() const;
};

struct SubgroupSpec {
    std::vector<AutElement> generators;
    std::vector<AutElement> elements;  // closed under the product, sorted by key

    static SubgroupSpec closure(std::vector<AutElement> gens);
    long order() const { return (long)elements.size(); }
    bool contains(const AutElement& g) const;
    int index_of(const AutElement& g) const;  // -1 when absent
    bool is_subgroup_of(const SubgroupSpec& bigger) const;
};

SubgroupSpec trivial_group();
// the full automorphism group of the configuration, order 23040
SubgroupSpec full_aut_group();
// index-2 subgroup with even-weight translation part (norm of delta a
// square), order 11520
SubgroupSpec square_norm_subgroup();
// the three nested groups the descent argument actually uses
SubgroupSpec h96();
SubgroupSpec h48();  // elements of h96 leaving the sign at position 6 alone
SubgroupSpec h12();

// matrix of g on the 17-class basis of L; preserves gram_basis
ZMat lattice_action(const AutElement& g, const LineLattice& L);

// Arithmetic containment of the Galois image: requires f to factor as
// (irreducible quadratic)(irreducible cubic)(linear) and delta evaluated at
// a root of the quadratic to be a square in that quadratic field.
struct ContainmentReport {
    bool applies = false;
    std::string reason;      // set when not applicable
    SubgroupSpec group;      // the order-96 group on success
};
ContainmentReport galois_containment(const Curve& c, const EtaleElement& d);

// decides whether u0 + u1*r is a square in Q(r), r a root of the irreducible
// x^2 + p x + q; on success stores a square root alpha + beta*r
bool square_in_quadratic_field(const Rat& p, const Rat& q, const Rat& u0, const Rat& u1,
                               Rat* alpha = nullptr, Rat* beta = nullptr);

struct CohomologyResult {
    // elementary divisors > 1 of H^1(H, Z^17); empty means trivial group
    std::vector<Int> divisors;
    // a crossed homomorphism generating a maximal-order class, aligned with
    // H.elements; empty when H^1 vanishes
    std::vector<std::vector<Int>> cocycle;
    bool trivial() const { return divisors.empty(); }
};

// Cocycle values are determined by their values on the generators, so the
// cocycle condition over all of H becomes an integer linear system in
// 17*#generators unknowns; H^1 is its saturated kernel modulo coboundaries,
// read off a Smith normal form.
CohomologyResult h1_lattice(const SubgroupSpec& H, const LineLattice& L);

// integer m with c(g) = g.m - m for all g, if the cocycle is a coboundary
std::optional<std::vector<Int>> coboundary_witness(const SubgroupSpec& H, const LineLattice& L,
                                                   const std::vector<std::vector<Int>>& c);

// d = (l_{000110} + l_{000111}) - (l_{001000} + l_{001001}); verified to be
// fixed by h48 and negated by the rest of h96, as lattice classes
Divisor distinguished_class(const LineLattice& L);

// The four cosets of h12 in h48 and the divisor E - tau E shared by every
// tau in the coset, with E the distinguished divisor.  Representatives are
// pure translations 0, (001100), (000110), (001010).
struct CosetDivisor {
    AutElement rep;
    std::vector<AutElement> members;
    Divisor value;
};
std::vector<CosetDivisor> coset_divisor_table(const LineLattice& L);

}  // namespace obstrukt
