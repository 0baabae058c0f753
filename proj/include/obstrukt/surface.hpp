// The projective surface attached to (f, delta): three quadrics in P^5 cut
// out the minimal nonsingular model of the 2-covering.  This header also
// carries the finite-field machinery: fiber enumeration and point
// classification, Hensel lifting of smooth points, and exhaustive lift trees
// above singular ones.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/etale.hpp"
#include "obstrukt/exact/linalg.hpp"

namespace obstrukt {

// Homogeneous quadratic form in a0..a5 with integer coefficients, stored in
// lexicographic monomial order a0^2, a0a1, ..., a0a5, a1^2, a1a2, ..., a5^2.
struct QuadForm {
    std::array<Int, 21> c{};

    static int index(int i, int j);  // position of the a_i a_j monomial, i <= j
    // full coefficient of a_i a_j (i != j) or of a_i^2
    const Int& coeff(int i, int j) const;

    Rat eval(const std::vector<Rat>& x) const;
    Int eval(const std::vector<Int>& x) const;
    uint64_t eval_mod(const std::array<uint64_t, 6>& x, uint64_t p) const;
    // gradient (twice the matrix action): d/dx_i of the form
    std::array<Int, 6> gradient(const std::vector<Int>& x) const;
    std::array<uint64_t, 6> gradient_mod(const std::array<uint64_t, 6>& x, uint64_t p) const;

    bool operator==(const QuadForm& o) const { return c == o.c; }
};

struct QuadricModel {
    std::array<QuadForm, 3> q;
    bool constructed = false;  // true when built from (f, delta)

    // dimension of the Q-span of the three forms inside the 21-dim space
    int span_rank() const;
    // same span as another model (mutual containment, exact rank computation)
    bool same_span(const QuadricModel& o) const;
};

// Point over F_p (values reduced mod p), normalized so that the first unit
// coordinate equals 1.
struct FiberPoint {
    std::array<uint64_t, 6> x;
    bool smooth;  // Jacobian of the three forms has rank 3 at the point
};

struct FiberReport {
    Int p;
    std::vector<FiberPoint> points;  // sorted, deduplicated
    long smooth_count = 0;
    long singular_count = 0;
};

// expand delta(x) * (a0 + a1 x + ... + a5 x^5)^2 mod f(x) and take the
// coefficient forms of x^3, x^4, x^5, cleared to primitive integer forms with
// positive leading coefficient
QuadricModel build_quadrics(const EtaleElement& d);

// Invert build_quadrics against a given model: find delta (up to the expected
// rational scaling gauge) whose coefficient forms span-match the model's
// forms under some pairing, then fix the gauge by requiring
// delta(gauge_point) = gauge_value.  Returns nullopt if no pairing yields the
// expected one-dimensional solution space.
std::optional<EtaleElement> recover_delta_from_model(const Curve& c, const QuadricModel& m,
                                                     const Rat& gauge_point,
                                                     const Rat& gauge_value);

// every projective point of the common zero locus over F_p, classified
FiberReport enumerate_fiber(const QuadricModel& m, const Int& p);

// reference implementation: iterate over all of P^5(F_p); p <= 13 or so
FiberReport enumerate_fiber_bruteforce(const QuadricModel& m, const Int& p);

// Hensel-lift a smooth fiber point to Z/p^k (normalized; reduces to P)
std::vector<Int> lift_smooth_point(const QuadricModel& m, const Int& p, const FiberPoint& P,
                                   int k);

// Exhaustive breadth-first lift exploration above one fiber point: level j
// holds the normalized residue classes mod p^j that satisfy all three forms
// mod p^j.  Works above singular points where Hensel's lemma fails.
struct LiftTree {
    Int p;
    int depth_reached = 0;  // levels fully expanded
    bool dead = false;      // no classes survive at some level <= requested depth
    // surviving classes at the deepest expanded level (normalized, mod p^depth)
    std::vector<std::vector<Int>> survivors;
    long nodes_explored = 0;
};

LiftTree explore_lift_tree(const QuadricModel& m, const Int& p, const FiberPoint& P, int depth,
                           long node_cap = 10000000);

struct BadPrimeReport {
    std::vector<Int> primes;
    std::string method;  // "heuristic" or "hints-confirmed"
};

// Union of (a) user hints, (b) primes up to scan_bound whose fiber has a
// singular point, (c) prime divisors of disc(f) and of the norm of delta
// (when curve data is supplied).  Heuristic: completeness is not certified.
BadPrimeReport bad_primes(const QuadricModel& m, const std::vector<Int>& hints = {},
                          const EtaleElement* delta = nullptr, long scan_bound = 100);

}  // namespace obstrukt
