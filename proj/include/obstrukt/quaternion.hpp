// Exact construction of the quaternion-algebra data attached to the quadric
// model: the hyperplane forms p_i, q_i cutting the two line families at index
// i, their norm normalization, and the integer quartic forms F, G with
// g = F/G the rational function entering the algebra (c, g).
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/lines.hpp"
#include "obstrukt/surface.hpp"
#include "obstrukt/tower.hpp"

namespace obstrukt {

// Splitting field of f with every branch z_i expressed in it.  Levels adjoin
// r1 (quadratic factor), r3 (cubic factor), r4 (its conjugate-pair partner),
// then the branches z3, z4, z6 that are not already present; r2, r5 come from
// Vieta, z1, z2 from the exact square root of delta on the quadratic field,
// and z5 from the rational product z_1...z_6.  Generator images tie the tower
// to the numeric RootSystem, so line labels mean the same thing here as in
// the lattice and line modules.
struct SplittingField {
    Curve curve;
    EtaleElement delta;
    RootSystem rs;
    Tower tower;
    std::array<Tower::Elem, 6> r, z, t;  // roots, branches, t_i = delta(r_i)
    std::vector<CBall> gen_images;       // one per tower level

    CBall embed(const Tower::Elem& a) const { return tower.embed(a, gen_images); }
};

// throws std::invalid_argument unless the recorded factorization has shape
// (quadratic)(cubic)(linear); std::runtime_error when an exact construction
// invariant fails (branch square roots, product relation, embedding match)
SplittingField splitting_field(const Curve& c, const EtaleElement& d, int decimal_precision);

// exact spanning points of the line L_s: gamma_s and x*gamma_s mod f
std::array<std::array<Tower::Elem, 6>, 2> span_points_exact(const SplittingField& sf,
                                                            LineIndex s);

struct LinearFormPair {
    int index = 0;                        // i in {3,4,5,6}
    std::array<Tower::Elem, 6> p, q;      // exact hyperplane forms
    std::array<CBall, 6> p_ball, q_ball;  // numeric images of the same
    // scaling applied by normalization: p -> p/d, q -> q/sd; both 1 initially
    Tower::Elem d, sd;
    std::string scaling;
    double max_residual = 0;  // worst |p| over the checked spanning points
};

// Interpolation-formula construction of p_i (and q_i = z_i-flip); verifies
// exact vanishing of p_i on both spanning points of the eight lines
// {s_1 = s_2 = s_i = 0} and of q_i on the z_i-flipped eight, and records the
// numeric residuals at working precision.  Throws std::runtime_error when a
// vanishing check fails.
LinearFormPair build_pq(const SplittingField& sf, const QuadricModel& m, int i,
                        int decimal_precision);

struct NormalizedSystem {
    std::array<LinearFormPair, 3> pairs;  // indices 3, 4, 5 after normalization
    LinearFormPair pair6;
    // d_i sigma(d_i) = c_i n with n squarefree; p_i q_i = c_i p_6 q_6 modulo
    // the quadric ideal defines c_i
    Rat n;
    std::array<std::vector<Rat>, 3> c_coords;  // c_i in the power basis of t_i
    std::vector<Rat> nf6;                      // normal form of p6 q6, 21 rationals
    std::vector<std::string> log;
};

// Rescales the index-3,4,5 pairs so that all p_i q_i agree modulo the quadric
// ideal: finds a norm preimage d_i = (E(r_i) + O(r_i) z_i) / (s t_i) by a
// bounded-height search over integer polynomials E, O of degree 2, verifies
// d_i sigma(d_i) = c_i n exactly, and post-verifies the rescaled products.
// Throws std::runtime_error when the search exhausts the height bound.
NormalizedSystem condition3_normalize(const SplittingField& sf, const QuadricModel& m,
                                      std::array<LinearFormPair, 3> pairs,
                                      LinearFormPair pair6, int height_bound = 48);

// Degree-4 form in 6 variables; coefficients indexed by sorted index
// 4-tuples (a,b,c,d), a <= b <= c <= d, listed in lexicographic order.
struct QuarticForm {
    std::array<Int, 126> c;

    static const std::array<std::array<int, 4>, 126>& monomials();
    static int index(std::array<int, 4> m);  // any order; sorts internally

    Int eval(const std::array<Int, 6>& x) const;
    Rat eval(const std::array<Rat, 6>& x) const;
    // modulus below 2^62; coordinates reduced internally
    uint64_t eval_mod(const std::array<uint64_t, 6>& x, uint64_t modulus) const;

    bool operator==(const QuarticForm&) const = default;
};

struct AlgebraDescriptor {
    Rat c;            // squarefree representative of delta(r_6)
    QuarticForm F, G; // primitive integer forms; g = F/G
    std::vector<std::string> log;
};

// F := the product (p3p4 + p3p5 + p4p5 + p3q3)(q3q4 + q3q5 + q4q5 + p3q3)
// reduced modulo the quadric ideal, recognized as a rational form, scaled to
// a primitive integer form, sign fixed positive on the real locus (seeded
// Newton point); G := square of the primitive integer form of p6 q6.
// Throws std::runtime_error when reduction or recognition fails.
AlgebraDescriptor assemble_algebra(const SplittingField& sf, const QuadricModel& m,
                                   const NormalizedSystem& ns, uint64_t seed = 0);

struct MembershipReport {
    bool verified = false;
    // canonical labels of lines on which the named form vanishes identically
    // (checked exactly on full spans)
    std::vector<unsigned> f_lines, n_lines, sigma_n_lines;
    bool lines_on_surface = false;       // all 32 spans satisfy the quadrics
    bool conjugation_swaps_families = false;
    bool f_nonzero_off_divisor = false;  // exact nonvanishing on the other 16
    bool g_square = false;
    std::vector<std::string> notes;
};

// Divisor-shape certificate for (c, F/G): F vanishes identically on exactly
// the 16 lines cut by the two factors, complex conjugation swaps the two
// 8-line families, F is exactly nonzero on random points of the remaining 16
// lines, and G is the square of a rational quadratic form.
MembershipReport verify_brauer_membership(const SplittingField& sf, const QuadricModel& m,
                                          const AlgebraDescriptor& a,
                                          const NormalizedSystem& ns, uint64_t seed = 0);

// Seeded Newton descent onto the surface from random starts; the returned
// point satisfies all three quadrics to ~1e-12 after sup-norm normalization.
std::optional<std::array<double, 6>> real_surface_point(const QuadricModel& m,
                                                        uint64_t seed = 0);

}  // namespace obstrukt
