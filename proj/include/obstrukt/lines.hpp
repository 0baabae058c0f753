// Numeric side of the 32 lines: certified roots of f ordered by the
// factorization shape, square-root branches z_i chosen deterministically with
// rational product, spanning points of each line, and a rank-based
// meet/disjoint oracle.
#pragma once

#include <array>
#include <vector>

#include "obstrukt/etale.hpp"
#include "obstrukt/exact/ball.hpp"
#include "obstrukt/lattice.hpp"

namespace obstrukt {

// Roots r_1..r_6 of f listed as: the two roots of the quadratic factor, the
// three roots of the cubic factor, the rational root.  Within a factor, roots
// are sorted by (real part, imaginary part).  Branches: z_1 = alpha + beta r_1
// with (alpha, beta) the exact solution of (alpha + beta r)^2 = delta(r) in
// the quadratic field, sign chosen so z_1 has nonnegative real part (then
// nonnegative imaginary part); z_2 uses the same (alpha, beta) at r_2; the
// remaining z_i are principal square roots with the same tie-break.  The
// product z_1...z_6 then encloses a certified rational square root of the
// norm of delta, recorded exactly.
struct RootSystem {
    PolyQ f;
    std::vector<CBall> r;         // the six roots
    std::vector<CBall> z;         // z_i^2 = delta(r_i)
    std::vector<CBall> delta_at;  // delta(r_i)
    Rat alpha, beta;              // z_1 = alpha + beta r_1 exactly
    Rat product;                  // exact value of z_1 ... z_6
    mpfr_prec_t bits;             // working precision of the midpoints
};

// decimal_precision steers the working precision; residual gates downstream
// use the tolerance 10^(-decimal_precision/2).  Throws std::invalid_argument
// when the factorization is not (quadratic)(cubic)(linear) or the branch
// constraints are unsatisfiable, std::runtime_error on precision exhaustion.
RootSystem root_system(const Curve& c, const EtaleElement& d, int decimal_precision);

// Coefficients of the degree-5 interpolant gamma with
// gamma(r_i) = (-1)^{bits[i]} / z_i, exact Lagrange form in ball arithmetic.
std::array<CBall, 6> gamma_coefficients(const RootSystem& rs, const std::array<int, 6>& bits);

struct LineSpan {
    LineIndex s;
    // coefficient vectors of gamma_s and of (x gamma_s mod f): two points of P^5
    std::array<std::array<CBall, 6>, 2> pts;
};

// Spanning points of L_s; both are checked against the three quadrics of the
// model with residual tolerance 10^(-decimal_precision/2) (after sup-norm
// normalization), erroring rather than degrading.
LineSpan line_coordinates(const Curve& c, const EtaleElement& d, LineIndex s,
                          int decimal_precision);
// all 32 lines, indexed by canonical label, sharing one root system
std::vector<LineSpan> all_line_coordinates(const Curve& c, const EtaleElement& d,
                                           int decimal_precision);
// span without the quadric gate (building block; needs rs.f)
LineSpan line_span(const RootSystem& rs, LineIndex s);

enum class MeetStatus { disjoint, meet, same_line };

// Rank of the stacked 4x6 span matrix, decided by certified nonvanishing of
// minors: rank 4 = disjoint, rank 3 = meet in a point, rank 2 = equal lines.
// The rank-4 verdict is rigorous; the lower ranks report that no larger minor
// is numerically distinguishable from zero.  Throws when even the 2x2 minors
// all straddle zero.
MeetStatus lines_meet_status(const LineSpan& a, const LineSpan& b);

}  // namespace obstrukt
