// The worked example the tool ships with: a genus-2 curve whose Jacobian has
// a 2-Selmer class delta that survives everywhere locally, together with the
// transcription of its quadric model.  Everything downstream (lattice,
// cohomology, algebra, invariants, certificate) is exercised against this
// data set, so it lives in the library rather than in the tests.
//
// Known defect carried faithfully: the transcribed delta reads
// (-7/2965)(377x^5 - ...), which reproduces the span of the quadrics but
// evaluates to -7 * 2956/2965 at x = -1, clashing with the algebra constant
// c = delta(-1) = -7 it is supposed to produce (2965 = 5 * 593 against
// 2956 = 4 * 739: a transposed digit in the prefactor denominator).  delta()
// is recovered from the quadrics with the gauge delta(-1) = -7, which lands
// on the prefactor -7/2956.  Both vectors stay available; nothing is
// silently dropped.
#pragma once

#include "obstrukt/etale.hpp"
#include "obstrukt/surface.hpp"

namespace obstrukt::flagship {

// y^2 = (x^2 - 5x + 1)(x^3 - 7x + 10)(x + 1)
const Curve& curve();

// the three quadrics in P^5, transcribed coefficients
const QuadricModel& model();

// delta recovered from the model; satisfies delta(-1) = -7
const EtaleElement& delta();

// the coefficient vector as transcribed: (-7/2965)(377x^5 - 706x^4 - 5200x^3
// + 2061x^2 - 9086x - 12308)
const PolyQ& delta_transcribed();
// true: the transcription is correct up to a rational scalar (the quadric
// spans agree); the defect is confined to the prefactor
bool transcribed_delta_matches();

// delta(-1), the constant of the quaternion algebra
const Rat& c_value();

// primes where the model has (or may have) bad reduction: {2, 3, 7, 83, 739}
const std::vector<Int>& bad_prime_hints();

}  // namespace obstrukt::flagship
