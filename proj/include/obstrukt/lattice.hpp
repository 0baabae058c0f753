// The 32 line classes on the quadric-intersection K3, their intersection
// pairing, and the rank-17 sublattice of Pic they span.  Classes are indexed
// by (Z/2)^6 modulo the all-ones vector; everything here is exact integer
// combinatorics, no geometry.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "obstrukt/exact/linalg.hpp"

namespace obstrukt {

// s = (s1,...,s6) gets the binary label sum_i s_i 2^(6-i), so s1 is the high
// bit.  s and s + (1,1,1,1,1,1) name the same line; we store the smaller of
// the two labels, which is always < 32.
struct LineIndex {
    unsigned label = 0;

    LineIndex() = default;
    explicit LineIndex(unsigned raw);  // raw in 0..63, canonicalized
    static LineIndex from_bits(const std::array<int, 6>& s);
    std::array<int, 6> bits() const;  // bits of the stored representative

    bool operator==(const LineIndex&) const = default;
    bool operator<(const LineIndex& o) const { return label < o.label; }
};

// -2 when the labels differ in 0 or 6 places, +1 when in 1 or 5, else 0.
int intersection_number(LineIndex a, LineIndex b);

// Formal Z-combination of line classes.
struct Divisor {
    std::map<unsigned, long> mult;  // canonical label -> multiplicity, no zeros

    void add(LineIndex s, long m);
    long coeff(LineIndex s) const;
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator-() const;
    bool operator==(const Divisor&) const = default;

    std::vector<Int> vec32() const;  // coefficients over labels 0..31
    std::string str() const;
};

// The sublattice of Pic generated by the line classes.  Two divisors are
// equal in Pic iff they pair identically against all 32 lines, so a class is
// faithfully represented by its pairing vector Gram*v; the basis below is
// extracted from the Smith form U*Gram*V = diag(d).
struct LineLattice {
    ZMat gram;       // 32x32, symmetric, diagonal -2
    int rank = 0;    // 17
    ZMat basis;      // 32x17, column i a divisor representing basis class w_i
    ZMat gram_basis; // 17x17 pairing matrix of the w_i, nondegenerate

    // coordinates of [v] in the basis (always integral for integer divisors)
    std::vector<Int> class_coords(const std::vector<Int>& v32) const;
    std::vector<Int> class_coords(const Divisor& d) const;
    Int pair(const Divisor& a, const Divisor& b) const;
    bool same_class(const Divisor& a, const Divisor& b) const;

    ZMat u_;               // unimodular row transform from the Smith form
    std::vector<Int> d_;   // elementary divisors d_1..d_17
};

LineLattice gram_and_rank();

// The eight line classes with s_{I[j]} = B[j]; a hyperplane section of the
// surface, of self-intersection 8.  I holds distinct positions in 1..6.
Divisor hyperplane_divisor(const std::array<int, 3>& I, const std::array<int, 3>& B);

}  // namespace obstrukt
