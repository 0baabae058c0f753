// Dense exact linear algebra: rational row reduction, integer Smith normal
// form with transformation matrices, saturated integer kernels, and a small
// certified-ball elimination used when coefficients are only known as
// enclosures.
#pragma once

#include <optional>
#include <vector>

#include "obstrukt/exact/ball.hpp"
#include "obstrukt/exact/numtheory.hpp"

namespace obstrukt {

class QMat {
  public:
    QMat() : m_(0), n_(0) {}
    QMat(int m, int n) : m_(m), n_(n), a_((size_t)m * n) {}
    static QMat identity(int n);

    int rows() const { return m_; }
    int cols() const { return n_; }
    Rat& operator()(int i, int j) { return a_[(size_t)i * n_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[(size_t)i * n_ + j]; }

    QMat transposed() const;
    QMat operator*(const QMat& o) const;

    // in-place reduced row echelon form; returns the pivot columns
    std::vector<int> rref();
    int rank() const;
    // basis of the right kernel {x : Ax = 0}
    std::vector<std::vector<Rat>> kernel() const;
    // one solution of Ax = b, if solvable
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

  private:
    int m_, n_;
    std::vector<Rat> a_;
};

class ZMat {
  public:
    ZMat() : m_(0), n_(0) {}
    ZMat(int m, int n) : m_(m), n_(n), a_((size_t)m * n) {}
    static ZMat identity(int n);

    int rows() const { return m_; }
    int cols() const { return n_; }
    Int& operator()(int i, int j) { return a_[(size_t)i * n_ + j]; }
    const Int& operator()(int i, int j) const { return a_[(size_t)i * n_ + j]; }

    ZMat transposed() const;
    ZMat operator*(const ZMat& o) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // A x
    bool operator==(const ZMat& o) const { return m_ == o.m_ && n_ == o.n_ && a_ == o.a_; }
    QMat to_q() const;

  private:
    int m_, n_;
    std::vector<Int> a_;
};

struct SmithForm {
    ZMat U, V;            // unimodular, U*A*V = diag(d)
    std::vector<Int> d;   // nonnegative, d[i] | d[i+1]
    int rank = 0;         // nonzero entries of d
};

SmithForm smith_form(const ZMat& A);

// rows form a basis of {x in Z^n : Ax = 0}; the basis is saturated (spans the
// full kernel of A over Z, not a finite-index sublattice)
ZMat int_kernel(const ZMat& A);

// integer / rational solutions of Ax = b
std::optional<std::vector<Int>> int_solve(const ZMat& A, const std::vector<Int>& b);
std::optional<std::vector<Rat>> rat_solve(const ZMat& A, const std::vector<Rat>& b);

// Incremental integer row-space accumulator (online echelon form).  Feed it
// relation rows one at a time; it keeps a reduced basis of their span, so a
// stream of many dependent rows collapses to at most ncols basis rows.
class ZRowSpan {
  public:
    explicit ZRowSpan(int ncols) : n_(ncols) {}
    // returns true if the span grew
    bool add(std::vector<Int> r);
    // residue of r after reduction modulo the current span (not absorbed)
    std::vector<Int> reduce(std::vector<Int> r) const;
    bool contains(std::vector<Int> r) const;
    const std::vector<std::vector<Int>>& rows() const { return rows_; }
    int ncols() const { return n_; }
    int rank() const { return (int)rows_.size(); }
    ZMat to_mat() const;

  private:
    int n_;
    std::vector<std::vector<Int>> rows_;  // sorted by pivot column
    std::vector<int> pivots_;
};

// certified Gaussian elimination on ball matrices; pivoting by largest
// midpoint magnitude.  Throws if a needed pivot cannot be verified nonzero.
std::vector<CBall> cball_solve(std::vector<std::vector<CBall>> A, std::vector<CBall> b);

// right nullvector of a system of numerical rank ncols-1: eliminates, then
// back-substitutes with the free variable set to exactly 1.  The caller is
// expected to validate the result downstream (e.g. by rational
// reconstruction and an exact identity).
std::vector<CBall> cball_nullvector(const std::vector<std::vector<CBall>>& A, int ncols);

}  // namespace obstrukt
