#include "obstrukt/exact/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace obstrukt {

namespace {

// quotient with symmetric remainder, to keep Smith/echelon entries small
Int round_div(const Int& a, const Int& b) {
    Int m = abs(b);
    Int r = nt::mod_sym(a, m);
    return (a - r) / b;
}

}  // namespace

// ------------------------------------------------------------------ QMat ----

QMat QMat::identity(int n) {
    QMat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

QMat QMat::transposed() const {
    QMat T(n_, m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

QMat QMat::operator*(const QMat& o) const {
    if (n_ != o.m_) throw std::invalid_argument("QMat: dimension mismatch");
    QMat R(m_, o.n_);
    for (int i = 0; i < m_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Rat& v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.n_; ++j) R(i, j) += v * o(k, j);
        }
    return R;
}

std::vector<int> QMat::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < n_ && row < m_; ++col) {
        int piv = -1;
        for (int i = row; i < m_; ++i)
            if ((*this)(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < n_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
        Rat inv = 1 / (*this)(row, col);
        for (int j = col; j < n_; ++j) (*this)(row, j) *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            Rat f = (*this)(i, col);
            if (f == 0) continue;
            for (int j = col; j < n_; ++j) (*this)(i, j) -= f * (*this)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int QMat::rank() const {
    QMat c = *this;
    return (int)c.rref().size();
}

std::vector<std::vector<Rat>> QMat::kernel() const {
    QMat c = *this;
    std::vector<int> piv = c.rref();
    std::vector<bool> is_piv(n_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < n_; ++free) {
        if (is_piv[free]) continue;
        std::vector<Rat> v(n_);
        v[free] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -c((int)r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> QMat::solve(const std::vector<Rat>& b) const {
    if ((int)b.size() != m_) throw std::invalid_argument("QMat::solve: size mismatch");
    QMat aug(m_, n_ + 1);
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < n_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n_) = b[i];
    }
    std::vector<int> piv = aug.rref();
    if (!piv.empty() && piv.back() == n_) return std::nullopt;  // inconsistent
    std::vector<Rat> x(n_);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug((int)r, n_);
    return x;
}

// ------------------------------------------------------------------ ZMat ----

ZMat ZMat::identity(int n) {
    ZMat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

ZMat ZMat::transposed() const {
    ZMat T(n_, m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

ZMat ZMat::operator*(const ZMat& o) const {
    if (n_ != o.m_) throw std::invalid_argument("ZMat: dimension mismatch");
    ZMat R(m_, o.n_);
    for (int i = 0; i < m_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Int& v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.n_; ++j) R(i, j) += v * o(k, j);
        }
    return R;
}

std::vector<Int> ZMat::apply(const std::vector<Int>& x) const {
    if ((int)x.size() != n_) throw std::invalid_argument("ZMat::apply: size mismatch");
    std::vector<Int> y(m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

QMat ZMat::to_q() const {
    QMat R(m_, n_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j) R(i, j) = Rat((*this)(i, j));
    return R;
}

// ----------------------------------------------------------------- Smith ----

SmithForm smith_form(const ZMat& A) {
    int m = A.rows(), n = A.cols();
    ZMat B = A;
    SmithForm s;
    s.U = ZMat::identity(m);
    s.V = ZMat::identity(n);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < n; ++k) std::swap(B(i, k), B(j, k));
        for (int k = 0; k < m; ++k) std::swap(s.U(i, k), s.U(j, k));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < m; ++k) std::swap(B(k, i), B(k, j));
        for (int k = 0; k < n; ++k) std::swap(s.V(k, i), s.V(k, j));
    };
    auto addmul_row = [&](int dst, int src, const Int& c) {  // row_dst += c*row_src
        for (int k = 0; k < n; ++k) B(dst, k) += c * B(src, k);
        for (int k = 0; k < m; ++k) s.U(dst, k) += c * s.U(src, k);
    };
    auto addmul_col = [&](int dst, int src, const Int& c) {
        for (int k = 0; k < m; ++k) B(k, dst) += c * B(k, src);
        for (int k = 0; k < n; ++k) s.V(k, dst) += c * s.V(k, src);
    };
    auto negate_row = [&](int i) {
        for (int k = 0; k < n; ++k) B(i, k) = -B(i, k);
        for (int k = 0; k < m; ++k) s.U(i, k) = -s.U(i, k);
    };

    int t = 0;
    int lim = std::min(m, n);
    while (t < lim) {
        // smallest-magnitude nonzero pivot in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (B(i, j) == 0) continue;
                if (pi < 0 || abs(B(i, j)) < abs(B(pi, pj))) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (B(i, t) == 0) continue;
                Int q = round_div(B(i, t), B(t, t));
                addmul_row(i, t, -q);
                if (B(i, t) != 0) {  // remainder smaller than pivot: swap up
                    swap_rows(t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (int j = t + 1; j < n; ++j) {
                if (B(t, j) == 0) continue;
                Int q = round_div(B(t, j), B(t, t));
                addmul_col(j, t, -q);
                if (B(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility of the trailing block by the pivot
            bool fixed = false;
            for (int i = t + 1; i < m && !fixed; ++i)
                for (int j = t + 1; j < n && !fixed; ++j)
                    if (B(i, j) % B(t, t) != 0) {
                        addmul_row(t, i, Int(1));
                        fixed = true;
                    }
            if (fixed) clean = false;
        }
        if (B(t, t) < 0) negate_row(t);
        ++t;
    }

    s.d.assign(lim, Int(0));
    for (int i = 0; i < lim; ++i) s.d[i] = B(i, i);
    s.rank = t;
    return s;
}

ZMat int_kernel(const ZMat& A) {
    SmithForm s = smith_form(A);
    int n = A.cols();
    int r = s.rank;
    // kernel basis: columns r..n-1 of V, as rows of the result
    ZMat K(n - r, n);
    for (int j = r; j < n; ++j)
        for (int i = 0; i < n; ++i) K(j - r, i) = s.V(i, j);
    return K;
}

std::optional<std::vector<Int>> int_solve(const ZMat& A, const std::vector<Int>& b) {
    if ((int)b.size() != A.rows()) throw std::invalid_argument("int_solve: size mismatch");
    SmithForm s = smith_form(A);
    std::vector<Int> ub = s.U.apply(b);
    int n = A.cols();
    std::vector<Int> y(n, Int(0));
    for (int i = 0; i < (int)ub.size(); ++i) {
        if (i < (int)s.d.size() && s.d[i] != 0) {
            if (ub[i] % s.d[i] != 0) return std::nullopt;
            y[i] = ub[i] / s.d[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

std::optional<std::vector<Rat>> rat_solve(const ZMat& A, const std::vector<Rat>& b) {
    return A.to_q().solve(b);
}

// -------------------------------------------------------------- ZRowSpan ----

bool ZRowSpan::add(std::vector<Int> r) {
    if ((int)r.size() != n_) throw std::invalid_argument("ZRowSpan: row width mismatch");
    size_t k = 0;
    for (;;) {
        int lead = -1;
        for (int j = 0; j < n_; ++j)
            if (r[j] != 0) { lead = j; break; }
        if (lead < 0) return false;
        // advance to the basis row whose pivot is >= lead
        while (k < rows_.size() && pivots_[k] < lead) ++k;
        if (k == rows_.size() || pivots_[k] > lead) {
            // new pivot column: insert (sign-normalized)
            if (r[lead] < 0)
                for (auto& x : r) x = -x;
            rows_.insert(rows_.begin() + k, std::move(r));
            pivots_.insert(pivots_.begin() + k, lead);
            return true;
        }
        // same pivot: Euclid between r and rows_[k] on that column
        std::vector<Int>& base = rows_[k];
        while (r[lead] != 0) {
            Int q = round_div(base[lead], r[lead]);
            if (q != 0)
                for (int j = 0; j < n_; ++j) base[j] -= q * r[j];
            if (base[lead] == 0) std::swap(base, r);
            if (r[lead] == 0) break;
            q = round_div(r[lead], base[lead]);
            for (int j = 0; j < n_; ++j) r[j] -= q * base[j];
        }
        if (base[lead] < 0)
            for (auto& x : base) x = -x;
        // r now has a later pivot (or is zero); keep reducing
    }
}

std::vector<Int> ZRowSpan::reduce(std::vector<Int> r) const {
    if ((int)r.size() != n_) throw std::invalid_argument("ZRowSpan: row width mismatch");
    for (size_t k = 0; k < rows_.size(); ++k) {
        int p = pivots_[k];
        if (r[p] == 0) continue;
        if (r[p] % rows_[k][p] != 0) continue;  // cannot be cleared integrally
        Int q = r[p] / rows_[k][p];
        for (int j = 0; j < n_; ++j) r[j] -= q * rows_[k][j];
    }
    return r;
}

bool ZRowSpan::contains(std::vector<Int> r) const {
    r = reduce(std::move(r));
    for (const Int& x : r)
        if (x != 0) return false;
    return true;
}

ZMat ZRowSpan::to_mat() const {
    ZMat M((int)rows_.size(), n_);
    for (int i = 0; i < (int)rows_.size(); ++i)
        for (int j = 0; j < n_; ++j) M(i, j) = rows_[i][j];
    return M;
}

// ------------------------------------------------------------ ball solve ----

namespace {

// eliminate below-diagonal entries with |mid|-largest pivoting; returns the
// row permutation order used; A is modified in place (b too if present)
void cball_eliminate(std::vector<std::vector<CBall>>& A, std::vector<CBall>* b, int ncols) {
    int m = (int)A.size();
    int row = 0;
    for (int col = 0; col < ncols && row < m; ++col) {
        int best = -1;
        double bestmag = 0.0;
        for (int i = row; i < m; ++i) {
            double mag = std::abs(A[i][col].re.mid_double()) + std::abs(A[i][col].im.mid_double());
            if (best < 0 || mag > bestmag) { best = i; bestmag = mag; }
        }
        if (best < 0 || A[best][col].contains_zero()) continue;  // treat as zero column
        std::swap(A[row], A[best]);
        if (b) std::swap((*b)[row], (*b)[best]);
        for (int i = row + 1; i < m; ++i) {
            if (A[i][col].contains_zero() &&
                A[i][col].re.mid_double() == 0.0 && A[i][col].im.mid_double() == 0.0)
                continue;
            CBall f = A[i][col] / A[row][col];
            for (int j = col; j < ncols; ++j) A[i][j] = A[i][j] - f * A[row][j];
            if (b) (*b)[i] = (*b)[i] - f * (*b)[row];
        }
        ++row;
    }
}

}  // namespace

std::vector<CBall> cball_solve(std::vector<std::vector<CBall>> A, std::vector<CBall> b) {
    int n = (int)A.size();
    if (n == 0) return {};
    if ((int)A[0].size() != n || (int)b.size() != n)
        throw std::invalid_argument("cball_solve: need a square system");
    cball_eliminate(A, &b, n);
    std::vector<CBall> x(n, CBall(Ball(0.0, b[0].prec())));
    for (int i = n - 1; i >= 0; --i) {
        CBall acc = b[i];
        for (int j = i + 1; j < n; ++j) acc = acc - A[i][j] * x[j];
        if (A[i][i].contains_zero()) throw std::runtime_error("cball_solve: pivot not verified nonzero");
        x[i] = acc / A[i][i];
    }
    return x;
}

std::vector<CBall> cball_nullvector(const std::vector<std::vector<CBall>>& A0, int ncols) {
    auto A = A0;
    cball_eliminate(A, nullptr, ncols);
    // collect the pivot rows in echelon order
    std::vector<int> pivot_col_of_row;
    {
        int row = 0;
        for (int col = 0; col < ncols && row < (int)A.size(); ++col) {
            if (!A[row][col].contains_zero()) {
                pivot_col_of_row.push_back(col);
                ++row;
            }
        }
    }
    int r = (int)pivot_col_of_row.size();
    if (r != ncols - 1)
        throw std::runtime_error("cball_nullvector: numerical rank is not ncols-1");
    // free column = the one that is nobody's pivot
    std::vector<bool> is_piv(ncols, false);
    for (int c : pivot_col_of_row) is_piv[c] = true;
    int free_col = -1;
    for (int c = 0; c < ncols; ++c)
        if (!is_piv[c]) { free_col = c; break; }
    mpfr_prec_t prec = A0[0][0].prec();
    std::vector<CBall> x(ncols, CBall(Ball(0.0, prec)));
    x[free_col] = CBall(Ball(1.0, prec));
    for (int i = r - 1; i >= 0; --i) {
        int pc = pivot_col_of_row[i];
        CBall acc = CBall(Ball(0.0, prec));
        for (int j = pc + 1; j < ncols; ++j) acc = acc - A[i][j] * x[j];
        x[pc] = acc / A[i][pc];
    }
    return x;
}

}  // namespace obstrukt
