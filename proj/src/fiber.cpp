#include "obstrukt/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace obstrukt {


namespace {

// square-root table mod odd p: rt[a] = some x with x^2 = a, or -1
std::vector<int32_t> sqrt_table(uint64_t p) {
    std::vector<int32_t> rt(p, -1);
    for (uint64_t x = 0; x <= (p - 1) / 2; ++x) rt[x * x % p] = (int32_t)x;
    return rt;
}

// inv[i] for 1 <= i < p
std::vector<uint64_t> inv_table(uint64_t p) {
    std::vector<uint64_t> inv(p, 0);
    if (p > 1) inv[1] = 1;
    for (uint64_t i = 2; i < p; ++i) inv[i] = (p - p / i) * inv[p % i] % p;
    return inv;
}

struct QuadSolved {
    bool whole_line = false;           // form vanishes identically in the variable
    uint64_t roots[2];
    int nroots = 0;
};

// roots of a t^2 + b t + c = 0 over F_p (p odd) using sqrt/inverse tables
QuadSolved solve_quad(uint64_t a, uint64_t b, uint64_t cc, uint64_t p,
                      const std::vector<int32_t>& rt, const std::vector<uint64_t>& inv) {
    QuadSolved s;
    if (a == 0) {
        if (b == 0) {
            if (cc == 0) s.whole_line = true;
            return s;
        }
        s.roots[s.nroots++] = (p - cc) % p * inv[b] % p;
        return s;
    }
    // t = (-b ± sqrt(b^2 - 4ac)) / 2a
    uint64_t disc = (b * b % p + (4 * p - 4 * a % p * cc % p) % p) % p;
    if (rt[disc] < 0) return s;
    uint64_t r = (uint64_t)rt[disc];
    uint64_t inv2a = inv[2 * a % p];
    s.roots[s.nroots++] = (p - b % p + r) % p * inv2a % p;
    if (r != 0) s.roots[s.nroots++] = (2 * p - b % p - r) % p * inv2a % p;
    return s;
}

int jacobian_rank_mod(const QuadricModel& m, const std::array<uint64_t, 6>& x, uint64_t p) {
    uint64_t J[3][6];
    for (int r = 0; r < 3; ++r) {
        auto g = m.q[r].gradient_mod(x, p);
        for (int k = 0; k < 6; ++k) J[r][k] = g[k];
    }
    int rank = 0;
    for (int col = 0; col < 6 && rank < 3; ++col) {
        int piv = -1;
        for (int r = rank; r < 3; ++r)
            if (J[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap_ranges(J[piv], J[piv] + 6, J[rank]);
        uint64_t inv = nt::inv_mod(Int(J[rank][col]), Int(p)).get_ui();
        for (int r = 0; r < 3; ++r) {
            if (r == rank || J[r][col] == 0) continue;
            uint64_t fac = J[r][col] * inv % p;
            for (int k = col; k < 6; ++k)
                J[r][k] = (J[r][k] + (p - fac) * J[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

void classify_and_push(const QuadricModel& m, const std::array<uint64_t, 6>& x, uint64_t p,
                       FiberReport& rep) {
    FiberPoint pt;
    pt.x = x;
    pt.smooth = jacobian_rank_mod(m, x, p) == 3;
    (pt.smooth ? rep.smooth_count : rep.singular_count)++;
    rep.points.push_back(pt);
}

void finish_report(FiberReport& rep) {
    std::sort(rep.points.begin(), rep.points.end(),
              [](const FiberPoint& a, const FiberPoint& b) { return a.x < b.x; });
}

// mod-p coefficient cache for one form: full symmetric matrix entries
struct FormModP {
    uint64_t full[6][6];  // full[i][j] = coefficient of a_i a_j (i != j), diag = a_i^2 coeff
    static FormModP make(const QuadForm& q, uint64_t p) {
        FormModP f;
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j)
                f.full[i][j] = f.full[j][i] = mpz_fdiv_ui(q.c[QuadForm::index(i, j)].get_mpz_t(), p);
        return f;
    }
    // write the form at (x with slot `var` indeterminate) as A t^2 + B t + C
    void restrict_to_var(const std::array<uint64_t, 6>& x, int var, uint64_t p, uint64_t& A,
                         uint64_t& B, uint64_t& C) const {
        A = full[var][var];
        uint64_t b = 0, cc = 0;
        for (int j = 0; j < 6; ++j) {
            if (j == var) continue;
            b = (b + full[var][j] * x[j]) % p;
            for (int k = j; k < 6; ++k) {
                if (k == var) continue;
                cc = (cc + full[j][k] * x[j] % p * x[k]) % p;
            }
        }
        B = b % p;
        C = cc;
    }
};

}  // namespace

FiberReport enumerate_fiber_bruteforce(const QuadricModel& m, const Int& p_) {
    uint64_t p = p_.get_ui();
    FiberReport rep;
    rep.p = p_;
    for (int chart = 0; chart < 6; ++chart) {
        std::array<uint64_t, 6> x{};
        x[chart] = 1;
        int nfree = 5 - chart;
        uint64_t total = 1;
        for (int i = 0; i < nfree; ++i) total *= p;
        for (uint64_t code = 0; code < total; ++code) {
            uint64_t t = code;
            for (int i = chart + 1; i < 6; ++i) {
                x[i] = t % p;
                t /= p;
            }
            bool on = true;
            for (int r = 0; r < 3 && on; ++r) on = m.q[r].eval_mod(x, p) == 0;
            if (on) classify_and_push(m, x, p, rep);
        }
    }
    finish_report(rep);
    return rep;
}

FiberReport enumerate_fiber(const QuadricModel& m, const Int& p_) {
    if (p_ < 5 || p_ > (1 << 20)) return enumerate_fiber_bruteforce(m, p_);
    uint64_t p = p_.get_ui();
    FiberReport rep;
    rep.p = p_;
    auto rt = sqrt_table(p);
    auto inv = inv_table(p);
    FormModP F[3] = {FormModP::make(m.q[0], p), FormModP::make(m.q[1], p),
                     FormModP::make(m.q[2], p)};

    // chart c: x_c = 1, earlier coords 0; solve form 0 for x_{c+1}, enumerate the rest
    for (int chart = 0; chart < 6; ++chart) {
        std::array<uint64_t, 6> x{};
        x[chart] = 1;
        if (chart == 5) {
            bool on = true;
            for (int r = 0; r < 3 && on; ++r) on = m.q[r].eval_mod(x, p) == 0;
            if (on) classify_and_push(m, x, p, rep);
            continue;
        }
        int var = chart + 1;
        int nfree = 5 - var;  // coordinates var+1 .. 5
        uint64_t total = 1;
        for (int i = 0; i < nfree; ++i) total *= p;
        for (uint64_t code = 0; code < total; ++code) {
            uint64_t t = code;
            for (int i = var + 1; i < 6; ++i) {
                x[i] = t % p;
                t /= p;
            }
            x[var] = 0;
            uint64_t A0, B0, C0;
            F[0].restrict_to_var(x, var, p, A0, B0, C0);
            QuadSolved s = solve_quad(A0, B0, C0, p, rt, inv);
            if (s.whole_line) {
                for (uint64_t v = 0; v < p; ++v) {
                    x[var] = v;
                    bool on = m.q[1].eval_mod(x, p) == 0 && m.q[2].eval_mod(x, p) == 0;
                    if (on) classify_and_push(m, x, p, rep);
                }
                continue;
            }
            if (s.nroots == 0) continue;
            uint64_t A1, B1, C1, A2, B2, C2;
            F[1].restrict_to_var(x, var, p, A1, B1, C1);
            F[2].restrict_to_var(x, var, p, A2, B2, C2);
            for (int ri = 0; ri < s.nroots; ++ri) {
                uint64_t v = s.roots[ri];
                if ((A1 * v % p * v + B1 * v + C1) % p != 0) continue;
                if ((A2 * v % p * v + B2 * v + C2) % p != 0) continue;
                x[var] = v;
                classify_and_push(m, x, p, rep);
            }
        }
    }
    finish_report(rep);
    return rep;
}

// solutions of the 3x5 linear system  J h = rhs  over F_p, as particular
// solution + kernel basis over the 5 free coordinates; empty optional if
// inconsistent
namespace {
struct AffineSolutions {
    std::array<uint64_t, 5> part;
    std::vector<std::array<uint64_t, 5>> kernel;
};

std::optional<AffineSolutions> solve_3x5_mod(uint64_t J[3][5], uint64_t rhs[3], uint64_t p) {
    uint64_t a[3][6];
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 5; ++k) a[r][k] = J[r][k] % p;
        a[r][5] = rhs[r] % p;
    }
    int pivcol[3], rank = 0;
    for (int col = 0; col < 5 && rank < 3; ++col) {
        int piv = -1;
        for (int r = rank; r < 3; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap_ranges(a[piv], a[piv] + 6, a[rank]);
        uint64_t inv = nt::inv_mod(Int(a[rank][col]), Int(p)).get_ui();
        for (int k = col; k < 6; ++k) a[rank][k] = a[rank][k] * inv % p;
        for (int r = 0; r < 3; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            uint64_t fac = a[r][col];
            for (int k = col; k < 6; ++k) a[r][k] = (a[r][k] + (p - fac) * a[rank][k]) % p;
        }
        pivcol[rank++] = col;
    }
    for (int r = rank; r < 3; ++r)
        if (a[r][5] != 0) return std::nullopt;
    AffineSolutions sol;
    sol.part.fill(0);
    std::array<bool, 5> ispiv{};
    for (int r = 0; r < rank; ++r) {
        sol.part[pivcol[r]] = a[r][5];
        ispiv[pivcol[r]] = true;
    }
    for (int col = 0; col < 5; ++col) {
        if (ispiv[col]) continue;
        std::array<uint64_t, 5> v{};
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivcol[r]] = (p - a[r][col]) % p;
        sol.kernel.push_back(v);
    }
    return sol;
}
}  // namespace

std::vector<Int> lift_smooth_point(const QuadricModel& m, const Int& p, const FiberPoint& P,
                                   int k) {
    if (!P.smooth) throw std::invalid_argument("lift_smooth_point: point not smooth");
    int chart = 0;
    while (P.x[chart] == 0) ++chart;
    std::vector<Int> X(6);
    for (int i = 0; i < 6; ++i) X[i] = P.x[i];

    // free slots: all coordinates except the chart one (kept exactly 1)
    int slot[5], ns = 0;
    for (int i = 0; i < 6; ++i)
        if (i != chart) slot[ns++] = i;

    uint64_t pu = p.get_ui();
    Int pk = 1;
    for (int j = 0; j < k; ++j) pk *= p;

    Int pj = p;  // current modulus p^j, j = 1 .. k-1
    for (int j = 1; j < k; ++j) {
        uint64_t J[3][5], rhs[3];
        std::array<uint64_t, 6> xm;
        for (int i = 0; i < 6; ++i) xm[i] = mpz_fdiv_ui(X[i].get_mpz_t(), pu);
        for (int r = 0; r < 3; ++r) {
            auto g = m.q[r].gradient_mod(xm, pu);
            for (int s = 0; s < 5; ++s) J[r][s] = g[slot[s]];
            Int val = m.q[r].eval(X);
            Int q = val / pj;  // exact by the invariant Q(X) = 0 mod p^j
            rhs[r] = mpz_fdiv_ui(q.get_mpz_t(), pu);
            rhs[r] = (pu - rhs[r]) % pu;
        }
        auto sol = solve_3x5_mod(J, rhs, pu);
        if (!sol) throw std::runtime_error("lift_smooth_point: Newton step failed");
        for (int s = 0; s < 5; ++s) X[slot[s]] += pj * Int(sol->part[s]);
        pj *= p;
        for (auto& xi : X) xi %= pj;
    }
    for (int r = 0; r < 3; ++r)
        if (m.q[r].eval(X) % pk != 0) throw std::runtime_error("lift_smooth_point: bad lift");
    return X;
}

LiftTree explore_lift_tree(const QuadricModel& m, const Int& p, const FiberPoint& P, int depth,
                           long node_cap) {
    LiftTree tree;
    tree.p = p;
    uint64_t pu = p.get_ui();
    int chart = 0;
    while (P.x[chart] == 0) ++chart;
    int slot[5], ns = 0;
    for (int i = 0; i < 6; ++i)
        if (i != chart) slot[ns++] = i;

    std::vector<std::vector<Int>> level;
    {
        std::vector<Int> x0(6);
        for (int i = 0; i < 6; ++i) x0[i] = P.x[i];
        level.push_back(std::move(x0));
    }
    tree.depth_reached = 1;
    Int pj = p;
    for (int j = 1; j < depth; ++j) {
        std::vector<std::vector<Int>> next;
        for (const auto& X : level) {
            ++tree.nodes_explored;
            if (tree.nodes_explored > node_cap)
                throw std::runtime_error("explore_lift_tree: node cap exceeded");
            uint64_t J[3][5], rhs[3];
            std::array<uint64_t, 6> xm;
            for (int i = 0; i < 6; ++i) xm[i] = mpz_fdiv_ui(X[i].get_mpz_t(), pu);
            for (int r = 0; r < 3; ++r) {
                auto g = m.q[r].gradient_mod(xm, pu);
                for (int s = 0; s < 5; ++s) J[r][s] = g[slot[s]];
                Int val = m.q[r].eval(X);
                Int q = val / pj;
                rhs[r] = mpz_fdiv_ui(q.get_mpz_t(), pu);
                rhs[r] = (pu - rhs[r]) % pu;
            }
            auto sol = solve_3x5_mod(J, rhs, pu);
            if (!sol) continue;
            // enumerate the affine solution space
            size_t nk = sol->kernel.size();
            uint64_t count = 1;
            for (size_t i = 0; i < nk; ++i) count *= pu;
            for (uint64_t code = 0; code < count; ++code) {
                std::array<uint64_t, 5> t = sol->part;
                uint64_t cc = code;
                for (size_t i = 0; i < nk; ++i) {
                    uint64_t lam = cc % pu;
                    cc /= pu;
                    if (lam)
                        for (int s = 0; s < 5; ++s)
                            t[s] = (t[s] + lam * sol->kernel[i][s]) % pu;
                }
                std::vector<Int> Y(X);
                for (int s = 0; s < 5; ++s) Y[slot[s]] += pj * Int(t[s]);
                next.push_back(std::move(Y));
            }
        }
        level = std::move(next);
        tree.depth_reached = j + 1;
        pj *= p;
        if (level.empty()) {
            tree.dead = true;
            break;
        }
    }
    tree.survivors = std::move(level);
    return tree;
}

}  // namespace obstrukt
