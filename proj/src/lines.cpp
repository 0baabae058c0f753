// Spanning points of the 32 lines in ball arithmetic.  The root ordering and
// branch rules here pin down which combinatorial label names which geometric
// line; the hyperplane checks and the linear forms of the algebra layer rely
// on that correspondence staying fixed.
#include "obstrukt/lines.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "obstrukt/cohomology.hpp"
#include "obstrukt/surface.hpp"

namespace obstrukt {

namespace {

mpfr_prec_t bits_for(int decimal_precision) {
    if (decimal_precision < 4)
        throw std::invalid_argument("decimal precision must be at least 4");
    return 64 + (mpfr_prec_t)(decimal_precision * 3.3219281) + 2;
}

Int ipow10(int e) {
    Int r = 1;
    for (int i = 0; i < e; i++) r *= 10;
    return r;
}

// nonnegative real part, then nonnegative imaginary part; the sign must be
// certified by the ball or we refuse to guess
bool flip_for_tie_break(const CBall& w, const char* what) {
    if (w.re.is_negative()) return true;
    if (w.re.is_positive()) return false;
    if (w.im.is_negative()) return true;
    if (w.im.is_positive()) return false;
    throw std::runtime_error(std::string("precision exhausted: branch sign of ") + what +
                             " undecided");
}

CBall exact_mid(const CBall& x) {
    Real zero(8);
    return CBall(Ball(x.re.mid(), zero), Ball(x.im.mid(), zero));
}

// principal square root of a ball excluding zero: Newton-refine a double seed
// on the midpoint, certify the branch around it, then apply the tie-break
CBall sqrt_principal(const CBall& t, mpfr_prec_t bits, const char* what) {
    if (t.contains_zero())
        throw std::runtime_error(std::string("precision exhausted: ") + what +
                                 " not separated from zero");
    std::complex<double> m(t.re.mid_double(), t.im.mid_double());
    std::complex<double> seed = std::sqrt(m);
    CBall w = CBall::from_doubles(seed.real(), seed.imag(), bits);
    CBall mid = exact_mid(t);
    CBall half = CBall::from_rat(Rat(1, 2), bits);
    for (int it = 0; it < 16; it++) {
        w = exact_mid((w + mid / w) * half);
        CBall resid = w * w - mid;
        double scale = std::max(1.0, std::abs(m));
        double err = std::hypot(resid.re.mid_double(), resid.im.mid_double());
        if (err < scale * std::pow(2.0, -(double)bits)) break;
    }
    auto W = cball_sqrt_near(t, w);
    if (!W)
        throw std::runtime_error(std::string("precision exhausted: square root of ") + what +
                                 " did not certify");
    return flip_for_tie_break(*W, what) ? -*W : *W;
}

// order roots by (real part, imaginary part) of the certified midpoints
void sort_roots(std::vector<CBall>& v) {
    std::sort(v.begin(), v.end(), [](const CBall& a, const CBall& b) {
        int c = mpfr_cmp(a.re.mid().get(), b.re.mid().get());
        if (c != 0) return c < 0;
        return mpfr_cmp(a.im.mid().get(), b.im.mid().get()) < 0;
    });
}

CBall eval_form(const QuadForm& q, const std::array<CBall, 6>& x, mpfr_prec_t bits) {
    CBall acc = CBall::from_rat(Rat(0), bits);
    for (int i = 0; i < 6; i++)
        for (int j = i; j < 6; j++) {
            const Int& co = q.c[QuadForm::index(i, j)];
            if (co == 0) continue;
            acc = acc + CBall::from_rat(Rat(co), bits) * x[i] * x[j];
        }
    return acc;
}

std::array<CBall, 6> normalized(const std::array<CBall, 6>& p) {
    int best = 0;
    double bestmag = -1;
    for (int i = 0; i < 6; i++) {
        double mag = std::hypot(p[i].re.mid_double(), p[i].im.mid_double());
        if (mag > bestmag) { bestmag = mag; best = i; }
    }
    if (p[best].contains_zero())
        throw std::runtime_error("precision exhausted: spanning point not separated from zero");
    std::array<CBall, 6> out;
    for (int i = 0; i < 6; i++) out[i] = p[i] / p[best];
    return out;
}

// residual of each (coefficient-mass-normalized) quadric at the (sup-norm
// normalized) point must stay below 10^(-decimal/2)
void require_residuals(const QuadricModel& m, const LineSpan& ls, int decimal,
                       mpfr_prec_t bits) {
    Rat tol = Rat(1) / Rat(ipow10(std::max(1, decimal / 2)));
    for (const auto& raw : ls.pts) {
        std::array<CBall, 6> pt = normalized(raw);
        for (const QuadForm& q : m.q) {
            Int mass = 1;
            for (const Int& co : q.c) mass += abs(co);
            Real bound = Real::from_rat(tol * Rat(mass), 64, MPFR_RNDD);
            if (cmp(eval_form(q, pt, bits).ub_abs(), bound) > 0)
                throw std::runtime_error(
                    "line span fails the quadric residual gate: precision exhausted");
        }
    }
}

CBall minor_det(const std::array<std::array<CBall, 6>, 4>& M, const std::vector<int>& rows,
                const std::vector<int>& cols) {
    if (rows.size() == 1) return M[rows[0]][cols[0]];
    CBall acc = CBall::from_rat(Rat(0), M[rows[0]][cols[0]].prec());
    std::vector<int> subr(rows.begin() + 1, rows.end());
    for (size_t k = 0; k < cols.size(); k++) {
        std::vector<int> subc;
        for (size_t j = 0; j < cols.size(); j++)
            if (j != k) subc.push_back(cols[j]);
        CBall term = M[rows[0]][cols[k]] * minor_det(M, subr, subc);
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

bool some_minor_nonzero(const std::array<std::array<CBall, 6>, 4>& M, int size) {
    std::vector<int> rsel, csel;
    std::function<bool(int, int)> pick_cols = [&](int from, int got) {
        if (got == size) return !minor_det(M, rsel, csel).contains_zero();
        for (int c = from; c <= 6 - (size - got); c++) {
            csel.push_back(c);
            if (pick_cols(c + 1, got + 1)) return true;
            csel.pop_back();
        }
        return false;
    };
    std::function<bool(int, int)> pick_rows = [&](int from, int got) {
        if (got == size) return pick_cols(0, 0);
        for (int r = from; r <= 4 - (size - got); r++) {
            rsel.push_back(r);
            if (pick_rows(r + 1, got + 1)) return true;
            rsel.pop_back();
        }
        return false;
    };
    return pick_rows(0, 0);
}

}  // namespace

RootSystem root_system(const Curve& c, const EtaleElement& d, int decimal_precision) {
    c.validate();
    d.validate();
    const PolyQ* quad = nullptr;
    const PolyQ* cub = nullptr;
    const PolyQ* lin = nullptr;
    for (const PolyQ& g : c.factors) {
        if (g.degree() == 2 && !quad) quad = &g;
        else if (g.degree() == 3 && !cub) cub = &g;
        else if (g.degree() == 1 && !lin) lin = &g;
    }
    if (!quad || !cub || !lin || c.factors.size() != 3)
        throw std::invalid_argument(
            "root ordering needs the (quadratic)(cubic)(linear) factorization");

    RootSystem rs;
    rs.f = c.f;
    rs.bits = bits_for(decimal_precision);
    std::vector<CBall> rq = certified_roots(*quad, rs.bits);
    std::vector<CBall> rc = certified_roots(*cub, rs.bits);
    std::vector<CBall> rl = certified_roots(*lin, rs.bits);
    sort_roots(rq);
    sort_roots(rc);
    rs.r = rq;
    rs.r.insert(rs.r.end(), rc.begin(), rc.end());
    rs.r.insert(rs.r.end(), rl.begin(), rl.end());

    std::vector<CBall> rep = poly_to_cballs(d.rep, rs.bits);
    for (const CBall& root : rs.r) rs.delta_at.push_back(eval_poly(rep, root));

    // exact square root of delta on the quadratic component
    PolyQ m = quad->monic();
    PolyQ u = d.rep.mod(m);
    if (!square_in_quadratic_field(m[1], m[0], u[0], u[1], &rs.alpha, &rs.beta))
        throw std::invalid_argument(
            "branch constraints unsatisfiable: delta is not a square on the quadratic component");
    CBall z1 = CBall::from_rat(rs.alpha, rs.bits) + CBall::from_rat(rs.beta, rs.bits) * rs.r[0];
    if (flip_for_tie_break(z1, "z1")) {
        rs.alpha = -rs.alpha;
        rs.beta = -rs.beta;
        z1 = -z1;
    }
    CBall z2 = CBall::from_rat(rs.alpha, rs.bits) + CBall::from_rat(rs.beta, rs.bits) * rs.r[1];
    if (!(z1 * z1 - rs.delta_at[0]).contains_zero() ||
        !(z2 * z2 - rs.delta_at[1]).contains_zero())
        throw std::logic_error("quadratic-component square root disagrees with the numerics");
    rs.z = {z1, z2};
    for (int i = 2; i < 6; i++)
        rs.z.push_back(sqrt_principal(rs.delta_at[i], rs.bits, "delta(r_i)"));

    // the product of the z_i must be the rational square root of the norm
    Rat nrm = norm_to_base(d);
    Int num = nrm.get_num(), den = nrm.get_den();
    if (nrm <= 0 || !mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
        throw std::invalid_argument(
            "branch constraints unsatisfiable: the norm of delta is not a rational square");
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rat s(sn, sd);
    s.canonicalize();
    CBall prod = rs.z[0];
    for (int i = 1; i < 6; i++) prod = prod * rs.z[i];
    bool plus = prod.re.contains(s) && prod.im.contains_zero();
    bool minus = prod.re.contains(-s) && prod.im.contains_zero();
    if (plus == minus)
        throw std::runtime_error("precision exhausted: branch product not certified rational");
    rs.product = plus ? s : -s;
    return rs;
}

std::array<CBall, 6> gamma_coefficients(const RootSystem& rs, const std::array<int, 6>& bits) {
    std::array<CBall, 6> out;
    for (auto& o : out) o = CBall::from_rat(Rat(0), rs.bits);
    for (int i = 0; i < 6; i++) {
        // prod_{j != i} (x - r_j), and the matching denominator prod (r_i - r_j)
        std::vector<CBall> num{CBall::from_rat(Rat(1), rs.bits)};
        CBall den = CBall::from_rat(Rat(1), rs.bits);
        for (int j = 0; j < 6; j++) {
            if (j == i) continue;
            num.push_back(CBall::from_rat(Rat(0), rs.bits));
            for (int k = (int)num.size() - 1; k >= 0; k--) {
                CBall low = k > 0 ? num[k - 1] : CBall::from_rat(Rat(0), rs.bits);
                num[k] = low - rs.r[j] * num[k];
            }
            den = den * (rs.r[i] - rs.r[j]);
        }
        CBall w = CBall::from_rat(Rat(bits[i] ? -1 : 1), rs.bits) / (rs.z[i] * den);
        for (int k = 0; k < 6; k++) out[k] = out[k] + w * num[k];
    }
    return out;
}

LineSpan line_span(const RootSystem& rs, LineIndex s) {
    LineSpan ls{s, {}};
    std::array<CBall, 6> g = gamma_coefficients(rs, s.bits());
    ls.pts[0] = g;
    // x * gamma reduced mod f
    CBall lam = g[5] / CBall::from_rat(rs.f[6], rs.bits);
    for (int k = 0; k < 6; k++) {
        CBall low = k > 0 ? g[k - 1] : CBall::from_rat(Rat(0), rs.bits);
        ls.pts[1][k] = low - lam * CBall::from_rat(rs.f[k], rs.bits);
    }
    return ls;
}

LineSpan line_coordinates(const Curve& c, const EtaleElement& d, LineIndex s,
                          int decimal_precision) {
    RootSystem rs = root_system(c, d, decimal_precision);
    QuadricModel m = build_quadrics(d);
    LineSpan ls = line_span(rs, s);
    require_residuals(m, ls, decimal_precision, rs.bits);
    return ls;
}

std::vector<LineSpan> all_line_coordinates(const Curve& c, const EtaleElement& d,
                                           int decimal_precision) {
    RootSystem rs = root_system(c, d, decimal_precision);
    QuadricModel m = build_quadrics(d);
    std::vector<LineSpan> out;
    for (unsigned label = 0; label < 32; label++) {
        LineSpan ls = line_span(rs, LineIndex(label));
        require_residuals(m, ls, decimal_precision, rs.bits);
        out.push_back(std::move(ls));
    }
    return out;
}

MeetStatus lines_meet_status(const LineSpan& a, const LineSpan& b) {
    std::array<std::array<CBall, 6>, 4> M = {normalized(a.pts[0]), normalized(a.pts[1]),
                                             normalized(b.pts[0]), normalized(b.pts[1])};
    if (some_minor_nonzero(M, 4)) return MeetStatus::disjoint;
    if (some_minor_nonzero(M, 3)) return MeetStatus::meet;
    if (some_minor_nonzero(M, 2)) return MeetStatus::same_line;
    throw std::runtime_error("line span rank undecidable at this precision");
}

}  // namespace obstrukt
