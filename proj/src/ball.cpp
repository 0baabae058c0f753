#include "obstrukt/exact/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace obstrukt {

namespace {

constexpr mpfr_prec_t kRadPrec = 64;

// half an ulp of x at its own precision: 2^(exp - prec - 1); 0 for exact zero
Real half_ulp(const Real& x) {
    Real r(kRadPrec);
    if (mpfr_zero_p(x.get())) return r;
    mpfr_exp_t e = mpfr_get_exp(x.get());
    mpfr_set_ui_2exp(r.get(), 1, e - x.prec() - 1, MPFR_RNDU);
    return r;
}

Real rad_zero() { return Real(kRadPrec); }

}  // namespace

std::string Real::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real add_up(const Real& a, const Real& b) {
    Real r(kRadPrec);
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Real mul_up(const Real& a, const Real& b) {
    Real r(kRadPrec);
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Real abs_up(const Real& a) {
    Real r(kRadPrec);
    mpfr_abs(r.get(), a.get(), MPFR_RNDU);
    return r;
}

Real max_up(const Real& a, const Real& b) {
    Real r(kRadPrec);
    mpfr_max(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

Ball::Ball(double mid, mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {
    mpfr_set_d(mid_.get(), mid, MPFR_RNDN);
}

Ball Ball::from_rat(const Rat& q, mpfr_prec_t prec) {
    Ball b(0.0, prec);
    mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
    b.rad_ = half_ulp(b.mid_);
    return b;
}

Ball Ball::from_int(const Int& n, mpfr_prec_t prec) {
    Ball b(0.0, prec);
    mpfr_set_z(b.mid_.get(), n.get_mpz_t(), MPFR_RNDN);
    b.rad_ = half_ulp(b.mid_);
    return b;
}

Ball Ball::exact(double d, mpfr_prec_t prec) { return Ball(d, prec); }

Ball Ball::operator+(const Ball& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Ball r(0.0, p);
    mpfr_add(const_cast<mpfr_ptr>(r.mid_.get()), mid_.get(), o.mid_.get(), MPFR_RNDN);
    r.rad_ = add_up(add_up(rad_, o.rad_), half_ulp(r.mid_));
    return r;
}

Ball Ball::operator-(const Ball& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Ball r(0.0, p);
    mpfr_sub(const_cast<mpfr_ptr>(r.mid_.get()), mid_.get(), o.mid_.get(), MPFR_RNDN);
    r.rad_ = add_up(add_up(rad_, o.rad_), half_ulp(r.mid_));
    return r;
}

Ball Ball::operator*(const Ball& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Ball r(0.0, p);
    mpfr_mul(const_cast<mpfr_ptr>(r.mid_.get()), mid_.get(), o.mid_.get(), MPFR_RNDN);
    // |x y - xm ym| <= |xm| rb + |ym| ra + ra rb
    Real e = add_up(add_up(mul_up(abs_up(mid_), o.rad_), mul_up(abs_up(o.mid_), rad_)),
                    mul_up(rad_, o.rad_));
    r.rad_ = add_up(e, half_ulp(r.mid_));
    return r;
}

Ball Ball::operator/(const Ball& o) const {
    if (o.contains_zero()) throw std::domain_error("Ball: division by ball containing 0");
    mpfr_prec_t p = std::max(prec(), o.prec());
    Ball r(0.0, p);
    mpfr_div(const_cast<mpfr_ptr>(r.mid_.get()), mid_.get(), o.mid_.get(), MPFR_RNDN);
    // |x/y - xm/ym| <= (ra |ym| + |xm| rb) / (|ym| (|ym| - rb))
    Real ym = abs_up(o.mid_);
    Real denom_lb(kRadPrec);
    mpfr_sub(denom_lb.get(), ym.get(), o.rad_.get(), MPFR_RNDD);
    Real num = add_up(mul_up(rad_, ym), mul_up(abs_up(mid_), o.rad_));
    Real den(kRadPrec);
    mpfr_mul(den.get(), ym.get(), denom_lb.get(), MPFR_RNDD);
    Real e(kRadPrec);
    mpfr_div(e.get(), num.get(), den.get(), MPFR_RNDU);
    r.rad_ = add_up(e, half_ulp(r.mid_));
    return r;
}

Ball Ball::operator-() const {
    Ball r = *this;
    mpfr_neg(const_cast<mpfr_ptr>(r.mid_.get()), r.mid_.get(), MPFR_RNDN);
    return r;
}

Ball Ball::sqrt() const {
    // interval [lo, hi]; require hi >= 0
    Real hi(kRadPrec);
    mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    if (mpfr_sgn(hi.get()) < 0) throw std::domain_error("Ball::sqrt of negative ball");
    Real lo(kRadPrec);
    mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
    Ball r(0.0, prec());
    Real slo(prec()), shi(prec());
    mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(shi.get(), hi.get(), MPFR_RNDU);
    // midpoint and radius of [slo, shi]
    mpfr_add(const_cast<mpfr_ptr>(r.mid_.get()), slo.get(), shi.get(), MPFR_RNDN);
    mpfr_div_ui(const_cast<mpfr_ptr>(r.mid_.get()), r.mid_.get(), 2, MPFR_RNDN);
    Real width(kRadPrec);
    mpfr_sub(width.get(), shi.get(), slo.get(), MPFR_RNDU);
    mpfr_div_ui(width.get(), width.get(), 2, MPFR_RNDU);
    r.rad_ = add_up(width, half_ulp(r.mid_));
    return r;
}

Ball Ball::abs() const {
    if (!contains_zero()) {
        return is_negative() ? -*this : *this;
    }
    // hull of |ball| = [0, max(|lo|, |hi|)]
    Real hi = ub_abs();
    Ball r(0.0, prec());
    mpfr_div_ui(const_cast<mpfr_ptr>(r.mid_.get()), hi.get(), 2, MPFR_RNDN);
    Real half(kRadPrec);
    mpfr_div_ui(half.get(), hi.get(), 2, MPFR_RNDU);
    r.rad_ = add_up(half, half_ulp(r.mid_));
    return r;
}

bool Ball::contains_zero() const {
    Real lo(kRadPrec), hi(kRadPrec);
    mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0;
}

bool Ball::is_positive() const {
    Real lo(kRadPrec);
    mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return mpfr_sgn(lo.get()) > 0;
}

bool Ball::is_negative() const {
    Real hi(kRadPrec);
    mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return mpfr_sgn(hi.get()) < 0;
}

bool Ball::contains(const Rat& q) const {
    // |mid - q| <= rad, checked in exact rational arithmetic via outward bounds
    Real diff(prec() + 8);
    Real qr = Real::from_rat(q, prec() + 8, MPFR_RNDN);
    mpfr_sub(diff.get(), mid_.get(), qr.get(), MPFR_RNDA);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
    // allow for the rounding of q itself: compare against rad + ulp margin
    Real margin = add_up(rad_, half_ulp(qr));
    return mpfr_cmp(diff.get(), margin.get()) <= 0;
}

Real Ball::ub_abs() const {
    Real r(kRadPrec);
    mpfr_abs(r.get(), mid_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), rad_.get(), MPFR_RNDU);
    return r;
}

Real Ball::lb_abs() const {
    Real r(kRadPrec);
    mpfr_abs(r.get(), mid_.get(), MPFR_RNDD);
    mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
    return r;
}

Ball Ball::hull(const Ball& a, const Ball& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real lo(p), hi(p), t(p);
    mpfr_sub(lo.get(), a.mid_.get(), a.rad_.get(), MPFR_RNDD);
    mpfr_sub(t.get(), b.mid_.get(), b.rad_.get(), MPFR_RNDD);
    mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.mid_.get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(t.get(), b.mid_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    Ball r(0.0, p);
    mpfr_add(const_cast<mpfr_ptr>(r.mid_.get()), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_ui(const_cast<mpfr_ptr>(r.mid_.get()), r.mid_.get(), 2, MPFR_RNDN);
    Real w(kRadPrec);
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_div_ui(w.get(), w.get(), 2, MPFR_RNDU);
    w = add_up(w, half_ulp(r.mid_));
    r.rad_ = add_up(w, half_ulp(r.mid_));
    return r;
}

Ball Ball::widened(const Real& extra) const {
    Ball r = *this;
    r.rad_ = add_up(r.rad_, extra);
    return r;
}

std::string Ball::str() const {
    return "[" + mid_.str() + " +/- " + rad_.str(3) + "]";
}

CBall CBall::from_doubles(double r, double i, mpfr_prec_t prec) {
    return CBall(Ball(r, prec), Ball(i, prec));
}

CBall CBall::operator/(const CBall& o) const {
    Ball n = o.abs2();
    if (n.contains_zero()) throw std::domain_error("CBall: division by ball containing 0");
    CBall num = *this * o.conj();
    return {num.re / n, num.im / n};
}

Real CBall::ub_abs() const {
    // sqrt(re_ub^2 + im_ub^2) rounded up
    Real a = re.ub_abs(), b = im.ub_abs();
    Real s = add_up(mul_up(a, a), mul_up(b, b));
    Real r(kRadPrec);
    mpfr_sqrt(r.get(), s.get(), MPFR_RNDU);
    return r;
}

Real CBall::lb_abs() const {
    Real a = re.lb_abs(), b = im.lb_abs();
    Real s(kRadPrec);
    mpfr_mul(s.get(), a.get(), a.get(), MPFR_RNDD);
    Real t(kRadPrec);
    mpfr_mul(t.get(), b.get(), b.get(), MPFR_RNDD);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDD);
    Real r(kRadPrec);
    mpfr_sqrt(r.get(), s.get(), MPFR_RNDD);
    return r;
}

std::optional<CBall> cball_sqrt_near(const CBall& Z, const CBall& w0) {
    // |w - w0| <= max|Z - w0^2| / (2|w0| - r0), valid once r0 < |w0|
    CBall w0sq = w0 * w0;
    CBall diff = Z - w0sq;
    Real d = diff.ub_abs();
    Real w0_lb = w0.lb_abs();
    if (mpfr_sgn(w0_lb.get()) <= 0) return std::nullopt;
    Real r0(kRadPrec);
    mpfr_div(r0.get(), d.get(), w0_lb.get(), MPFR_RNDU);
    Real two_w0(kRadPrec);
    mpfr_mul_ui(two_w0.get(), w0_lb.get(), 2, MPFR_RNDD);
    Real denom(kRadPrec);
    mpfr_sub(denom.get(), two_w0.get(), r0.get(), MPFR_RNDD);
    if (mpfr_sgn(denom.get()) <= 0) return std::nullopt;
    Real r1(kRadPrec);
    mpfr_div(r1.get(), d.get(), denom.get(), MPFR_RNDU);
    if (mpfr_cmp(r1.get(), w0_lb.get()) >= 0) return std::nullopt;  // branch safety
    CBall out = w0;
    out.re = out.re.widened(r1);
    out.im = out.im.widened(r1);
    return out;
}

CBall eval_poly(const std::vector<CBall>& coeffs, const CBall& x) {
    if (coeffs.empty()) return CBall(Ball(0.0, x.prec()));
    CBall r = coeffs.back();
    for (int i = (int)coeffs.size() - 2; i >= 0; --i) r = r * x + coeffs[i];
    return r;
}

Ball eval_poly(const std::vector<Ball>& coeffs, const Ball& x) {
    if (coeffs.empty()) return Ball(0.0, x.prec());
    Ball r = coeffs.back();
    for (int i = (int)coeffs.size() - 2; i >= 0; --i) r = r * x + coeffs[i];
    return r;
}

std::vector<CBall> poly_to_cballs(const PolyQ& f, mpfr_prec_t prec) {
    std::vector<CBall> v;
    for (int i = 0; i <= f.degree(); ++i) v.push_back(CBall::from_rat(f[i], prec));
    return v;
}

// ------------------------------------------------------ certified roots ----

namespace {

// double-precision Durand-Kerner to seed the refinement
std::vector<std::pair<double, double>> dk_roots(const PolyQ& f) {
    int n = f.degree();
    std::vector<std::pair<double, double>> z(n);
    std::vector<std::pair<double, double>> c(n + 1);
    double lead_re = f[n].get_d();
    for (int i = 0; i <= n; ++i) c[i] = {f[i].get_d() / lead_re, 0.0};
    auto cmul = [](std::pair<double, double> a, std::pair<double, double> b) {
        return std::pair<double, double>{a.first * b.first - a.second * b.second,
                                         a.first * b.second + a.second * b.first};
    };
    auto cdiv = [](std::pair<double, double> a, std::pair<double, double> b) {
        double n2 = b.first * b.first + b.second * b.second;
        return std::pair<double, double>{(a.first * b.first + a.second * b.second) / n2,
                                         (a.second * b.first - a.first * b.second) / n2};
    };
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * M_PI * i / n + 0.35;
        double rad = 1.0 + 0.12 * i;
        z[i] = {rad * std::cos(ang), rad * std::sin(ang)};
    }
    for (int iter = 0; iter < 600; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            // evaluate monic poly at z[i]
            std::pair<double, double> val = {1.0, 0.0};
            for (int k = n - 1; k >= 0; --k) val = cmul(val, z[i]), val = {val.first + c[k].first, val.second + c[k].second};
            std::pair<double, double> den = {1.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != i) den = cmul(den, {z[i].first - z[j].first, z[i].second - z[j].second});
            auto step = cdiv(val, den);
            z[i] = {z[i].first - step.first, z[i].second - step.second};
            worst = std::max(worst, std::abs(step.first) + std::abs(step.second));
        }
        if (worst < 1e-13) break;
    }
    return z;
}

}  // namespace

std::vector<CBall> certified_roots(const PolyQ& f, mpfr_prec_t prec) {
    if (f.degree() < 1) return {};
    if (!f.squarefree()) throw std::domain_error("certified_roots: repeated roots");
    auto seeds = dk_roots(f);
    auto cf = poly_to_cballs(f, prec);
    PolyQ fd = f.derivative();
    auto cfd = poly_to_cballs(fd, prec);
    std::vector<CBall> out;
    for (auto [sr, si] : seeds) {
        CBall z = CBall::from_doubles(sr, si, prec);
        // plain Newton on midpoints to full precision
        for (int it = 0; it < 200; ++it) {
            CBall num = eval_poly(cf, z);
            CBall den = eval_poly(cfd, z);
            if (den.contains_zero()) break;
            CBall step = num / den;
            z = z - step;
            Real sz = step.ub_abs();
            mpfr_exp_t target = -(mpfr_exp_t)prec + 16;
            if (mpfr_zero_p(sz.get()) || mpfr_get_exp(sz.get()) < target) break;
        }
        // interval Newton certification: N(X) = m - f(m)/f'(X) subset X
        Real rho(kRadPrec);
        Real fz = eval_poly(cf, z).ub_abs();
        Real fpz = eval_poly(cfd, z).lb_abs();
        if (mpfr_sgn(fpz.get()) <= 0) throw std::runtime_error("certified_roots: derivative not bounded away from 0");
        mpfr_div(rho.get(), fz.get(), fpz.get(), MPFR_RNDU);
        mpfr_mul_ui(rho.get(), rho.get(), 16, MPFR_RNDU);
        // also give rho a floor so the disk has positive width
        Real floor_r(kRadPrec);
        mpfr_set_ui_2exp(floor_r.get(), 1, -(mpfr_exp_t)prec + 8, MPFR_RNDU);
        rho = max_up(rho, floor_r);
        bool certified = false;
        for (int attempt = 0; attempt < 60 && !certified; ++attempt) {
            CBall X = z;
            X.re = X.re.widened(rho);
            X.im = X.im.widened(rho);
            CBall fm = eval_poly(cf, CBall(Ball(z.re.mid(), rad_zero()), Ball(z.im.mid(), rad_zero())));
            CBall fpX = eval_poly(cfd, X);
            if (!fpX.contains_zero()) {
                CBall N = CBall(Ball(z.re.mid(), rad_zero()), Ball(z.im.mid(), rad_zero())) - fm / fpX;
                // N subset interior of X = z +/- rho (component-wise)?
                Real dre(kRadPrec), dim(kRadPrec);
                mpfr_sub(dre.get(), N.re.mid().get(), z.re.mid().get(), MPFR_RNDA);
                mpfr_abs(dre.get(), dre.get(), MPFR_RNDU);
                mpfr_sub(dim.get(), N.im.mid().get(), z.im.mid().get(), MPFR_RNDA);
                mpfr_abs(dim.get(), dim.get(), MPFR_RNDU);
                Real nre_hi = add_up(dre, N.re.rad());
                Real nim_hi = add_up(dim, N.im.rad());
                if (mpfr_cmp(nre_hi.get(), rho.get()) < 0 && mpfr_cmp(nim_hi.get(), rho.get()) < 0) {
                    out.push_back(N);
                    certified = true;
                }
            }
            mpfr_mul_ui(rho.get(), rho.get(), 4, MPFR_RNDU);
        }
        if (!certified) throw std::runtime_error("certified_roots: interval Newton failed");
    }
    return out;
}

// -------------------------------------------------- rational reconstruct ----

namespace {

// simplest rational in the closed interval [lo, hi] (continued-fraction walk)
Rat simplest_in_interval(Rat lo, Rat hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return Rat(0);
    if (hi < 0) return -simplest_in_interval(-hi, -lo);
    // now 0 < lo <= hi
    Int fl(lo.get_num() / lo.get_den());
    if (Rat(fl) >= lo) return Rat(fl);        // integer in range? floor(lo)=lo
    if (Rat(fl + 1) <= hi) return Rat(fl + 1);  // next integer inside
    Rat frac_lo = lo - Rat(fl), frac_hi = hi - Rat(fl);
    Rat inner = simplest_in_interval(Rat(1) / frac_hi, Rat(1) / frac_lo);
    return Rat(fl) + Rat(1) / inner;
}

}  // namespace

std::optional<Rat> rational_reconstruct(const Ball& b, const Int& height_bound) {
    // interval endpoints as exact rationals
    mpq_class lo_q, hi_q;
    {
        Real lo(b.prec() + 8), hi(b.prec() + 8);
        mpfr_sub(lo.get(), b.mid().get(), b.rad().get(), MPFR_RNDD);
        mpfr_add(hi.get(), b.mid().get(), b.rad().get(), MPFR_RNDU);
        mpfr_get_q(lo_q.get_mpq_t(), lo.get());
        mpfr_get_q(hi_q.get_mpq_t(), hi.get());
    }
    Rat cand = simplest_in_interval(lo_q, hi_q);
    if (abs(cand.get_num()) > height_bound || cand.get_den() > height_bound) return std::nullopt;
    // uniqueness: two rationals of height <= H differ by >= 1/H^2; require the
    // interval to be shorter than that
    Rat width = Rat(hi_q) - Rat(lo_q);
    if (width * height_bound * height_bound >= 1) return std::nullopt;
    return cand;
}

std::optional<Rat> rational_reconstruct(const CBall& b, const Int& height_bound) {
    if (!b.im.contains_zero()) return std::nullopt;
    auto r = rational_reconstruct(b.re, height_bound);
    if (!r) return std::nullopt;
    // the imaginary part must be consistent with 0 at comparable scale
    return r;
}

}  // namespace obstrukt
