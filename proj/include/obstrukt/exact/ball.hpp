// Ball arithmetic over MPFR: every operation returns a ball (midpoint +
// radius) containing the exact image of its operand balls.  Midpoints carry
// the working precision; radii are low-precision upper bounds (always rounded
// away from zero).  CBall is the rectangular complex version.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>

#include "obstrukt/exact/numtheory.hpp"
#include "obstrukt/exact/poly.hpp"

namespace obstrukt {

class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    static Real from_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_q(r.x_, q.get_mpq_t(), rnd);
        return r;
    }
    static Real from_double(double d, mpfr_prec_t prec = 64) {
        Real r(prec);
        mpfr_set_d(r.x_, d, MPFR_RNDN);
        return r;
    }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }
    std::string str(int digits = 20) const;

  private:
    mpfr_t x_;
};

class Ball {
  public:
    Ball() : Ball(0.0, 128) {}
    explicit Ball(double mid, mpfr_prec_t prec = 128);
    Ball(Real mid, Real rad) : mid_(std::move(mid)), rad_(std::move(rad)) {}

    static Ball from_rat(const Rat& q, mpfr_prec_t prec);
    static Ball from_int(const Int& n, mpfr_prec_t prec);
    static Ball exact(double d, mpfr_prec_t prec);  // radius 0 (d exact in binary)

    const Real& mid() const { return mid_; }
    const Real& rad() const { return rad_; }
    mpfr_prec_t prec() const { return mid_.prec(); }

    Ball operator+(const Ball& o) const;
    Ball operator-(const Ball& o) const;
    Ball operator*(const Ball& o) const;
    Ball operator/(const Ball& o) const;  // throws if o contains 0
    Ball operator-() const;

    Ball sqrt() const;  // ball must not be entirely negative; clamps at 0
    Ball abs() const;

    bool contains_zero() const;
    bool is_positive() const;  // entire ball > 0
    bool is_negative() const;
    bool contains(const Rat& q) const;
    // |x| <= ub for all x in ball / |x| >= lb (>= 0)
    Real ub_abs() const;
    Real lb_abs() const;

    // union hull of two balls (contains both)
    static Ball hull(const Ball& a, const Ball& b);
    // widen radius by r >= 0
    Ball widened(const Real& extra) const;

    double mid_double() const { return mid_.to_double(); }
    double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
    std::string str() const;

  private:
    Real mid_;
    Real rad_;  // 64-bit precision, nonnegative
};

struct CBall {
    Ball re, im;

    CBall() = default;
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
    explicit CBall(const Ball& r) : re(r), im(Ball(0.0, r.prec())) {}
    static CBall from_doubles(double r, double i, mpfr_prec_t prec);
    static CBall from_rat(const Rat& q, mpfr_prec_t prec) { return CBall(Ball::from_rat(q, prec)); }

    CBall operator+(const CBall& o) const { return {re + o.re, im + o.im}; }
    CBall operator-(const CBall& o) const { return {re - o.re, im - o.im}; }
    CBall operator*(const CBall& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CBall operator/(const CBall& o) const;
    CBall operator-() const { return {-re, -im}; }
    CBall conj() const { return {re, -im}; }

    Ball abs2() const { return re * re + im * im; }
    Real ub_abs() const;
    Real lb_abs() const;
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    mpfr_prec_t prec() const { return re.prec(); }
    std::string str() const { return re.str() + " + " + im.str() + "*i"; }
};

// ---- free helpers ----

Real add_up(const Real& a, const Real& b);   // rounded up
Real mul_up(const Real& a, const Real& b);
Real abs_up(const Real& a);
Real max_up(const Real& a, const Real& b);
int cmp(const Real& a, const Real& b);

// Principal-free square root: the sqrt branch of Z closest to the approximation
// w0; Z must exclude 0.  Returns a ball containing sqrt(z) for every z in Z
// (that branch), or nullopt if the error bound does not close.
std::optional<CBall> cball_sqrt_near(const CBall& Z, const CBall& w0);

// Horner evaluation.
CBall eval_poly(const std::vector<CBall>& coeffs, const CBall& x);
Ball eval_poly(const std::vector<Ball>& coeffs, const Ball& x);
std::vector<CBall> poly_to_cballs(const PolyQ& f, mpfr_prec_t prec);

// Certified roots of an exact rational polynomial (simple roots only):
// interval-Newton refinement of double-precision seeds.  Returns one ball per
// root, each certified to contain exactly one root of f.
std::vector<CBall> certified_roots(const PolyQ& f, mpfr_prec_t prec);

// Unique rational p/q with |p|,|q| <= height_bound inside the ball, if the
// ball is narrow enough to pin it down unambiguously.
std::optional<Rat> rational_reconstruct(const Ball& b, const Int& height_bound);
std::optional<Rat> rational_reconstruct(const CBall& b, const Int& height_bound);

}  // namespace obstrukt
