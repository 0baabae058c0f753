// Dense univariate polynomials over Q (exact) and over F_p (word-sized p),
// plus the handful of transforms the curve/surface pipeline needs:
// reduction mod f, modular factorization, resultants, Sturm sequences,
// Taylor shift / reversal for the odd-degree-model substitutions.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/exact/numtheory.hpp"

namespace obstrukt {

class PolyQ {
  public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static PolyQ x();
    static PolyQ constant(const Rat& a);
    static PolyQ monomial(int deg, const Rat& a);

    int degree() const { return (int)c_.size() - 1; }  // -1 for the zero poly
    bool is_zero() const { return c_.empty(); }
    const Rat& operator[](int i) const;  // 0 outside range
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    PolyQ operator+(const PolyQ& o) const;
    PolyQ operator-(const PolyQ& o) const;
    PolyQ operator*(const PolyQ& o) const;
    PolyQ operator*(const Rat& a) const;
    PolyQ operator-() const;
    bool operator==(const PolyQ& o) const { return c_ == o.c_; }

    // division with remainder; divisor nonzero
    std::pair<PolyQ, PolyQ> divrem(const PolyQ& divisor) const;
    PolyQ mod(const PolyQ& divisor) const { return divrem(divisor).second; }

    PolyQ derivative() const;
    Rat eval(const Rat& x) const;
    PolyQ monic() const;

    // gcd (monic), resultant (subresultant-free exact rational Euclid; degrees
    // here stay tiny), squarefree test
    static PolyQ gcd(PolyQ a, PolyQ b);
    static Rat resultant(const PolyQ& a, const PolyQ& b);
    bool squarefree() const;

    // f(x + a)
    PolyQ taylor_shift(const Rat& a) const;
    // x^n f(1/x) for n >= degree
    PolyQ reverse(int n) const;
    // f(a x)
    PolyQ scale_arg(const Rat& a) const;

    // number of real roots in (lo, hi] via Sturm chains; whole line if no args
    int sturm_real_roots(const std::optional<Rat>& lo, const std::optional<Rat>& hi) const;
    // isolating intervals for all real roots
    std::vector<std::pair<Rat, Rat>> isolate_real_roots() const;

    // content/primitive part over Z (defined for any rational poly)
    Rat content() const;
    PolyQ primitive() const;

    std::string str(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<Rat> c_;  // c_[i] multiplies x^i; invariant: back() != 0
};

// Polynomials over F_p for p < 2^31 (products fit in uint64 comfortably via
// __int128 where needed).
class PolyFp {
  public:
    PolyFp() : p_(2) {}
    PolyFp(uint64_t p, std::vector<uint64_t> coeffs);
    static PolyFp from_rational(const PolyQ& f, uint64_t p);  // throws if a denominator dies
    static PolyFp x(uint64_t p);

    uint64_t prime() const { return p_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    uint64_t operator[](int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : 0; }
    const std::vector<uint64_t>& coeffs() const { return c_; }

    PolyFp operator+(const PolyFp& o) const;
    PolyFp operator-(const PolyFp& o) const;
    PolyFp operator*(const PolyFp& o) const;
    bool operator==(const PolyFp& o) const { return p_ == o.p_ && c_ == o.c_; }

    std::pair<PolyFp, PolyFp> divrem(const PolyFp& divisor) const;
    PolyFp mod(const PolyFp& m) const { return divrem(m).second; }
    PolyFp monic() const;
    PolyFp derivative() const;
    uint64_t eval(uint64_t x) const;

    static PolyFp gcd(PolyFp a, PolyFp b);
    // x^e mod m (e arbitrary precision)
    static PolyFp pow_x_mod(const Int& e, const PolyFp& m);
    static PolyFp pow_mod(PolyFp base, Int e, const PolyFp& m);

    // Distinct-degree + Cantor-Zassenhaus equal-degree splitting.
    // Returns irreducible factors with multiplicity, deterministic for a seed.
    std::vector<std::pair<PolyFp, int>> factor(uint64_t seed = 0) const;

    // roots in F_p (with multiplicity folded out; pairs (root, mult))
    std::vector<std::pair<uint64_t, int>> roots() const;

    // true iff squarefree and a product of deg-1 factors: gcd(x^p - x, f) = f
    bool splits_completely() const;

    uint64_t resultant(const PolyFp& other) const;

  private:
    void trim();
    uint64_t p_;
    std::vector<uint64_t> c_;
};

// Parse "p/q" or "p"; throws on garbage.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

}  // namespace obstrukt
