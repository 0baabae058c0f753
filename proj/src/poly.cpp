#include "obstrukt/exact/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace obstrukt {

// ---------------------------------------------------------------- PolyQ ----

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::x() { return PolyQ({Rat(0), Rat(1)}); }

PolyQ PolyQ::constant(const Rat& a) { return PolyQ({a}); }

PolyQ PolyQ::monomial(int deg, const Rat& a) {
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = a;
    return PolyQ(std::move(v));
}

const Rat& PolyQ::operator[](int i) const {
    static const Rat zero(0);
    if (i < 0 || i >= (int)c_.size()) return zero;
    return c_[i];
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator-() const {
    std::vector<Rat> v = c_;
    for (auto& a : v) a = -a;
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
    if (c_.empty() || o.c_.empty()) return PolyQ();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return PolyQ(std::move(v));
}

PolyQ PolyQ::operator*(const Rat& a) const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x *= a;
    return PolyQ(std::move(v));
}

std::pair<PolyQ, PolyQ> PolyQ::divrem(const PolyQ& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("PolyQ: division by zero");
    std::vector<Rat> rem = c_;
    int dd = divisor.degree();
    if ((int)rem.size() - 1 < dd) return {PolyQ(), *this};
    std::vector<Rat> quo(rem.size() - dd, Rat(0));
    Rat lead = divisor.leading();
    for (int i = (int)rem.size() - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        Rat q = rem[i] / lead;
        quo[i - dd] = q;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * divisor.c_[j];
    }
    return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
}

PolyQ PolyQ::derivative() const {
    if (c_.size() <= 1) return PolyQ();
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat((long)i);
    return PolyQ(std::move(v));
}

Rat PolyQ::eval(const Rat& x) const {
    Rat r(0);
    for (int i = (int)c_.size() - 1; i >= 0; --i) r = r * x + c_[i];
    return r;
}

PolyQ PolyQ::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading());
}

PolyQ PolyQ::gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        PolyQ r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Rat PolyQ::resultant(const PolyQ& a, const PolyQ& b) {
    // classical recursion res(a,b) = lc(b)^{deg a - deg r} (-1)^{deg a deg b} res(b, r)
    if (a.is_zero() || b.is_zero()) return Rat(0);
    PolyQ f = a, g = b;
    Rat acc(1);
    while (true) {
        if (f.degree() < g.degree()) {
            if ((f.degree() & 1) && (g.degree() & 1)) acc = -acc;
            std::swap(f, g);
        }
        if (g.degree() == 0) {
            Rat lg = g.leading(), r = acc;
            for (int i = 0; i < f.degree(); ++i) r *= lg;
            return r;
        }
        PolyQ r = f.mod(g);
        if (r.is_zero()) return Rat(0);
        Rat lg = g.leading();
        for (int i = 0; i < f.degree() - r.degree(); ++i) acc *= lg;
        if ((f.degree() & 1) && (g.degree() & 1)) acc = -acc;
        f = std::move(g);
        g = std::move(r);
    }
}

bool PolyQ::squarefree() const {
    if (degree() <= 0) return true;
    return gcd(*this, derivative()).degree() == 0;
}

PolyQ PolyQ::taylor_shift(const Rat& a) const {
    // Horner: f(x+a) built from the top coefficient down
    PolyQ r;
    PolyQ xa({a, Rat(1)});
    for (int i = degree(); i >= 0; --i) r = r * xa + PolyQ::constant(c_[i]);
    return r;
}

PolyQ PolyQ::reverse(int n) const {
    if (n < degree()) throw std::invalid_argument("PolyQ::reverse: n < degree");
    std::vector<Rat> v(n + 1, Rat(0));
    for (int i = 0; i <= degree(); ++i) v[n - i] = c_[i];
    return PolyQ(std::move(v));
}

PolyQ PolyQ::scale_arg(const Rat& a) const {
    std::vector<Rat> v = c_;
    Rat pw(1);
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] *= pw;
        pw *= a;
    }
    return PolyQ(std::move(v));
}

namespace {

int sign_changes(const std::vector<Rat>& vals) {
    int ch = 0, prev = 0;
    for (const Rat& v : vals) {
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++ch;
        prev = s;
    }
    return ch;
}

std::vector<PolyQ> sturm_chain(const PolyQ& f) {
    std::vector<PolyQ> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        PolyQ r = chain[chain.size() - 2].mod(chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

}  // namespace

int PolyQ::sturm_real_roots(const std::optional<Rat>& lo, const std::optional<Rat>& hi) const {
    if (degree() <= 0) return 0;
    PolyQ f = *this;
    // make squarefree: Sturm wants it
    PolyQ g = gcd(f, f.derivative());
    if (g.degree() > 0) f = f.divrem(g).first;
    auto chain = sturm_chain(f);
    auto eval_signs_at_inf = [&](int dir) {
        std::vector<Rat> v;
        for (const PolyQ& c : chain) {
            if (c.is_zero()) { v.push_back(Rat(0)); continue; }
            Rat lead = c.leading();
            v.push_back((dir < 0 && (c.degree() & 1)) ? -lead : lead);
        }
        return v;
    };
    auto eval_signs = [&](const Rat& x) {
        std::vector<Rat> v;
        for (const PolyQ& c : chain) v.push_back(c.eval(x));
        return v;
    };
    int a = lo ? sign_changes(eval_signs(*lo)) : sign_changes(eval_signs_at_inf(-1));
    int b = hi ? sign_changes(eval_signs(*hi)) : sign_changes(eval_signs_at_inf(+1));
    return a - b;
}

std::vector<std::pair<Rat, Rat>> PolyQ::isolate_real_roots() const {
    std::vector<std::pair<Rat, Rat>> out;
    if (degree() <= 0) return out;
    // Cauchy bound
    Rat bound(1);
    Rat lead = leading();
    for (int i = 0; i < degree(); ++i) {
        Rat q = abs(c_[i] / lead);
        if (q + 1 > bound) bound = q + 1;
    }
    std::function<void(Rat, Rat)> split = [&](Rat lo, Rat hi) {
        int n = sturm_real_roots(lo, hi);
        if (n == 0) return;
        if (n == 1) {
            out.emplace_back(lo, hi);
            return;
        }
        Rat mid = (lo + hi) / 2;
        while (eval(mid) == 0) mid = (lo + mid) / 2;  // nudge off a root
        split(lo, mid);
        split(mid, hi);
    };
    split(-bound, bound);
    std::sort(out.begin(), out.end());
    return out;
}

Rat PolyQ::content() const {
    if (is_zero()) return Rat(0);
    Int num_gcd(0), den_lcm(1);
    for (const Rat& a : c_) {
        if (a == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), a.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den().get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    return leading() < 0 ? -c : c;
}

PolyQ PolyQ::primitive() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / content());
}

std::string PolyQ::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        Rat a = c_[i];
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        Rat aa = abs(a);
        if (aa != 1 || i == 0) os << aa.get_str();
        if (i > 0) {
            if (aa != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// --------------------------------------------------------------- PolyFp ----

namespace {
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((unsigned __int128)a * b % p);
}
inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
uint64_t powmod_u(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t invmod_u(uint64_t a, uint64_t p) { return powmod_u(a % p, p - 2, p); }
}  // namespace

void PolyFp::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp::PolyFp(uint64_t p, std::vector<uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& a : c_) a %= p_;
    trim();
}

PolyFp PolyFp::from_rational(const PolyQ& f, uint64_t p) {
    std::vector<uint64_t> v(f.degree() + 1, 0);
    Int P((unsigned long)p);
    for (int i = 0; i <= f.degree(); ++i) {
        const Rat& a = f[i];
        if (a.get_den() % P == 0) throw std::domain_error("PolyFp: denominator divisible by p");
        Int num = ((a.get_num() % P) + P) % P;
        Int den = ((a.get_den() % P) + P) % P;
        v[i] = mulmod(mpz_get_ui(num.get_mpz_t()),
                      invmod_u(mpz_get_ui(den.get_mpz_t()), p), p);
    }
    return PolyFp(p, std::move(v));
}

PolyFp PolyFp::x(uint64_t p) { return PolyFp(p, {0, 1}); }

PolyFp PolyFp::operator+(const PolyFp& o) const {
    std::vector<uint64_t> v(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] = addmod(v[i], o.c_[i], p_);
    return PolyFp(p_, std::move(v));
}

PolyFp PolyFp::operator-(const PolyFp& o) const {
    std::vector<uint64_t> v(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] = submod(v[i], o.c_[i], p_);
    return PolyFp(p_, std::move(v));
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
    if (c_.empty() || o.c_.empty()) return PolyFp(p_, {});
    std::vector<uint64_t> v(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] = (uint64_t)(((unsigned __int128)c_[i] * o.c_[j] + v[i + j]) % p_);
    }
    return PolyFp(p_, std::move(v));
}

std::pair<PolyFp, PolyFp> PolyFp::divrem(const PolyFp& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("PolyFp: division by zero");
    std::vector<uint64_t> rem = c_;
    int dd = divisor.degree();
    if ((int)rem.size() - 1 < dd) return {PolyFp(p_, {}), *this};
    std::vector<uint64_t> quo(rem.size() - dd, 0);
    uint64_t inv_lead = invmod_u(divisor.c_.back(), p_);
    for (int i = (int)rem.size() - 1; i >= dd; --i) {
        if (!rem[i]) continue;
        uint64_t q = mulmod(rem[i], inv_lead, p_);
        quo[i - dd] = q;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] = submod(rem[i - dd + j], mulmod(q, divisor.c_[j], p_), p_);
    }
    return {PolyFp(p_, std::move(quo)), PolyFp(p_, std::move(rem))};
}

PolyFp PolyFp::monic() const {
    if (is_zero()) return *this;
    uint64_t inv = invmod_u(c_.back(), p_);
    std::vector<uint64_t> v = c_;
    for (auto& a : v) a = mulmod(a, inv, p_);
    return PolyFp(p_, std::move(v));
}

PolyFp PolyFp::derivative() const {
    if (c_.size() <= 1) return PolyFp(p_, {});
    std::vector<uint64_t> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = mulmod(c_[i], i % p_, p_);
    return PolyFp(p_, std::move(v));
}

uint64_t PolyFp::eval(uint64_t x) const {
    uint64_t r = 0;
    x %= p_;
    for (int i = (int)c_.size() - 1; i >= 0; --i) r = (mulmod(r, x, p_) + c_[i]) % p_;
    return r;
}

PolyFp PolyFp::gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
        PolyFp r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyFp PolyFp::pow_mod(PolyFp base, Int e, const PolyFp& m) {
    PolyFp r(m.prime(), {1});
    base = base.mod(m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * base).mod(m);
        base = (base * base).mod(m);
        e >>= 1;
    }
    return r;
}

PolyFp PolyFp::pow_x_mod(const Int& e, const PolyFp& m) {
    return pow_mod(PolyFp::x(m.prime()), e, m);
}

bool PolyFp::splits_completely() const {
    if (degree() <= 0) return false;
    // squarefree and gcd(x^p - x, f) = f
    if (PolyFp::gcd(*this, derivative()).degree() != 0) return false;
    PolyFp xp = pow_x_mod(Int((unsigned long)p_), *this);
    PolyFp diff = xp - PolyFp::x(p_);
    return diff.mod(*this).is_zero();
}

std::vector<std::pair<PolyFp, int>> PolyFp::factor(uint64_t seed) const {
    std::vector<std::pair<PolyFp, int>> out;
    if (degree() <= 0) return out;
    nt::Rng rng(seed ^ 0x9e3779b9u);
    PolyFp f = monic();
    // squarefree part; p exceeds the degrees we feed in, so derivative zero
    // means a genuinely inseparable input and callers should pick another prime
    PolyFp d = f.derivative();
    if (d.is_zero()) throw std::domain_error("PolyFp::factor: inseparable input");
    PolyFp sf0 = f.divrem(gcd(f, d)).first;
    auto factor_squarefree = [&](const PolyFp& s, std::vector<PolyFp>& irr) {
        // distinct-degree
        PolyFp rem = s;
        PolyFp xq = PolyFp::x(p_);
        for (int d = 1; rem.degree() > 0 && d <= rem.degree(); ++d) {
            xq = pow_mod(xq, Int((unsigned long)p_), rem);
            PolyFp g = gcd(xq - PolyFp::x(p_), rem);
            if (g.degree() > 0) {
                // split g into irreducibles of degree d (Cantor-Zassenhaus)
                std::vector<PolyFp> stack{g};
                while (!stack.empty()) {
                    PolyFp h = stack.back();
                    stack.pop_back();
                    if (h.degree() == d) {
                        irr.push_back(h.monic());
                        continue;
                    }
                    // random split
                    while (true) {
                        std::vector<uint64_t> rc(h.degree());
                        for (auto& a : rc) a = rng.below(p_);
                        PolyFp r(p_, std::move(rc));
                        PolyFp t = p_ == 2
                                       ? [&] {  // trace map for p = 2
                                             PolyFp acc = r, cur = r;
                                             for (int i = 1; i < d; ++i) {
                                                 cur = (cur * cur).mod(h);
                                                 acc = acc + cur;
                                             }
                                             return acc;
                                         }()
                                       : [&] {
                                             Int e = 1;
                                             for (int i = 0; i < d; ++i) e *= Int((unsigned long)p_);
                                             e = (e - 1) / 2;
                                             return pow_mod(r, e, h) - PolyFp(p_, {1});
                                         }();
                        PolyFp w = gcd(t, h);
                        if (w.degree() > 0 && w.degree() < h.degree()) {
                            stack.push_back(w);
                            stack.push_back(h.divrem(w).first);
                            break;
                        }
                    }
                }
                rem = rem.divrem(g).first;
                if (rem.degree() == 0) break;
                xq = xq.mod(rem);
            }
            if (2 * (d + 1) > rem.degree()) break;  // leftover is irreducible
        }
        if (rem.degree() > 0) irr.push_back(rem.monic());
    };
    std::vector<PolyFp> irreducibles;
    factor_squarefree(sf0, irreducibles);
    for (const PolyFp& q : irreducibles) {
        int m = 0;
        PolyFp g = monic();
        while (true) {
            auto [quo, rem2] = g.divrem(q);
            if (!rem2.is_zero()) break;
            ++m;
            g = quo;
        }
        out.emplace_back(q, m);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

std::vector<std::pair<uint64_t, int>> PolyFp::roots() const {
    std::vector<std::pair<uint64_t, int>> out;
    for (auto& [q, m] : factor())
        if (q.degree() == 1) out.emplace_back(submod(0, q[0], p_), m);  // root of x + c
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t PolyFp::resultant(const PolyFp& other) const {
    PolyFp f = *this, g = other;
    if (f.is_zero() || g.is_zero()) return 0;
    uint64_t acc = 1;
    while (true) {
        if (f.degree() < g.degree()) {
            if ((f.degree() & 1) && (g.degree() & 1)) acc = submod(0, acc, p_);
            std::swap(f, g);
        }
        if (g.degree() == 0) {
            uint64_t r = acc;
            for (int i = 0; i < f.degree(); ++i) r = mulmod(r, g[0], p_);
            return r;
        }
        PolyFp r = f.mod(g);
        if (r.is_zero()) return 0;
        uint64_t lg = g.coeffs().back();
        for (int i = 0; i < f.degree() - r.degree(); ++i) acc = mulmod(acc, lg, p_);
        if ((f.degree() & 1) && (g.degree() & 1)) acc = submod(0, acc, p_);
        f = std::move(g);
        g = std::move(r);
    }
}

// ------------------------------------------------------------- parsing ----

Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace obstrukt
