#include "obstrukt/exact/numtheory.hpp"

#include <stdexcept>

namespace obstrukt::nt {

Int Rng::below(const Int& n) {
    if (n <= 1) return 0;
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Int x;
    do {
        x = 0;
        for (size_t got = 0; got < bits; got += 64) {
            x <<= 64;
            x += Int(next());
        }
        x >>= (64 - bits % 64) % 64;
    } while (x >= n);
    return x;
}

std::vector<uint64_t> primes_below(uint64_t bound) {
    std::vector<uint64_t> out;
    if (bound <= 2) return out;
    std::vector<bool> sieve(bound, true);
    for (uint64_t i = 2; i < bound; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j < bound; j += i) sieve[j] = false;
    }
    return out;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

// Pollard rho (Brent variant).  n odd composite, not a prime power of interest.
Int rho_split(const Int& n, Rng& rng, uint64_t cap) {
    if (n % 2 == 0) return 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int c = rng.below(n - 1) + 1;
        Int x = rng.below(n), y = x, d = 1, q = 1;
        uint64_t count = 0;
        int stall = 128;
        while (d == 1 && count < cap) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            if (diff == 0) break;  // cycle without factor, retry with new c
            q = q * diff % n;
            if (++count % stall == 0) {
                d = gcd(q, n);
                if (d == n) break;
            }
        }
        if (d == 1 || d == n) {
            d = gcd(q, n);
            if (d > 1 && d < n) return d;
            continue;
        }
        if (d > 1 && d < n) return d;
    }
    throw std::runtime_error("factor: pollard rho gave up on " + n.get_str());
}

void factor_rec(Int n, std::map<Int, int>& out, Rng& rng, uint64_t cap) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    // perfect power?
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (int e = 2; e < 64; ++e) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                std::map<Int, int> sub;
                factor_rec(root, sub, rng, cap);
                for (auto& [p, m] : sub) out[p] += m * e;
                return;
            }
        }
    }
    Int d = rho_split(n, rng, cap);
    factor_rec(d, out, rng, cap);
    factor_rec(n / d, out, rng, cap);
}

}  // namespace

std::map<Int, int> factor(const Int& n, uint64_t rho_iteration_cap) {
    if (n == 0) throw std::invalid_argument("factor(0)");
    std::map<Int, int> out;
    Int m = abs(n);
    static const std::vector<uint64_t> small = primes_below(100000);
    for (uint64_t p : small) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        while (m % p == 0) {
            out[Int(p)]++;
            m /= p;
        }
    }
    if (m > 1) {
        if (is_probable_prime(m)) {
            out[m]++;
        } else {
            Rng rng(0x0b57u);
            factor_rec(m, out, rng, rho_iteration_cap);
        }
    }
    return out;
}

int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

int jacobi(const Int& a, const Int& n) {
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

long valuation(Int a, const Int& p) {
    if (a == 0) throw std::invalid_argument("valuation(0)");
    long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

long valuation(const Rat& a, const Int& p) {
    return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

bool is_padic_square(const Rat& a, const Int& p) {
    if (a == 0) throw std::invalid_argument("is_padic_square(0)");
    if (p == 0) return a > 0;
    // num*den is in the same square class as a
    Int w = a.get_num() * a.get_den();
    long v = valuation(w, p);
    if (v % 2 != 0) return false;
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), (unsigned long)v);
    w /= pe;
    if (p == 2) return ((w % 8) + 8) % 8 == 1;
    return legendre(w, p) == 1;
}

std::optional<Int> sqrt_mod_prime(const Int& a0, const Int& p) {
    Int a = ((a0 % p) + p) % p;
    if (a == 0) return Int(0);
    if (p == 2) return a;  // 1^2 = 1
    if (legendre(a, p) != 1) return std::nullopt;
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    if (s == 1) return pow_mod(a, (p + 1) / 4, p);
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    Int m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) { tt = tt * tt % p; ++i; }
        Int b = c;
        for (long j = 0; j < mpz_get_si(m.get_mpz_t()) - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::optional<Int> sqrt_mod_prime_power(const Int& a0, const Int& p, int k) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    Int a = ((a0 % pk) + pk) % pk;
    if (a % p == 0) throw std::invalid_argument("sqrt_mod_prime_power: non-unit");
    if (p == 2) {
        if (k == 1) return Int(1);
        if (k == 2) return a % 4 == 1 ? std::optional<Int>(Int(1)) : std::nullopt;
        if (a % 8 != 1) return std::nullopt;
        // lift x^2 = a mod 2^j -> mod 2^{j+1}: adjust by j-1 bit
        Int x = 1;
        for (int j = 3; j < k; ++j) {
            Int mod = Int(1) << (j + 1);
            if ((x * x - a) % mod != 0) x += Int(1) << (j - 1);
        }
        return x;
    }
    auto r = sqrt_mod_prime(a, p);
    if (!r) return std::nullopt;
    // Hensel: x_{n+1} = x_n - (x_n^2 - a)/(2 x_n), doubling precision
    Int x = *r;
    Int mod = p;
    int prec = 1;
    while (prec < k) {
        int nprec = std::min(2 * prec, k);
        Int nmod;
        mpz_pow_ui(nmod.get_mpz_t(), p.get_mpz_t(), nprec);
        Int inv2x = inv_mod(2 * x % nmod, nmod);
        x = (x - (x * x - a) % nmod * inv2x) % nmod;
        x = ((x % nmod) + nmod) % nmod;
        mod = nmod;
        prec = nprec;
    }
    return x;
}

Int pow_mod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int inv_mod(const Int& a, const Int& mod) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::domain_error("inv_mod: not invertible");
    return r;
}

Int mod_sym(const Int& a, const Int& m) {
    Int r = ((a % m) + m) % m;
    if (2 * r > m) r -= m;
    return r;
}

namespace {

// (a,b)_p for odd prime p, a,b nonzero rationals.
int hilbert_odd(const Rat& a, const Rat& b, const Int& p) {
    long al = valuation(a, p), bl = valuation(b, p);
    Int pa;
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), std::labs(al));
    Int pb;
    mpz_pow_ui(pb.get_mpz_t(), p.get_mpz_t(), std::labs(bl));
    Rat ua = al >= 0 ? Rat(a / pa) : Rat(a * pa);
    Rat ub = bl >= 0 ? Rat(b / pb) : Rat(b * pb);
    Int wa = ua.get_num() * ua.get_den();
    Int wb = ub.get_num() * ub.get_den();
    int eps = (p % 4 == 3) ? 1 : 0;  // legendre(-1,p) = (-1)^eps
    int s = ((al & 1) && (bl & 1)) ? eps : 0;
    if ((bl & 1) && legendre(wa, p) == -1) s ^= 1;
    if ((al & 1) && legendre(wb, p) == -1) s ^= 1;
    return s & 1;
}

int hilbert_two(const Rat& a, const Rat& b) {
    long al = valuation(a, 2), bl = valuation(b, 2);
    Rat ua = a / Rat(Int(1) << std::labs(al));
    if (al < 0) ua = a * Rat(Int(1) << std::labs(al));
    Rat ub = b / Rat(Int(1) << std::labs(bl));
    if (bl < 0) ub = b * Rat(Int(1) << std::labs(bl));
    auto unit8 = [](const Rat& u) {
        Int w = u.get_num() * u.get_den();
        return (long)mpz_get_si(Int(((w % 8) + 8) % 8).get_mpz_t());
    };
    long wa = unit8(ua), wb = unit8(ub);
    auto eps = [](long u) { return ((u - 1) / 2) & 1; };    // (u-1)/2 mod 2
    auto omg = [](long u) { return ((u * u - 1) / 8) & 1; };  // (u^2-1)/8 mod 2
    long s = eps(wa) * eps(wb) + (al & 1) * omg(wb) + (bl & 1) * omg(wa);
    return (int)(s & 1);
}

}  // namespace

int hilbert_symbol(const Rat& a0, const Rat& b0, const Int& v) {
    if (a0 == 0 || b0 == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
    // mpq_class arithmetic assumes canonical form; inputs built as Rat(n, d)
    // with gcd(n, d) > 1 would silently corrupt the unit-part extraction
    Rat a = a0, b = b0;
    a.canonicalize();
    b.canonicalize();
    if (v == 0) return (a < 0 && b < 0) ? 1 : 0;
    if (v == 2) return hilbert_two(a, b);
    return hilbert_odd(a, b, v);
}

namespace {

// Does A + B u^2 hit a square of Q_p (or 0 via a Hensel root) for some unit
// u in the residue disk u0 + p^m Z_p?  Exact decision by recursive splitting:
// the value is known mod p^{m + ...}; when its valuation is safely below that,
// its square class is decided; otherwise split the disk.
bool disk_hits_square(const Int& A, const Int& B, const Int& p, const Int& u0,
                      int m, int depth) {
    Int pm;
    mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
    Int t = A + B * u0 * u0;
    if (t != 0) {
        long vt = valuation(t, p);
        // t(u) = t(u0) + B(2u0 s + s^2), s = p^m s'; value determined mod p^{m}
        // up to val(B): safe margin below m + val(2 B u0)
        long vb = B == 0 ? 1000 : valuation(B, p);
        long safe = m + vb + (p == 2 ? 1 : 0);
        long margin = (p == 2) ? 3 : 1;
        if (vt + margin <= safe) return is_padic_square(Rat(t), p);
        // near-zero: check for an exact Hensel root of t(u) = 0 (gives x = 0)
        Int deriv = 2 * B * u0;
        long vd = deriv == 0 ? 1000 : valuation(deriv, p);
        if (vd < 900 && vt > 2 * vd && vt >= m) {
            // classical Hensel: |t| < |t'|^2 at u0 means a root of A + Bu^2
            // exists in the disk -> the conic has a zero with x = 0
            return true;
        }
    } else {
        return true;  // exact zero: (x,y,z) = (0,1,u0) after scaling
    }
    if (depth > 60) throw std::runtime_error("hilbert bruteforce: no decision");
    long pl = mpz_get_si(Int(p).get_mpz_t());
    for (long i = 0; i < pl; ++i) {
        if (disk_hits_square(A, B, p, u0 + Int(i) * pm, m + 1, depth + 1)) return true;
    }
    return false;
}

// Is A + B w^2 a square of Q_p (or an exact zero) for some w with val(w) = j
// fixed, i.e. w = p^j u with u a unit?  Rescale to integral data when j < 0.
bool slope_hits_square(Int A, Int B, const Int& p, int j) {
    Int pj;
    mpz_pow_ui(pj.get_mpz_t(), p.get_mpz_t(), (unsigned long)std::abs(j));
    if (j >= 0)
        B *= pj * pj;  // value A + (B p^{2j}) u^2
    else
        A *= pj * pj;  // value (A p^{2|j|} + B u^2) / p^{2|j|}; drop the square
    long pl = mpz_get_si(Int(p).get_mpz_t());
    for (long u = 1; u < pl; ++u)
        if (disk_hits_square(A, B, p, u, 1, 0)) return true;
    return false;
}

}  // namespace

int hilbert_symbol_bruteforce(const Rat& a, const Rat& b, const Int& v) {
    if (v == 0) return (a < 0 && b < 0) ? 1 : 0;
    // integer representatives of the square classes
    Int A = a.get_num() * a.get_den();
    Int B = b.get_num() * b.get_den();
    // Solutions of x^2 = A y^2 + B z^2 over Q_p, parametrized by w = z/y in
    // Q_p or w = infinity.  Enough to scan val(w) in a window around 0: for
    // |val(w)| large the square class of A + B w^2 is that of A resp. B.
    if (is_padic_square(Rat(A), v)) return 0;  // w = 0
    if (is_padic_square(Rat(B), v)) return 0;  // w = infinity
    long range = 3 + (valuation(A, v) + valuation(B, v) + 1) / 2 + (v == 2 ? 2 : 0);
    for (int j = -(int)range; j <= (int)range; ++j)
        if (slope_hits_square(A, B, v, j)) return 0;
    return 1;
}

std::vector<Int> hilbert_relevant_places(const Rat& a0, const Rat& b0) {
    Rat a = a0, b = b0;
    a.canonicalize();
    b.canonicalize();
    std::map<Int, int> ps;
    for (const Rat* r : {&a, &b}) {
        Int w = abs(r->get_num() * r->get_den());
        if (w != 0)
            for (auto& [p, e] : factor(w)) ps[p] += e;
    }
    ps[2] += 1;
    std::vector<Int> out;
    out.push_back(Int(0));  // the real place
    for (auto& [p, e] : ps) out.push_back(p);
    return out;
}

}  // namespace obstrukt::nt
