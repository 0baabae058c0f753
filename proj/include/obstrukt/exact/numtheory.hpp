// Elementary number theory over GMP integers: primes, factoring, modular
// square roots, Legendre/Jacobi symbols, CRT.  Everything here is exact.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace obstrukt {

using Int = mpz_class;
using Rat = mpq_class;

namespace nt {

// Deterministic pseudo-random stream (splitmix64); platform-stable so that
// seeded runs reproduce bit-for-bit.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed = 0) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do { x = next(); } while (x >= lim);
        return x % n;
    }
    Int below(const Int& n);
};

std::vector<uint64_t> primes_below(uint64_t bound);

bool is_probable_prime(const Int& n);               // BPSW via mpz_probab_prime_p
Int next_prime(const Int& n);

// Full factorization: trial division below 10^5, then Miller-Rabin/Pollard rho.
// Intended for inputs whose prime factors are < ~10^14; fine for the norms that
// show up in candidate-prime sieving.  Throws if a composite cofactor resists.
std::map<Int, int> factor(const Int& n, uint64_t rho_iteration_cap = 1ull << 26);

int legendre(const Int& a, const Int& p);           // p odd prime
int jacobi(const Int& a, const Int& n);             // n odd positive

// Is a a square in Q_p^* (a != 0)?  Handles p = 2 (unit part 1 mod 8) and the
// real place (p = 0 encodes R: positive <=> square).
bool is_padic_square(const Rat& a, const Int& p);

// p-adic valuation; a != 0.
long valuation(Int a, const Int& p);
long valuation(const Rat& a, const Int& p);

// x with x^2 = a mod p (p odd prime, a a QR); Tonelli-Shanks.
std::optional<Int> sqrt_mod_prime(const Int& a, const Int& p);

// x with x^2 = a mod p^k, a a unit mod p.  For p = 2 requires a = 1 mod 8
// (k >= 3); lifts by Hensel.  Returns nullopt when no root exists.
std::optional<Int> sqrt_mod_prime_power(const Int& a, const Int& p, int k);

Int pow_mod(const Int& base, const Int& exp, const Int& mod);
Int inv_mod(const Int& a, const Int& mod);          // throws if not invertible
Int mod_sym(const Int& a, const Int& m);            // representative in (-m/2, m/2]

// Hilbert symbol (a,b)_v over Q, additive convention: returns 0 or 1 meaning
// inv = 0 or 1/2 in (1/2)Z/Z.  v = 0 encodes the real place, otherwise a prime.
int hilbert_symbol(const Rat& a, const Rat& b, const Int& v);

// Brute-force oracle for the Hilbert symbol: searches primitive solutions of
// x^2 - a y^2 - b z^2 = 0 mod v^k (or checks signs at the real place).
int hilbert_symbol_bruteforce(const Rat& a, const Rat& b, const Int& v);

// The finite places where (a,b)_v can be nonzero: 2 and primes dividing the
// numerators/denominators of a and b.
std::vector<Int> hilbert_relevant_places(const Rat& a, const Rat& b);

}  // namespace nt
}  // namespace obstrukt
