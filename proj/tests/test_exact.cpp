#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "obstrukt/exact/ball.hpp"
#include "obstrukt/exact/linalg.hpp"
#include "obstrukt/exact/numtheory.hpp"
#include "obstrukt/exact/poly.hpp"

using namespace obstrukt;

namespace {

Int det_bareiss(ZMat A) {
    int n = A.rows();
    REQUIRE(A.cols() == n);
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (A(k, k) == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (A(i, k) != 0) { sw = i; break; }
            if (sw < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(sw, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

ZMat random_zmat(nt::Rng& rng, int m, int n, int lo, int hi) {
    ZMat A(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = (long)(rng.below(hi - lo + 1)) + lo;
    return A;
}

PolyQ poly_from_longs(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long c : cs) v.emplace_back(c);
    return PolyQ(std::move(v));
}

}  // namespace

TEST_CASE("integer factorization recombines") {
    nt::Rng rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        Int n = 1;
        int parts = 1 + (int)rng.below(4);
        for (int i = 0; i < parts; ++i) {
            Int p = nt::next_prime(Int(2 + (long)rng.below(100000)));
            int e = 1 + (int)rng.below(3);
            for (int k = 0; k < e; ++k) n *= p;
        }
        auto f = nt::factor(n);
        Int back = 1;
        for (auto& [p, e] : f) {
            CHECK(nt::is_probable_prime(p));
            for (int k = 0; k < e; ++k) back *= p;
        }
        CHECK(back == n);
    }
    auto f = nt::factor(Int(1));
    CHECK(f.empty());
}

TEST_CASE("sqrt_mod_prime agrees with exhaustive search") {
    for (long p : {3L, 5L, 7L, 13L, 101L, 997L}) {
        for (long a = 0; a < p; ++a) {
            bool exists = false;
            long root = -1;
            for (long x = 0; x < p; ++x)
                if (x * x % p == a) { exists = true; root = x; break; }
            auto r = nt::sqrt_mod_prime(Int(a), Int(p));
            CHECK(r.has_value() == exists);
            if (r) {
                CHECK((*r * *r - a) % p == 0);
                (void)root;
            }
        }
    }
}

TEST_CASE("sqrt_mod_prime_power lifts correctly") {
    nt::Rng rng(11);
    for (long p : {3L, 7L, 11L}) {
        for (int k : {2, 3, 5}) {
            Int pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            for (int t = 0; t < 10; ++t) {
                Int x = 1 + Int(rng.below(Int(pk - 1)));
                if (x % p == 0) continue;
                Int a = x * x % pk;
                auto r = nt::sqrt_mod_prime_power(a, Int(p), k);
                REQUIRE(r.has_value());
                CHECK((*r * *r - a) % pk == 0);
            }
        }
    }
    // 2-adic: units that are 1 mod 8 have square roots mod 2^k
    for (int k : {4, 6, 9}) {
        Int pk = Int(1) << k;
        for (Int a : {Int(1), Int(9), Int(17), Int(25)}) {
            auto r = nt::sqrt_mod_prime_power(a, Int(2), k);
            REQUIRE(r.has_value());
            CHECK((*r * *r - a) % pk == 0);
        }
        CHECK(!nt::sqrt_mod_prime_power(Int(3), Int(2), k).has_value());
        CHECK(!nt::sqrt_mod_prime_power(Int(5), Int(2), k).has_value());
    }
}

TEST_CASE("p-adic square recognition") {
    CHECK(nt::is_padic_square(Rat(17), Int(2)));    // 17 = 1 mod 8
    CHECK(!nt::is_padic_square(Rat(5), Int(2)));
    CHECK(!nt::is_padic_square(Rat(2), Int(2)));
    CHECK(nt::is_padic_square(Rat(4), Int(2)));
    CHECK(nt::is_padic_square(Rat(-7), Int(2)));    // -7 = 1 mod 8
    CHECK(nt::is_padic_square(Rat(6), Int(5)));     // 6 = 1 mod 5
    CHECK(!nt::is_padic_square(Rat(10), Int(5)));
    CHECK(nt::is_padic_square(Rat(1, 4), Int(2)));
    CHECK(nt::is_padic_square(Rat(9, 25), Int(5)));
    CHECK(!nt::is_padic_square(Rat(-1), Int(0)));   // real place
    CHECK(nt::is_padic_square(Rat(3, 7), Int(0)));
}

TEST_CASE("hilbert symbol: known values") {
    // (-1,-1) ramifies exactly at 2 and infinity
    CHECK(nt::hilbert_symbol(Rat(-1), Rat(-1), Int(2)) == 1);
    CHECK(nt::hilbert_symbol(Rat(-1), Rat(-1), Int(0)) == 1);
    CHECK(nt::hilbert_symbol(Rat(-1), Rat(-1), Int(3)) == 0);
    CHECK(nt::hilbert_symbol(Rat(-1), Rat(-1), Int(5)) == 0);
    // (2, p) at odd p: depends on 2 being a QR mod p
    CHECK(nt::hilbert_symbol(Rat(2), Rat(3), Int(3)) == 1);   // 2 is not a QR mod 3
    CHECK(nt::hilbert_symbol(Rat(2), Rat(7), Int(7)) == 0);   // 2 is a QR mod 7
    CHECK(nt::hilbert_symbol(Rat(5), Rat(3), Int(7)) == 0);   // both units, odd p
}

TEST_CASE("hilbert symbol: symmetry, multiplicativity, product formula") {
    nt::Rng rng(23);
    auto random_rat = [&]() {
        long n = (long)rng.below(40) - 20;
        if (n == 0) n = 1;
        long d = 1 + (long)rng.below(20);
        Rat q(n, d);
        q.canonicalize();
        return q;
    };
    for (int trial = 0; trial < 60; ++trial) {
        Rat a = random_rat(), b = random_rat(), c = random_rat();
        auto places = nt::hilbert_relevant_places(a, b * c);
        for (const Int& v : places) {
            CHECK(nt::hilbert_symbol(a, b, v) == nt::hilbert_symbol(b, a, v));
            int lhs = nt::hilbert_symbol(a, b * c, v);
            int rhs = (nt::hilbert_symbol(a, b, v) + nt::hilbert_symbol(a, c, v)) % 2;
            CHECK(lhs == rhs);
        }
        int total = 0;
        for (const Int& v : nt::hilbert_relevant_places(a, b)) total += nt::hilbert_symbol(a, b, v);
        CHECK(total % 2 == 0);
    }
}

TEST_CASE("hilbert symbol agrees with the solvability oracle") {
    nt::Rng rng(31);
    std::vector<Int> places = {Int(0), Int(2), Int(3), Int(5), Int(7), Int(13)};
    for (int trial = 0; trial < 40; ++trial) {
        long an = (long)rng.below(30) - 15;
        long bn = (long)rng.below(30) - 15;
        if (an == 0) an = 6;
        if (bn == 0) bn = -10;
        Rat a(an, 1 + (long)rng.below(6));
        Rat b(bn, 1 + (long)rng.below(6));
        a.canonicalize();
        b.canonicalize();
        const Int& v = places[rng.below(places.size())];
        CHECK(nt::hilbert_symbol(a, b, v) == nt::hilbert_symbol_bruteforce(a, b, v));
    }
}

TEST_CASE("PolyQ arithmetic and division") {
    PolyQ f = poly_from_longs({2, 0, -3, 1});   // x^3 - 3x^2 + 2
    PolyQ g = poly_from_longs({-1, 1});         // x - 1
    auto [q, r] = f.divrem(g);
    CHECK((q * g + r) == f);
    CHECK(r.degree() < g.degree());
    CHECK(f.eval(Rat(1)) == Rat(0));
    CHECK(r.is_zero());

    PolyQ h = poly_from_longs({1, 2, 1});       // (x+1)^2
    CHECK(!h.squarefree());
    CHECK(f.squarefree());
    CHECK(PolyQ::gcd(h, poly_from_longs({1, 1})) == poly_from_longs({1, 1}));
}

TEST_CASE("PolyQ transforms") {
    PolyQ f = poly_from_longs({5, -2, 0, 3});
    // taylor_shift: f(x+a) evaluated at x-a returns f
    PolyQ sh = f.taylor_shift(Rat(7, 2));
    CHECK(sh.eval(Rat(0)) == f.eval(Rat(7, 2)));
    CHECK(sh.taylor_shift(Rat(-7, 2)) == f);
    // reverse: x^n f(1/x)
    PolyQ rev = f.reverse(3);
    CHECK(rev.eval(Rat(2)) == f.eval(Rat(1, 2)) * Rat(8));
    // scale_arg
    CHECK(f.scale_arg(Rat(3)).eval(Rat(2)) == f.eval(Rat(6)));
    // content/primitive
    PolyQ g = poly_from_longs({6, -9, 12});
    CHECK(g.content() == Rat(3));
    CHECK(g.primitive() * Rat(3) == g);
    PolyQ gm = -g;
    CHECK(gm.primitive().leading() > 0);
}

TEST_CASE("resultants") {
    PolyQ f = poly_from_longs({-2, 1});  // x - 2
    PolyQ g = poly_from_longs({-3, 1});  // x - 3
    CHECK(PolyQ::resultant(f, g) == Rat(-1));
    PolyQ a = poly_from_longs({1, 0, 1});   // x^2 + 1
    PolyQ b = poly_from_longs({-2, 0, 1});  // x^2 - 2
    CHECK(PolyQ::resultant(a, b) == Rat(9));
    // res(f,g) = (-1)^(mn) res(g,f)
    CHECK(PolyQ::resultant(b, a) == Rat(9));
    CHECK(PolyQ::resultant(f, a) == Rat(5));   // a(2) = 5
    CHECK(PolyQ::resultant(a, f) == Rat(5));
    // common root => 0
    CHECK(PolyQ::resultant(f, f * g) == Rat(0));
}

TEST_CASE("Sturm root counting and isolation") {
    PolyQ f = poly_from_longs({-2, 0, 1});  // roots +-sqrt2
    CHECK(f.sturm_real_roots(std::nullopt, std::nullopt) == 2);
    PolyQ g = poly_from_longs({1, 0, 1});
    CHECK(g.sturm_real_roots(std::nullopt, std::nullopt) == 0);
    // (x-1)(x-2)(x-5) on subranges
    PolyQ h = (poly_from_longs({-1, 1}) * poly_from_longs({-2, 1})) * poly_from_longs({-5, 1});
    CHECK(h.sturm_real_roots(Rat(0), Rat(3)) == 2);
    CHECK(h.sturm_real_roots(Rat(3), Rat(10)) == 1);
    auto iso = h.isolate_real_roots();
    REQUIRE(iso.size() == 3);
    for (auto& [lo, hi] : iso) {
        CHECK(lo < hi);
        CHECK(h.eval(lo) * h.eval(hi) < 0);
    }
    for (size_t i = 1; i < iso.size(); ++i) CHECK(iso[i - 1].second <= iso[i].first);
}

TEST_CASE("PolyFp factorization recombines and finds roots") {
    nt::Rng rng(41);
    for (long p : {2L, 3L, 5L, 13L, 9973L}) {
        for (int trial = 0; trial < 8; ++trial) {
            int deg = 2 + (int)rng.below(7);
            std::vector<uint64_t> cs(deg + 1);
            for (auto& c : cs) c = rng.below((uint64_t)p);
            if (cs.back() == 0) cs.back() = 1;
            PolyFp f((uint64_t)p, cs);
            if (f.degree() < 1) continue;
            PolyFp df = f.derivative();
            if (df.is_zero() || PolyFp::gcd(f, df).degree() > 0) continue;  // stay squarefree
            auto fac = f.factor(17);
            PolyFp back = PolyFp((uint64_t)p, {1});
            for (auto& [g, e] : fac) {
                CHECK(g.monic() == g);
                for (int k = 0; k < e; ++k) back = back * g;
            }
            CHECK(back == f.monic());
            // every root reported must evaluate to zero; every F_p zero must be reported
            auto rts = f.roots();
            for (auto& [r, e] : rts) {
                CHECK(f.eval(r) == 0);
                CHECK(e >= 1);
            }
            if (p <= 13) {
                size_t count = 0;
                for (long x = 0; x < p; ++x)
                    if (f.eval(x) == 0) ++count;
                CHECK(count == rts.size());
            }
        }
    }
    // multiplicities: (x-1)^2 (x-2) over F_7
    PolyFp a(7, {6, 1});                       // x + 6 = x - 1
    PolyFp b(7, {5, 1});                       // x - 2
    PolyFp f = a * a * b;
    auto fac = f.factor(3);
    REQUIRE(fac.size() == 2);
    int total = 0;
    for (auto& [g, e] : fac) {
        total += e * g.degree();
        if (g == a.monic()) CHECK(e == 2);
    }
    CHECK(total == 3);
}

TEST_CASE("PolyFp splits_completely") {
    // x^2 - 2 splits mod 7 (3^2 = 2), not mod 5
    PolyFp f7(7, {5, 0, 1});
    CHECK(f7.splits_completely());
    PolyFp f5(5, {3, 0, 1});
    CHECK(!f5.splits_completely());
}

TEST_CASE("Smith normal form: U A V = D, unimodular transforms, divisibility") {
    nt::Rng rng(53);
    for (int trial = 0; trial < 14; ++trial) {
        int m = 1 + (int)rng.below(6), n = 1 + (int)rng.below(6);
        ZMat A = random_zmat(rng, m, n, -9, 9);
        SmithForm s = smith_form(A);
        CHECK(abs(det_bareiss(s.U)) == 1);
        CHECK(abs(det_bareiss(s.V)) == 1);
        ZMat D = s.U * A * s.V;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j && i < (int)s.d.size())
                    CHECK(D(i, j) == s.d[i]);
                else
                    CHECK(D(i, j) == 0);
            }
        for (size_t i = 0; i + 1 < s.d.size(); ++i) {
            CHECK(s.d[i] >= 0);
            if (s.d[i] != 0) CHECK(s.d[i + 1] % s.d[i] == 0);
            if (s.d[i] == 0) CHECK(s.d[i + 1] == 0);
        }
    }
    // a classic: diag(2,6,12)-style divisibility out of a dense matrix
    ZMat A(3, 3);
    long vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = vals[i][j];
    SmithForm s = smith_form(A);
    CHECK(s.d[0] == 2);
    CHECK(s.d[1] == 2);
    CHECK(s.d[2] == 156);
}

TEST_CASE("integer kernel is a saturated basis") {
    nt::Rng rng(59);
    for (int trial = 0; trial < 12; ++trial) {
        int m = 1 + (int)rng.below(4), n = 2 + (int)rng.below(5);
        ZMat A = random_zmat(rng, m, n, -6, 6);
        ZMat K = int_kernel(A);
        // every kernel row maps to zero
        for (int i = 0; i < K.rows(); ++i) {
            std::vector<Int> x(n);
            for (int j = 0; j < n; ++j) x[j] = K(i, j);
            for (const Int& y : A.apply(x)) CHECK(y == 0);
        }
        // rank-nullity over Q
        CHECK(K.rows() == n - A.to_q().rank());
        // saturation: Smith form of the kernel basis is all ones
        if (K.rows() > 0) {
            SmithForm sk = smith_form(K);
            for (int i = 0; i < sk.rank; ++i) CHECK(sk.d[i] == 1);
            CHECK(sk.rank == K.rows());
        }
    }
}

TEST_CASE("integer and rational solve") {
    nt::Rng rng(61);
    for (int trial = 0; trial < 12; ++trial) {
        int m = 1 + (int)rng.below(5), n = 1 + (int)rng.below(5);
        ZMat A = random_zmat(rng, m, n, -7, 7);
        std::vector<Int> x0(n);
        for (auto& v : x0) v = (long)rng.below(9) - 4;
        std::vector<Int> b = A.apply(x0);
        auto sol = int_solve(A, b);
        REQUIRE(sol.has_value());
        CHECK(A.apply(*sol) == b);
        std::vector<Rat> bq(b.size());
        for (size_t i = 0; i < b.size(); ++i) bq[i] = Rat(b[i]);
        auto rsol = rat_solve(A, bq);
        REQUIRE(rsol.has_value());
    }
    // 2x = 1 has no integer solution but a rational one
    ZMat A(1, 1);
    A(0, 0) = 2;
    CHECK(!int_solve(A, {Int(1)}).has_value());
    auto r = rat_solve(A, {Rat(1)});
    REQUIRE(r.has_value());
    CHECK((*r)[0] == Rat(1, 2));
}

TEST_CASE("ZRowSpan accumulates a row space") {
    nt::Rng rng(67);
    int n = 8;
    ZRowSpan span(n);
    std::vector<std::vector<Int>> inserted;
    for (int k = 0; k < 30; ++k) {
        std::vector<Int> r(n);
        for (auto& v : r) v = (long)rng.below(11) - 5;
        inserted.push_back(r);
        span.add(r);
    }
    CHECK(span.rank() <= n);
    for (const auto& r : inserted) CHECK(span.contains(r));
    // random integer combinations stay inside
    for (int t = 0; t < 10; ++t) {
        std::vector<Int> comb(n, Int(0));
        for (const auto& r : inserted) {
            long c = (long)rng.below(5) - 2;
            for (int j = 0; j < n; ++j) comb[j] += c * r[j];
        }
        CHECK(span.contains(comb));
    }
    // the reduced basis spans the same lattice: each basis row is a Z-combination
    // of inserted rows (checked via Smith solve on the stacked matrix)
    ZMat M((int)inserted.size(), n);
    for (int i = 0; i < (int)inserted.size(); ++i)
        for (int j = 0; j < n; ++j) M(i, j) = inserted[i][j];
    ZMat Mt = M.transposed();
    for (const auto& row : span.rows()) {
        auto sol = int_solve(Mt, row);
        CHECK(sol.has_value());
    }
}

TEST_CASE("QMat rref, kernel, solve") {
    nt::Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 1 + (int)rng.below(5), n = 1 + (int)rng.below(5);
        QMat A(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                A(i, j) = Rat((long)rng.below(13) - 6, 1 + rng.below(3));
                A(i, j).canonicalize();
            }
        auto ker = A.kernel();
        CHECK((int)ker.size() == n - A.rank());
        for (auto& v : ker) {
            for (int i = 0; i < m; ++i) {
                Rat acc = 0;
                for (int j = 0; j < n; ++j) acc += A(i, j) * v[j];
                CHECK(acc == 0);
            }
        }
        std::vector<Rat> x0(n);
        for (auto& v : x0) v = Rat((long)rng.below(7) - 3);
        std::vector<Rat> b(m);
        for (int i = 0; i < m; ++i) {
            b[i] = 0;
            for (int j = 0; j < n; ++j) b[i] += A(i, j) * x0[j];
        }
        auto sol = A.solve(b);
        REQUIRE(sol.has_value());
        for (int i = 0; i < m; ++i) {
            Rat acc = 0;
            for (int j = 0; j < n; ++j) acc += A(i, j) * (*sol)[j];
            CHECK(acc == b[i]);
        }
    }
}

TEST_CASE("ball arithmetic contains the exact value") {
    nt::Rng rng(73);
    for (int trial = 0; trial < 2000; ++trial) {
        Rat a((long)rng.below(2001) - 1000, 1 + (long)rng.below(999));
        Rat b((long)rng.below(2001) - 1000, 1 + (long)rng.below(999));
        a.canonicalize();
        b.canonicalize();
        Ball ba = Ball::from_rat(a, 64), bb = Ball::from_rat(b, 64);
        CHECK((ba + bb).contains(a + b));
        CHECK((ba - bb).contains(a - b));
        CHECK((ba * bb).contains(a * b));
        if (b != 0 && !bb.contains_zero()) CHECK((ba / bb).contains(a / b));
    }
    // sqrt containment on perfect squares
    for (int trial = 0; trial < 200; ++trial) {
        Rat s(1 + (long)rng.below(500), 1 + (long)rng.below(500));
        s.canonicalize();
        Ball sq = Ball::from_rat(s * s, 96);
        CHECK(sq.sqrt().contains(s));
    }
}

TEST_CASE("ball predicates and hull") {
    Ball z = Ball::from_rat(Rat(0), 64);
    CHECK(z.contains_zero());
    Ball p = Ball::from_rat(Rat(3, 2), 64);
    CHECK(p.is_positive());
    CHECK(!p.contains_zero());
    Ball n = Ball::from_rat(Rat(-5, 7), 64);
    CHECK(n.is_negative());
    Ball h = Ball::hull(p, n);
    CHECK(h.contains(Rat(3, 2)));
    CHECK(h.contains(Rat(-5, 7)));
    CHECK(h.contains(Rat(0)));
    CHECK_THROWS(p / z);
}

TEST_CASE("rational reconstruction from balls") {
    nt::Rng rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        long num = (long)rng.below(4001) - 2000;
        long den = 1 + (long)rng.below(2000);
        Rat q(num, den);
        q.canonicalize();
        Ball b = Ball::from_rat(q, 256);
        auto rec = rational_reconstruct(b, Int(10000));
        REQUIRE(rec.has_value());
        CHECK(*rec == q);
    }
    // too wide a ball must refuse
    Ball wide = Ball::from_rat(Rat(1, 3), 64).widened(Real::from_double(0.25));
    CHECK(!rational_reconstruct(wide, Int(10000)).has_value());
    // height cap must refuse
    Ball fine = Ball::from_rat(Rat(1, 30011), 256);
    CHECK(!rational_reconstruct(fine, Int(100)).has_value());
}

TEST_CASE("certified complex roots") {
    // x^2 - 2
    PolyQ f = poly_from_longs({-2, 0, 1});
    auto roots = certified_roots(f, 128);
    REQUIRE(roots.size() == 2);
    int pos = 0, neg = 0;
    for (auto& r : roots) {
        CHECK(r.im.contains_zero());
        CHECK((r * r).re.contains(Rat(2)));
        if (r.re.is_positive()) ++pos;
        if (r.re.is_negative()) ++neg;
    }
    CHECK(pos == 1);
    CHECK(neg == 1);
    // x^2 + 1: purely imaginary pair
    PolyQ g = poly_from_longs({1, 0, 1});
    auto ir = certified_roots(g, 128);
    REQUIRE(ir.size() == 2);
    for (auto& r : ir) CHECK(r.re.contains_zero());
    // a quintic with known rational roots
    PolyQ h = poly_from_longs({-1, 1});
    h = h * poly_from_longs({-2, 1}) * poly_from_longs({3, 1}) * poly_from_longs({7, 2}) *
        poly_from_longs({1, 0, 1});
    auto hr = certified_roots(h, 192);
    REQUIRE(hr.size() == 6);
    int rational_hits = 0;
    for (auto& r : hr) {
        if (r.im.contains_zero()) {
            for (Rat target : {Rat(1), Rat(2), Rat(-3), Rat(-7, 2)})
                if (r.re.contains(target)) ++rational_hits;
        }
    }
    CHECK(rational_hits == 4);
}

TEST_CASE("complex ball square root near a seed") {
    CBall two = CBall::from_rat(Rat(2), 128);
    CBall seed = CBall::from_doubles(1.4142, 0.0, 128);
    auto s = cball_sqrt_near(two, seed);
    REQUIRE(s.has_value());
    CBall sq = *s * *s;
    CHECK(sq.re.contains(Rat(2)));
    CHECK(sq.im.contains_zero());
    // negative branch
    CBall nseed = CBall::from_doubles(-1.4142, 0.0, 128);
    auto ns = cball_sqrt_near(two, nseed);
    REQUIRE(ns.has_value());
    CHECK(ns->re.is_negative());
    // sqrt of -1 near i
    CBall minus1 = CBall::from_rat(Rat(-1), 128);
    auto i = cball_sqrt_near(minus1, CBall::from_doubles(0.0, 1.0, 128));
    REQUIRE(i.has_value());
    CHECK(i->im.is_positive());
    CHECK((*i * *i).re.contains(Rat(-1)));
}

TEST_CASE("certified ball linear solve and nullvector") {
    // integer system with known solution
    std::vector<std::vector<CBall>> A(3, std::vector<CBall>(3, CBall::from_rat(Rat(0), 128)));
    long m[3][3] = {{2, 1, -1}, {-3, -1, 2}, {-2, 1, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A[i][j] = CBall::from_rat(Rat(m[i][j]), 128);
    std::vector<CBall> b = {CBall::from_rat(Rat(8), 128), CBall::from_rat(Rat(-11), 128),
                            CBall::from_rat(Rat(-3), 128)};
    auto x = cball_solve(A, b);
    CHECK(x[0].re.contains(Rat(2)));
    CHECK(x[1].re.contains(Rat(3)));
    CHECK(x[2].re.contains(Rat(-1)));

    // nullvector of a rank-2 3x3 matrix, kernel spanned by (1, -2, 1)
    std::vector<std::vector<CBall>> N(2, std::vector<CBall>(3, CBall::from_rat(Rat(0), 128)));
    long nm[2][3] = {{1, 1, 1}, {1, 2, 3}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) N[i][j] = CBall::from_rat(Rat(nm[i][j]), 128);
    auto v = cball_nullvector(N, 3);
    // check N v = 0 within enclosures and proportionality to (1,-2,1)
    for (int i = 0; i < 2; ++i) {
        CBall acc = CBall::from_rat(Rat(0), 128);
        for (int j = 0; j < 3; ++j) acc = acc + N[i][j] * v[j];
        CHECK(acc.re.contains(Rat(0)));
        CHECK(acc.im.contains_zero());
    }
    CBall t1 = v[0] - v[2];
    CHECK(t1.re.contains(Rat(0)));
    CBall t2 = v[1] + v[0] + v[0];
    CHECK(t2.re.contains(Rat(0)));
}

TEST_CASE("rational parsing round trip") {
    CHECK(parse_rat("22/7") == Rat(22, 7));
    CHECK(parse_rat("-5") == Rat(-5));
    CHECK(parse_rat("0") == Rat(0));
    CHECK(rat_str(Rat(-22, 7)) == "-22/7");
    CHECK(rat_str(Rat(3)) == "3");
    CHECK_THROWS(parse_rat("x"));
    CHECK(parse_rat(rat_str(Rat(35, -49))) == Rat(-5, 7));
}
