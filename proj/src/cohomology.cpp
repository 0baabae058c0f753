#include "obstrukt/cohomology.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace obstrukt {

namespace {

unsigned canon_t(unsigned raw) {
    raw &= 63u;
    return std::min(raw, raw ^ 63u);
}

void check_perm(const std::array<int, 6>& p) {
    std::array<bool, 6> hit{};
    for (int v : p) {
        if (v < 0 || v > 5 || hit[v]) throw std::invalid_argument("not a permutation");
        hit[v] = true;
    }
}

}  // namespace

AutElement AutElement::translation(const std::array<int, 6>& bits) {
    unsigned raw = 0;
    for (int i = 0; i < 6; i++) raw = 2 * raw + (unsigned)(bits[i] & 1);
    AutElement g;
    g.t = canon_t(raw);
    return g;
}

AutElement AutElement::transposition(int i, int j) {
    if (i < 1 || i > 6 || j < 1 || j > 6 || i == j)
        throw std::invalid_argument("transposition positions must be distinct in 1..6");
    AutElement g;
    std::swap(g.perm[i - 1], g.perm[j - 1]);
    return g;
}

AutElement AutElement::cycle(const std::vector<int>& pos) {
    AutElement g;
    int k = (int)pos.size();
    for (int a = 0; a < k; a++) {
        int from = pos[a], to = pos[(a + 1) % k];
        if (from < 1 || from > 6 || to < 1 || to > 6) throw std::invalid_argument("cycle positions in 1..6");
        g.perm[from - 1] = to - 1;
    }
    check_perm(g.perm);
    return g;
}

unsigned AutElement::apply_mask(unsigned raw) const {
    unsigned out = 0;
    for (int i = 0; i < 6; i++) out |= ((raw >> (5 - i)) & 1u) << (5 - perm[i]);
    return out;
}

AutElement AutElement::operator*(const AutElement& o) const {
    AutElement r;
    r.t = canon_t(t ^ apply_mask(o.t));
    for (int i = 0; i < 6; i++) r.perm[i] = perm[o.perm[i]];
    return r;
}

AutElement AutElement::inverse() const {
    AutElement r;
    for (int i = 0; i < 6; i++) r.perm[perm[i]] = i;
    r.t = canon_t(r.apply_mask(t));
    return r;
}

unsigned AutElement::key_of_perm() const {
    unsigned lehmer = 0;
    for (int i = 0; i < 6; i++) {
        int smaller = 0;
        for (int j = i + 1; j < 6; j++)
            if (perm[j] < perm[i]) smaller++;
        lehmer = lehmer * (6 - i) + (unsigned)smaller;
    }
    return lehmer;
}

uint32_t AutElement::key() const { return t * 720u + key_of_perm(); }

LineIndex AutElement::apply(LineIndex s) const { return LineIndex(apply_mask(s.label) ^ t); }

Divisor AutElement::apply(const Divisor& d) const {
    Divisor r;
    for (auto& [l, m] : d.mult) r.add(apply(LineIndex(l)), m);
    return r;
}

bool AutElement::is_identity() const {
    if (t != 0) return false;
    for (int i = 0; i < 6; i++)
        if (perm[i] != i) return false;
    return true;
}

std::string AutElement::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 6; i++) os << ((t >> (5 - i)) & 1u);
    os << ")";
    std::array<bool, 6> done{};
    bool any = false;
    for (int i = 0; i < 6; i++) {
        if (done[i] || perm[i] == i) continue;
        os << "(";
        int j = i;
        do {
            os << (j + 1);
            done[j] = true;
            j = perm[j];
        } while (j != i);
        os << ")";
        any = true;
    }
    if (!any) os << "id";
    return os.str();
}

SubgroupSpec SubgroupSpec::closure(std::vector<AutElement> gens) {
    SubgroupSpec H;
    H.generators = std::move(gens);
    std::unordered_map<uint32_t, AutElement> seen;
    AutElement e;
    seen.emplace(e.key(), e);
    std::queue<AutElement> bfs;
    bfs.push(e);
    while (!bfs.empty()) {
        AutElement cur = bfs.front();
        bfs.pop();
        for (const AutElement& g : H.generators) {
            AutElement nx = cur * g;
            if (seen.emplace(nx.key(), nx).second) bfs.push(nx);
        }
    }
    H.elements.reserve(seen.size());
    for (auto& [k, g] : seen) H.elements.push_back(g);
    std::sort(H.elements.begin(), H.elements.end(),
              [](const AutElement& a, const AutElement& b) { return a.key() < b.key(); });
    if (23040 % H.elements.size() != 0) throw std::logic_error("closure size does not divide 23040");
    return H;
}

int SubgroupSpec::index_of(const AutElement& g) const {
    uint32_t k = g.key();
    auto it = std::lower_bound(elements.begin(), elements.end(), k,
                               [](const AutElement& a, uint32_t v) { return a.key() < v; });
    if (it == elements.end() || it->key() != k) return -1;
    return (int)(it - elements.begin());
}

bool SubgroupSpec::contains(const AutElement& g) const { return index_of(g) >= 0; }

bool SubgroupSpec::is_subgroup_of(const SubgroupSpec& bigger) const {
    for (const AutElement& g : elements)
        if (!bigger.contains(g)) return false;
    return true;
}

SubgroupSpec trivial_group() { return SubgroupSpec::closure({}); }

SubgroupSpec full_aut_group() {
    static const SubgroupSpec H = SubgroupSpec::closure({AutElement::translation({1, 0, 0, 0, 0, 0}),
                                                         AutElement::transposition(1, 2),
                                                         AutElement::cycle({1, 2, 3, 4, 5, 6})});
    return H;
}

SubgroupSpec square_norm_subgroup() {
    static const SubgroupSpec H = SubgroupSpec::closure({AutElement::translation({1, 1, 0, 0, 0, 0}),
                                                         AutElement::transposition(1, 2),
                                                         AutElement::cycle({1, 2, 3, 4, 5, 6})});
    return H;
}

SubgroupSpec h96() {
    static const SubgroupSpec H = SubgroupSpec::closure({AutElement::translation({0, 0, 1, 0, 0, 1}),
                                                         AutElement::translation({0, 0, 1, 1, 1, 1}),
                                                         AutElement::transposition(1, 2),
                                                         AutElement::cycle({3, 4, 5}),
                                                         AutElement::transposition(3, 4)});
    return H;
}

SubgroupSpec h48() {
    static const SubgroupSpec H = SubgroupSpec::closure({AutElement::transposition(1, 2),
                                                         AutElement::cycle({3, 4, 5}),
                                                         AutElement::transposition(3, 4),
                                                         AutElement::translation({0, 0, 1, 1, 0, 0}),
                                                         AutElement::translation({0, 0, 1, 0, 1, 0})});
    return H;
}

SubgroupSpec h12() {
    static const SubgroupSpec H = SubgroupSpec::closure(
        {AutElement::translation({0, 0, 1, 1, 0, 0}) * AutElement::transposition(3, 4),
         AutElement::transposition(1, 2), AutElement::transposition(4, 5)});
    return H;
}

ZMat lattice_action(const AutElement& g, const LineLattice& L) {
    ZMat M(L.rank, L.rank);
    for (int j = 0; j < L.rank; j++) {
        std::vector<Int> v(32, Int(0));
        for (int i = 0; i < 32; i++) {
            const Int& m = L.basis(i, j);
            if (m != 0) v[g.apply(LineIndex((unsigned)i)).label] += m;
        }
        std::vector<Int> x = L.class_coords(v);
        for (int i = 0; i < L.rank; i++) M(i, j) = x[i];
    }
    return M;
}

namespace {

// exact square root of a nonnegative rational, if it exists
bool rat_square_root(const Rat& r, Rat* root) {
    if (r < 0) return false;
    Rat c = r;
    c.canonicalize();
    if (mpz_perfect_square_p(c.get_num().get_mpz_t()) == 0 ||
        mpz_perfect_square_p(c.get_den().get_mpz_t()) == 0)
        return false;
    if (root) {
        Int sn, sd;
        mpz_sqrt(sn.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), c.get_den().get_mpz_t());
        *root = Rat(sn) / Rat(sd);
    }
    return true;
}

std::vector<Rat> quad_rational_roots(const Rat& A, const Rat& B, const Rat& C) {
    std::vector<Rat> roots;
    Rat disc = B * B - 4 * A * C, sq;
    if (!rat_square_root(disc, &sq)) return roots;
    roots.push_back((-B + sq) / (2 * A));
    if (sq != 0) roots.push_back((-B - sq) / (2 * A));
    return roots;
}

}  // namespace

bool square_in_quadratic_field(const Rat& p, const Rat& q, const Rat& u0, const Rat& u1,
                               Rat* alpha, Rat* beta) {
    Rat disc = p * p - 4 * q;
    if (rat_square_root(disc, nullptr))
        throw std::invalid_argument("x^2 + px + q must be irreducible");
    if (u0 == 0 && u1 == 0) {
        if (alpha) *alpha = 0;
        if (beta) *beta = 0;
        return true;
    }
    if (u1 == 0) {
        Rat a;
        if (rat_square_root(u0, &a)) {
            if (alpha) *alpha = a;
            if (beta) *beta = 0;
            return true;
        }
    }
    // (alpha + beta r)^2 = u0 + u1 r unpacks to alpha^2 - q beta^2 = u0 and
    // 2 alpha beta - p beta^2 = u1; with T = beta^2 this forces
    // (p^2 - 4q) T^2 + (2 p u1 - 4 u0) T + u1^2 = 0.
    for (const Rat& T : quad_rational_roots(disc, 2 * p * u1 - 4 * u0, u1 * u1)) {
        Rat b;
        if (T <= 0 || !rat_square_root(T, &b)) continue;
        Rat a = (u1 + p * T) / (2 * b);
        if (a * a - q * b * b == u0 && 2 * a * b - p * b * b == u1) {
            if (alpha) *alpha = a;
            if (beta) *beta = b;
            return true;
        }
    }
    return false;
}

namespace {

std::vector<Int> divisors_of(const Int& n) {
    std::vector<Int> divs = {Int(1)};
    for (auto& [prime, mult] : nt::factor(abs(n))) {
        size_t base = divs.size();
        Int pk = 1;
        for (int e = 1; e <= mult; e++) {
            pk *= prime;
            for (size_t i = 0; i < base; i++) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

bool cubic_has_rational_root(const PolyQ& g) {
    PolyQ h = g.primitive();  // integer coefficients, content 1
    Int c3 = h[3].get_num(), c0 = h[0].get_num();
    if (c0 == 0) return true;
    // integer roots z | c0*c3^2 of the monic model z^3 + c2 z^2 + c1 c3 z + c0 c3^2
    for (const Int& dv : divisors_of(c0 * c3 * c3))
        for (int sign : {1, -1}) {
            Rat z = Rat(dv * sign);
            if (z * z * z + h[2] * z * z + h[1] * c3 * z + h[0] * c3 * c3 == 0) return true;
        }
    return false;
}

bool irreducible_low_degree(const PolyQ& g) {
    switch (g.degree()) {
        case 1: return true;
        case 2: return !rat_square_root(g[1] * g[1] - 4 * g[2] * g[0], nullptr);
        case 3: return !cubic_has_rational_root(g);
        default: throw std::invalid_argument("degree out of range");
    }
}

}  // namespace

ContainmentReport galois_containment(const Curve& c, const EtaleElement& d) {
    ContainmentReport rep;
    if (c.factors.empty()) {
        rep.reason = "factorization of f not supplied";
        return rep;
    }
    const PolyQ *quad = nullptr, *cub = nullptr, *lin = nullptr;
    for (const PolyQ& g : c.factors) {
        const PolyQ** slot = g.degree() == 2 ? &quad : g.degree() == 3 ? &cub : g.degree() == 1 ? &lin : nullptr;
        if (!slot || *slot) {
            rep.reason = "factor degrees are not {2,3,1}";
            return rep;
        }
        *slot = &g;
    }
    if (!quad || !cub || !lin) {
        rep.reason = "factor degrees are not {2,3,1}";
        return rep;
    }
    if (!((*quad) * (*cub) * (*lin) == c.f)) {
        rep.reason = "factors do not multiply to f";
        return rep;
    }
    if (!irreducible_low_degree(*quad) || !irreducible_low_degree(*cub)) {
        rep.reason = "quadratic or cubic factor splits over Q";
        return rep;
    }
    PolyQ m = quad->monic();
    PolyQ u = d.rep.mod(m);
    if (!square_in_quadratic_field(m[1], m[0], u[0], u[1])) {
        rep.reason = "delta is not a square at the quadratic root";
        return rep;
    }
    rep.applies = true;
    rep.group = h96();
    return rep;
}

namespace {

struct FpKernel {
    std::vector<std::vector<long>> basis;  // one vector per free column
    std::vector<bool> free_col;
};

FpKernel fp_kernel(const ZMat& M, long p) {
    const int m = M.rows(), w = M.cols();
    std::vector<std::vector<long>> a(m, std::vector<long>(w));
    for (int i = 0; i < m; i++)
        for (int j = 0; j < w; j++)
            a[i][j] = (long)mpz_fdiv_ui(M(i, j).get_mpz_t(), (unsigned long)p);
    std::vector<int> pivot_of_col(w, -1);
    int r = 0;
    for (int j = 0; j < w && r < m; j++) {
        int pr = -1;
        for (int i = r; i < m; i++)
            if (a[i][j] % p != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        long inv = nt::inv_mod(Int(a[r][j]), Int(p)).get_si();
        for (int k = 0; k < w; k++) a[r][k] = a[r][k] * inv % p;
        for (int i = 0; i < m; i++) {
            if (i == r || a[i][j] == 0) continue;
            long f = a[i][j];
            for (int k = 0; k < w; k++) a[i][k] = ((a[i][k] - f * a[r][k]) % p + p) % p;
        }
        pivot_of_col[j] = r;
        r++;
    }
    FpKernel out;
    out.free_col.assign(w, false);
    for (int j = 0; j < w; j++) {
        if (pivot_of_col[j] >= 0) continue;
        out.free_col[j] = true;
        std::vector<long> v(w, 0);
        v[j] = 1;
        for (int k = 0; k < w; k++)
            if (pivot_of_col[k] >= 0) v[k] = (p - a[pivot_of_col[k]][j]) % p;
        out.basis.push_back(std::move(v));
    }
    return out;
}

// square basis of {x in Z^w : x mod p in ker(M mod p)}: kernel lifts at the
// free columns, p e_j at the pivot columns
ZMat preimage_basis(const FpKernel& ker, long p, int w) {
    ZMat C(w, w);
    int col = 0;
    for (const auto& v : ker.basis) {
        for (int i = 0; i < w; i++) C(i, col) = v[i];
        col++;
    }
    for (int j = 0; j < w; j++) {
        if (ker.free_col[j]) continue;
        C(j, col) = p;
        col++;
    }
    if (col != w) throw std::logic_error("preimage basis is not square");
    return C;
}

}  // namespace

// Every crossed homomorphism c satisfies |H| c(g) = (g-1)(-m) with
// m = sum_h c(h), so c(g) = (g-1)w for w = -m/|H|, and w determines c.  Thus
// Z^1 is parameterized by Y = {y in Z^17 : (g-1)y = 0 mod |H| for all g},
// via y -> (g -> (g-1)y/|H|); the kernel is the invariant lattice and the
// coboundaries come from |H| Z^17, giving H^1 = Y / (|H| Z^17 + Y^H).  The
// congruence lattice Y is found by p-adic refinement with mod-p kernels, so
// no large integer elimination ever happens; the returned cocycle is still
// checked against the definition on every pair of group elements.
CohomologyResult h1_lattice(const SubgroupSpec& H, const LineLattice& L) {
    const int n = (int)H.elements.size();
    if (n > 4096) throw std::invalid_argument("H^1 supported for subgroups of order <= 4096");
    SubgroupSpec regen = SubgroupSpec::closure(H.generators);
    if (regen.order() != n) throw std::invalid_argument("element list is not the closure of the generators");
    for (int i = 0; i < n; i++)
        if (!regen.contains(H.elements[i]))
            throw std::invalid_argument("element list is not the closure of the generators");

    CohomologyResult res;
    if (n == 1) return res;

    const int ng = (int)H.generators.size();
    std::vector<ZMat> rho_gen(ng);
    for (int j = 0; j < ng; j++) rho_gen[j] = lattice_action(H.generators[j], L);

    // stacked (rho(s) - 1) over the generators; its kernel is the invariant
    // lattice, since invariance under generators spreads to the group
    ZMat stacked(17 * ng, 17);
    for (int j = 0; j < ng; j++)
        for (int r = 0; r < 17; r++)
            for (int s = 0; s < 17; s++) stacked(17 * j + r, s) = rho_gen[j](r, s) - Int(r == s ? 1 : 0);
    ZMat fixed = int_kernel(stacked);  // rows span Y^H, saturated
    const int f = fixed.rows();

    // Y via prime-by-prime refinement: B's columns always span the current
    // congruence lattice, and each step imposes one more p-adic digit
    ZMat B = ZMat::identity(17);
    for (auto& [p, a] : nt::factor(Int(n))) {
        long pl = p.get_si();
        for (int k = 1; k <= a; k++) {
            ZMat AB = stacked * B;
            Int pk1 = 1;
            for (int i = 1; i < k; i++) pk1 *= pl;
            ZMat M(AB.rows(), 17);
            for (int i = 0; i < AB.rows(); i++)
                for (int j = 0; j < 17; j++) {
                    Int q = AB(i, j) / pk1;
                    if (q * pk1 != AB(i, j)) throw std::logic_error("refinement lost divisibility");
                    M(i, j) = q;
                }
            B = B * preimage_basis(fp_kernel(M, pl), pl, 17);
        }
    }
    {
        ZMat AB = stacked * B;
        for (int i = 0; i < AB.rows(); i++)
            for (int j = 0; j < 17; j++)
                if (AB(i, j) % n != 0) throw std::logic_error("congruence lattice check failed");
    }

    // relations in Y-coordinates: |H| Z^17 and the invariant lattice
    QMat Bq = B.to_q();
    ZMat rel(17, 17 + f);
    auto put_col = [&](int col, const std::vector<Rat>& target) {
        auto x = Bq.solve(target);
        if (!x) throw std::logic_error("congruence basis is singular");
        for (int i = 0; i < 17; i++) {
            if ((*x)[i].get_den() != 1) throw std::logic_error("relation escapes the congruence lattice");
            rel(i, col) = (*x)[i].get_num();
        }
    };
    for (int j = 0; j < 17; j++) {
        std::vector<Rat> t(17, Rat(0));
        t[j] = n;
        put_col(j, t);
    }
    for (int i = 0; i < f; i++) {
        std::vector<Rat> t(17);
        for (int j = 0; j < 17; j++) t[j] = Rat(fixed(i, j));
        put_col(17 + i, t);
    }

    SmithForm sc = smith_form(rel);
    if (sc.rank != 17) throw std::logic_error("H^1 came out infinite");
    int pick = -1;
    for (int i = 0; i < 17; i++)
        if (sc.d[i] > 1) {
            res.divisors.push_back(sc.d[i]);
            pick = i;
        }
    if (res.divisors.empty()) return res;

    // a generator of the largest cyclic summand, back in lattice coordinates
    std::vector<Rat> rhs(17, Rat(0));
    rhs[pick] = 1;
    auto ysol = sc.U.to_q().solve(rhs);
    if (!ysol) throw std::logic_error("Smith transform not invertible");
    std::vector<Int> y(17, Int(0));
    for (int i = 0; i < 17; i++) {
        if ((*ysol)[i].get_den() != 1) throw std::logic_error("unimodular inverse came out fractional");
        for (int r = 0; r < 17; r++) y[r] += (*ysol)[i].get_num() * B(r, i);
    }

    std::vector<ZMat> rho(n);
    for (int i = 0; i < n; i++) rho[i] = lattice_action(H.elements[i], L);
    res.cocycle.assign(n, std::vector<Int>(17));
    for (int i = 0; i < n; i++) {
        std::vector<Int> gy = rho[i].apply(y);
        for (int r = 0; r < 17; r++) {
            Int num = gy[r] - y[r];
            Int q = num / n;
            if (q * n != num) throw std::logic_error("cocycle value not integral");
            res.cocycle[i][r] = q;
        }
    }

    // verify the crossed-homomorphism identity on every pair, and that the
    // class is genuinely nontrivial
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            int k = H.index_of(H.elements[i] * H.elements[j]);
            if (k < 0) throw std::logic_error("element list not closed");
            std::vector<Int> want = rho[i].apply(res.cocycle[j]);
            for (int r = 0; r < 17; r++) want[r] += res.cocycle[i][r];
            if (want != res.cocycle[k]) throw std::logic_error("cocycle identity failed");
        }
    if (coboundary_witness(H, L, res.cocycle))
        throw std::logic_error("nontrivial class collapsed to a coboundary");
    return res;
}

std::optional<std::vector<Int>> coboundary_witness(const SubgroupSpec& H, const LineLattice& L,
                                                   const std::vector<std::vector<Int>>& c) {
    const int n = (int)H.elements.size();
    if ((int)c.size() != n) throw std::invalid_argument("cocycle length mismatch");
    std::vector<ZMat> rho(n);
    for (int i = 0; i < n; i++) rho[i] = lattice_action(H.elements[i], L);

    ZRowSpan aug(18);
    for (int i = 0; i < n; i++)
        for (int r = 0; r < 17; r++) {
            std::vector<Int> row(18);
            for (int s = 0; s < 17; s++) row[s] = rho[i](r, s) - Int(r == s ? 1 : 0);
            row[17] = c[i][r];
            aug.add(std::move(row));
        }

    std::vector<Int> m(17, Int(0));
    if (aug.rank() > 0) {
        ZMat Ar(aug.rank(), 17);
        std::vector<Int> br(aug.rank());
        for (int i = 0; i < aug.rank(); i++) {
            for (int s = 0; s < 17; s++) Ar(i, s) = aug.rows()[i][s];
            br[i] = aug.rows()[i][17];
        }
        auto sol = int_solve(Ar, br);
        if (!sol) return std::nullopt;
        m = *sol;
    }
    for (int i = 0; i < n; i++) {
        std::vector<Int> want = rho[i].apply(m);
        for (int r = 0; r < 17; r++)
            if (want[r] - m[r] != c[i][r]) return std::nullopt;
    }
    return m;
}

Divisor distinguished_class(const LineLattice& L) {
    Divisor d;
    d.add(LineIndex::from_bits({0, 0, 0, 1, 1, 0}), 1);
    d.add(LineIndex::from_bits({0, 0, 0, 1, 1, 1}), 1);
    d.add(LineIndex::from_bits({0, 0, 1, 0, 0, 0}), -1);
    d.add(LineIndex::from_bits({0, 0, 1, 0, 0, 1}), -1);
    SubgroupSpec big = h96(), small = h48();
    for (const AutElement& g : big.elements) {
        Divisor gd = g.apply(d);
        bool fixed = L.same_class(gd, d);
        bool negated = L.same_class(gd, -d);
        if (small.contains(g) ? !fixed : !negated)
            throw std::logic_error("distinguished class misbehaves under " + g.str());
    }
    return d;
}

std::vector<CosetDivisor> coset_divisor_table(const LineLattice& L) {
    SubgroupSpec H48 = h48(), H12 = h12();
    if (H48.order() != 48 || H12.order() != 12 || !H12.is_subgroup_of(H48))
        throw std::logic_error("coset decomposition failure: bad subgroup pair");

    auto divisor_from = [](std::initializer_list<unsigned> plus, std::initializer_list<unsigned> minus) {
        Divisor d;
        for (unsigned l : plus) d.add(LineIndex(l), 1);
        for (unsigned l : minus) d.add(LineIndex(l), -1);
        return d;
    };
    std::vector<CosetDivisor> table;
    table.push_back({AutElement{}, {}, Divisor{}});
    table.push_back({AutElement::translation({0, 0, 1, 1, 0, 0}), {}, divisor_from({4, 5, 6, 7}, {8, 9, 10, 11})});
    table.push_back({AutElement::translation({0, 0, 0, 1, 1, 0}), {}, divisor_from({6, 7, 14, 15}, {0, 1, 8, 9})});
    table.push_back({AutElement::translation({0, 0, 1, 0, 1, 0}), {}, divisor_from({2, 3, 6, 7}, {8, 9, 12, 13})});

    Divisor E = distinguished_class(L);
    size_t covered = 0;
    for (CosetDivisor& row : table) {
        for (const AutElement& h : H12.elements) row.members.push_back(row.rep * h);
        for (const AutElement& tau : row.members) {
            if (!H48.contains(tau)) throw std::logic_error("coset decomposition failure: escaped h48");
            if (!L.same_class(row.value, E - tau.apply(E)))
                throw std::logic_error("coset divisor mismatch at " + tau.str());
        }
        covered += row.members.size();
    }
    // the four cosets partition h48
    std::vector<uint32_t> keys;
    for (const CosetDivisor& row : table)
        for (const AutElement& tau : row.members) keys.push_back(tau.key());
    std::sort(keys.begin(), keys.end());
    if (covered != 48 || std::unique(keys.begin(), keys.end()) != keys.end())
        throw std::logic_error("coset decomposition failure: not a partition");
    return table;
}

}  // namespace obstrukt
