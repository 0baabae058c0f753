#include "obstrukt/etale.hpp"

#include <stdexcept>

#include "obstrukt/log.hpp"

namespace obstrukt {

void Curve::validate() const {
    if (f.degree() != 6) throw std::invalid_argument("curve: f must have degree 6");
    if (!f.squarefree()) throw std::invalid_argument("curve: f must be squarefree");
    if (n <= 0) throw std::invalid_argument("curve: twist multiplier must be positive");
    if (!factors.empty()) {
        PolyQ prod = PolyQ::constant(1);
        int degsum = 0;
        for (const PolyQ& g : factors) {
            if (g.degree() < 1) throw std::invalid_argument("curve: constant listed as factor");
            degsum += g.degree();
            prod = prod * g;
        }
        if (degsum != 6) throw std::invalid_argument("curve: factor degrees must sum to 6");
        // the factor list must recover f up to the leading constant
        if (!(prod * (f.leading() / prod.leading()) == f))
            throw std::invalid_argument("curve: factors do not multiply to f");
    }
}

void EtaleElement::validate() const {
    parent.validate();
    if (rep.degree() >= 6) throw std::invalid_argument("etale element: representative degree >= 6");
    if (rep.is_zero() || PolyQ::resultant(rep, parent.f) == 0)
        throw std::invalid_argument("etale element: representative not invertible mod f");
}

Rat norm_to_base(const EtaleElement& d) {
    d.validate();
    Rat r = PolyQ::resultant(d.rep, d.parent.f);
    Rat lc = d.parent.f.leading();
    Rat scale = 1;
    for (int i = 0; i < d.rep.degree(); ++i) scale *= lc;
    // resultant(rep, f) = lc(rep)^6 prod f(beta) = lc(f)^deg(rep) prod rep(alpha)
    return r / scale;
}

std::optional<bool> has_odd_degree_factor(const Curve& c) {
    if (c.factors.empty()) return std::nullopt;
    for (const PolyQ& g : c.factors)
        if (g.degree() % 2 == 1) return true;
    return false;
}

namespace {

// root of F mod p^k from a simple root mod p, by Newton iteration; F integer
Int hensel_root(const PolyQ& F, const Int& p, const Int& r0, int k) {
    Int pk = p;
    Int r = r0 % p;
    int have = 1;
    PolyQ dF = F.derivative();
    while (have < k) {
        int next = std::min(2 * have, k);
        Int pnext;
        mpz_pow_ui(pnext.get_mpz_t(), p.get_mpz_t(), next);
        Rat fv = F.eval(Rat(r));
        Rat dv = dF.eval(Rat(r));
        // both are integers since F has integer coefficients and r is integral
        Int fz = fv.get_num();
        Int dz = dv.get_num();
        if (fv.get_den() != 1 || dv.get_den() != 1)
            throw std::logic_error("hensel_root: non-integral evaluation");
        Int inv = nt::inv_mod(dz % pnext, pnext);
        r = (r - fz * inv) % pnext;
        r = ((r % pnext) + pnext) % pnext;
        have = next;
        pk = pnext;
    }
    return r;
}

}  // namespace

std::vector<ComponentValue> component_values(const EtaleElement& d, const Int& p,
                                             int precision) {
    d.validate();
    if (p <= 2) throw std::invalid_argument("component_values: p must be an odd prime");
    const PolyQ& f = d.parent.f;
    // clear denominators; p must not divide the scaled leading coefficient
    PolyQ F = f.primitive();
    Rat discr = PolyQ::resultant(F, F.derivative());
    if (nt::valuation(discr.get_num(), p) > 0 || F.leading().get_num() % p == 0)
        throw std::invalid_argument("component_values: p divides disc(f)");

    PolyFp fp = PolyFp::from_rational(F, mpz_get_ui(p.get_mpz_t()));
    if (!fp.splits_completely())
        throw std::invalid_argument("component_values: f does not split mod p");
    auto roots = fp.roots();
    if ((int)roots.size() != 6) throw std::logic_error("component_values: expected 6 roots");

    std::vector<ComponentValue> out;
    for (auto& [r0, mult] : roots) {
        (void)mult;
        int k = precision;
        for (;;) {
            Int lift = hensel_root(F, p, Int(r0), k);
            Rat value = d.rep.eval(Rat(lift));
            if (value == 0) {
                // the lift happens to be a rational root of rep; more p-adic
                // digits will separate it from the true root of f
                k *= 2;
                if (k > 5000) throw std::runtime_error("component_values: cannot separate root");
                continue;
            }
            long v = nt::valuation(value, p);
            // value is known to agree with the true component mod p^k; commit
            // only when the valuation is visible well inside that precision
            if (v >= (k + 1) / 2) {
                k *= 2;
                if (k > 5000) throw std::runtime_error("component_values: valuation too deep");
                continue;
            }
            ComponentValue cv;
            cv.root = lift;
            cv.precision = k;
            cv.value = value;
            cv.verdict = nt::is_padic_square(value, p) ? SquareVerdict::square
                                                       : SquareVerdict::nonsquare;
            out.push_back(std::move(cv));
            break;
        }
    }
    return out;
}

const PolyQ& twist_witness_quadratic() {
    static const PolyQ g([] {
        std::vector<Rat> c = {Rat(49), Rat(-35), Rat(1)};
        return c;
    }());
    return g;
}

const PolyQ& twist_witness_sextic() {
    static const PolyQ g([] {
        std::vector<Rat> c = {Rat(250047), Rat(0), Rat(7938), Rat(0), Rat(-126), Rat(0), Rat(1)};
        return c;
    }());
    return g;
}

bool twist_prime_eligible(const Int& p) {
    if (p <= 2 || !nt::is_probable_prime(p)) return false;
    if (p == 739) return false;
    for (const PolyQ* g : {&twist_witness_quadratic(), &twist_witness_sextic()}) {
        Rat disc = PolyQ::resultant(*g, g->derivative());
        if (disc.get_num() % p == 0) return false;  // ramified: ineligible
        PolyFp gp = PolyFp::from_rational(*g, mpz_get_ui(p.get_mpz_t()));
        if (!gp.splits_completely()) return false;
    }
    if (nt::legendre(Int(2), p) != 1) return false;
    if (nt::legendre(Int(-739), p) != 1) return false;
    return true;
}

SquareClassReport selmer_local_eligibility(const EtaleElement& d, const Int& p) {
    d.validate();
    const Int& n = d.parent.n;
    SquareClassReport rep;
    rep.place = p;
    if (p == 0 || p == 2 || p == 7 || p == 739) {
        rep.inherited = nt::is_padic_square(Rat(n), p);
        rep.overall = rep.inherited ? Eligibility::eligible : Eligibility::undecided;
        return rep;
    }
    if (n % p == 0) {
        rep.components = component_values(d, p);
        bool all_square = true;
        for (const auto& cv : rep.components)
            if (cv.verdict != SquareVerdict::square) all_square = false;
        rep.overall = all_square ? Eligibility::eligible : Eligibility::ineligible;
        return rep;
    }
    throw std::invalid_argument("selmer_local_eligibility: check not required at this place");
}

}  // namespace obstrukt
