#include "obstrukt/surface.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "obstrukt/exact/poly.hpp"
#include "obstrukt/log.hpp"

namespace obstrukt {

int QuadForm::index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * (13 - i) / 2 + (j - i);
}

const Int& QuadForm::coeff(int i, int j) const { return c[index(i, j)]; }

Rat QuadForm::eval(const std::vector<Rat>& x) const {
    Rat s(0);
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) s += Rat(c[index(i, j)]) * x[i] * x[j];
    s.canonicalize();
    return s;
}

Int QuadForm::eval(const std::vector<Int>& x) const {
    Int s(0);
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) s += c[index(i, j)] * x[i] * x[j];
    return s;
}

uint64_t QuadForm::eval_mod(const std::array<uint64_t, 6>& x, uint64_t p) const {
    // callers keep p < 2^21 so products of two reduced values fit easily
    uint64_t s = 0;
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        for (int j = i; j < 6; ++j) {
            if (x[j] == 0) continue;
            uint64_t cc = mpz_fdiv_ui(c[index(i, j)].get_mpz_t(), p);
            s = (s + cc * x[i] % p * x[j]) % p;
        }
    }
    return s;
}

std::array<Int, 6> QuadForm::gradient(const std::vector<Int>& x) const {
    std::array<Int, 6> g;
    for (int k = 0; k < 6; ++k) {
        Int s = 2 * c[index(k, k)] * x[k];
        for (int j = 0; j < 6; ++j)
            if (j != k) s += c[index(k, j)] * x[j];
        g[k] = s;
    }
    return g;
}

std::array<uint64_t, 6> QuadForm::gradient_mod(const std::array<uint64_t, 6>& x,
                                               uint64_t p) const {
    std::array<uint64_t, 6> g;
    for (int k = 0; k < 6; ++k) {
        uint64_t s = 2 * mpz_fdiv_ui(c[index(k, k)].get_mpz_t(), p) % p * x[k] % p;
        for (int j = 0; j < 6; ++j)
            if (j != k) s = (s + mpz_fdiv_ui(c[index(k, j)].get_mpz_t(), p) * x[j]) % p;
        g[k] = s;
    }
    return g;
}

static QMat forms_as_rows(const std::vector<const QuadForm*>& fs) {
    QMat a((int)fs.size(), 21);
    for (int r = 0; r < (int)fs.size(); ++r)
        for (int k = 0; k < 21; ++k) a(r, k) = Rat(fs[r]->c[k]);
    return a;
}

int QuadricModel::span_rank() const {
    return forms_as_rows({&q[0], &q[1], &q[2]}).rank();
}

bool QuadricModel::same_span(const QuadricModel& o) const {
    int ra = span_rank(), rb = o.span_rank();
    if (ra != rb) return false;
    QMat both = forms_as_rows({&q[0], &q[1], &q[2], &o.q[0], &o.q[1], &o.q[2]});
    return both.rank() == ra;
}

// scale a rational vector to a primitive integer vector, first nonzero entry
// positive
static std::array<Int, 21> primitive_int(const std::array<Rat, 21>& v) {
    Int l(1);
    for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    Int g(0);
    std::array<Int, 21> w;
    for (int i = 0; i < 21; ++i) {
        w[i] = v[i].get_num() * (l / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    if (g == 0) throw std::invalid_argument("primitive_int: zero form");
    for (int i = 0; i < 21; ++i)
        if (w[i] != 0) {
            if (w[i] < 0) g = -g;
            break;
        }
    for (auto& x : w) x /= g;
    return w;
}

QuadricModel build_quadrics(const EtaleElement& d) {
    d.validate();
    const PolyQ& f = d.parent.f;
    // R[m] = delta * x^m mod f; the form coefficients are Hankel in i+j
    std::vector<PolyQ> R(11);
    PolyQ xm = PolyQ::constant(Rat(1));
    for (int m = 0; m <= 10; ++m) {
        R[m] = (d.rep * xm).mod(f);
        xm = (xm * PolyQ::x()).mod(f);
    }
    QuadricModel out;
    for (int k = 0; k < 3; ++k) {
        std::array<Rat, 21> v;
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) {
                Rat a = R[i + j][3 + k];
                if (i != j) a *= 2;
                a.canonicalize();
                v[QuadForm::index(i, j)] = a;
            }
        out.q[k].c = primitive_int(v);
    }
    out.constructed = true;
    return out;
}

std::optional<EtaleElement> recover_delta_from_model(const Curve& c, const QuadricModel& m,
                                                     const Rat& gauge_point,
                                                     const Rat& gauge_value) {
    c.validate();
    // S[n] = x^n mod f, so that the x^{3+k} coefficient of delta * x^{i+j}
    // is sum_m d_m S[m+i+j][3+k]; unknowns are d_0..d_5, lambda_0..2
    std::vector<PolyQ> S(16);
    PolyQ xm = PolyQ::constant(Rat(1));
    for (int n = 0; n <= 15; ++n) {
        S[n] = xm;
        xm = (xm * PolyQ::x()).mod(c.f);
    }
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& sigma : perms) {
        QMat a(63, 9);
        int row = 0;
        for (int k = 0; k < 3; ++k) {
            for (int i = 0; i < 6; ++i)
                for (int j = i; j < 6; ++j) {
                    for (int mm = 0; mm <= 5; ++mm) {
                        Rat t = S[mm + i + j][3 + k];
                        if (i != j) t *= 2;
                        t.canonicalize();
                        a(row, mm) = t;
                    }
                    a(row, 6 + k) = -Rat(m.q[sigma[k]].c[QuadForm::index(i, j)]);
                    ++row;
                }
        }
        std::vector<std::vector<Rat>> ker = a.kernel();
        if (ker.size() != 1) continue;
        const auto& sol = ker[0];
        bool lambdas_ok = sol[6] != 0 && sol[7] != 0 && sol[8] != 0;
        if (!lambdas_ok) continue;
        PolyQ delta(std::vector<Rat>(sol.begin(), sol.begin() + 6));
        if (delta.is_zero()) continue;
        Rat at_gauge = delta.eval(gauge_point);
        if (at_gauge == 0) continue;
        Rat scale = gauge_value / at_gauge;
        scale.canonicalize();
        EtaleElement out{delta * scale, c};
        try {
            out.validate();
        } catch (const std::exception&) {
            continue;
        }
        // the recovered delta must reproduce the model's span
        if (!build_quadrics(out).same_span(m)) continue;
        return out;
    }
    return std::nullopt;
}


BadPrimeReport bad_primes(const QuadricModel& m, const std::vector<Int>& hints,
                          const EtaleElement* delta, long scan_bound) {
    std::vector<Int> acc = hints;
    acc.push_back(2);  // the Jacobian criterion says nothing in characteristic 2
    for (uint64_t p : nt::primes_below((uint64_t)scan_bound + 1)) {
        if (p == 2) continue;
        FiberReport rep = enumerate_fiber(m, Int(p));
        if (rep.singular_count > 0) acc.push_back(Int(p));
    }
    if (delta) {
        const PolyQ& f = delta->parent.f;
        Rat disc = PolyQ::resultant(f, f.derivative());
        Rat nrm = norm_to_base(*delta);
        for (const Rat& v : {disc, nrm}) {
            for (const Int& part : {Int(v.get_num()), Int(v.get_den())})
                for (auto& [q, e] : nt::factor(abs(part))) acc.push_back(q);
        }
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    BadPrimeReport out;
    out.primes = std::move(acc);
    out.method = hints.empty() ? "heuristic" : "hints-confirmed";
    return out;
}

}  // namespace obstrukt
