#include "obstrukt/tower.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace obstrukt {

namespace {

Rat rat_inv(const Rat& a) {
    if (a == 0) throw std::domain_error("division by zero in tower arithmetic");
    Rat r(a.get_den(), a.get_num());
    r.canonicalize();
    return r;
}

}  // namespace

int Tower::subdim(int level) const {
    int d = 1;
    for (int i = 0; i < level; ++i) d *= levels_[i].deg;
    return d;
}

void Tower::push_level(int degree, std::vector<Elem> minpoly_low) {
    if (degree < 2) throw std::invalid_argument("tower level must have degree at least 2");
    if ((int)minpoly_low.size() != degree)
        throw std::invalid_argument("minimal polynomial needs exactly `degree` lower coefficients");
    for (const auto& c : minpoly_low)
        if ((int)c.size() != dim_)
            throw std::invalid_argument("minimal polynomial coefficient has wrong dimension");
    levels_.push_back({degree, std::move(minpoly_low)});
    dim_ *= degree;
}

Tower::Elem Tower::from_rat(const Rat& a) const {
    Elem e(dim_, Rat(0));
    e[0] = a;
    return e;
}

Tower::Elem Tower::gen(int level) const {
    Elem e(dim_, Rat(0));
    e[subdim(level)] = 1;
    return e;
}

Tower::Elem Tower::lift(const Elem& partial) const {
    Elem e(dim_, Rat(0));
    if ((int)partial.size() > dim_) throw std::invalid_argument("lift: element too large");
    for (size_t i = 0; i < partial.size(); ++i) e[i] = partial[i];
    return e;
}

Tower::Elem Tower::add(const Elem& a, const Elem& b) const {
    Elem r(a);
    for (int i = 0; i < dim_; ++i) r[i] += b[i];
    return r;
}

Tower::Elem Tower::sub(const Elem& a, const Elem& b) const {
    Elem r(a);
    for (int i = 0; i < dim_; ++i) r[i] -= b[i];
    return r;
}

Tower::Elem Tower::neg(const Elem& a) const {
    Elem r(a);
    for (int i = 0; i < dim_; ++i) r[i] = -r[i];
    return r;
}

Tower::Elem Tower::scale(const Elem& a, const Rat& s) const {
    Elem r(a);
    for (int i = 0; i < dim_; ++i) r[i] *= s;
    return r;
}

// schoolbook product of the degree-d chunks over the sub-tower, then reduction
// by the monic minimal polynomial
void Tower::mul_rec(int level, const Rat* a, const Rat* b, Rat* out, Rat* scratch) const {
    if (level < 0) {
        out[0] += a[0] * b[0];
        return;
    }
    const Level& L = levels_[level];
    int s = subdim(level);
    int d = L.deg;
    // scratch: (2d-1) chunks of size s for the long product, plus whatever
    // the recursion needs beyond them
    Rat* prod = scratch;
    int prod_len = (2 * d - 1) * s;
    for (int i = 0; i < prod_len; ++i) prod[i] = 0;
    Rat* sub_scratch = scratch + prod_len;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) mul_rec(level - 1, a + i * s, b + j * s, prod + (i + j) * s, sub_scratch);
    for (int k = 2 * d - 2; k >= d; --k) {
        // x^k = x^(k-d) * (x^d) = -x^(k-d) * sum mp[j] x^j
        for (int j = 0; j < d; ++j) {
            // prod[(k-d+j)*s ..] -= prod[k*s ..] * mp[j]
            for (int i = 0; i < s; ++i) scratch[prod_len + i] = 0;
            mul_rec(level - 1, prod + k * s, L.mp[j].data(), scratch + prod_len, sub_scratch + s);
            for (int i = 0; i < s; ++i) prod[(k - d + j) * s + i] -= scratch[prod_len + i];
        }
    }
    for (int i = 0; i < d * s; ++i) out[i] += prod[i];
}

Tower::Elem Tower::mul(const Elem& a, const Elem& b) const {
    Elem out(dim_, Rat(0));
    // generous scratch: sum over levels of (2d-1)*s + s, bounded by 4*dim per level
    std::vector<Rat> scratch(4 * dim_ * (levels_.size() + 1), Rat(0));
    mul_rec((int)levels_.size() - 1, a.data(), b.data(), out.data(), scratch.data());
    return out;
}

// extended Euclid for a as a polynomial over the sub-tower, modulo the level's
// minimal polynomial
std::vector<Rat> Tower::inv_rec(int level, const std::vector<Rat>& a) const {
    if (level < 0) return {rat_inv(a[0])};
    const Level& L = levels_[level];
    int s = subdim(level);
    int d = L.deg;

    using Poly = std::vector<std::vector<Rat>>;  // chunks over sub-tower, ascending
    auto chunk_is_zero = [&](const std::vector<Rat>& c) {
        for (const Rat& x : c)
            if (x != 0) return false;
        return true;
    };
    auto trim = [&](Poly& p) {
        while (!p.empty() && chunk_is_zero(p.back())) p.pop_back();
    };
    auto sub_mul = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
        std::vector<Rat> out(s, Rat(0));
        std::vector<Rat> scratch(4 * s * (level + 1), Rat(0));
        mul_rec(level - 1, x.data(), y.data(), out.data(), scratch.data());
        return out;
    };
    auto poly_mul = [&](const Poly& p, const Poly& q) {
        if (p.empty() || q.empty()) return Poly{};
        Poly out(p.size() + q.size() - 1, std::vector<Rat>(s, Rat(0)));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < q.size(); ++j) {
                auto t = sub_mul(p[i], q[j]);
                for (int k = 0; k < s; ++k) out[i + j][k] += t[k];
            }
        trim(out);
        return out;
    };
    auto poly_sub = [&](Poly p, const Poly& q) {
        if (q.size() > p.size()) p.resize(q.size(), std::vector<Rat>(s, Rat(0)));
        for (size_t i = 0; i < q.size(); ++i)
            for (int k = 0; k < s; ++k) p[i][k] -= q[i][k];
        trim(p);
        return p;
    };
    // divrem with remainder; leading coefficient of the divisor is inverted
    // in the sub-tower
    auto poly_divrem = [&](Poly num, const Poly& den, Poly* quo) {
        Poly q;
        if (!den.empty()) {
            auto lead_inv = inv_rec(level - 1, den.back());
            while (num.size() >= den.size()) {
                auto c = sub_mul(num.back(), lead_inv);
                size_t shift = num.size() - den.size();
                if (q.size() < shift + 1) q.resize(shift + 1, std::vector<Rat>(s, Rat(0)));
                for (int k = 0; k < s; ++k) q[shift][k] += c[k];
                for (size_t j = 0; j < den.size(); ++j) {
                    auto t = sub_mul(c, den[j]);
                    for (int k = 0; k < s; ++k) num[shift + j][k] -= t[k];
                }
                num.pop_back();
                trim(num);
                if (num.empty()) break;
            }
        }
        if (quo) *quo = q;
        return num;
    };

    Poly m(d + 1, std::vector<Rat>(s, Rat(0)));
    for (int j = 0; j < d; ++j) m[j] = L.mp[j];
    m[d][0] = 1;
    Poly r0 = m, r1;
    for (int i = 0; i < d; ++i) r1.push_back(std::vector<Rat>(a.begin() + i * s, a.begin() + (i + 1) * s));
    trim(r1);
    if (r1.empty()) throw std::domain_error("division by zero in tower arithmetic");
    Poly t0{}, t1{std::vector<Rat>(s, Rat(0))};
    t1[0][0] = 1;
    while (!(r1.size() == 1)) {
        Poly q;
        Poly r2 = poly_divrem(r0, r1, &q);
        if (r2.empty() && r1.size() > 1)
            throw std::domain_error("tower level is not a field: non-invertible element");
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        if (r1.empty()) throw std::domain_error("tower level is not a field: non-invertible element");
    }
    // r1 is a unit of the sub-tower: a * t1 = r1 mod m
    auto unit_inv = inv_rec(level - 1, r1[0]);
    std::vector<Rat> out(d * s, Rat(0));
    for (size_t i = 0; i < t1.size(); ++i) {
        auto c = sub_mul(t1[i], unit_inv);
        for (int k = 0; k < s; ++k) out[i * s + k] = c[k];
    }
    return out;
}

Tower::Elem Tower::inv(const Elem& a) const { return inv_rec((int)levels_.size() - 1, a); }

Tower::Elem Tower::pow(Elem a, long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool Tower::is_zero(const Elem& a) const {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

bool Tower::is_rational(const Elem& a, Rat* out) const {
    for (int i = 1; i < dim_; ++i)
        if (a[i] != 0) return false;
    if (out) *out = a[0];
    return true;
}

Tower::Elem Tower::conj_sqrt(int level, const Elem& a) const {
    const Level& L = levels_[level];
    if (L.deg != 2 || !std::all_of(L.mp[1].begin(), L.mp[1].end(), [](const Rat& x) { return x == 0; }))
        throw std::invalid_argument("conj_sqrt needs a pure square-root level");
    int s = subdim(level);
    Elem r(a);
    for (int i = 0; i < dim_; ++i)
        if ((i / s) % 2 == 1) r[i] = -r[i];
    return r;
}

std::optional<std::vector<Rat>> Tower::in_subfield(const Elem& a, const Elem& b, int deg) const {
    // columns: powers of b; Gaussian elimination on the (dim x deg) system
    std::vector<Elem> pows(deg, one());
    for (int k = 1; k < deg; ++k) pows[k] = mul(pows[k - 1], b);
    std::vector<std::vector<Rat>> M(dim_, std::vector<Rat>(deg + 1, Rat(0)));
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < deg; ++k) M[i][k] = pows[k][i];
        M[i][deg] = a[i];
    }
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < deg && row < dim_; ++col) {
        int pr = -1;
        for (int i = row; i < dim_; ++i)
            if (M[i][col] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[row], M[pr]);
        Rat inv = rat_inv(M[row][col]);
        for (int j = col; j <= deg; ++j) M[row][j] *= inv;
        for (int i = 0; i < dim_; ++i)
            if (i != row && M[i][col] != 0) {
                Rat f = M[i][col];
                for (int j = col; j <= deg; ++j) M[i][j] -= f * M[row][j];
            }
        pivot_col.push_back(col);
        ++row;
    }
    // inconsistent rows mean a is not in the span
    for (int i = row; i < dim_; ++i)
        if (M[i][deg] != 0) return std::nullopt;
    std::vector<Rat> coords(deg, Rat(0));
    for (int i = 0; i < row; ++i) coords[pivot_col[i]] = M[i][deg];
    return coords;
}

CBall Tower::embed(const Elem& a, const std::vector<CBall>& gen_images) const {
    if ((int)gen_images.size() != (int)levels_.size())
        throw std::invalid_argument("embed needs one generator image per level");
    mpfr_prec_t prec = gen_images.empty() ? 64 : gen_images[0].prec();
    // Horner from the outermost level inward
    std::function<CBall(int, int)> ev = [&](int level, int offset) -> CBall {
        if (level < 0) return CBall::from_rat(a[offset], prec);
        int s = subdim(level);
        int d = levels_[level].deg;
        CBall acc = ev(level - 1, offset + (d - 1) * s);
        for (int k = d - 2; k >= 0; --k) acc = acc * gen_images[level] + ev(level - 1, offset + k * s);
        return acc;
    };
    return ev((int)levels_.size() - 1, 0);
}

std::string Tower::str(const Elem& a) const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (int i = 0; i < dim_; ++i)
        if (a[i] != 0) {
            if (!first) os << ", ";
            os << i << ":" << a[i].get_str();
            first = false;
        }
    os << "]";
    return os.str();
}

}  // namespace obstrukt
