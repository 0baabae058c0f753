#include "obstrukt/lattice.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace obstrukt {

LineIndex::LineIndex(unsigned raw) {
    if (raw > 63) throw std::invalid_argument("line label out of range");
    label = std::min(raw, raw ^ 63u);
}

LineIndex LineIndex::from_bits(const std::array<int, 6>& s) {
    unsigned raw = 0;
    for (int i = 0; i < 6; i++) raw = 2 * raw + (unsigned)(s[i] & 1);
    return LineIndex(raw);
}

std::array<int, 6> LineIndex::bits() const {
    std::array<int, 6> s{};
    for (int i = 0; i < 6; i++) s[i] = (int)((label >> (5 - i)) & 1u);
    return s;
}

int intersection_number(LineIndex a, LineIndex b) {
    int d = std::popcount(a.label ^ b.label);
    if (d == 0 || d == 6) return -2;
    if (d == 1 || d == 5) return 1;
    return 0;
}

void Divisor::add(LineIndex s, long m) {
    long& v = mult[s.label];
    v += m;
    if (v == 0) mult.erase(s.label);
}

long Divisor::coeff(LineIndex s) const {
    auto it = mult.find(s.label);
    return it == mult.end() ? 0 : it->second;
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (auto& [l, m] : o.mult) r.add(LineIndex(l), m);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
    Divisor r = *this;
    for (auto& [l, m] : o.mult) r.add(LineIndex(l), -m);
    return r;
}

Divisor Divisor::operator-() const {
    Divisor r;
    for (auto& [l, m] : mult) r.mult[l] = -m;
    return r;
}

std::vector<Int> Divisor::vec32() const {
    std::vector<Int> v(32, Int(0));
    for (auto& [l, m] : mult) v[l] = m;
    return v;
}

std::string Divisor::str() const {
    if (mult.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [l, m] : mult) {
        if (m > 0 && !first) os << "+";
        if (m == -1)
            os << "-";
        else if (m != 1)
            os << m;
        os << "L" << l;
        first = false;
    }
    return os.str();
}

LineLattice gram_and_rank() {
    LineLattice L;
    L.gram = ZMat(32, 32);
    for (int i = 0; i < 32; i++)
        for (int j = 0; j < 32; j++)
            L.gram(i, j) = intersection_number(LineIndex((unsigned)i), LineIndex((unsigned)j));
    SmithForm s = smith_form(L.gram);
    L.rank = s.rank;
    L.u_ = s.U;
    L.d_.assign(s.d.begin(), s.d.begin() + s.rank);
    L.basis = ZMat(32, s.rank);
    for (int j = 0; j < s.rank; j++)
        for (int i = 0; i < 32; i++) L.basis(i, j) = s.V(i, j);
    L.gram_basis = L.basis.transposed() * (L.gram * L.basis);
    return L;
}

// With U*Gram*V = diag(d), the image lattice Gram*Z^32 has basis the first
// rank columns of U^-1 scaled by d_i, and w_i = (column i of V) maps to the
// i-th basis vector.  So the coordinates of [v] solve d_i x_i = (U*Gram*v)_i,
// and the remaining entries of U*Gram*v must vanish.
std::vector<Int> LineLattice::class_coords(const std::vector<Int>& v32) const {
    if ((int)v32.size() != 32) throw std::invalid_argument("divisor vector must have length 32");
    std::vector<Int> y = u_.apply(gram.apply(v32));
    std::vector<Int> x(rank);
    for (int i = 0; i < 32; i++) {
        if (i < rank) {
            Int q = y[i] / d_[i];
            if (q * d_[i] != y[i]) throw std::logic_error("non-integral class coordinate");
            x[i] = q;
        } else if (y[i] != 0) {
            throw std::logic_error("pairing vector outside the basis image");
        }
    }
    return x;
}

std::vector<Int> LineLattice::class_coords(const Divisor& d) const { return class_coords(d.vec32()); }

Int LineLattice::pair(const Divisor& a, const Divisor& b) const {
    Int s = 0;
    for (auto& [la, ma] : a.mult)
        for (auto& [lb, mb] : b.mult)
            s += Int(ma) * Int(mb) * intersection_number(LineIndex(la), LineIndex(lb));
    return s;
}

bool LineLattice::same_class(const Divisor& a, const Divisor& b) const {
    std::vector<Int> v = (a - b).vec32();
    for (const Int& y : gram.apply(v))
        if (y != 0) return false;
    return true;
}

Divisor hyperplane_divisor(const std::array<int, 3>& I, const std::array<int, 3>& B) {
    std::array<bool, 7> seen{};
    for (int i : I) {
        if (i < 1 || i > 6 || seen[i]) throw std::invalid_argument("positions must be distinct in 1..6");
        seen[i] = true;
    }
    Divisor e;
    for (unsigned raw = 0; raw < 64; raw++) {
        bool match = true;
        for (int j = 0; j < 3; j++)
            if (((raw >> (6 - I[j])) & 1u) != (unsigned)(B[j] & 1)) match = false;
        if (match) e.add(LineIndex(raw), 1);
    }
    if (e.mult.size() != 8) throw std::logic_error("hyperplane section must have 8 classes");
    return e;
}

}  // namespace obstrukt
