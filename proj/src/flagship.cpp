#include "obstrukt/flagship.hpp"

#include <stdexcept>

namespace obstrukt::flagship {

namespace {

PolyQ poly(std::initializer_list<long> asc) {
    std::vector<Rat> c;
    for (long a : asc) c.emplace_back(a);
    return PolyQ(c);
}

Curve make_curve() {
    Curve c;
    c.factors = {poly({1, -5, 1}), poly({10, -7, 0, 1}), poly({1, 1})};
    c.f = c.factors[0] * c.factors[1] * c.factors[2];
    c.n = 1;
    c.validate();
    return c;
}

QuadricModel make_model() {
    // lexicographic monomial order a0^2, a0a1, ..., a0a5, a1^2, ..., a5^2
    QuadricModel m;
    m.q[0].c = {-377,   -1604,  -4310, -9600,  -14130, -24100, -2155,
                -9600,  -14130, -24100, 3002,  -7065,  -24100, 3002,
                -3752,  1501,   -3752, 380254, 190127, 505356, 2697585};
    m.q[1].c = {353,     1053,   3820,    12135,   16210,  49701,   1910,
                12135,   16210,  49701,   -7880,   8105,   49701,   -7880,
                197631,  -3940,  197631,  -507830, -253915, 1686873, -2233480};
    m.q[2].c = {1300,    6321,    17920,   34505,   63708,    62335,    8960,
                34505,   63708,   62335,   90560,   31854,    62335,    90560,
                -243597, 45280,   -243597, -202262, -101131,  -3623209, -1919025};
    m.constructed = false;
    return m;
}

}  // namespace

const Curve& curve() {
    static const Curve c = make_curve();
    return c;
}

const QuadricModel& model() {
    static const QuadricModel m = make_model();
    return m;
}

const PolyQ& delta_transcribed() {
    static const PolyQ d = poly({-12308, -9086, 2061, -5200, -706, 377}) * Rat(-7, 2965);
    return d;
}

const EtaleElement& delta() {
    static const EtaleElement d = [] {
        auto rec = recover_delta_from_model(curve(), model(), Rat(-1), Rat(-7));
        if (!rec) throw std::runtime_error("flagship delta recovery failed");
        return *rec;
    }();
    return d;
}

// matching up to the scaling gauge: the spans of the quadrics agree even
// though the prefactor is off
bool transcribed_delta_matches() {
    EtaleElement t{delta_transcribed(), curve()};
    return build_quadrics(t).same_span(model());
}

const Rat& c_value() {
    static const Rat c = delta().rep.eval(Rat(-1));
    return c;
}

const std::vector<Int>& bad_prime_hints() {
    static const std::vector<Int> ps = {2, 3, 7, 83, 739};
    return ps;
}

}  // namespace obstrukt::flagship
