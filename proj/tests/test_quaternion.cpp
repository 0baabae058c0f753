#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "obstrukt/cohomology.hpp"
#include "obstrukt/flagship.hpp"
#include "obstrukt/quaternion.hpp"

using namespace obstrukt;
using Elem = Tower::Elem;

namespace {

// expected coefficients, derived once from an independent straight-line
// evaluation of the whole construction and frozen
const char* kP6Q6 =
    "8 -2 -12 -72 -334 -1612 1 -2 2 -2 2 8 68 338 1608 176 1678 8052 4033 38638 92576";

const char* kF126 = "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 
    "0 0 0 0 0 0 0 -45573504768235874577415047875383864136984682433339122 
    "-711912750501320117362695920608699617162518022602510694 
    "-3676465532896087748088036081631681606618191554005502646 
    "-6557483662634514443859287939436965615795613310589609538 0 0 0 0 0 0 0 0 
    "-1399625441909734768497891482342043143468869024926000 
    "6957967957013481247578247181161279105422672161174955 
    "13661472605478451191651787175540057241378907269685350 
    "151022474324594906256546638182982154521298380569228410 
    "22195083238215270042516433697367035873553705277394400 
    "352343171465944553914242049463764733539160448446548500 
    "1398233247486191110207746779748819207616210362346278480 
    "21740122944604644816274887180547339299715261154499700 
    "-59302631900115713485397373722807769431460103232727120 
    "497510710457269218797638143454967027719380735060953100 
    "-1016736101278132268107000907469460834316371521231148320 
    "-33564587966414913546347156063236562867841732061754880 
    "-838577023460807275152521023594917508083494675715325560 
    "671896002556579752844019127013687185500506565931405960 
    "3988101128103572577122494740221643142825485824955671550 
    "-12893347964675544077877947948027126548229120932416524460 
    "16903402243186187767616905684324440414217721025042547890 
    "206799298284219259829546915379565520714075419169187130 
    "-427191890949439103370088074334688784315773699552971020 
    "4788326590434131020611722690555941133838504054805501350 
    "-3490289346779194616666400051997622423194202006134565742 
    "-1466760396544239017296573676274399955114919204574545496 
    "25208707624708690525001518746563693841539243719498570278 
    "10539022989760106101613349351589729256236341076231601102 
    "-52339124012660747277502018357698071146058595536512592688 
    "46279188611894402839566016198769588048467285288460593770 
    "-71639887079686694709994646771317759587856239639479397844 
    "13259859312060696629679704643047752531793312424029295 
    "60536140775080676993774668004681255460741938285019160 
    "211916384704059397776372965564537625568749048917284740 
    "94224733160172693288325751230519222245988928797785100 
    "-94666900811385230869742252650985299711765971394351260 
    "2065965421254889649142961741276325253704419144463494440 
    "-2664723827097605936126755146016145842860443106696210720 
    "754159462541128394216985833008976309075202433499586324 
    "16900094444925998472213622571327780607770316383984641272 
    "-423317110491872679381001126674532858887551405410693326 
    "-401460071503906213589960977891508052747606685263263400 
    "-1448071069580149624048466437610038270038039057287767560 
    "-9216617349379594280986267424211636541054479116354143920 
    "19261068598660677585331125328056367120505785102468955262 
    "-62584216910992443785061831547096174399988760004033395564 
    "-85144438343388199303839229949188127824881759605484793698 
    "-4272331594981515351069869615222769185709844521297681684 
    "191964822796480627060145405675135494630993098211427517942 
    "-379164242732571225015013018932128940050845464934010671092 
    "-555504531770241859001679471073679693609388294224641839966 
    "1087134238928496242462205235387092024242795512605036775 
    "-3273067697547263732308440076436752473501506187572599770 
    "43136091473207964545817445255417193073133723134529394680 
    "-1916729478075233542323246300751917676837323980670144402 
    "-48387543313372861397322102566120408473317776400986349756 
    "667536542632643617662924464214378084710199857715712047753 
    "57762756049848184905567078278913524518800759873827362934 
    "-222851752594907814486154141167781287081634585029015162258 
    "-89043316204136248914631703528111662413748594045449514296 
    "4731098529688093697547304723312274542738121086790162602340 
    "-23131706360698637136926104443162424998265763529096185430 
    "635365170207574128029092892296864845607919057882604714170 
    "-1762204965674252737747383537623056119790101578140653689400 
    "425758951470036587471506872756634744253599075470754773990 
    "14560285499904109529978721422825198194383857354451028958645";

std::vector<Int> parse_ints(const char* s) {
    std::istringstream in(s);
    std::vector<Int> out;
    std::string w;
    while (in >> w) out.emplace_back(w);
    return out;
}

const SplittingField& SF() {
    static SplittingField sf = splitting_field(flagship::curve(), flagship::delta(), 60);
    return sf;
}

const QuadricModel& M() { return flagship::model(); }

std::array<LinearFormPair, 3> build_345() {
    std::array<LinearFormPair, 3> pairs = {build_pq(SF(), M(), 3, 60), build_pq(SF(), M(), 4, 60),
                                           build_pq(SF(), M(), 5, 60)};
    return pairs;
}

const NormalizedSystem& NS() {
    static NormalizedSystem ns =
        condition3_normalize(SF(), M(), build_345(), build_pq(SF(), M(), 6, 60));
    return ns;
}

const AlgebraDescriptor& ALG() {
    static AlgebraDescriptor a = assemble_algebra(SF(), M(), NS());
    return a;
}

Elem eval_linear(const std::array<Elem, 6>& form, const std::array<Elem, 6>& x) {
    const Tower& T = SF().tower;
    Elem s = T.zero();
    for (int j = 0; j < 6; ++j) s = T.add(s, T.mul(form[j], x[j]));
    return s;
}

bool ball_contains(const CBall& a, const CBall& b) { return (a - b).contains_zero(); }

}  // namespace

TEST_CASE("splitting field carries all six roots and branches exactly") {
    const SplittingField& sf = SF();
    const Tower& T = sf.tower;
    CHECK(T.dim() == 96);
    CHECK(T.levels() == 6);

    for (int i = 0; i < 6; ++i) {
        CHECK(T.is_zero(T.sub(T.mul(sf.z[i], sf.z[i]), sf.t[i])));
        // r_i is a root of f
        Elem v = T.zero();
        for (int j = 6; j >= 0; --j) v = T.add(T.mul(v, sf.r[i]), T.from_rat(sf.curve.f[j]));
        CHECK(T.is_zero(v));
    }

    Rat t6;
    REQUIRE(T.is_rational(sf.t[5], &t6));
    CHECK(t6 == Rat(-7));

    // z1 = alpha + beta r1 with the exact (alpha, beta) of the root system
    Elem z1 = T.add(T.from_rat(sf.rs.alpha), T.scale(sf.r[0], sf.rs.beta));
    CHECK(T.is_zero(T.sub(z1, sf.z[0])));

    // product of the branches is the recorded rational
    Elem prod = T.one();
    for (int i = 0; i < 6; ++i) prod = T.mul(prod, sf.z[i]);
    Rat pr;
    REQUIRE(T.is_rational(prod, &pr));
    CHECK(pr == sf.rs.product);

    // the embedding reproduces the numeric root system, branch signs included
    for (int i = 0; i < 6; ++i) {
        CHECK(ball_contains(sf.embed(sf.r[i]), sf.rs.r[i]));
        CHECK(ball_contains(sf.embed(sf.z[i]), sf.rs.z[i]));
    }
}

TEST_CASE("exact spanning points lie on the surface and match the numeric ones") {
    const SplittingField& sf = SF();
    const Tower& T = sf.tower;
    for (unsigned lbl = 0; lbl < 32; ++lbl) {
        LineIndex s(lbl);
        auto pts = span_points_exact(sf, s);
        std::array<Elem, 6> mid;
        for (int j = 0; j < 6; ++j) mid[j] = T.add(pts[0][j], pts[1][j]);
        for (int qi = 0; qi < 3; ++qi) {
            for (const auto& pt : {pts[0], pts[1], mid}) {
                Elem v = T.zero();
                int c = 0;
                for (int j = 0; j < 6; ++j)
                    for (int k = j; k < 6; ++k, ++c)
                        v = T.add(v, T.scale(T.mul(pt[j], pt[k]), Rat(M().q[qi].c[c])));
                CHECK(T.is_zero(v));
            }
        }
        LineSpan numeric = line_span(sf.rs, s);
        for (int j = 0; j < 6; ++j) {
            CHECK(ball_contains(sf.embed(pts[0][j]), numeric.pts[0][j]));
            CHECK(ball_contains(sf.embed(pts[1][j]), numeric.pts[1][j]));
        }
    }
}

TEST_CASE("hyperplane forms vanish on exactly their eight lines") {
    const SplittingField& sf = SF();
    const Tower& T = sf.tower;
    for (int i : {3, 4, 5, 6}) {
        LinearFormPair pair = build_pq(sf, M(), i, 60);
        CHECK(pair.index == i);
        CHECK(pair.max_residual < 1e-25);
        Divisor dp = hyperplane_divisor({1, 2, i}, {0, 0, 0});
        Divisor dq = hyperplane_divisor({1, 2, i}, {0, 0, 1});
        int p_zero = 0, q_zero = 0;
        for (unsigned lbl = 0; lbl < 32; ++lbl) {
            LineIndex s(lbl);
            auto pts = span_points_exact(sf, s);
            bool pz = T.is_zero(eval_linear(pair.p, pts[0])) &&
                      T.is_zero(eval_linear(pair.p, pts[1]));
            bool qz = T.is_zero(eval_linear(pair.q, pts[0])) &&
                      T.is_zero(eval_linear(pair.q, pts[1]));
            CHECK(pz == (dp.coeff(s) == 1));
            CHECK(qz == (dq.coeff(s) == 1));
            p_zero += pz;
            q_zero += qz;
        }
        CHECK(p_zero == 8);
        CHECK(q_zero == 8);
    }
}

TEST_CASE("p6 q6 is a rational quadratic form with the expected primitive part") {
    const SplittingField& sf = SF();
    const Tower& T = sf.tower;
    LinearFormPair p6 = build_pq(sf, M(), 6, 60);
    // the coefficient of x_j x_k in p6 q6 must be rational for every (j,k)
    std::vector<Rat> coeffs;
    for (int j = 0; j < 6; ++j)
        for (int k = j; k < 6; ++k) {
            Elem v = T.add(T.mul(p6.p[j], p6.q[k]), T.mul(p6.p[k], p6.q[j]));
            if (j == k) v = T.mul(p6.p[j], p6.q[j]);
            Rat r;
            REQUIRE(T.is_rational(v, &r));
            coeffs.push_back(r);
        }
    // clear to the primitive integer vector
    Int den = 1;
    for (const Rat& r : coeffs) den = lcm(den, Int(r.get_den()));
    Int gcd_all = 0;
    for (const Rat& r : coeffs) gcd_all = gcd(gcd_all, Int(r.get_num() * den / r.get_den()));
    auto expected = parse_ints(kP6Q6);
    // sign convention of the frozen vector: leading entry positive
    Rat lead = coeffs[0];
    for (size_t c = 0; c < coeffs.size(); ++c) {
        Rat prim = coeffs[c] * Rat(den) / Rat(gcd_all);
        if (lead < 0) prim = -prim;
        CHECK(Rat(expected[c]) == prim);
    }
}

TEST_CASE("normalization finds the squarefree norm factor 1/7") {
    const NormalizedSystem& ns = NS();
    CHECK(ns.n == Rat(1, 7));
    REQUIRE(ns.c_coords[0].size() == 3);
    CHECK(ns.c_coords[0][0] == Rat(58, 63));
    CHECK(ns.c_coords[0][1] == Rat(-46, 3969));
    CHECK(ns.c_coords[0][2] == Rat(19, 250047));
    REQUIRE(ns.nf6.size() == 21);
    CHECK(ns.nf6[0] == 0);
    CHECK(ns.nf6[1] == 0);
    CHECK(ns.nf6[2] == 0);
    CHECK(ns.nf6[3] == Rat(-10854, 83));
}

TEST_CASE("normalized products agree at every point of every line") {
    const SplittingField& sf = SF();
    const Tower& T = sf.tower;
    const NormalizedSystem& ns = NS();
    for (unsigned lbl = 0; lbl < 32; ++lbl) {
        auto pts = span_points_exact(sf, LineIndex(lbl));
        // a few points of the span, including ones off the two generators
        std::vector<std::array<Elem, 6>> sample = {pts[0], pts[1]};
        for (long a : {1L, 2L, -3L}) {
            std::array<Elem, 6> x;
            for (int j = 0; j < 6; ++j) x[j] = T.add(pts[0][j], T.scale(pts[1][j], Rat(a)));
            sample.push_back(x);
        }
        for (const auto& x : sample) {
            Elem v3 = T.mul(eval_linear(ns.pairs[0].p, x), eval_linear(ns.pairs[0].q, x));
            Elem v4 = T.mul(eval_linear(ns.pairs[1].p, x), eval_linear(ns.pairs[1].q, x));
            Elem v5 = T.mul(eval_linear(ns.pairs[2].p, x), eval_linear(ns.pairs[2].q, x));
            CHECK(T.is_zero(T.sub(v3, v4)));
            CHECK(T.is_zero(T.sub(v4, v5)));
        }
    }
}

TEST_CASE("assembled algebra matches the frozen integer quartic") {
    const AlgebraDescriptor& a = ALG();
    CHECK(a.c == Rat(-7));
    auto expected = parse_ints(kF126);
    REQUIRE(expected.size() == 126);
    for (int i = 0; i < 126; ++i) CHECK(a.F.c[i] == expected[i]);

    // G is the square of the primitive p6 q6
    auto pq = parse_ints(kP6Q6);
    QuarticForm gsq{};
    int idx[6][6];
    {
        int c = 0;
        for (int j = 0; j < 6; ++j)
            for (int k = j; k < 6; ++k, ++c) idx[j][k] = idx[k][j] = c;
    }
    for (int j = 0; j < 6; ++j)
        for (int k = j; k < 6; ++k)
            for (int l = 0; l < 6; ++l)
                for (int m = l; m < 6; ++m)
                    gsq.c[QuarticForm::index({j, k, l, m})] += pq[idx[j][k]] * pq[idx[l][m]];
    CHECK(a.G == gsq);
}

TEST_CASE("assembly is deterministic and symmetric in the index labels") {
    const AlgebraDescriptor& a = ALG();
    AlgebraDescriptor again = assemble_algebra(SF(), M(), NS());
    CHECK(a.F == again.F);
    CHECK(a.G == again.G);

    auto pairs = build_345();
    std::array<LinearFormPair, 3> rotated = {pairs[1], pairs[2], pairs[0]};
    NormalizedSystem ns2 =
        condition3_normalize(SF(), M(), rotated, build_pq(SF(), M(), 6, 60));
    AlgebraDescriptor b = assemble_algebra(SF(), M(), ns2);
    CHECK(a.F == b.F);
    CHECK(a.G == b.G);
}

TEST_CASE("reduction of F mod 7 pins the scaling") {
    const AlgebraDescriptor& a = ALG();
    FiberReport fib = enumerate_fiber(M(), 7);
    CHECK(fib.points.size() == 71);
    int zero = 0;
    std::array<int, 7> hist = {};
    for (const auto& P : fib.points) {
        uint64_t v = a.F.eval_mod(P.x, 7);
        if (v == 0)
            ++zero;
        else
            ++hist[v];
    }
    CHECK(zero == 15);
    // the 56 nonzero values are all squares mod 7
    CHECK(hist[1] == 20);
    CHECK(hist[2] == 14);
    CHECK(hist[3] == 0);
    CHECK(hist[4] == 22);
    CHECK(hist[5] == 0);
    CHECK(hist[6] == 0);
}

TEST_CASE("quartic form evaluation is homogeneous and consistent mod p") {
    const AlgebraDescriptor& a = ALG();
    std::array<Int, 6> x = {3, -1, 4, 1, -5, 9};
    std::array<Int, 6> x2;
    for (int i = 0; i < 6; ++i) x2[i] = 2 * x[i];
    CHECK(a.F.eval(x2) == 16 * a.F.eval(x));

    Int big = a.F.eval(x);
    uint64_t p5 = 3939040643ull;  // 83^5
    std::array<uint64_t, 6> xm;
    for (int i = 0; i < 6; ++i) xm[i] = Int(((x[i] % Int(p5)) + Int(p5)) % Int(p5)).get_ui();
    Int expect = ((big % Int(p5)) + Int(p5)) % Int(p5);
    CHECK(Int(a.F.eval_mod(xm, p5)) == expect);
}

TEST_CASE("membership certificate: F cuts sixteen lines swapped by conjugation") {
    MembershipReport rep = verify_brauer_membership(SF(), M(), ALG(), NS());
    CHECK(rep.verified);
    CHECK(rep.lines_on_surface);
    CHECK(rep.f_lines.size() == 16);
    CHECK(rep.n_lines.size() == 8);
    CHECK(rep.sigma_n_lines.size() == 8);
    CHECK(rep.conjugation_swaps_families);
    CHECK(rep.f_nonzero_off_divisor);
    CHECK(rep.g_square);

    // negative control: a corrupted quartic is rejected
    AlgebraDescriptor bad = ALG();
    bad.F.c[0] += 1;
    MembershipReport rep2 = verify_brauer_membership(SF(), M(), bad, NS());
    CHECK(!rep2.verified);
}

TEST_CASE("seeded real point lands on the surface and F is positive there") {
    auto pt = real_surface_point(M());
    REQUIRE(pt.has_value());
    double res = 0;
    for (int qi = 0; qi < 3; ++qi) {
        double v = 0;
        int c = 0;
        for (int j = 0; j < 6; ++j)
            for (int k = j; k < 6; ++k, ++c)
                v += M().q[qi].c[c].get_d() * (*pt)[j] * (*pt)[k];
        res = std::max(res, std::abs(v));
    }
    CHECK(res < 1e-10);
    // exact evaluation at a nearby rational point
    std::array<Rat, 6> xr;
    for (int i = 0; i < 6; ++i) {
        xr[i] = Rat(Int((*pt)[i] * (1ll << 40)), Int(1ll << 40));
        xr[i].canonicalize();
    }
    CHECK(ALG().F.eval(xr) > 0);
}
