#include "gauss/composition.hpp"
#include "gauss/reduction.hpp"

#include <doctest.h>

#include <random>

using namespace gauss;

namespace {

const Int big_c = 332444;  // (1 + 997331) / 3

struct Pair {
    QuadraticForm f1, f2;
};

bool properly_primitive(const QuadraticForm & f)
{
    return gcd(gcd(f.a(), 2 * f.b()), f.c()) == 1;
}

// Two primitive forms of one random negative determinant, scrambled by proper maps.
// With `proper`, both also have gcd(a, 2b, c) = 1.
Pair random_pair(std::mt19937_64 & rng, bool scramble, bool proper = true)
{
    std::uniform_int_distribution<long> dets(-400, -2), small(-3, 3);
    while (true) {
        auto fs = enumerate_reduced_negative(dets(rng));
        std::vector<QuadraticForm> prim;
        for (const auto & f : fs)
            if (f.a() > 0 && is_primitive(f) && (!proper || properly_primitive(f)))
                prim.push_back(f);
        if (prim.empty())
            continue;
        QuadraticForm f1 = prim[rng() % prim.size()];
        QuadraticForm f2 = prim[rng() % prim.size()];
        if (scramble) {
            UnimodularMap t{small(rng), small(rng), small(rng), small(rng)};
            if (t.det() != 1)
                continue;
            f2 = transform(f2, t);
            if (f2.a() == 0)
                continue;
        }
        return {f1, f2};
    }
}

bool equivalent_up_to_sign(const QuadraticForm & f, const QuadraticForm & g)
{
    return properly_equivalent(f, g) || properly_equivalent(f, opposite(g));
}

void check_substitution(const QuadraticForm & f1, const QuadraticForm & f2, const GeneralComposition & g)
{
    const auto & s = g.subst;
    CHECK(s.k > 0);
    for (long x1 = -2; x1 <= 2; ++x1)
        for (long y1 = -2; y1 <= 2; ++y1)
            for (long x2 = -2; x2 <= 2; ++x2)
                for (long y2 = -2; y2 <= 2; ++y2)
                    CHECK(g.form(s.X(x1, y1, x2, y2), s.Y(x1, y1, x2, y2)) == f1(x1, y1) * f2(x2, y2));
}

}  // namespace

TEST_CASE("compose_same_det examples")
{
    CHECK(compose_same_det(QuadraticForm(10, 3, 11), QuadraticForm(15, 2, 7)) == QuadraticForm(6, 5, 21));
    CHECK(compose_same_det(QuadraticForm(1, 0, 85), QuadraticForm(2, 1, 43)) == QuadraticForm(2, 1, 43));
    CHECK(compose_same_det(QuadraticForm(3, 1, big_c), QuadraticForm(3, 1, big_c)) ==
          QuadraticForm(9, -2, 110815));
    CHECK_THROWS_AS(compose_same_det(QuadraticForm(1, 0, 85), QuadraticForm(1, 0, 86)), std::domain_error);
    CHECK_THROWS_AS(compose_same_det(QuadraticForm(0, 1, 3), QuadraticForm(1, 1, 2)), std::domain_error);
    CHECK_THROWS_AS(compose_same_det(QuadraticForm(2, 2, 6), QuadraticForm(1, 0, 2)), std::domain_error);
    // (2,1,154) is primitive but gcd(a, 2b, c) = 2
    CHECK_THROWS_AS(compose_same_det(QuadraticForm(2, 1, 154), QuadraticForm(2, -1, 154)), std::domain_error);
    auto g = compose_general(QuadraticForm(2, 1, 154), QuadraticForm(2, -1, 154));
    CHECK(g.form.determinant() == 4 * -307);
}

TEST_CASE("compose_general reproduces the shortcut example")
{
    QuadraticForm f1(10, 3, 11), f2(15, 2, 7);
    auto g = compose_general(f1, f2);
    CHECK(g.form == QuadraticForm(6, 5, 21));
    CHECK(g.subst.k == 1);
    check_substitution(f1, f2, g);

    QuadraticForm pr(1, 0, 85);
    auto gp = compose_general(pr, pr);
    CHECK(properly_equivalent(gp.form, pr));
    check_substitution(pr, pr, gp);

    Quad zero{Int(0), Int(0), Int(0), Int(0)};
    CHECK_THROWS_AS(compose_general(f1, f2, zero), std::domain_error);
    CHECK_THROWS_AS(compose_general(QuadraticForm(1, 0, 1), QuadraticForm(1, 0, 2)), std::domain_error);
}

TEST_CASE("substitution minors and the footnote identities")
{
    std::mt19937_64 rng(401);
    for (int i = 0; i < 100; ++i) {
        auto [f1, f2] = random_pair(rng, true, i % 3 != 0);
        auto g = compose_general(f1, f2);
        const auto & s = g.subst;
        const auto & p = s.p;
        const auto & q = s.q;
        CHECK(s.P == p[0] * q[1] - q[0] * p[1]);
        CHECK(s.U == p[2] * q[3] - q[2] * p[3]);
        Int k = 0;
        for (const Int * x : {&s.P, &s.Q, &s.R, &s.S, &s.T, &s.U})
            k = gcd(k, *x);
        CHECK(s.k == k);

        // alpha a + 2 beta b + gamma c = m for each input form
        Int g1, g2;
        auto c1 = bezout_vector({f1.a(), 2 * f1.b(), f1.c()}, &g1);
        auto c2 = bezout_vector({f2.a(), 2 * f2.b(), f2.c()}, &g2);
        REQUIRE(g1 == s.m1);
        REQUIRE(g2 == s.m2);
        mpq_class lhs1 = c1[0] * s.P + c1[1] * (s.R - s.S) + c1[2] * s.U;
        mpq_class lhs2 = c2[0] * s.Q + c2[1] * (s.R + s.S) + c2[2] * s.T;
        CHECK(lhs1 == s.m1 * s.n2);
        CHECK(lhs2 == s.m2 * s.n1);
        CHECK(g.form.determinant() == s.D);
        if (properly_primitive(f1) && properly_primitive(f2))
            CHECK(s.D == f1.determinant());
        if (!properly_primitive(f1) && !properly_primitive(f2))
            CHECK(s.D == 4 * f1.determinant());
    }
}

TEST_CASE("bilinear identity on random pairs")
{
    std::mt19937_64 rng(402);
    for (int i = 0; i < 40; ++i) {
        auto [f1, f2] = random_pair(rng, true, i % 2 == 0);
        check_substitution(f1, f2, compose_general(f1, f2));
    }
    // other Q choices still give a valid composite of the same class
    for (int i = 0; i < 40; ++i) {
        auto [f1, f2] = random_pair(rng, false);
        std::uniform_int_distribution<long> qd(-3, 3);
        Quad Q{Int(qd(rng)), Int(qd(rng)), Int(qd(rng)), Int(qd(rng))};
        GeneralComposition g{QuadraticForm(1, 0, 1), {}};
        try {
            g = compose_general(f1, f2, Q);
        } catch (const std::domain_error &) {
            continue;  // Q annihilated every linear value
        }
        check_substitution(f1, f2, g);
        if (g.subst.k == 1 && g.form.a() > 0)
            CHECK(properly_equivalent(g.form, compose_general(f1, f2).form));
    }
}

TEST_CASE("B-congruences, integrality and determinant on random pairs")
{
    std::mt19937_64 rng(403);
    for (int i = 0; i < 500; ++i) {
        auto [f1, f2] = random_pair(rng, i % 2 == 1);
        if (!is_primitive(f2) || f2.a() <= 0)
            continue;
        QuadraticForm F = compose_same_det(f1, f2);
        const Int D = f1.determinant();
        const Int mu = gcd(gcd(f1.a(), f2.a()), f1.b() + f2.b());
        CHECK(F.determinant() == D);
        CHECK(F.a() * F.c() == F.b() * F.b() - D);
        CHECK(mod(F.b() - f1.b(), abs(f1.a()) / mu) == 0);
        CHECK(mod(F.b() - f2.b(), abs(f2.a()) / mu) == 0);
        CHECK(properly_equivalent(F, compose_general(f1, f2).form));
    }
}

TEST_CASE("other Bezout vectors move B by multiples of A")
{
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<long> t(-5, 5);
    for (int i = 0; i < 200; ++i) {
        auto [f1, f2] = random_pair(rng, true, i % 2 == 0);
        auto base = compose_general_raw(f1, f2, default_q());
        const Quad & q = base.subst.q;
        Quad alt = base.subst.bezout;
        // add random elements of the kernel of v -> sum v_i q_i
        for (int r = 0; r < 3; ++r) {
            int x = static_cast<int>(rng() % 4), y = static_cast<int>(rng() % 4);
            long s = t(rng);
            alt[x] += s * q[y];
            alt[y] -= s * q[x];
        }
        auto other = compose_general_raw(f1, f2, default_q(), &alt);
        CHECK(other.form.a() == base.form.a());
        CHECK(mod(other.form.b() - base.form.b(), abs(base.form.a())) == 0);
        CHECK(properly_equivalent(other.form, base.form));
        check_substitution(f1, f2, other);
    }
}

TEST_CASE("commutativity and identity for D = -85 and D = -161")
{
    for (long d : {-85L, -161L}) {
        std::vector<QuadraticForm> prim;
        for (const auto & f : enumerate_reduced_negative(d))
            if (f.a() > 0 && properly_primitive(f))
                prim.push_back(f);
        const QuadraticForm e(1, 0, -d);
        for (const auto & f : prim) {
            CHECK(properly_equivalent(compose_same_det(e, f), f));
            CHECK(properly_equivalent(compose_same_det(f, e), f));
            CHECK(properly_equivalent(compose_same_det(f, opposite(f)), e));
            for (const auto & g : prim)
                CHECK(properly_equivalent(compose_same_det(f, g), compose_same_det(g, f)));
        }
    }
}

TEST_CASE("prime-power composition")
{
    const QuadraticForm c1(3, 1, big_c);
    QuadraticForm three = compose_prime_power(QuadraticForm(9, -2, 110815), c1, 3);
    CHECK(three == QuadraticForm(27, 7, 36940));
    CHECK(compose_prime_power(c1, QuadraticForm(9, -2, 110815), 3) == three);

    QuadraticForm seven = compose_prime_power(QuadraticForm(729, -209, 1428), c1, 3);
    CHECK(seven == QuadraticForm(2187, -209, 476));
    CHECK(properly_equivalent(seven, QuadraticForm(476, 209, 2187)));

    QuadraticForm zero_sum = compose_prime_power(c1, opposite(c1), 3);
    CHECK(reduce_negative(zero_sum).result == QuadraticForm(1, 0, 997331));

    CHECK_THROWS_AS(compose_prime_power(QuadraticForm(10, 3, 17), QuadraticForm(10, 3, 17), 5), std::domain_error);
    CHECK_THROWS_AS(compose_prime_power(c1, c1, 9), std::domain_error);

    CHECK(prime_base(729) == 3);
    CHECK(prime_base(7) == 7);
    CHECK(prime_base(476) == 0);
    CHECK(prime_base(1) == 0);
}

TEST_CASE("prime-power and general paths agree")
{
    for (long d : {-997331L, -1019L, -2003L}) {
        for (long b = -4; b <= 4; ++b) {
            if (mod(b * b - d, 3) != 0)
                continue;
            QuadraticForm f(3, b, (b * b - d) / 3);
            auto runs = class_multiples(f, 8);
            for (std::size_t i = 1; i < runs.size(); ++i) {
                const auto & prev = runs[i - 1].reduced;
                CHECK(properly_equivalent(runs[i].composed, compose_general(prev, f).form));
            }
        }
    }
}

TEST_CASE("class multiples of (3,1,332444)")
{
    const std::vector<QuadraticForm> table{
        {3, 1, 332444}, {9, -2, 110815}, {27, 7, 36940},  {81, 34, 12327},   {243, 34, 4109},
        {729, -209, 1428}, {476, 209, 2187}, {1027, 342, 1085}, {932, -437, 1275}, {425, 12, 2347}};
    auto runs = class_multiples(QuadraticForm(3, 1, big_c), 10);
    REQUIRE(runs.size() == 10);
    const long leads[] = {3, 9, 27, 81, 243, 729, 476, 1027, 932, 425};
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(runs[i].index == i + 1);
        CHECK(runs[i].reduced.a() == leads[i]);
        CHECK(is_reduced_negative(runs[i].reduced));
        CHECK(runs[i].reduced.determinant() == -997331);
        CHECK_MESSAGE(equivalent_up_to_sign(runs[i].reduced, table[i]), "index " << i + 1);
    }
    CHECK(runs[1].composed == QuadraticForm(9, -2, 110815));
    CHECK(runs[2].composed == QuadraticForm(27, 7, 36940));
    CHECK(runs[5].composed == QuadraticForm(729, -209, 1428));

    auto one = class_multiples(QuadraticForm(3, 1, big_c), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].reduced == QuadraticForm(3, 1, big_c));

    auto order2 = class_multiples(QuadraticForm(2, 1, 43), 2);
    CHECK(properly_equivalent(order2[1].reduced, QuadraticForm(1, 0, 85)));

    CHECK_THROWS_AS(class_multiples(QuadraticForm(1, 0, -2), 3), std::domain_error);
    CHECK_THROWS_AS(class_multiples(QuadraticForm(2, 2, 6), 3), std::domain_error);
}

TEST_CASE("bezout_vector")
{
    Int g;
    auto co = bezout_vector({Int(6), Int(10), Int(15)}, &g);
    CHECK(g == 1);
    CHECK(co[0] * 6 + co[1] * 10 + co[2] * 15 == 1);
    co = bezout_vector({Int(0), Int(-4), Int(6)}, &g);
    CHECK(g == 2);
    CHECK(co[1] * -4 + co[2] * 6 == 2);
}
