#include "gauss/numtheory.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace gauss;

namespace {

// Oracle: is a a square modulo p, by squaring every x.
bool brute_square(long a, long p)
{
    for (long x = 0; x < p; ++x)
        if ((x * x - a) % p == 0)
            return true;
    return false;
}

bool squarefree_by_trial(Int n)
{
    n = abs(n);
    for (Int d = 2; d * d <= n; ++d)
        if (mpz_divisible_p(n.get_mpz_t(), Int(d * d).get_mpz_t()))
            return false;
    return true;
}

}  // namespace

TEST_CASE("ext_gcd examples")
{
    auto e = ext_gcd(1, 0);
    CHECK(e.g == 1);
    CHECK(e.u == 1);
    CHECK(e.v == 0);

    e = ext_gcd(10, 3);
    CHECK(e.g == 1);
    CHECK(e.u == 1);
    CHECK(e.v == -3);

    e = ext_gcd(155, 304);
    CHECK(e.g == 1);
    CHECK(155 * e.u + 304 * e.v == 1);

    e = ext_gcd(0, 0);
    CHECK(e.g == 0);
    CHECK(e.u == 0);
    CHECK(e.v == 0);

    e = ext_gcd(-12, 18);
    CHECK(e.g == 6);
    CHECK(-12 * e.u + 18 * e.v == 6);
}

TEST_CASE("ext_gcd random Bezout identity")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int i = 0; i < 2000; ++i) {
        Int a = dist(rng), b = dist(rng);
        auto e = ext_gcd(a, b);
        CHECK(e.u * a + e.v * b == e.g);
        CHECK(e.g == gcd(a, b));
        if (e.g != 0) {
            CHECK(mpz_divisible_p(a.get_mpz_t(), e.g.get_mpz_t()));
            CHECK(mpz_divisible_p(b.get_mpz_t(), e.g.get_mpz_t()));
        }
    }
}

TEST_CASE("isqrt")
{
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(997331) == 998);
    CHECK(isqrt(1994662) == 1412);
    CHECK_THROWS_AS(isqrt(-1), std::domain_error);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        Int n = Int(static_cast<unsigned long>(rng() >> 1)) * Int(static_cast<unsigned long>(rng() >> 20));
        Int r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
}

TEST_CASE("abs_min_residue")
{
    CHECK(abs_min_residue(-12, 5) == -2);
    CHECK(abs_min_residue(-217, 155) == -62);
    CHECK(abs_min_residue(0, 7) == 0);
    CHECK(abs_min_residue(3, 6) == 3);   // tie goes positive
    CHECK(abs_min_residue(-3, 6) == 3);
    CHECK(abs_min_residue(5, 1) == 0);
    CHECK_THROWS_AS(abs_min_residue(1, 0), std::domain_error);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        Int x = static_cast<long>(rng() % 2000001) - 1000000;
        Int m = static_cast<long>(rng() % 999 + 1);
        Int r = abs_min_residue(x, m);
        CHECK(mod(r - x, m) == 0);
        CHECK(2 * abs(r) <= m);
    }
}

TEST_CASE("jacobi examples and errors")
{
    CHECK(jacobi(1, 7) == 1);
    CHECK(jacobi(10, 7) == -1);
    CHECK(jacobi(10, 23) == -1);
    CHECK(jacobi(14, 7) == 0);
    CHECK(jacobi(5, 1) == 1);
    CHECK_THROWS_AS(jacobi(3, 8), std::domain_error);
    CHECK_THROWS_AS(jacobi(3, -7), std::domain_error);
}

TEST_CASE("jacobi agrees with exhaustive squaring for odd primes below 200")
{
    for (unsigned long p : primes_up_to(199)) {
        if (p == 2)
            continue;
        for (long a = 0; a < static_cast<long>(p); ++a) {
            int j = jacobi(a, p);
            if (a == 0)
                CHECK(j == 0);
            else
                CHECK((j == 1) == brute_square(a, static_cast<long>(p)));
        }
    }
}

TEST_CASE("jacobi is multiplicative in the top argument")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        Int a = static_cast<long>(rng() % 20001) - 10000;
        Int b = static_cast<long>(rng() % 20001) - 10000;
        Int n = 2 * static_cast<long>(rng() % 5000) + 1;
        CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
    }
}

TEST_CASE("sqrt_mod")
{
    CHECK(sqrt_mod(-85, 2) == std::vector<Int>{1});
    CHECK(sqrt_mod(0, 1) == std::vector<Int>{0});
    CHECK(sqrt_mod(-85, 10) == std::vector<Int>{5});
    CHECK(sqrt_mod(-5, 7) == std::vector<Int>{3, 4});
    CHECK(sqrt_mod(3, 7).empty());
    for (long m = 1; m < 60; ++m)
        for (long a = -m; a < m; ++a)
            for (const Int & x : sqrt_mod(a, m))
                CHECK(mod(x * x - a, m) == 0);
}

TEST_CASE("inverse_mod and crt_pair")
{
    CHECK(*inverse_mod(3, 7) == 5);
    CHECK(!inverse_mod(6, 9));
    CHECK(*inverse_mod(5, 1) == 0);
    CHECK(crt_pair(1, 2, 2, 3) == 5);
    CHECK(crt_pair(3, 4, 0, 5) == 15);
    CHECK_THROWS_AS(crt_pair(1, 4, 1, 6), std::domain_error);
}

TEST_CASE("trial_factor")
{
    auto f = trial_factor(-715, 100);
    CHECK(f.sign == -1);
    CHECK(f.factors == std::vector<PrimePower>{{5, 1}, {11, 1}, {13, 1}});
    CHECK(f.cofactor == 1);

    f = trial_factor(1, 10);
    CHECK(f.sign == 1);
    CHECK(f.factors.empty());
    CHECK(f.complete());

    f = trial_factor(997331, 100);
    CHECK(f.factors.empty());
    CHECK(f.cofactor == 997331);

    f = trial_factor(670, 1000);
    CHECK(f.factors == std::vector<PrimePower>{{2, 1}, {5, 1}, {67, 1}});

    // 127 * 7853: 127 found, 7853 exceeds the bound and stays as cofactor
    f = trial_factor(997331, 1000);
    CHECK(f.factors == std::vector<PrimePower>{{127, 1}});
    CHECK(f.cofactor == 7853);

    CHECK_THROWS_AS(trial_factor(0, 10), std::domain_error);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 500; ++i) {
        Int n = static_cast<long>(rng() % 2000000) - 1000000;
        if (n == 0)
            continue;
        auto fz = trial_factor(n, 50);
        CHECK(fz.value() == n);
        for (std::size_t k = 1; k < fz.factors.size(); ++k)
            CHECK(fz.factors[k - 1].prime < fz.factors[k].prime);
        for (unsigned long p : primes_up_to(50))
            CHECK(!mpz_divisible_ui_p(fz.cofactor.get_mpz_t(), p));
    }
}

TEST_CASE("squarefree_part")
{
    auto s = squarefree_part(325);
    CHECK(s.kernel == 13);
    CHECK(s.root == 5);
    s = squarefree_part(-918);
    CHECK(s.kernel == -102);
    CHECK(s.root == 3);
    s = squarefree_part(1);
    CHECK(s.kernel == 1);
    CHECK(s.root == 1);
    s = squarefree_part(-4);
    CHECK(s.kernel == -1);
    CHECK(s.root == 2);
    CHECK_THROWS_AS(squarefree_part(0), std::domain_error);
    // 1009 * 1013 has no factor below 1000 and is too large to be prime by that argument.
    CHECK_THROWS_AS(squarefree_part(Int(1009 * 1013), 1000), SmoothnessFailure);
    // Square of a rough prime is recognized.
    s = squarefree_part(Int(1009) * 1009 * 6, 1000);
    CHECK(s.kernel == 6);
    CHECK(s.root == 1009);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 500; ++i) {
        Int n = static_cast<long>(rng() % 200000) - 100000;
        if (n == 0)
            continue;
        auto sp = squarefree_part(n);
        CHECK(sp.kernel * sp.root * sp.root == n);
        CHECK(squarefree_by_trial(sp.kernel));
    }
}

TEST_CASE("primes and odd prime divisors")
{
    CHECK(primes_up_to(20) == std::vector<unsigned long>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(primes_up_to(1).empty());
    const auto ps = primes_up_to(2000);
    for (unsigned long n = 0; n < 2000; ++n)
        CHECK(is_prime_by_trial(n) == std::binary_search(ps.begin(), ps.end(), n));
    CHECK(odd_prime_divisors(-161) == std::vector<Int>{7, 23});
    CHECK(odd_prime_divisors(440) == std::vector<Int>{5, 11});
    CHECK(odd_prime_divisors(8).empty());
}
