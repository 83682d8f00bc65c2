#include "gauss/numtheory.hpp"

#include <cstdint>

namespace gauss {

Int Factorization::value() const
{
    Int v = sign;
    for (const auto & f : factors) {
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        v *= pw;
    }
    return v * cofactor;
}

ExtGcd ext_gcd(const Int & a, const Int & b)
{
    // Iterative form of egcd(a, b) = egcd(b, a mod b) on |a|, |b|.
    Int r0 = abs(a), r1 = abs(b);
    Int s0 = 1, s1 = 0;
    Int t0 = 0, t1 = 1;
    if (r0 == 0 && r1 == 0)
        return {0, 0, 0};
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (a < 0) s0 = -s0;
    if (b < 0) t0 = -t0;
    return {r0, s0, t0};
}

Int isqrt(const Int & n)
{
    if (n < 0)
        throw std::domain_error("isqrt: negative input " + n.get_str());
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int & n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int mod(const Int & x, const Int & m)
{
    if (m <= 0)
        throw std::domain_error("mod: modulus must be positive");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int abs_min_residue(const Int & x, const Int & m)
{
    if (m <= 0)
        throw std::domain_error("abs_min_residue: modulus must be >= 1, got " + m.get_str());
    Int r = mod(x, m);
    if (2 * r > m)
        r -= m;
    return r;
}

int jacobi(const Int & a, const Int & n)
{
    if (n <= 0 || mpz_even_p(n.get_mpz_t()))
        throw std::domain_error("jacobi: modulus must be odd and positive, got " + n.get_str());
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

std::vector<Int> sqrt_mod(const Int & a, const Int & m)
{
    if (m <= 0)
        throw std::domain_error("sqrt_mod: modulus must be >= 1");
    std::vector<Int> roots;
    if (m <= Int(UINT32_MAX)) {
        const std::uint64_t mm = m.get_ui();
        const std::uint64_t target = mpz_fdiv_ui(a.get_mpz_t(), mm);
        for (std::uint64_t x = 0; x < mm; ++x)
            if (x * x % mm == target)
                roots.emplace_back(static_cast<unsigned long>(x));
        return roots;
    }
    const Int target = mod(a, m);
    for (Int x = 0; x < m; ++x)
        if (mod(x * x, m) == target)
            roots.push_back(x);
    return roots;
}

std::optional<Int> inverse_mod(const Int & a, const Int & m)
{
    if (m <= 0)
        throw std::domain_error("inverse_mod: modulus must be positive");
    if (m == 1)
        return Int(0);
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
    return r;
}

Int crt_pair(const Int & r1, const Int & m1, const Int & r2, const Int & m2)
{
    auto inv = inverse_mod(m1, m2);
    if (!inv)
        throw std::domain_error("crt_pair: moduli " + m1.get_str() + " and " + m2.get_str() +
                                " are not coprime");
    Int t = mod((r2 - r1) * *inv, m2);
    return mod(r1 + m1 * t, m1 * m2);
}

Factorization trial_factor(const Int & n, unsigned long bound)
{
    if (n == 0)
        throw std::domain_error("trial_factor: zero has no factorization");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    Int m = abs(n);

    auto strip = [&](unsigned long p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e > 0)
            f.factors.push_back({Int(p), e});
    };

    bool exhausted = false;  // true once p*p > m, i.e. what is left is 1 or prime
    for (unsigned long p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > m) {
            exhausted = true;
            break;
        }
        strip(p);
    }
    if (m > 1 && exhausted && m <= bound) {
        f.factors.push_back({m, 1});
        m = 1;
    }
    f.cofactor = m;
    return f;
}

SquarefreeSplit squarefree_part(const Int & n, unsigned long bound)
{
    if (n == 0)
        throw std::domain_error("squarefree_part: zero has no squarefree kernel");
    Factorization f = trial_factor(n, bound);
    SquarefreeSplit out{Int(f.sign), Int(1)};
    for (const auto & pp : f.factors) {
        if (pp.exponent % 2 == 1)
            out.kernel *= pp.prime;
        Int half;
        mpz_pow_ui(half.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent / 2);
        out.root *= half;
    }
    if (f.cofactor > 1) {
        const Int b1 = Int(bound) + 1;
        if (is_perfect_square(f.cofactor)) {
            out.root *= isqrt(f.cofactor);
        } else if (f.cofactor < b1 * b1) {
            out.kernel *= f.cofactor;  // no factor <= bound and below bound^2: prime
        } else {
            throw SmoothnessFailure("squarefree_part: " + n.get_str() +
                                    " leaves unfactored cofactor " + f.cofactor.get_str());
        }
    }
    return out;
}

bool is_prime_by_trial(const Int & n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (mpz_even_p(n.get_mpz_t()))
        return false;
    const Int root = isqrt(n);
    for (Int d = 3; d <= root; d += 2)
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
            return false;
    return true;
}

std::vector<unsigned long> primes_up_to(unsigned long limit)
{
    std::vector<unsigned long> primes;
    if (limit < 2)
        return primes;
    std::vector<bool> composite(limit + 1, false);
    for (unsigned long i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (unsigned long j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

std::vector<Int> odd_prime_divisors(const Int & n)
{
    std::vector<Int> out;
    if (n == 0)
        return out;
    Int m = abs(n);
    while (mpz_even_p(m.get_mpz_t()))
        m /= 2;
    for (Int p = 3; p * p <= m; p += 2) {
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            out.push_back(p);
            while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
                m /= p;
        }
    }
    if (m > 1)
        out.push_back(m);
    return out;
}

}  // namespace gauss
