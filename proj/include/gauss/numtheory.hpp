#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gauss {

/// Arbitrary precision integer used throughout the library.
using Int = mpz_class;

inline constexpr unsigned long default_trial_bound = 1000;

/// Thrown when a value cannot be split completely by trial division.
class SmoothnessFailure : public std::domain_error {
  public:
    explicit SmoothnessFailure(const std::string & what) : std::domain_error(what) {}
};

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower &) const = default;
};

/*
 * value = sign * prod(prime^exponent) * cofactor.
 * Primes are strictly increasing; cofactor is 1 when the split is complete,
 * otherwise it has no prime factor <= the trial bound that produced it.
 */
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;
    Int cofactor = 1;

    bool complete() const { return cofactor == 1; }
    Int value() const;
};

struct ExtGcd {
    Int g;
    Int u;
    Int v;
};

/// g = gcd(|a|,|b|) and u*a + v*b = g, coefficients from the Euclid recursion.
ExtGcd ext_gcd(const Int & a, const Int & b);

Int isqrt(const Int & n);
bool is_perfect_square(const Int & n);

/// Sign of |a| - |b|.
inline int cmp_abs(const Int & a, const Int & b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Least nonnegative residue of x modulo m (m > 0).
Int mod(const Int & x, const Int & m);

/*
 * Residue of x modulo m with the smallest absolute value, |r| <= m/2.
 * On a tie (m even, r = +-m/2) the positive representative is returned.
 */
Int abs_min_residue(const Int & x, const Int & m);

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(const Int & a, const Int & n);

/// Every x in [0, m) with x^2 = a (mod m), ascending. Exhaustive search.
std::vector<Int> sqrt_mod(const Int & a, const Int & m);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<Int> inverse_mod(const Int & a, const Int & m);

/// x = r1 (mod m1), x = r2 (mod m2) for coprime moduli; result in [0, m1*m2).
Int crt_pair(const Int & r1, const Int & m1, const Int & r2, const Int & m2);

Factorization trial_factor(const Int & n, unsigned long bound = default_trial_bound);

struct SquarefreeSplit {
    Int kernel;  // squarefree, carries the sign of n
    Int root;    // n = kernel * root^2
};

SquarefreeSplit squarefree_part(const Int & n, unsigned long bound = default_trial_bound);

/// Primality by trial division up to sqrt(n). Desk scale only.
bool is_prime_by_trial(const Int & n);

std::vector<unsigned long> primes_up_to(unsigned long limit);

/// Odd primes dividing n, ascending (|n| is split by trial division).
std::vector<Int> odd_prime_divisors(const Int & n);

}  // namespace gauss
