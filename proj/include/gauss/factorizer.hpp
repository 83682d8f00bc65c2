#pragma once

#include "gauss/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gauss {

enum class Source { period_form, class_multiple, square_representation, combination };

std::string to_string(Source s);

struct Provenance {
    Source source;
    std::string detail;  // e.g. "k=1 step=3", "k=3 x=577", "n=7 a'", "-102 * 17"
};

/*
 * A quadratic residue of `modulus`. kernel is the squarefree part of raw
 * (sign kept) and raw = kernel * root^2. When present, witness^2 = raw (mod modulus).
 */
struct WitnessedResidue {
    Int raw;
    Int kernel;
    Int root;
    std::optional<Int> witness;
    Provenance provenance;
    Int modulus;
};

/// Checks the invariants above; throws std::logic_error on a broken witness.
WitnessedResidue make_residue(const Int & raw, std::optional<Int> witness, Provenance prov, const Int & modulus);

/// Residues plus any factor of the modulus exposed by a failed modular inverse.
struct Harvest {
    std::vector<WitnessedResidue> residues;
    std::vector<Int> early_factors;
};

/// (1, s, s^2 - kM) with s = isqrt(kM).
QuadraticForm seed_form(const Int & M, const Int & k);

/// Outer coefficients c of the first `steps` forms of the period walk from seed_form(M, k).
Harvest harvest_from_period(const Int & M, const Int & k, unsigned steps);

/*
 * k x^2 - M for x within `window` of isqrt(M/k); k(kx^2 - M) = (kx)^2 (mod M)
 * is kept when it factors over primes <= smooth_bound.
 */
Harvest harvest_square_representations(const Int & M, const std::vector<Int> & multipliers, unsigned window,
                                       unsigned long smooth_bound);

/// (a, b, (b^2 + kM)/a) with b the least root of -kM mod a; nullopt when none has gcd(a, 2b, c) = 1.
std::optional<QuadraticForm> class_seed_form(const Int & M, const Int & k, const Int & a);

/// a' and c' of even multiples, a a' and a c' of odd ones, where a is the seed's leading coefficient.
Harvest harvest_from_class_multiples(const Int & M, const QuadraticForm & seed, unsigned n_max,
                                     unsigned long smooth_bound);

/*
 * Reduced echelon basis over GF(2) of the kernels' exponent-parity vectors.
 * Columns run over primes in descending order then the sign; each pivot is the
 * smallest |kernel| available. Witnesses follow the products. A dependency
 * u^2 = 1 with u != +-1 and a failed inverse both land in early_factors.
 */
Harvest combine(const std::vector<WitnessedResidue> & residues, const Int & M);

/// Odd primes p <= limit for which no kernel is a non-residue.
std::vector<Int> sieve_candidates(const std::vector<Int> & kernels, unsigned long limit);
std::vector<Int> sieve_candidates(const std::vector<WitnessedResidue> & residues, unsigned long limit);

struct FactorConfig {
    std::vector<Int> multipliers{Int(1), Int(2), Int(3)};
    unsigned steps = 20;
    unsigned window = 50;
    unsigned long smooth_bound = 100;
    std::optional<Int> class_seed;  // leading coefficient of the class-multiple seed
    unsigned class_count = 10;
    std::optional<unsigned long> limit;  // sieve limit, isqrt of the modulus by default
    unsigned long small_prime_bound = 30;
    bool parallel = true;
};

struct SieveSurvivor {
    Int modulus;
    Int prime;
    bool divides;
};

enum class FactorStatus { complete, failed };

struct FactorReport {
    Int input;
    FactorStatus status = FactorStatus::complete;
    std::vector<PrimePower> factors;  // ascending primes
    Int unfactored = 1;               // composite part left when status is failed
    std::vector<WitnessedResidue> residues;
    std::vector<SieveSurvivor> survivors;
    std::vector<Int> early_factors;
    std::string message;

    Int product() const;
};

FactorReport factor(const Int & M, const FactorConfig & config = {});

}  // namespace gauss
