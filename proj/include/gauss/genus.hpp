#pragma once

#include "gauss/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gauss {

/// Raised by same_genus when the two forms do not share a determinant.
class DeterminantMismatch : public std::domain_error {
  public:
    explicit DeterminantMismatch(const std::string & what) : std::domain_error(what) {}
};

struct OddPrimeCharacter {
    Int p;
    bool residue = false;

    bool operator==(const OddPrimeCharacter &) const = default;
};

/*
 * Complete character of a primitive form. Entries use the classical tokens:
 * "R7"/"N7" for odd primes, "1,4"/"3,4", and "1,8".."7,8" or the paired
 * "1and7,8", "3and5,8", "1and3,8", "5and7,8".
 */
struct CharacterProfile {
    std::vector<OddPrimeCharacter> odd_primes;  // ascending p
    std::optional<std::string> mod4;
    std::optional<std::string> mod8;

    bool operator==(const CharacterProfile &) const = default;
    std::vector<std::string> tokens() const;
    /// Tokens joined by "; ", e.g. "N7; N23; 1,4".
    std::string str() const;
};

/// A value (g, h) of sqrt(M (a,b,c)) modulo `modulus`.
struct FormSqrtValue {
    Int g, h;
    Int modulus;
    Int multiplier;

    bool operator==(const FormSqrtValue &) const = default;
};

CharacterProfile character(const QuadraticForm & f);
bool same_genus(const QuadraticForm & f1, const QuadraticForm & f2);

/// Every (g, h) in [0, m)^2 with g^2 = aM, gh = bM, h^2 = cM (mod m), lexicographic.
std::vector<FormSqrtValue> sqrt_of_form(const QuadraticForm & f, const Int & M, const Int & m);

/// True when the three congruences hold.
bool satisfies(const QuadraticForm & f, const FormSqrtValue & v);

/// Witness modulo |D| when M (a,b,c) is a quadratic residue of D, else nullopt.
std::optional<FormSqrtValue> characteristic_witness(const Int & M, const QuadraticForm & f);
bool is_characteristic_number(const Int & M, const QuadraticForm & f);

/// All M in [1, |D|] coprime to D that are characteristic numbers of f.
std::vector<Int> characteristic_numbers(const QuadraticForm & f);

}  // namespace gauss
