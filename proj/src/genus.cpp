#include "gauss/genus.hpp"

#include <algorithm>

namespace gauss {

namespace {

void require_primitive(const QuadraticForm & f, const char * who)
{
    if (f.determinant() == 0)
        throw std::domain_error(std::string(who) + ": determinant is zero");
    if (!is_primitive(f))
        throw std::domain_error(std::string(who) + ": " + to_string(f) + " is not primitive");
}

// The coefficient among a, c that is odd; one always is for a primitive form
// whose determinant is even or 3 mod 4.
const Int & odd_outer(const QuadraticForm & f)
{
    return mpz_odd_p(f.a().get_mpz_t()) ? f.a() : f.c();
}

unsigned long residue_ui(const Int & x, unsigned long m)
{
    return mpz_fdiv_ui(x.get_mpz_t(), m);
}

}  // namespace

std::vector<std::string> CharacterProfile::tokens() const
{
    std::vector<std::string> out;
    for (const auto & e : odd_primes)
        out.push_back((e.residue ? "R" : "N") + e.p.get_str());
    if (mod4)
        out.push_back(*mod4);
    if (mod8)
        out.push_back(*mod8);
    return out;
}

std::string CharacterProfile::str() const
{
    std::string s;
    for (const auto & t : tokens()) {
        if (!s.empty())
            s += "; ";
        s += t;
    }
    return s;
}

CharacterProfile character(const QuadraticForm & f)
{
    require_primitive(f, "character");
    const Int d = f.determinant();
    CharacterProfile prof;

    for (const Int & p : odd_prime_divisors(d)) {
        const Int & x = mpz_divisible_p(f.a().get_mpz_t(), p.get_mpz_t()) ? f.c() : f.a();
        prof.odd_primes.push_back({p, jacobi(x, p) == 1});
    }

    const unsigned long d4 = residue_ui(d, 4);
    const unsigned long d8 = residue_ui(d, 8);
    if (d4 == 0 || d4 == 3)
        prof.mod4 = residue_ui(odd_outer(f), 4) == 1 ? "1,4" : "3,4";

    if (d8 == 0 || d8 == 2 || d8 == 6) {
        const unsigned long r = residue_ui(odd_outer(f), 8);
        if (d8 == 0)
            prof.mod8 = std::to_string(r) + ",8";
        else if (d8 == 2)
            prof.mod8 = (r == 1 || r == 7) ? "1and7,8" : "3and5,8";
        else
            prof.mod8 = (r == 1 || r == 3) ? "1and3,8" : "5and7,8";
    }
    return prof;
}

bool same_genus(const QuadraticForm & f1, const QuadraticForm & f2)
{
    if (f1.determinant() != f2.determinant())
        throw DeterminantMismatch("same_genus: determinants " + f1.determinant().get_str() + " and " +
                                  f2.determinant().get_str() + " differ");
    return character(f1) == character(f2);
}

bool satisfies(const QuadraticForm & f, const FormSqrtValue & v)
{
    const Int & m = v.modulus;
    const Int & M = v.multiplier;
    return mod(v.g * v.g - f.a() * M, m) == 0 && mod(v.g * v.h - f.b() * M, m) == 0 &&
           mod(v.h * v.h - f.c() * M, m) == 0;
}

std::vector<FormSqrtValue> sqrt_of_form(const QuadraticForm & f, const Int & M, const Int & m)
{
    if (m <= 0)
        throw std::domain_error("sqrt_of_form: modulus must be positive");
    if (gcd(M, m) != 1)
        throw std::domain_error("sqrt_of_form: multiplier " + M.get_str() + " and modulus " + m.get_str() +
                                " are not coprime");
    std::vector<FormSqrtValue> out;
    const auto gs = sqrt_mod(f.a() * M, m);
    if (gs.empty())
        return out;
    const auto hs = sqrt_mod(f.c() * M, m);
    const Int bm = mod(f.b() * M, m);
    for (const Int & g : gs)
        for (const Int & h : hs)
            if (mod(g * h, m) == bm)
                out.push_back({g, h, m, M});
    return out;
}

std::optional<FormSqrtValue> characteristic_witness(const Int & M, const QuadraticForm & f)
{
    require_primitive(f, "is_characteristic_number");
    const Int d = f.determinant();
    const Int nd = abs(d);
    if (gcd(M, d) != 1)
        throw std::domain_error("is_characteristic_number: " + M.get_str() + " shares a factor with D = " +
                                d.get_str());

    // Solve modulo each prime power of |D| and glue the pieces together.
    Int g = 0, h = 0, modulus = 1;
    Factorization fz = trial_factor(nd, std::max(2ul, isqrt(nd).get_ui() + 1));
    if (fz.cofactor > 1)
        fz.factors.push_back({fz.cofactor, 1});
    for (const auto & pp : fz.factors) {
        Int q;
        mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        Int gq, hq;
        if (!mpz_divisible_p(f.a().get_mpz_t(), pp.prime.get_mpz_t())) {
            auto roots = sqrt_mod(f.a() * M, q);
            if (roots.empty())
                return std::nullopt;
            gq = roots.front();
            hq = mod(f.b() * gq * *inverse_mod(f.a(), q), q);
        } else {
            auto roots = sqrt_mod(f.c() * M, q);
            if (roots.empty())
                return std::nullopt;
            hq = roots.front();
            gq = mod(f.b() * hq * *inverse_mod(f.c(), q), q);
        }
        g = crt_pair(g, modulus, gq, q);
        h = crt_pair(h, modulus, hq, q);
        modulus *= q;
    }
    FormSqrtValue w{g, h, nd, M};
    if (!satisfies(f, w))
        throw std::logic_error("characteristic_witness: assembled witness fails its congruences");
    return w;
}

bool is_characteristic_number(const Int & M, const QuadraticForm & f)
{
    return characteristic_witness(M, f).has_value();
}

std::vector<Int> characteristic_numbers(const QuadraticForm & f)
{
    const Int nd = abs(f.determinant());
    std::vector<Int> out;
    for (Int M = 1; M <= nd; ++M)
        if (gcd(M, nd) == 1 && is_characteristic_number(M, f))
            out.push_back(M);
    return out;
}

}  // namespace gauss
