#pragma once

#include "gauss/numtheory.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace gauss {

/// Malformed "a,b,c" text.
class FormSyntaxError : public std::invalid_argument {
  public:
    explicit FormSyntaxError(const std::string & what) : std::invalid_argument(what) {}
};

/*
 * The binary quadratic form a x^2 + 2 b xy + c y^2, stored as (a, b, c) with b
 * half of the xy coefficient. Its determinant is b^2 - ac.
 * The all-zero triple is rejected; a = 0 or c = 0 is allowed.
 */
class QuadraticForm {
  public:
    QuadraticForm(Int a, Int b, Int c);
    QuadraticForm(long a, long b, long c) : QuadraticForm(Int(a), Int(b), Int(c)) {}

    const Int & a() const { return a_; }
    const Int & b() const { return b_; }
    const Int & c() const { return c_; }

    Int determinant() const { return b_ * b_ - a_ * c_; }
    Int operator()(const Int & x, const Int & y) const
    {
        return a_ * x * x + 2 * b_ * x * y + c_ * y * y;
    }

    QuadraticForm operator-() const { return {-a_, -b_, -c_}; }

    bool operator==(const QuadraticForm & o) const
    {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }

    /// Ordering by (|a|, sign(a), b, c); used for canonical listings.
    bool operator<(const QuadraticForm & o) const;

  private:
    Int a_, b_, c_;
};

/// Integer substitution x = alpha x' + beta y', y = gamma x' + delta y'.
struct UnimodularMap {
    Int alpha = 1, beta = 0, gamma = 0, delta = 1;

    Int det() const { return alpha * delta - beta * gamma; }
    bool proper() const { return det() > 0; }

    /// Matrix product; applying this then `rhs` equals applying the product.
    UnimodularMap operator*(const UnimodularMap & rhs) const;
    bool operator==(const UnimodularMap & o) const
    {
        return alpha == o.alpha && beta == o.beta && gamma == o.gamma && delta == o.delta;
    }
};

/*
 * M = f(m, n) with gcd(m, n) = 1, the Bezout pair mu*m + nu*n = 1, and the
 * value theta of sqrt(D) mod M to which the representation belongs,
 * canonicalized to [0, |M|).
 */
struct Representation {
    QuadraticForm form;
    Int m, n;
    Int value;
    Int mu, nu;
    Int theta;
};

Int determinant(const QuadraticForm & f);
QuadraticForm transform(const QuadraticForm & f, const UnimodularMap & t);
bool is_primitive(const QuadraticForm & f);
Int content(const QuadraticForm & f);
QuadraticForm opposite(const QuadraticForm & f);

/// Same determinant, c1 = a2 and b1 = -b2 (mod c1). Modulo 0 means equality.
bool is_contiguous(const QuadraticForm & f1, const QuadraticForm & f2);

Representation representation_value(const QuadraticForm & f, const Int & m, const Int & n);

/*
 * For f(g,h) * f(g1,h1) = p^2 - D q^2:
 *   p = a g g1 + b (g h1 + h g1) + c h h1,  q = g h1 - h g1.
 */
std::pair<Int, Int> product_representation(const QuadraticForm & f, const Int & g, const Int & h,
                                           const Int & g1, const Int & h1);

/// (M, theta, (theta^2 - D)/M): properly equivalent to the representing form.
QuadraticForm form_from_representation(const Representation & r);

/// "a,b,c" with optional spaces; throws FormSyntaxError when malformed.
QuadraticForm parse_form(std::string_view text);

/// Accepts a x^2 + B xy + c y^2 written "a,B,c"; odd B is a std::domain_error.
QuadraticForm parse_form_full(std::string_view text);

std::string to_string(const QuadraticForm & f);
/// Polynomial rendering, e.g. "5x^2 - 4xy + 7y^2".
std::string to_polynomial(const QuadraticForm & f);

std::ostream & operator<<(std::ostream & os, const QuadraticForm & f);

}  // namespace gauss
