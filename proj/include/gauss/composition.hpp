#pragma once

#include "gauss/forms.hpp"

#include <array>
#include <vector>

namespace gauss {

using Quad = std::array<Int, 4>;

/*
 * X = p1 x1x2 + p2 x1y2 + p3 y1x2 + p4 y1y2, Y likewise with q, carrying
 * f1(x1,y1) f2(x2,y2) into the composed form F(X,Y).
 * Minors: P = p1q2-q1p2, Q = p1q3-q1p3, R = p1q4-q1p4,
 *         S = p2q3-q2p3, T = p2q4-q2p4, U = p3q4-q3p4, and k is their gcd.
 * n1^2 = d1/D and n2^2 = d2/D; m1, m2 are gcd(a, 2b, c) of the inputs.
 */
struct BilinearSubstitution {
    Quad p, q;
    Quad bezout;  // sum bezout[i] q[i] == 1
    Int mu;       // gcd of the four linear values before dividing out
    Int P, Q, R, S, T, U;
    Int k;
    mpq_class n1, n2;
    Int m1, m2;
    Int D;

    Int X(const Int & x1, const Int & y1, const Int & x2, const Int & y2) const;
    Int Y(const Int & x1, const Int & y1, const Int & x2, const Int & y2) const;
};

struct GeneralComposition {
    QuadraticForm form;
    BilinearSubstitution subst;
};

/// The four-vector (-1, 0, 0, 0).
Quad default_q();

/*
 * Composition of two forms of one determinant.
 * With mu = gcd(a1, a2, b1+b2) and a1/mu, a2/mu coprime: A = a1 a2 / mu^2 and
 * B in [0, A) from the two congruences B = b1 (mod a1/mu), B = b2 (mod a2/mu).
 * Otherwise the prime-power rule when it applies, else compose_general.
 * Inputs need gcd(a, 2b, c) = 1; the composite of two forms with
 * gcd(a, 2b, c) = 2 has determinant 4D and only compose_general builds it.
 */
QuadraticForm compose_same_det(const QuadraticForm & f1, const QuadraticForm & f2);

/// a1 = h^chi, a2 = h^lambda (either order). B is the absolutely least residue mod A.
QuadraticForm compose_prime_power(const QuadraticForm & f1, const QuadraticForm & f2, const Int & h);

/*
 * General construction from an arbitrary Q. `bezout`, when given, replaces
 * the default Bezout vector for the q_i (must satisfy sum B_i q_i = 1).
 * B of the result is moved into [0, |A|) by shifting p by a multiple of q.
 */
GeneralComposition compose_general(const QuadraticForm & f1, const QuadraticForm & f2,
                                   const Quad & Q = default_q(), const Quad * bezout = nullptr);

/// General construction without the final B shift, for checking B-invariance.
GeneralComposition compose_general_raw(const QuadraticForm & f1, const QuadraticForm & f2,
                                       const Quad & Q, const Quad * bezout = nullptr);

/// h when a = h^e with h prime and e >= 1, else 0. Trial division.
Int prime_base(const Int & a);

struct ClassMultiple {
    unsigned index;
    QuadraticForm composed;  // as produced by the composition step
    QuadraticForm reduced;
};

/// nC for n = 1..n_max, each composed from the reduced (n-1)C and f.
std::vector<ClassMultiple> class_multiples(const QuadraticForm & f, unsigned n_max);

/// Bezout vector for a list of integers: sum c_i x_i == gcd.
std::vector<Int> bezout_vector(const std::vector<Int> & xs, Int * g = nullptr);

}  // namespace gauss
