#include "gauss/composition.hpp"

#include "gauss/reduction.hpp"

namespace gauss {

namespace {

Int gcd4(const Quad & v)
{
    Int g = 0;
    for (const Int & x : v)
        g = gcd(g, x);
    return g;
}

mpq_class rational_sqrt(mpq_class r, const char * what)
{
    r.canonicalize();
    if (r < 0 || !is_perfect_square(r.get_num()) || !is_perfect_square(r.get_den()))
        throw std::domain_error(std::string("compose_general: determinants are incompatible (") + what +
                                " = " + r.get_str() + " is not a rational square)");
    return mpq_class(isqrt(r.get_num()), isqrt(r.get_den()));
}

Int integral(const mpq_class & x, const char * what)
{
    if (x.get_den() != 1)
        throw std::domain_error(std::string("compose_general: ") + what + " = " + x.get_str() +
                                " is not an integer");
    return x.get_num();
}

// Coefficients feeding the linear maps that define q (from Q) and p (from the Bezout vector).
struct Setup {
    Int A1, C1, A2, C2, S, T;
    mpq_class n1, n2;
    Int m1, m2, D;

    Quad lin(const Quad & v) const
    {
        const Int &Q1 = v[0], &Q2 = v[1], &Q3 = v[2], &Q4 = v[3];
        return {Q2 * A1 + Q3 * A2 + Q4 * S, -Q1 * A1 + Q4 * C2 - Q3 * T, Q4 * C1 - Q1 * A2 + Q2 * T,
                -Q3 * C1 - Q2 * C2 - Q1 * S};
    }
};

Setup make_setup(const QuadraticForm & f1, const QuadraticForm & f2)
{
    Setup s;
    const Int d1 = f1.determinant();
    const Int d2 = f2.determinant();
    if (d1 == 0 || d2 == 0)
        throw std::domain_error("compose_general: zero determinant");
    s.m1 = gcd(gcd(f1.a(), 2 * f1.b()), f1.c());
    s.m2 = gcd(gcd(f2.a(), 2 * f2.b()), f2.c());
    s.D = gcd(d1 * s.m2 * s.m2, d2 * s.m1 * s.m1);
    if (d1 < 0)
        s.D = -s.D;
    s.n1 = rational_sqrt(mpq_class(d1, s.D), "d1/D");
    s.n2 = rational_sqrt(mpq_class(d2, s.D), "d2/D");
    s.A1 = integral(f1.a() * s.n2, "a1 n2");
    s.C1 = integral(f1.c() * s.n2, "c1 n2");
    s.A2 = integral(f2.a() * s.n1, "a2 n1");
    s.C2 = integral(f2.c() * s.n1, "c2 n1");
    s.S = integral(f1.b() * s.n2 + f2.b() * s.n1, "b1 n2 + b2 n1");
    s.T = integral(f1.b() * s.n2 - f2.b() * s.n1, "b1 n2 - b2 n1");
    return s;
}

void fill_minors(BilinearSubstitution & b)
{
    const Quad & p = b.p;
    const Quad & q = b.q;
    b.P = p[0] * q[1] - q[0] * p[1];
    b.Q = p[0] * q[2] - q[0] * p[2];
    b.R = p[0] * q[3] - q[0] * p[3];
    b.S = p[1] * q[2] - q[1] * p[2];
    b.T = p[1] * q[3] - q[1] * p[3];
    b.U = p[2] * q[3] - q[2] * p[3];
    b.k = 0;
    for (const Int * x : {&b.P, &b.Q, &b.R, &b.S, &b.T, &b.U})
        b.k = gcd(b.k, *x);
}

struct Coeffs {
    Int A;
    mpq_class B;
    Int C;
};

Coeffs outer_coefficients(const BilinearSubstitution & b)
{
    const Quad & p = b.p;
    const Quad & q = b.q;
    const mpq_class nn = b.n1 * b.n2;
    Coeffs out;
    out.A = integral(mpq_class(q[1] * q[2] - q[0] * q[3]) / nn, "A");
    out.B = mpq_class(p[0] * q[3] + q[0] * p[3] - p[1] * q[2] - q[1] * p[2]) / nn / 2;
    out.C = integral(mpq_class(p[1] * p[2] - p[0] * p[3]) / nn, "C");
    return out;
}

bool is_power_of(const Int & a, const Int & h)
{
    if (a == 1)
        return true;
    if (h < 2 || a < h)
        return false;
    Int x = a;
    while (mpz_divisible_p(x.get_mpz_t(), h.get_mpz_t()))
        x /= h;
    return x == 1;
}

unsigned exponent_of(const Int & a, const Int & h)
{
    unsigned e = 0;
    Int x = a;
    while (x > 1) {
        x /= h;
        ++e;
    }
    return e;
}

Int power(const Int & h, unsigned e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), h.get_mpz_t(), e);
    return r;
}

// gcd(a, 2b, c) == 1; the shortcut and prime-power rules need this, not just gcd(a, b, c) == 1
bool properly_primitive(const QuadraticForm & f)
{
    return gcd(gcd(f.a(), 2 * f.b()), f.c()) == 1;
}

QuadraticForm finish(const Int & A, const Int & B, const Int & D, const char * who)
{
    Int num = B * B - D;
    if (!mpz_divisible_p(num.get_mpz_t(), A.get_mpz_t()))
        throw std::logic_error(std::string(who) + ": B^2 - D is not divisible by A");
    return {A, B, num / A};
}

}  // namespace

Int BilinearSubstitution::X(const Int & x1, const Int & y1, const Int & x2, const Int & y2) const
{
    return p[0] * x1 * x2 + p[1] * x1 * y2 + p[2] * y1 * x2 + p[3] * y1 * y2;
}

Int BilinearSubstitution::Y(const Int & x1, const Int & y1, const Int & x2, const Int & y2) const
{
    return q[0] * x1 * x2 + q[1] * x1 * y2 + q[2] * y1 * x2 + q[3] * y1 * y2;
}

Quad default_q() { return {Int(-1), Int(0), Int(0), Int(0)}; }

std::vector<Int> bezout_vector(const std::vector<Int> & xs, Int * g_out)
{
    Int g = 0;
    std::vector<Int> co(xs.size(), Int(0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ExtGcd e = ext_gcd(g, xs[i]);
        for (std::size_t j = 0; j < i; ++j)
            co[j] *= e.u;
        co[i] = e.v;
        g = e.g;
    }
    if (g_out)
        *g_out = g;
    return co;
}

GeneralComposition compose_general_raw(const QuadraticForm & f1, const QuadraticForm & f2, const Quad & Q,
                                       const Quad * bezout)
{
    const Setup s = make_setup(f1, f2);
    const Quad lq = s.lin(Q);
    const Int mu = gcd4(lq);
    if (mu == 0)
        throw std::domain_error("compose_general: Q sends all four linear values to zero");

    BilinearSubstitution b{};
    b.mu = mu;
    for (int i = 0; i < 4; ++i)
        b.q[i] = lq[i] / mu;
    if (bezout) {
        b.bezout = *bezout;
        Int check = 0;
        for (int i = 0; i < 4; ++i)
            check += b.bezout[i] * b.q[i];
        if (check != 1)
            throw std::domain_error("compose_general: supplied Bezout vector does not sum to 1");
    } else {
        auto co = bezout_vector({b.q[0], b.q[1], b.q[2], b.q[3]});
        for (int i = 0; i < 4; ++i)
            b.bezout[i] = co[i];
    }
    b.p = s.lin(b.bezout);
    b.n1 = s.n1;
    b.n2 = s.n2;
    b.m1 = s.m1;
    b.m2 = s.m2;
    b.D = s.D;
    fill_minors(b);

    Coeffs cf = outer_coefficients(b);
    Int B = integral(cf.B, "B");
    return {QuadraticForm(cf.A, B, cf.C), b};
}

GeneralComposition compose_general(const QuadraticForm & f1, const QuadraticForm & f2, const Quad & Q,
                                   const Quad * bezout)
{
    GeneralComposition g = compose_general_raw(f1, f2, Q, bezout);
    const Int & A = g.form.a();
    const Int & B = g.form.b();
    if (A == 0)
        return g;
    // p -> p - t q moves B to B + t A and leaves every minor unchanged.
    Int t = (mod(B, abs(A)) - B) / A;
    if (t != 0) {
        for (int i = 0; i < 4; ++i)
            g.subst.p[i] -= t * g.subst.q[i];
        Coeffs cf = outer_coefficients(g.subst);
        g.form = QuadraticForm(cf.A, integral(cf.B, "B"), cf.C);
    }
    return g;
}

QuadraticForm compose_prime_power(const QuadraticForm & f1, const QuadraticForm & f2, const Int & h)
{
    const Int D = f1.determinant();
    if (f2.determinant() != D)
        throw std::domain_error("compose_prime_power: determinants differ");
    if (prime_base(h) != h)
        throw std::domain_error("compose_prime_power: " + h.get_str() + " is not prime");
    if (!is_power_of(f1.a(), h) || !is_power_of(f2.a(), h))
        throw std::domain_error("compose_prime_power: leading coefficients " + f1.a().get_str() + " and " +
                                f2.a().get_str() + " are not powers of " + h.get_str() +
                                "; use compose_same_det");
    if (!properly_primitive(f1) || !properly_primitive(f2))
        throw std::domain_error("compose_prime_power: gcd(a, 2b, c) = 2 for an input");
    const bool swap = exponent_of(f1.a(), h) < exponent_of(f2.a(), h);
    const QuadraticForm & g1 = swap ? f2 : f1;
    const QuadraticForm & g2 = swap ? f1 : f2;
    const unsigned chi = exponent_of(g1.a(), h);
    const unsigned lambda = exponent_of(g2.a(), h);

    const Int sum = g1.b() + g2.b();
    const Int hnu = gcd(g2.a(), sum);  // gcd with 0 is h^lambda itself
    const unsigned nu = exponent_of(hnu, h);
    const Int rest = power(h, lambda - nu);
    const Int b4 = *inverse_mod(sum / hnu, rest);

    const Int A = power(h, chi + lambda - 2 * nu);
    Int B = g1.b() - b4 * g1.c() * power(h, chi - nu);
    B = abs_min_residue(B, A);
    return finish(A, B, D, "compose_prime_power");
}

QuadraticForm compose_same_det(const QuadraticForm & f1, const QuadraticForm & f2)
{
    const Int D = f1.determinant();
    if (f2.determinant() != D)
        throw std::domain_error("compose_same_det: determinants " + D.get_str() + " and " +
                                f2.determinant().get_str() + " differ");
    if (f1.a() == 0 || f2.a() == 0)
        throw std::domain_error("compose_same_det: leading coefficient is zero");
    if (!is_primitive(f1) || !is_primitive(f2))
        throw std::domain_error("compose_same_det: inputs must be primitive");
    if (!properly_primitive(f1) || !properly_primitive(f2))
        throw std::domain_error("compose_same_det: gcd(a, 2b, c) = 2 for an input; use compose_general, "
                                "whose composite has determinant 4D");

    const Int mu = gcd(gcd(f1.a(), f2.a()), f1.b() + f2.b());
    const Int r1 = abs(f1.a()) / mu;
    const Int r2 = abs(f2.a()) / mu;
    if (gcd(r1, r2) == 1) {
        const Int A = f1.a() * f2.a() / (mu * mu);
        const Int B = crt_pair(mod(f1.b(), r1), r1, mod(f2.b(), r2), r2);
        return finish(A, B, D, "compose_same_det");
    }
    if (f1.a() > 0 && f2.a() > 0) {
        Int h = f1.a() == 1 ? prime_base(f2.a()) : prime_base(f1.a());
        if (h != 0 && is_power_of(f1.a(), h) && is_power_of(f2.a(), h))
            return compose_prime_power(f1, f2, h);
    }
    return compose_general(f1, f2).form;
}

Int prime_base(const Int & a)
{
    if (a < 2)
        return 0;
    if (mpz_probab_prime_p(a.get_mpz_t(), 30) != 0)
        return a;
    Int p = 0;
    if (mpz_even_p(a.get_mpz_t())) {
        p = 2;
    } else {
        for (Int d = 3; d * d <= a; d += 2) {
            if (mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) {
                p = d;
                break;
            }
        }
    }
    return p != 0 && is_power_of(a, p) ? p : Int(0);
}

std::vector<ClassMultiple> class_multiples(const QuadraticForm & f, unsigned n_max)
{
    if (f.determinant() >= 0 || f.a() <= 0)
        throw std::domain_error("class_multiples: needs a positive definite form");
    if (!is_primitive(f))
        throw std::domain_error("class_multiples: " + to_string(f) + " is not primitive");
    if (!properly_primitive(f))
        throw std::domain_error("class_multiples: " + to_string(f) + " has gcd(a, 2b, c) = 2");
    std::vector<ClassMultiple> out;
    if (n_max == 0)
        return out;
    out.push_back({1, f, reduce_negative(f).result});
    for (unsigned n = 2; n <= n_max; ++n) {
        const QuadraticForm & prev = out.back().reduced;
        const Int hp = prime_base(prev.a());
        const Int hf = prime_base(f.a());
        Int h = hp != 0 ? hp : hf;
        QuadraticForm composed = (h != 0 && is_power_of(prev.a(), h) && is_power_of(f.a(), h))
                                     ? compose_prime_power(prev, f, h)
                                     : compose_same_det(prev, f);
        out.push_back({n, composed, reduce_negative(composed).result});
    }
    return out;
}

}  // namespace gauss
