#include "gauss/reduction.hpp"

#include <algorithm>
#include <set>

namespace gauss {

namespace {

void require_negative(const QuadraticForm & f, const char * who)
{
    if (f.determinant() >= 0)
        throw std::domain_error(std::string(who) + ": determinant " + f.determinant().get_str() +
                                " is not negative");
}

// Returns sqrt(D) rounded down, rejecting D <= 0 and perfect squares.
Int require_positive_nonsquare(const Int & d, const char * who)
{
    if (d <= 0)
        throw std::domain_error(std::string(who) + ": determinant " + d.get_str() + " is not positive");
    if (is_perfect_square(d))
        throw std::domain_error(std::string(who) + ": determinant " + d.get_str() +
                                " is a perfect square");
    return isqrt(d);
}

// (a,b,c) -> (c, b', (b'^2 - D)/c) where b' = -b + h c.
struct Step {
    QuadraticForm next;
    UnimodularMap map;
};

Step contiguous_step(const QuadraticForm & f, const Int & b1)
{
    const Int & c = f.c();
    Int h = (b1 + f.b()) / c;
    Int c1 = (b1 * b1 - f.determinant()) / c;
    return {QuadraticForm(c, b1, c1), UnimodularMap{0, -1, 1, h}};
}

// Residue of -b modulo |c| inside [s - |c| + 1, s].
Int interval_residue(const Int & b, const Int & c, const Int & s)
{
    Int m = abs(c);
    Int low = s - m + 1;
    return low + mod(-b - low, m);
}

ReductionTrace trivial_trace(const QuadraticForm & f)
{
    return {{f}, {}, {}, UnimodularMap{}, f};
}

ReductionTrace reduce_positive_definite(const QuadraticForm & f)
{
    ReductionTrace t = trivial_trace(f);
    QuadraticForm cur = f;
    while (!is_reduced_negative(cur)) {
        Int b1 = abs_min_residue(-cur.b(), cur.c());
        Step s = contiguous_step(cur, b1);
        t.b_sequence.push_back(b1);
        t.steps.push_back(s.map);
        t.total = t.total * s.map;
        t.chain.push_back(s.next);
        cur = s.next;
    }
    t.result = cur;
    return t;
}

}  // namespace

UnimodularMap inverse(const UnimodularMap & t)
{
    if (t.det() != 1)
        throw std::domain_error("inverse: map is not proper unimodular");
    return {t.delta, -t.beta, -t.gamma, t.alpha};
}

bool is_reduced_negative(const QuadraticForm & f)
{
    require_negative(f, "is_reduced_negative");
    const Int aa = abs(f.a());
    return 2 * abs(f.b()) <= aa && aa <= abs(f.c()) && sgn(f.a()) == sgn(f.c());
}

ReductionTrace reduce_negative(const QuadraticForm & f)
{
    require_negative(f, "reduce_negative");
    if (f.a() > 0)
        return reduce_positive_definite(f);
    ReductionTrace t = reduce_positive_definite(-f);
    for (auto & g : t.chain)
        g = -g;
    for (auto & b : t.b_sequence)
        b = -b;
    t.result = -t.result;
    return t;
}

bool is_reduced_positive(const QuadraticForm & f)
{
    const Int d = f.determinant();
    require_positive_nonsquare(d, "is_reduced_positive");
    const Int & b = f.b();
    const Int aa = abs(f.a());
    if (b <= 0 || b * b >= d)
        return false;
    if ((aa + b) * (aa + b) <= d)
        return false;
    return aa <= b || (aa - b) * (aa - b) < d;
}

ReductionTrace reduce_positive(const QuadraticForm & f)
{
    const Int s = require_positive_nonsquare(f.determinant(), "reduce_positive");
    ReductionTrace t = trivial_trace(f);
    QuadraticForm cur = f;
    while (!is_reduced_positive(cur)) {
        Int b1 = interval_residue(cur.b(), cur.c(), s);
        Step st = contiguous_step(cur, b1);
        t.b_sequence.push_back(b1);
        t.steps.push_back(st.map);
        t.total = t.total * st.map;
        t.chain.push_back(st.next);
        cur = st.next;
    }
    t.result = cur;
    return t;
}

ReductionTrace reduce(const QuadraticForm & f)
{
    if (f.determinant() < 0)
        return reduce_negative(f);
    return reduce_positive(f);
}

std::vector<QuadraticForm> enumerate_reduced_negative(const Int & d, EnumerationMethod method)
{
    if (d >= 0)
        throw std::domain_error("enumerate_reduced_negative: determinant " + d.get_str() +
                                " is not negative");
    const Int nd = -d;
    std::set<QuadraticForm> found;
    auto add = [&found](const Int & a, const Int & b, const Int & c) {
        found.insert(QuadraticForm(a, b, c));
        found.insert(QuadraticForm(-a, -b, -c));
    };

    if (method == EnumerationMethod::residues) {
        // a runs while 3a^2 <= 4|D|; b is a root of D modulo a, taken absolutely small.
        for (Int a = 1; 3 * a * a <= 4 * nd; ++a) {
            for (const Int & x : sqrt_mod(d, a)) {
                for (const Int & b : {x, Int(x - a)}) {
                    if (2 * abs(b) > a)
                        continue;
                    Int c = (b * b - d) / a;
                    if (a <= c)
                        add(a, b, c);
                }
            }
        }
    } else {
        // b^2 + |D| = a c over every b with 3b^2 <= |D|.
        for (Int b = 0; 3 * b * b <= nd; ++b) {
            const Int n = b * b + nd;
            for (Int a = std::max(Int(1), Int(2 * b)); a * a <= n; ++a) {
                if (!mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t()))
                    continue;
                Int c = n / a;
                add(a, b, c);
                if (b != 0)
                    add(a, -b, c);
            }
        }
    }
    return {found.begin(), found.end()};
}

std::vector<QuadraticForm> enumerate_reduced_positive(const Int & d)
{
    const Int s = require_positive_nonsquare(d, "enumerate_reduced_positive");
    std::set<QuadraticForm> found;
    for (Int aa = 1; aa * aa < 4 * d; ++aa) {
        for (Int b = std::max(Int(1), Int(s - aa + 1)); b <= s; ++b) {
            Int num = b * b - d;
            if (!mpz_divisible_p(num.get_mpz_t(), aa.get_mpz_t()))
                continue;
            for (const Int & a : {aa, Int(-aa)}) {
                QuadraticForm f(a, b, num / a);
                if (is_reduced_positive(f))
                    found.insert(f);
            }
        }
    }
    return {found.begin(), found.end()};
}

UnimodularMap neighbor_map(const QuadraticForm & f)
{
    if (!is_reduced_positive(f))
        throw std::domain_error("neighbor: " + to_string(f) + " is not reduced");
    const Int s = isqrt(f.determinant());
    return contiguous_step(f, interval_residue(f.b(), f.c(), s)).map;
}

QuadraticForm neighbor(const QuadraticForm & f)
{
    if (!is_reduced_positive(f))
        throw std::domain_error("neighbor: " + to_string(f) + " is not reduced");
    const Int s = isqrt(f.determinant());
    return contiguous_step(f, interval_residue(f.b(), f.c(), s)).next;
}

Period period(const QuadraticForm & f)
{
    const QuadraticForm start = reduce_positive(f).result;
    Period p;
    QuadraticForm cur = start;
    do {
        p.forms.push_back(cur);
        cur = neighbor(cur);
    } while (!(cur == start));
    return p;
}

std::optional<UnimodularMap> equivalence_map(const QuadraticForm & f1, const QuadraticForm & f2)
{
    const Int d = f1.determinant();
    if (d == 0 || is_perfect_square(d))
        throw std::domain_error("equivalence test: determinant " + d.get_str() +
                                " is zero or a square, which is not supported");
    if (f2.determinant() != d)
        return std::nullopt;

    ReductionTrace t1 = reduce(f1);
    ReductionTrace t2 = reduce(f2);
    const QuadraticForm & r1 = t1.result;
    const QuadraticForm & r2 = t2.result;
    UnimodularMap link;  // r1 -> r2

    if (d < 0) {
        if (r1 == r2) {
            // identity
        } else if (r2 == opposite(r1) && 2 * abs(r1.b()) == abs(r1.a())) {
            link = {1, r1.a() == 2 * r1.b() ? -1 : 1, 0, 1};
        } else if (r2 == opposite(r1) && r1.a() == r1.c()) {
            link = {0, -1, 1, 0};
        } else {
            return std::nullopt;
        }
    } else {
        QuadraticForm cur = r1;
        while (!(cur == r2)) {
            link = link * neighbor_map(cur);
            cur = neighbor(cur);
            if (cur == r1)
                return std::nullopt;
        }
    }
    return t1.total * link * inverse(t2.total);
}

bool properly_equivalent(const QuadraticForm & f1, const QuadraticForm & f2)
{
    return equivalence_map(f1, f2).has_value();
}

}  // namespace gauss
