#include "gauss/forms.hpp"

#include <cctype>
#include <ostream>
#include <vector>

namespace gauss {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Int parse_integer(std::string_view token, std::string_view whole)
{
    token = trim(token);
    std::size_t i = 0;
    if (!token.empty() && (token[0] == '-' || token[0] == '+'))
        i = 1;
    if (i == token.size())
        throw FormSyntaxError("expected \"a,b,c\" with integer entries, got \"" +
                              std::string(whole) + "\"");
    for (std::size_t j = i; j < token.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(token[j])))
            throw FormSyntaxError("expected \"a,b,c\" with integer entries, got \"" +
                                  std::string(whole) + "\"");
    std::string digits(token.substr(token[0] == '+' ? 1 : 0));
    return Int(digits, 10);
}

std::vector<Int> split_triple(std::string_view text)
{
    std::vector<Int> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(parse_integer(text.substr(start, comma - start), text));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (out.size() != 3)
        throw FormSyntaxError("expected \"a,b,c\" (three comma-separated integers), got \"" +
                              std::string(text) + "\"");
    return out;
}

}  // namespace

QuadraticForm::QuadraticForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
{
    if (a_ == 0 && b_ == 0 && c_ == 0)
        throw std::domain_error("degenerate form (0,0,0)");
}

bool QuadraticForm::operator<(const QuadraticForm & o) const
{
    if (int r = cmp_abs(a_, o.a_); r != 0)
        return r < 0;
    if (int sa = mpz_sgn(a_.get_mpz_t()), so = mpz_sgn(o.a_.get_mpz_t()); sa != so)
        return sa < so;
    if (b_ != o.b_)
        return b_ < o.b_;
    return c_ < o.c_;
}

UnimodularMap UnimodularMap::operator*(const UnimodularMap & r) const
{
    return {alpha * r.alpha + beta * r.gamma, alpha * r.beta + beta * r.delta,
            gamma * r.alpha + delta * r.gamma, gamma * r.beta + delta * r.delta};
}

Int determinant(const QuadraticForm & f) { return f.determinant(); }

QuadraticForm transform(const QuadraticForm & f, const UnimodularMap & t)
{
    const Int & a = f.a();
    const Int & b = f.b();
    const Int & c = f.c();
    Int a1 = a * t.alpha * t.alpha + 2 * b * t.alpha * t.gamma + c * t.gamma * t.gamma;
    Int b1 = a * t.alpha * t.beta + b * (t.alpha * t.delta + t.beta * t.gamma) + c * t.gamma * t.delta;
    Int c1 = a * t.beta * t.beta + 2 * b * t.beta * t.delta + c * t.delta * t.delta;
    return {a1, b1, c1};
}

Int content(const QuadraticForm & f)
{
    Int g = gcd(f.a(), f.b());
    return gcd(g, f.c());
}

bool is_primitive(const QuadraticForm & f) { return content(f) == 1; }

QuadraticForm opposite(const QuadraticForm & f) { return {f.a(), -f.b(), f.c()}; }

bool is_contiguous(const QuadraticForm & f1, const QuadraticForm & f2)
{
    if (f1.determinant() != f2.determinant() || f1.c() != f2.a())
        return false;
    if (f1.c() == 0)
        return f1.b() == -f2.b();
    return mod(f1.b() + f2.b(), abs(f1.c())) == 0;
}

Representation representation_value(const QuadraticForm & f, const Int & m, const Int & n)
{
    ExtGcd e = ext_gcd(m, n);
    if (e.g != 1)
        throw std::domain_error("representation_value: (" + m.get_str() + ", " + n.get_str() +
                                ") are not coprime");
    Int value = f(m, n);
    if (value == 0)
        throw std::domain_error("representation_value: the represented value is zero");
    const Int & a = f.a();
    const Int & b = f.b();
    const Int & c = f.c();
    Int theta = e.u * (b * m + c * n) - e.v * (a * m + b * n);
    theta = mod(theta, abs(value));
    return {f, m, n, value, e.u, e.v, theta};
}

std::pair<Int, Int> product_representation(const QuadraticForm & f, const Int & g, const Int & h,
                                           const Int & g1, const Int & h1)
{
    Int p = f.a() * g * g1 + f.b() * (g * h1 + h * g1) + f.c() * h * h1;
    Int q = g * h1 - h * g1;
    return {p, q};
}

QuadraticForm form_from_representation(const Representation & r)
{
    const Int d = r.form.determinant();
    Int num = r.theta * r.theta - d;
    if (!mpz_divisible_p(num.get_mpz_t(), r.value.get_mpz_t()))
        throw std::domain_error("form_from_representation: theta^2 - D not divisible by M");
    Int c = num / r.value;
    return {r.value, r.theta, c};
}

QuadraticForm parse_form(std::string_view text)
{
    auto v = split_triple(text);
    return {v[0], v[1], v[2]};
}

QuadraticForm parse_form_full(std::string_view text)
{
    auto v = split_triple(text);
    if (mpz_odd_p(v[1].get_mpz_t()))
        throw std::domain_error("middle coefficient " + v[1].get_str() +
                                " is odd; forms ax^2 + 2bxy + cy^2 need an even xy coefficient");
    return {v[0], v[1] / 2, v[2]};
}

std::string to_string(const QuadraticForm & f)
{
    return f.a().get_str() + "," + f.b().get_str() + "," + f.c().get_str();
}

std::string to_polynomial(const QuadraticForm & f)
{
    std::string out;
    auto term = [&out](const Int & coef, const char * mono) {
        if (coef == 0)
            return;
        Int mag = abs(coef);
        if (out.empty())
            out += coef < 0 ? "-" : "";
        else
            out += coef < 0 ? " - " : " + ";
        if (mag != 1)
            out += mag.get_str();
        out += mono;
    };
    term(f.a(), "x^2");
    term(2 * f.b(), "xy");
    term(f.c(), "y^2");
    return out;
}

std::ostream & operator<<(std::ostream & os, const QuadraticForm & f)
{
    return os << '(' << f.a() << ',' << f.b() << ',' << f.c() << ')';
}

}  // namespace gauss
