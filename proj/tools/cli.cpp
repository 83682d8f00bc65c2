#include "cli.hpp"

#include "gauss/composition.hpp"
#include "gauss/factorizer.hpp"
#include "gauss/genus.hpp"
#include "gauss/reduction.hpp"
#include "gauss/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

namespace gauss::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::vector<std::string> forms;
    std::string det;
    std::string n;
    int method = 1;
    std::string multipliers = "1,2,3";
    unsigned steps = 20;
    unsigned long smooth_bound = 100;
    unsigned window = 50;
    std::string limit;
    std::string class_seed;
    unsigned class_count = 10;
    unsigned count = 10;
    std::string multiplier = "1";
    std::string modulus;
    std::string format = "text";
    std::string convention = "half";
    unsigned long seed = 0;
};

Int parse_int(const std::string & s, const char * flag)
{
    std::string t = s;
    if (!t.empty() && t[0] == '+')
        t.erase(0, 1);
    Int v;
    if (t.empty() || v.set_str(t, 10) != 0)
        throw UsageError(std::string(flag) + ": expected an integer, got \"" + s + "\"");
    return v;
}

std::vector<Int> parse_int_list(const std::string & s, const char * flag)
{
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_int(item, flag));
    if (out.empty())
        throw UsageError(std::string(flag) + ": expected a comma-separated list of integers");
    return out;
}

QuadraticForm read_form(const Options & o, const std::string & text)
{
    return o.convention == "full" ? parse_form_full(text) : parse_form(text);
}

std::vector<QuadraticForm> need_forms(const Options & o, std::size_t count, const char * cmd)
{
    if (o.forms.size() != count)
        throw UsageError(std::string(cmd) + " expects " + std::to_string(count) + " --form argument" +
                         (count == 1 ? "" : "s") + ", got " + std::to_string(o.forms.size()));
    std::vector<QuadraticForm> fs;
    for (const auto & t : o.forms)
        fs.push_back(read_form(o, t));
    return fs;
}

json form_json(const QuadraticForm & f) { return to_string(f); }

json forms_json(const std::vector<QuadraticForm> & fs)
{
    json a = json::array();
    for (const auto & f : fs)
        a.push_back(form_json(f));
    return a;
}

json map_json(const UnimodularMap & t)
{
    return json::array({int_json(t.alpha), int_json(t.beta), int_json(t.gamma), int_json(t.delta)});
}

// Each command fills `result` for JSON and writes its text rendering to `text`.
using Handler = int (*)(const Options &, json & result, std::ostream & text);

int cmd_reduce(const Options & o, json & result, std::ostream & text)
{
    const QuadraticForm f = need_forms(o, 1, "reduce")[0];
    ReductionTrace t = reduce(f);
    json bs = json::array();
    for (const auto & b : t.b_sequence)
        bs.push_back(int_json(b));
    result = {{"determinant", int_json(f.determinant())},
              {"chain", forms_json(t.chain)},
              {"b_sequence", bs},
              {"transform", map_json(t.total)},
              {"result", form_json(t.result)},
              {"polynomial", to_polynomial(t.result)}};
    text << "determinant: " << f.determinant() << '\n';
    for (std::size_t i = 0; i < t.chain.size(); ++i)
        text << "  " << to_string(t.chain[i]) << '\n';
    text << "b-sequence:";
    for (const auto & b : t.b_sequence)
        text << ' ' << b;
    text << '\n' << "polynomial: " << to_polynomial(t.result) << '\n';
    text << "reduced: " << to_string(t.result) << '\n';
    return 0;
}

int cmd_enumerate(const Options & o, json & result, std::ostream & text)
{
    if (o.det.empty())
        throw UsageError("enumerate requires --det");
    const Int d = parse_int(o.det, "--det");
    if (o.method != 1 && o.method != 2)
        throw UsageError("--method must be 1 or 2");
    std::vector<QuadraticForm> fs = d < 0 ? enumerate_reduced_negative(d, static_cast<EnumerationMethod>(o.method))
                                          : enumerate_reduced_positive(d);
    result = forms_json(fs);
    for (const auto & f : fs)
        text << to_string(f) << '\n';
    text << "count: " << fs.size() << '\n';
    return 0;
}

int cmd_period(const Options & o, json & result, std::ostream & text)
{
    const QuadraticForm f = need_forms(o, 1, "period")[0];
    Period p = period(f);
    result = {{"forms", forms_json(p.forms)}, {"length", p.length()}};
    for (const auto & g : p.forms)
        text << to_string(g) << '\n';
    text << "length: " << p.length() << '\n';
    return 0;
}

int cmd_equivalent(const Options & o, json & result, std::ostream & text)
{
    const auto fs = need_forms(o, 2, "equivalent");
    auto t = equivalence_map(fs[0], fs[1]);
    result = {{"equivalent", t.has_value()}, {"transform", t ? map_json(*t) : json(nullptr)}};
    text << "equivalent: " << (t ? "yes" : "no") << '\n';
    if (t)
        text << "transform: " << t->alpha << ',' << t->beta << ',' << t->gamma << ',' << t->delta << '\n';
    return 0;
}

int cmd_character(const Options & o, json & result, std::ostream & text)
{
    const QuadraticForm f = need_forms(o, 1, "character")[0];
    CharacterProfile c = character(f);
    result = {{"tokens", c.tokens()}, {"text", c.str()}};
    text << c.str() << '\n';
    return 0;
}

int cmd_compose(const Options & o, json & result, std::ostream & text)
{
    const auto fs = need_forms(o, 2, "compose");
    const QuadraticForm g = compose_same_det(fs[0], fs[1]);
    const QuadraticForm r = reduce(g).result;
    result = {{"composed", form_json(g)}, {"reduced", form_json(r)}};
    text << "composed: " << to_string(g) << '\n' << "reduced: " << to_string(r) << '\n';
    return 0;
}

int cmd_class_multiples(const Options & o, json & result, std::ostream & text)
{
    const QuadraticForm f = need_forms(o, 1, "class-multiples")[0];
    result = json::array();
    for (const auto & cm : class_multiples(f, o.count)) {
        result.push_back({{"index", cm.index}, {"composed", form_json(cm.composed)}, {"reduced", form_json(cm.reduced)}});
        text << cm.index << "C: " << to_string(cm.composed) << " ~ " << to_string(cm.reduced) << '\n';
    }
    return 0;
}

int cmd_sqrtform(const Options & o, json & result, std::ostream & text)
{
    const QuadraticForm f = need_forms(o, 1, "sqrtform")[0];
    if (o.modulus.empty())
        throw UsageError("sqrtform requires --modulus");
    const Int M = parse_int(o.multiplier, "--multiplier");
    const Int m = parse_int(o.modulus, "--modulus");
    result = json::array();
    for (const auto & v : sqrt_of_form(f, M, m)) {
        result.push_back({{"g", int_json(v.g)}, {"h", int_json(v.h)}});
        text << v.g << ',' << v.h << '\n';
    }
    text << "count: " << result.size() << '\n';
    return 0;
}

int cmd_factor(const Options & o, json & result, std::ostream & text)
{
    if (o.n.empty())
        throw UsageError("factor requires --n");
    const Int M = parse_int(o.n, "--n");
    FactorConfig cfg;
    cfg.multipliers = parse_int_list(o.multipliers, "--multipliers");
    cfg.steps = o.steps;
    cfg.window = o.window;
    cfg.smooth_bound = o.smooth_bound;
    cfg.class_count = o.class_count;
    if (!o.class_seed.empty())
        cfg.class_seed = parse_int(o.class_seed, "--class-seed");
    if (!o.limit.empty()) {
        Int lim = parse_int(o.limit, "--limit");
        if (lim < 1 || !lim.fits_ulong_p())
            throw UsageError("--limit must be a positive machine-size integer");
        cfg.limit = lim.get_ui();
    }
    FactorReport rep = factor(M, cfg);
    result = to_json(rep);

    text << M << " =";
    bool first = true;
    for (const auto & pp : rep.factors) {
        text << (first ? " " : " * ") << pp.prime;
        if (pp.exponent > 1)
            text << '^' << pp.exponent;
        first = false;
    }
    if (rep.unfactored != 1)
        text << (first ? " " : " * ") << '[' << rep.unfactored << ']';
    if (first && rep.unfactored == 1)
        text << " 1";
    text << '\n';
    if (rep.status == FactorStatus::failed) {
        text << "incomplete: " << rep.message << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Binary quadratic forms: reduction, genera, composition and factoring"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&o](CLI::App * sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", o.seed, "Seed for randomized internals (none at present)");
    };
    auto add_forms = [&o](CLI::App * sub, const char * help) {
        sub->add_option("--form", o.forms, help)->required()->allow_extra_args(false);
        sub->add_option("--convention", o.convention,
                        "half: a,b,c means ax^2+2bxy+cy^2; full: a,B,c means ax^2+Bxy+cy^2")
            ->check(CLI::IsMember({"half", "full"}));
    };

    std::vector<std::pair<CLI::App *, Handler>> commands;

    auto * reduce_cmd = app.add_subcommand("reduce", "Reduce a form, printing the contiguous chain");
    add_forms(reduce_cmd, "Form a,b,c");
    commands.emplace_back(reduce_cmd, cmd_reduce);

    auto * enum_cmd = app.add_subcommand("enumerate", "List every reduced form of a determinant");
    enum_cmd->add_option("--det", o.det, "Determinant D")->required();
    enum_cmd->add_option("--method", o.method, "1: residues, 2: factor pairs (negative D)");
    commands.emplace_back(enum_cmd, cmd_enumerate);

    auto * period_cmd = app.add_subcommand("period", "Period of a positive non-square determinant form");
    add_forms(period_cmd, "Form a,b,c");
    commands.emplace_back(period_cmd, cmd_period);

    auto * eq_cmd = app.add_subcommand("equivalent", "Test proper equivalence of two forms");
    add_forms(eq_cmd, "Form a,b,c (give twice)");
    commands.emplace_back(eq_cmd, cmd_equivalent);

    auto * char_cmd = app.add_subcommand("character", "Complete character of a primitive form");
    add_forms(char_cmd, "Form a,b,c");
    commands.emplace_back(char_cmd, cmd_character);

    auto * comp_cmd = app.add_subcommand("compose", "Compose two forms of one determinant");
    add_forms(comp_cmd, "Form a,b,c (give twice)");
    commands.emplace_back(comp_cmd, cmd_compose);

    auto * cm_cmd = app.add_subcommand("class-multiples", "Reduced representatives of C, 2C, ..., nC");
    add_forms(cm_cmd, "Positive definite form a,b,c");
    cm_cmd->add_option("--count", o.count, "Number of multiples");
    commands.emplace_back(cm_cmd, cmd_class_multiples);

    auto * sq_cmd = app.add_subcommand("sqrtform", "All values of sqrt(M (a,b,c)) modulo m");
    add_forms(sq_cmd, "Form a,b,c");
    sq_cmd->add_option("--multiplier", o.multiplier, "Multiplier M");
    sq_cmd->add_option("--modulus", o.modulus, "Modulus m")->required();
    commands.emplace_back(sq_cmd, cmd_sqrtform);

    auto * fac_cmd = app.add_subcommand("factor", "Factor an integer with the residue sieve");
    fac_cmd->add_option("--n", o.n, "Integer to factor")->required();
    fac_cmd->add_option("--multipliers", o.multipliers, "Comma-separated multipliers k");
    fac_cmd->add_option("--steps", o.steps, "Period forms per multiplier");
    fac_cmd->add_option("--window", o.window, "Square-representation window");
    fac_cmd->add_option("--smooth-bound", o.smooth_bound, "Largest prime allowed in harvested residues");
    fac_cmd->add_option("--limit", o.limit, "Sieve limit (default isqrt(n))");
    fac_cmd->add_option("--class-seed", o.class_seed, "Leading coefficient of a class-multiple seed");
    fac_cmd->add_option("--class-count", o.class_count, "Class multiples to walk");
    commands.emplace_back(fac_cmd, cmd_factor);

    for (auto & [sub, h] : commands)
        add_format(sub);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::string echo;
    for (const auto & a : args)
        echo += (echo.empty() ? "" : " ") + a;

    for (auto & [sub, h] : commands) {
        if (!sub->parsed())
            continue;
        json result;
        std::ostringstream text;
        int status;
        try {
            status = h(o, result, text);
        } catch (const UsageError & e) {
            err << "error: " << e.what() << '\n';
            return 2;
        } catch (const FormSyntaxError & e) {
            err << "error: " << e.what() << '\n';
            return 2;
        } catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        if (o.format == "json") {
            json env = {{"command", sub->get_name()}, {"input_echo", echo}, {"result", result}, {"format", "json"}};
            out << env.dump(2) << '\n';
        } else {
            out << text.str();
        }
        return status;
    }
    err << "error: no subcommand given\n";
    return 2;
}

}  // namespace gauss::cli
