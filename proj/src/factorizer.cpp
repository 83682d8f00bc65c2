#include "gauss/factorizer.hpp"

#include "gauss/composition.hpp"
#include "gauss/reduction.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace gauss {

namespace {

unsigned long kernel_bound(const Int & raw)
{
    Int r = isqrt(abs(raw)) + 1;
    return r.fits_ulong_p() ? std::max(2ul, r.get_ui()) : default_trial_bound;
}

WitnessedResidue assemble(const Int & raw, const Int & kernel, const Int & root, std::optional<Int> witness,
                          Provenance prov, const Int & modulus)
{
    if (witness) {
        *witness = mod(*witness, modulus);
        if (mod(*witness * *witness - raw, modulus) != 0)
            throw std::logic_error("witness " + witness->get_str() + " does not square to " + raw.get_str() +
                                   " mod " + modulus.get_str());
    }
    return {raw, kernel, root, std::move(witness), std::move(prov), modulus};
}

WitnessedResidue from_factorization(const Int & raw, const Factorization & fz, std::optional<Int> witness,
                                    Provenance prov, const Int & modulus)
{
    Int kernel = fz.sign, root = 1;
    for (const auto & pp : fz.factors) {
        if (pp.exponent % 2)
            kernel *= pp.prime;
        Int half;
        mpz_pow_ui(half.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent / 2);
        root *= half;
    }
    return assemble(raw, kernel, root, std::move(witness), std::move(prov), modulus);
}

std::string form_detail(const QuadraticForm & f) { return "(" + to_string(f) + ")"; }

void add_factor(std::vector<Int> & out, const Int & g, const Int & M)
{
    if (g > 1 && g < M && std::find(out.begin(), out.end(), g) == out.end())
        out.push_back(g);
}

// Row of the GF(2) matrix: a squarefree kernel given by its primes and sign.
struct Row {
    std::vector<Int> primes;  // ascending
    bool negative = false;
    std::optional<Int> witness;  // witness^2 = kernel (mod M)
    std::vector<std::size_t> sources;

    Int kernel() const
    {
        Int k = negative ? -1 : 1;
        for (const auto & p : primes)
            k *= p;
        return k;
    }
    bool zero() const { return primes.empty() && !negative; }
    bool has(const Int & p) const { return std::binary_search(primes.begin(), primes.end(), p); }
};

template <class T>
std::vector<T> symmetric_difference(const std::vector<T> & a, const std::vector<T> & b)
{
    std::vector<T> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// row <- row * pivot, dividing out the square of the shared primes.
void multiply_into(Row & row, const Row & pivot, const Int & M, std::vector<Int> & early)
{
    std::vector<Int> shared;
    std::set_intersection(row.primes.begin(), row.primes.end(), pivot.primes.begin(), pivot.primes.end(),
                          std::back_inserter(shared));
    Int t = 1;
    for (const auto & p : shared)
        t *= p;
    if (row.witness && pivot.witness) {
        auto inv = inverse_mod(t, M);
        if (inv) {
            row.witness = mod(*row.witness * *pivot.witness * *inv, M);
        } else {
            add_factor(early, gcd(t, M), M);
            row.witness.reset();
        }
    } else {
        row.witness.reset();
    }
    row.primes = symmetric_difference(row.primes, pivot.primes);
    row.negative = row.negative != pivot.negative;
    std::vector<std::size_t> src = row.sources;
    std::sort(src.begin(), src.end());
    std::vector<std::size_t> psrc = pivot.sources;
    std::sort(psrc.begin(), psrc.end());
    row.sources = symmetric_difference(src, psrc);
}

}  // namespace

std::string to_string(Source s)
{
    switch (s) {
    case Source::period_form: return "period-form";
    case Source::class_multiple: return "class-multiple";
    case Source::square_representation: return "square-representation";
    case Source::combination: return "combination";
    }
    return "unknown";
}

WitnessedResidue make_residue(const Int & raw, std::optional<Int> witness, Provenance prov, const Int & modulus)
{
    if (raw == 0)
        throw std::domain_error("make_residue: zero is not a usable residue");
    if (modulus < 1)
        throw std::domain_error("make_residue: modulus must be positive");
    SquarefreeSplit sf = squarefree_part(raw, kernel_bound(raw));
    return assemble(raw, sf.kernel, sf.root, std::move(witness), std::move(prov), modulus);
}

QuadraticForm seed_form(const Int & M, const Int & k)
{
    if (M < 1 || k < 1)
        throw std::domain_error("seed_form: M and k must be positive");
    const Int D = k * M;
    if (is_perfect_square(D))
        throw std::domain_error("seed_form: kM = " + D.get_str() + " is a perfect square (its root " +
                                isqrt(D).get_str() + " already leads to a factor)");
    const Int s = isqrt(D);
    return {Int(1), s, s * s - D};
}

Harvest harvest_from_period(const Int & M, const Int & k, unsigned steps)
{
    Harvest out;
    QuadraticForm f = seed_form(M, k);
    Int w = 1;  // w^2 = a (mod M) for the current form
    for (unsigned j = 0; j < steps; ++j) {
        auto inv = inverse_mod(w, M);
        if (!inv) {
            add_factor(out.early_factors, gcd(w, M), M);
            break;
        }
        // b^2 - a c = kM, so c = (b / w)^2 (mod M).
        Int wc = mod(f.b() * *inv, M);
        out.residues.push_back(make_residue(
            f.c(), wc,
            {Source::period_form, "k=" + k.get_str() + " step=" + std::to_string(j) + " form=" + form_detail(f)},
            M));
        w = wc;
        f = neighbor(f);
    }
    return out;
}

Harvest harvest_square_representations(const Int & M, const std::vector<Int> & multipliers, unsigned window,
                                       unsigned long smooth_bound)
{
    Harvest out;
    for (const Int & k : multipliers) {
        if (k < 1)
            throw std::domain_error("harvest_square_representations: multipliers must be positive");
        const Int centre = isqrt(Int(M / k));
        Int lo = centre - window;
        if (lo < 1)
            lo = 1;
        for (Int x = lo; x <= centre + window; ++x) {
            Int r = k * x * x - M;
            if (r == 0) {
                add_factor(out.early_factors, gcd(x, M), M);
                continue;
            }
            Int kr = k * r;
            Factorization fz = trial_factor(kr, smooth_bound);
            if (!fz.complete())
                continue;
            out.residues.push_back(from_factorization(
                kr, fz, Int(k * x), {Source::square_representation, "k=" + k.get_str() + " x=" + x.get_str()}, M));
        }
    }
    return out;
}

std::optional<QuadraticForm> class_seed_form(const Int & M, const Int & k, const Int & a)
{
    if (a < 2)
        throw std::domain_error("class_seed_form: leading coefficient must be at least 2");
    const Int D = k * M;
    for (const Int & b : sqrt_mod(-D, a)) {
        QuadraticForm f(a, b, (b * b + D) / a);
        if (gcd(gcd(f.a(), 2 * f.b()), f.c()) == 1)
            return f;
    }
    return std::nullopt;
}

Harvest harvest_from_class_multiples(const Int & M, const QuadraticForm & seed, unsigned n_max,
                                     unsigned long smooth_bound)
{
    Harvest out;
    const Int & a = seed.a();
    for (const auto & cm : class_multiples(seed, n_max)) {
        const QuadraticForm & r = cm.reduced;
        const bool even = cm.index % 2 == 0;
        const std::pair<Int, const char *> picks[] = {
            {even ? r.a() : Int(a * r.a()), even ? "a'" : "a*a'"},
            {even ? r.c() : Int(a * r.c()), even ? "c'" : "a*c'"},
        };
        for (const auto & [v, label] : picks) {
            Factorization fz = trial_factor(v, smooth_bound);
            if (!fz.complete())
                continue;
            out.residues.push_back(from_factorization(
                v, fz, std::nullopt,
                {Source::class_multiple,
                 "n=" + std::to_string(cm.index) + " " + label + " form=" + form_detail(r)},
                M));
        }
    }
    return out;
}

Harvest combine(const std::vector<WitnessedResidue> & residues, const Int & M)
{
    Harvest out;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const auto & r = residues[i];
        Row row;
        Factorization fz = trial_factor(r.kernel, kernel_bound(r.kernel));
        if (!fz.complete())
            fz.factors.push_back({fz.cofactor, 1});
        for (const auto & pp : fz.factors)
            row.primes.push_back(pp.prime);
        std::sort(row.primes.begin(), row.primes.end());
        row.negative = r.kernel < 0;
        if (r.witness) {
            if (auto inv = inverse_mod(r.root, M))
                row.witness = mod(*r.witness * *inv, M);
            else
                add_factor(out.early_factors, gcd(r.root, M), M);
        }
        row.sources = {i};
        rows.push_back(std::move(row));
    }

    // Columns: primes in descending order, then the sign.
    std::set<Int> all;
    for (const auto & r : rows)
        all.insert(r.primes.begin(), r.primes.end());
    std::vector<std::optional<Int>> columns;
    for (auto it = all.rbegin(); it != all.rend(); ++it)
        columns.emplace_back(*it);
    columns.emplace_back(std::nullopt);

    std::vector<bool> is_pivot(rows.size(), false);
    auto has = [](const Row & r, const std::optional<Int> & col) { return col ? r.has(*col) : r.negative; };
    for (const auto & col : columns) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (is_pivot[i] || !has(rows[i], col))
                continue;
            if (!best || cmp_abs(rows[i].kernel(), rows[*best].kernel()) < 0)
                best = i;
        }
        if (!best)
            continue;
        is_pivot[*best] = true;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != *best && has(rows[i], col))
                multiply_into(rows[i], rows[*best], M, out.early_factors);
    }

    for (const auto & row : rows) {
        if (row.zero()) {
            // u^2 = 1 (mod M); u other than +-1 splits M.
            if (row.witness)
                add_factor(out.early_factors, gcd(*row.witness - 1, M), M);
            continue;
        }
        std::string detail;
        for (std::size_t s : row.sources) {
            if (!detail.empty())
                detail += " * ";
            detail += residues[s].kernel.get_str();
        }
        const Int k = row.kernel();
        out.residues.push_back(assemble(k, k, Int(1), row.witness, {Source::combination, detail}, M));
    }
    std::sort(out.residues.begin(), out.residues.end(), [](const WitnessedResidue & x, const WitnessedResidue & y) {
        int c = cmp_abs(x.kernel, y.kernel);
        return c != 0 ? c < 0 : x.kernel < y.kernel;
    });
    std::sort(out.early_factors.begin(), out.early_factors.end());
    return out;
}

std::vector<Int> sieve_candidates(const std::vector<Int> & kernels, unsigned long limit)
{
    if (kernels.empty())
        throw std::domain_error("sieve_candidates: no residues to sieve with");
    std::vector<Int> out;
    for (unsigned long p : primes_up_to(limit)) {
        if (p == 2)
            continue;
        const Int pp(p);
        bool ok = std::all_of(kernels.begin(), kernels.end(), [&pp](const Int & r) { return jacobi(r, pp) != -1; });
        if (ok)
            out.push_back(pp);
    }
    return out;
}

std::vector<Int> sieve_candidates(const std::vector<WitnessedResidue> & residues, unsigned long limit)
{
    std::vector<Int> kernels;
    for (const auto & r : residues)
        kernels.push_back(r.kernel);
    return sieve_candidates(kernels, limit);
}

Int FactorReport::product() const
{
    Int v = unfactored;
    for (const auto & pp : factors) {
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        v *= pw;
    }
    return v;
}

namespace {

Harvest harvest_one(const Int & n, const Int & k, const FactorConfig & cfg)
{
    Harvest h;
    auto absorb = [&h](Harvest && x) {
        for (auto & r : x.residues)
            h.residues.push_back(std::move(r));
        for (auto & e : x.early_factors)
            h.early_factors.push_back(e);
    };
    if (!is_perfect_square(k * n))
        absorb(harvest_from_period(n, k, cfg.steps));
    absorb(harvest_square_representations(n, {k}, cfg.window, cfg.smooth_bound));
    if (cfg.class_seed) {
        if (auto seed = class_seed_form(n, k, *cfg.class_seed))
            absorb(harvest_from_class_multiples(n, *seed, cfg.class_count, cfg.smooth_bound));
    }
    return h;
}

class Pipeline {
  public:
    Pipeline(const FactorConfig & cfg, FactorReport & rep) : cfg_(cfg), rep_(rep) {}

    void strip_small(Int & n)
    {
        for (unsigned long p : primes_up_to(cfg_.small_prime_bound)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            if (e)
                primes_[Int(p)] += e;
        }
    }

    void process(const Int & n, unsigned mult)
    {
        if (n == 1)
            return;
        const Int b1 = Int(cfg_.small_prime_bound) + 1;
        if (n < b1 * b1) {
            primes_[n] += mult;
            return;
        }
        if (mpz_perfect_power_p(n.get_mpz_t())) {
            for (unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2); e >= 2; --e) {
                Int r;
                if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                    process(r, mult * static_cast<unsigned>(e));
                    return;
                }
            }
        }
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0 && is_prime_by_trial(n)) {
            primes_[n] += mult;
            return;
        }
        Int d = split(n);
        if (d == 0) {
            rep_.status = FactorStatus::failed;
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), n.get_mpz_t(), mult);
            rep_.unfactored *= pw;
            if (!rep_.message.empty())
                rep_.message += "; ";
            rep_.message += "no divisor of " + n.get_str() + " found; raise steps, window or multipliers";
            return;
        }
        process(d, mult);
        process(n / d, mult);
    }

    void finish()
    {
        for (const auto & [p, e] : primes_)
            rep_.factors.push_back({p, e});
    }

  private:
    // A nontrivial divisor of the composite n, or 0.
    Int split(const Int & n)
    {
        std::vector<Harvest> parts;
        if (cfg_.parallel && cfg_.multipliers.size() > 1) {
            std::vector<std::future<Harvest>> futs;
            for (const Int & k : cfg_.multipliers)
                futs.push_back(std::async(std::launch::async, harvest_one, n, k, std::cref(cfg_)));
            for (auto & f : futs)
                parts.push_back(f.get());
        } else {
            for (const Int & k : cfg_.multipliers)
                parts.push_back(harvest_one(n, k, cfg_));
        }

        std::vector<Int> early;
        std::vector<WitnessedResidue> pool;
        for (auto & h : parts) {
            for (auto & e : h.early_factors)
                add_factor(early, e, n);
            for (auto & r : h.residues) {
                add_factor(early, gcd(r.raw, n), n);
                rep_.residues.push_back(r);
                if (abs(r.raw) != 1 && r.kernel != 1)
                    pool.push_back(std::move(r));
            }
        }
        std::sort(pool.begin(), pool.end(), [](const WitnessedResidue & x, const WitnessedResidue & y) {
            if (int c = cmp_abs(x.kernel, y.kernel); c != 0)
                return c < 0;
            if (x.kernel != y.kernel)
                return x.kernel < y.kernel;
            if (x.raw != y.raw)
                return x.raw < y.raw;
            return x.provenance.detail < y.provenance.detail;
        });

        Harvest combined = combine(pool, n);
        for (auto & e : combined.early_factors)
            add_factor(early, e, n);
        for (const auto & r : combined.residues)
            rep_.residues.push_back(r);

        std::vector<Int> kernels;
        for (const auto & r : combined.residues)
            kernels.push_back(r.kernel);
        Int d = 0;
        if (!kernels.empty()) {
            const Int lim = cfg_.limit ? Int(*cfg_.limit) : isqrt(n);
            if (!lim.fits_ulong_p())
                throw std::domain_error("factor: sieve limit " + lim.get_str() + " is out of range");
            for (const Int & p : sieve_candidates(kernels, lim.get_ui())) {
                const bool divides = mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0;
                rep_.survivors.push_back({n, p, divides});
                if (divides && d == 0)
                    d = p;
            }
        }
        std::sort(early.begin(), early.end());
        for (const auto & e : early)
            rep_.early_factors.push_back(e);
        if (d == 0 && !early.empty())
            d = early.front();
        return d;
    }

    const FactorConfig & cfg_;
    FactorReport & rep_;
    std::map<Int, unsigned> primes_;
};

}  // namespace

FactorReport factor(const Int & M, const FactorConfig & config)
{
    if (M < 1)
        throw std::domain_error("factor: input must be a positive integer, got " + M.get_str());
    if (config.multipliers.empty())
        throw std::domain_error("factor: at least one multiplier is required");
    for (const Int & k : config.multipliers)
        if (k < 1)
            throw std::domain_error("factor: multipliers must be positive");
    if (config.class_seed && *config.class_seed < 2)
        throw std::domain_error("factor: class seed must be at least 2");

    FactorReport rep;
    rep.input = M;
    Pipeline pipe(config, rep);
    Int n = M;
    pipe.strip_small(n);
    pipe.process(n, 1);
    pipe.finish();
    if (rep.product() != M)
        throw std::logic_error("factor: factors do not multiply back to the input");
    return rep;
}

}  // namespace gauss
