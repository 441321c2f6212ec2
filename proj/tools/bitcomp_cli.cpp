#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bitcomp/asymptotics.hpp"
#include "bitcomp/densities.hpp"
#include "bitcomp/exact_means.hpp"
#include "bitcomp/poisson_model.hpp"
#include "bitcomp/sim_harness.hpp"

namespace {

using namespace bitcomp;

struct Options {
    long long n = -1;
    double lambda = -1;
    std::string grid;
    std::string formula;
    std::string stat = "quicksort";
    std::string density_file;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    int digits = 12;
    std::size_t depth_cap = kDefaultDepthCap;
    int truncation_k = ExpansionConstants::default_truncation;
    bool refined = false;
    std::string format = "table";
    std::string out;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot open output file: " + opt.out);
    f << text;
}

std::vector<double> parse_grid(const std::string& grid) {
    std::vector<double> pts;
    if (grid.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream in(grid);
        if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("bad grid, expected a:b:step");
        for (double x = a; x <= b + 1e-9; x += step) pts.push_back(x);
    } else {
        std::istringstream in(grid);
        std::string tok;
        while (std::getline(in, tok, ',')) pts.push_back(std::stod(tok));
    }
    if (pts.empty()) throw std::invalid_argument("empty grid");
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] <= pts[i - 1]) throw std::invalid_argument("grid must be strictly increasing");
    return pts;
}

std::shared_ptr<const DensitySpec> load_density(const Options& opt) {
    if (opt.density_file.empty())
        return std::make_shared<const DensitySpec>(DensitySpec::uniform());
    return std::make_shared<const DensitySpec>(DensitySpec::from_json_file(opt.density_file));
}

int run_exact(const Options& opt) {
    if (opt.n < 0) throw std::invalid_argument("exact requires --n >= 0");
    const unsigned long n = static_cast<unsigned long>(opt.n);
    std::ostringstream s;
    if (opt.formula == "cancellation") {
        const auto [max_term, result] = cancellation_report(n);
        s << "n " << n << "\nformula cancellation\nmax_term " << max_term
          << "\nresult " << result << "\n";
        emit(opt, s.str());
        return 0;
    }
    Rational v;
    if (opt.formula == "key_mean") v = exact_key_mean(n);
    else if (opt.formula == "key_mean_altsum") v = exact_key_mean_altsum(n);
    else if (opt.formula == "bit_mean") v = exact_bit_mean(n);
    else if (opt.formula == "bitsquick_mean") v = exact_bitsquick_mean(n);
    else if (opt.formula == "savings_mean") v = exact_savings_mean(n);
    else if (opt.formula == "harmonic") v = harmonic(n);
    else throw std::invalid_argument("unknown exact formula: " + opt.formula);
    s << "n " << n << "\nformula " << opt.formula << "\nexact " << v.str()
      << "\ndecimal " << to_decimal_string(v, opt.digits) << "\n";
    emit(opt, s.str());
    return 0;
}

int run_asympt(const Options& opt) {
    const double x = opt.n >= 0 ? static_cast<double>(opt.n) : opt.lambda;
    if (!(x > 0)) throw std::invalid_argument("asympt requires --n or --lambda");
    const int k = opt.truncation_k;
    double value;
    if (opt.formula == "bit_mean") value = bit_mean_asymptotic(x);
    else if (opt.formula == "key_mean") value = key_mean_asymptotic(x);
    else if (opt.formula == "bitsquick_mean") value = bitsquick_mean_asymptotic(x);
    else if (opt.formula == "rice_bit_mean")
        value = rice_exact_bit_mean(static_cast<unsigned long>(x), k);
    else if (opt.formula == "rice_key_mean")
        value = rice_exact_key_mean(static_cast<unsigned long>(x));
    else if (opt.formula == "periodic_pi") value = periodic_pi(x, k);
    else if (opt.formula == "periodic_pi_tilde") value = periodic_pi_tilde(x, k);
    else throw std::invalid_argument("unknown asympt formula: " + opt.formula);

    std::ostringstream s;
    s.precision(15);
    s << "x " << x << "\nformula " << opt.formula << "\nvalue " << value << "\n";
    // rational oracle, where one exists in range
    const bool integral = x == std::floor(x);
    if (integral && x >= 2 && x <= 5000) {
        const auto n = static_cast<unsigned long>(x);
        double oracle = NAN;
        if (opt.formula == "bit_mean" || opt.formula == "rice_bit_mean")
            oracle = static_cast<double>(exact_bit_mean(n));
        else if (opt.formula == "key_mean" || opt.formula == "rice_key_mean")
            oracle = static_cast<double>(exact_key_mean(n));
        else if (opt.formula == "bitsquick_mean")
            oracle = static_cast<double>(exact_bitsquick_mean(n));
        if (!std::isnan(oracle))
            s << "oracle " << oracle << "\ndiscrepancy " << value - oracle << "\n";
    }
    emit(opt, s.str());
    return 0;
}

int run_poisson(const Options& opt) {
    if (!(opt.lambda > 0)) throw std::invalid_argument("poisson requires --lambda > 0");
    std::ostringstream s;
    s.precision(15);
    s << "lambda " << opt.lambda << "\nstat " << opt.stat << "\n";
    if (opt.stat == "keys") {
        const double v = poisson_key_mean_exact(opt.lambda);
        s << "value " << v << "\n";
        if (opt.lambda >= 2)
            s << "asymptotic " << poisson_key_mean_asymptotic(opt.lambda, 4)
              << "\ndiscrepancy " << poisson_key_mean_asymptotic(opt.lambda, 4) - v << "\n";
    } else if (opt.stat == "bits") {
        const ValueWithError v = poisson_bit_mean_exact(opt.lambda);
        s << "value " << v.value << "\ntail_bound " << v.error_bound << "\n";
        if (opt.lambda <= 50)
            s << "series_discrepancy "
              << v.value - static_cast<double>(poisson_bit_mean_series(opt.lambda)) << "\n";
        if (opt.lambda >= 2) {
            const double a = poisson_bit_mean_asymptotic(opt.lambda, opt.refined);
            s << "asymptotic " << a << "\ndiscrepancy " << a - v.value << "\n";
        }
    } else if (opt.stat == "mu_f") {
        auto spec = load_density(opt);
        const int depth = std::min(opt.truncation_k > 8 ? opt.truncation_k : 20, 24);
        const ValueWithError v = mu_f(opt.lambda, *spec, depth);
        s << "depth " << depth << "\nvalue " << v.value << "\ntail_bound "
          << v.error_bound << "\n";
        if (spec->is_uniform()) {
            const ValueWithError oracle = poisson_bit_mean_exact(opt.lambda);
            s << "uniform_oracle " << oracle.value << "\ndiscrepancy "
              << v.value - oracle.value << "\n";
        }
    } else {
        throw std::invalid_argument("poisson --stat must be keys|bits|mu_f");
    }
    emit(opt, s.str());
    return 0;
}

int run_simulate(const Options& opt) {
    ExperimentConfig cfg;
    if (opt.lambda > 0) {
        cfg.poisson_model = true;
        cfg.lambda = opt.lambda;
    } else if (opt.n >= 0) {
        cfg.n = static_cast<std::size_t>(opt.n);
    } else {
        throw std::invalid_argument("simulate requires --n or --lambda");
    }
    if (!opt.density_file.empty()) cfg.density = load_density(opt);
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.depth_cap = opt.depth_cap;
    cfg.algorithms.clear();
    std::istringstream in(opt.stat);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "quicksort") cfg.algorithms.push_back(Algorithm::quicksort);
        else if (tok == "bitsquick") cfg.algorithms.push_back(Algorithm::bitsquick);
        else if (tok == "radix_exchange") cfg.algorithms.push_back(Algorithm::radix_exchange);
        else if (tok == "coupled") cfg.algorithms.push_back(Algorithm::coupled);
        else if (tok == "all")
            cfg.algorithms = {Algorithm::quicksort, Algorithm::bitsquick,
                              Algorithm::radix_exchange, Algorithm::coupled};
        else throw std::invalid_argument("unknown algorithm: " + tok);
    }
    if (cfg.algorithms.empty()) throw std::invalid_argument("empty algorithm set");

    const ExperimentResult result = run_experiment(cfg);
    if (opt.format == "csv") {
        emit(opt, to_csv(result, cfg));
    } else if (opt.format == "json") {
        emit(opt, to_json(result, cfg));
    } else {
        std::ostringstream s;
        s.precision(12);
        s << "statistic trials mean se min max\n";
        for (const auto& [name, st] : result.stats)
            s << name << ' ' << st.count() << ' ' << st.mean() << ' ' << st.stderr_mean()
              << ' ' << st.min() << ' ' << st.max() << '\n';
        if (result.aborted_trials)
            s << "aborted_trials " << result.aborted_trials << '\n';
        emit(opt, s.str());
    }
    return 0;
}

int run_compare(const Options& opt) {
    std::vector<double> grid;
    if (!opt.grid.empty()) grid = parse_grid(opt.grid);
    else if (opt.n >= 2) grid = {static_cast<double>(opt.n)};
    else throw std::invalid_argument("compare requires --grid or --n");

    std::ostringstream s;
    s.precision(10);
    s << "n stat exact residue_or_asymptotic sim_mean sim_se provenance flag\n";
    const SplitMix64 root(opt.seed);
    std::size_t idx = 0;
    for (double x : grid) {
        if (x < 2 || x != std::floor(x)) throw std::invalid_argument("grid points must be integers >= 2");
        const auto n = static_cast<unsigned long>(x);
        ExperimentConfig cfg;
        cfg.n = n;
        cfg.trials = opt.trials;
        cfg.seed = root.derive(idx++);
        cfg.depth_cap = opt.depth_cap;
        cfg.algorithms = {Algorithm::quicksort, Algorithm::bitsquick};
        const ExperimentResult r = run_experiment(cfg);

        const bool in_exact_range = n <= 5000;
        struct Row {
            const char* stat;
            double exact;
            double model;
            const char* provenance;
            const SummaryStats* sim;
        };
        const double ex_k = in_exact_range ? static_cast<double>(exact_key_mean(n)) : NAN;
        const double ex_b = in_exact_range ? static_cast<double>(exact_bit_mean(n)) : NAN;
        const double ex_q = in_exact_range ? static_cast<double>(exact_bitsquick_mean(n)) : NAN;
        const Row rows[] = {
            {"K", ex_k, rice_exact_key_mean(n), "residue", &r.stats.at("K")},
            {"B", ex_b, rice_exact_bit_mean(n), "residue", &r.stats.at("B")},
            {"Q", ex_q, bitsquick_mean_asymptotic(static_cast<double>(n)), "asymptotic",
             &r.stats.at("Q")},
        };
        for (const auto& row : rows) {
            const double ref = std::isnan(row.exact) ? row.model : row.exact;
            const double se = row.sim->stderr_mean();
            const bool flagged = se > 0 && std::abs(row.sim->mean() - ref) > 4 * se &&
                                 std::string(row.provenance) == "residue";
            s << n << ' ' << row.stat << ' ' << row.exact << ' ' << row.model << ' '
              << row.sim->mean() << ' ' << se << ' ' << row.provenance << ' '
              << (flagged ? "FLAG" : "ok") << '\n';
        }
    }
    emit(opt, s.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bit-comparison cost calculator: exact means, asymptotics, "
                 "Poisson models and Monte Carlo for quicksort-family sorters"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", opt.n, "problem size n");
        sub->add_option("--lambda", opt.lambda, "Poisson mean");
        sub->add_option("--grid", opt.grid, "grid a:b:step or comma list");
        sub->add_option("--formula", opt.formula, "formula id");
        sub->add_option("--stat", opt.stat, "statistic / algorithm list");
        sub->add_option("--density", opt.density_file, "density spec JSON file");
        sub->add_option("--trials", opt.trials, "Monte Carlo trials");
        sub->add_option("--seed", opt.seed, "RNG seed");
        sub->add_option("--digits", opt.digits, "decimal digits (6..200)")
            ->check(CLI::Range(6, 200));
        sub->add_option("--depth-cap", opt.depth_cap, "bit depth cap per key");
        sub->add_option("--truncation-k", opt.truncation_k,
                        "periodic-series cutoff / dyadic depth");
        sub->add_flag("--refined", opt.refined, "add the refined remainder");
        sub->add_option("--format", opt.format, "table|csv|json");
        sub->add_option("--out", opt.out, "output file (default stdout)");
    };
    CLI::App* c_exact = app.add_subcommand("exact", "exact rational means");
    CLI::App* c_asympt = app.add_subcommand("asympt", "asymptotic and residue formulas");
    CLI::App* c_poisson = app.add_subcommand("poisson", "Poissonized evaluators");
    CLI::App* c_simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
    CLI::App* c_compare = app.add_subcommand("compare", "exact vs asymptotic vs simulated");
    for (CLI::App* sub : {c_exact, c_asympt, c_poisson, c_simulate, c_compare})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_exact->parsed()) return run_exact(opt);
        if (c_asympt->parsed()) return run_asympt(opt);
        if (c_poisson->parsed()) return run_poisson(opt);
        if (c_simulate->parsed()) return run_simulate(opt);
        if (c_compare->parsed()) return run_compare(opt);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 1;
    }
}
