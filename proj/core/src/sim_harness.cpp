#include "bitcomp/sim_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bitcomp/poisson_model.hpp"

namespace bitcomp {

void SummaryStats::add(double x) {
    if (count_ == 0) {
        min_ = max_ = x;
    } else {
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    ++count_;
    const double d = x - mean_;
    mean_ += d / count_;
    m2_ += d * (x - mean_);
}

void SummaryStats::merge(const SummaryStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double d = other.mean_ - mean_;
    const std::size_t n = count_ + other.count_;
    m2_ += other.m2_ + d * d * (static_cast<double>(count_) * other.count_ / n);
    mean_ += d * other.count_ / n;
    min_ = std::min(min_, other.min_);
    max_ = std::max(max_, other.max_);
    count_ = n;
}

double SummaryStats::stderr_mean() const {
    return count_ > 1 ? std::sqrt(variance() / count_) : 0;
}

namespace {

struct ChunkResult {
    std::map<std::string, SummaryStats> stats;
    std::size_t aborted = 0;
    bool identity_ok = true;
};

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::quicksort: return "quicksort";
        case Algorithm::bitsquick: return "bitsquick";
        case Algorithm::radix_exchange: return "radix_exchange";
        case Algorithm::coupled: return "coupled";
    }
    return "?";
}

void run_one_trial(const ExperimentConfig& cfg, const DensitySampler* proto,
                   std::size_t trial, ChunkResult& out) {
    const SplitMix64 root(cfg.seed);
    const std::uint64_t trial_seed = root.derive(trial);
    const SplitMix64 ctrl(trial_seed);

    std::size_t n_keys = cfg.n;
    if (cfg.poisson_model) {
        SplitMix64 eng(ctrl.derive(0));
        std::poisson_distribution<long long> pois(cfg.lambda);
        n_keys = static_cast<std::size_t>(pois(eng));
        out.stats["N"].add(static_cast<double>(n_keys));
    }

    std::vector<BitKey> keys;
    keys.reserve(n_keys);
    if (proto) {
        DensitySampler sampler = proto->reseeded(ctrl.derive(1));
        for (std::size_t i = 0; i < n_keys; ++i) keys.push_back(sampler.sample(cfg.depth_cap));
    } else {
        SplitMix64 krng(ctrl.derive(1));
        for (std::size_t i = 0; i < n_keys; ++i) keys.push_back(BitKey::uniform(krng, cfg.depth_cap));
    }

    int alg_index = 0;
    for (Algorithm alg : cfg.algorithms) {
        const std::uint64_t pivot_seed = ctrl.derive(16 + alg_index++);
        switch (alg) {
            case Algorithm::quicksort: {
                PivotScript script(pivot_seed);
                auto [sorted, tally] = quicksort(keys, script);
                (void)sorted;
                out.stats["K"].add(static_cast<double>(tally.key_comparisons));
                out.stats["B"].add(static_cast<double>(tally.bit_comparisons));
                if (tally.key_comparisons > 0)
                    out.stats["B_over_K"].add(static_cast<double>(tally.bit_comparisons) /
                                              static_cast<double>(tally.key_comparisons));
                break;
            }
            case Algorithm::bitsquick: {
                PivotScript script(pivot_seed);
                auto [sorted, tally] = bitsquick(keys, script);
                (void)sorted;
                out.stats["Q"].add(static_cast<double>(tally.bit_comparisons));
                break;
            }
            case Algorithm::radix_exchange: {
                auto [sorted, inspections] = radix_exchange(keys);
                (void)sorted;
                out.stats["inspections"].add(static_cast<double>(inspections));
                break;
            }
            case Algorithm::coupled: {
                const CoupledResult cr = coupled_run(keys, pivot_seed);
                out.stats["coupled_B"].add(static_cast<double>(cr.bits_plain));
                out.stats["coupled_Q"].add(static_cast<double>(cr.bits_stripped));
                out.stats["savings"].add(static_cast<double>(cr.savings_check));
                const bool ok =
                    static_cast<std::int64_t>(cr.bits_plain) -
                            static_cast<std::int64_t>(cr.bits_stripped) == cr.savings_check &&
                    cr.bits_stripped <= cr.bits_plain;
                if (!ok) out.identity_ok = false;
                break;
            }
        }
    }
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream s;
    s << "model=" << (cfg.poisson_model ? "poisson" : "fixed_n");
    if (cfg.poisson_model)
        s << " lambda=" << cfg.lambda;
    else
        s << " n=" << cfg.n;
    s << " density=" << (cfg.density && !cfg.density->is_uniform() ? "custom" : "uniform");
    s << " algorithms=";
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
        s << (i ? "," : "") << algorithm_name(cfg.algorithms[i]);
    s << " trials=" << cfg.trials << " seed=" << cfg.seed
      << " depth_cap=" << cfg.depth_cap;
    return s.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (config.poisson_model && !(config.lambda > 0))
        throw std::invalid_argument("lambda must be positive");
    if (config.algorithms.empty()) throw std::invalid_argument("no algorithms selected");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    const bool custom_density = config.density && !config.density->is_uniform();
    std::unique_ptr<DensitySampler> proto;
    if (custom_density) proto = std::make_unique<DensitySampler>(config.density, 0);

    const std::size_t chunk_count = std::min<std::size_t>(config.trials, 256);
    std::vector<ChunkResult> chunks(chunk_count);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunk_count) return;
            const std::size_t lo = config.trials * c / chunk_count;
            const std::size_t hi = config.trials * (c + 1) / chunk_count;
            for (std::size_t t = lo; t < hi; ++t) {
                try {
                    run_one_trial(config, proto.get(), t, chunks[c]);
                } catch (const DepthCapExceeded&) {
                    ++chunks[c].aborted;
                }
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ExperimentResult result;
    result.trials = config.trials;
    for (const auto& c : chunks) { // fixed merge order: deterministic output
        for (const auto& [name, st] : c.stats) result.stats[name].merge(st);
        result.aborted_trials += c.aborted;
        result.coupled_identity_ok = result.coupled_identity_ok && c.identity_ok;
    }
    if (result.aborted_trials * 1000 > config.trials)
        throw DepthCapExceeded("more than 0.1% of trials hit the depth cap");
    return result;
}

std::vector<std::pair<double, double>>
variance_ratio_scan(const std::vector<double>& lams, std::size_t trials, std::uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    const SplitMix64 root(seed);
    for (std::size_t i = 0; i < lams.size(); ++i) {
        ExperimentConfig cfg;
        cfg.poisson_model = true;
        cfg.lambda = lams[i];
        cfg.algorithms = {Algorithm::quicksort};
        cfg.trials = trials;
        cfg.seed = root.derive(i);
        const ExperimentResult r = run_experiment(cfg);
        out.emplace_back(lams[i], r.stats.at("B").variance() / (lams[i] * lams[i]));
    }
    return out;
}

std::vector<std::pair<double, double>>
entropy_shift_estimate(std::shared_ptr<const DensitySpec> spec,
                       const std::vector<double>& lams, std::size_t trials,
                       std::uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    const SplitMix64 root(seed);
    for (std::size_t i = 0; i < lams.size(); ++i) {
        ExperimentConfig cfg;
        cfg.poisson_model = true;
        cfg.lambda = lams[i];
        cfg.density = spec;
        cfg.algorithms = {Algorithm::quicksort};
        cfg.trials = trials;
        cfg.seed = root.derive(i);
        const ExperimentResult r = run_experiment(cfg);
        const double mu_unif = poisson_bit_mean_exact(lams[i]).value;
        const double norm = 2 * lams[i] * std::log(lams[i]);
        out.emplace_back(lams[i], (r.stats.at("B").mean() - mu_unif) / norm);
    }
    return out;
}

SavingsReport savings_identity_suite(const std::vector<std::size_t>& n_values,
                                     std::size_t runs_per_n, std::uint64_t seed) {
    SavingsReport report;
    const SplitMix64 root(seed);
    std::size_t group = 0;
    for (std::size_t n : n_values) {
        const SplitMix64 g(root.derive(group++));
        for (std::size_t run = 0; run < runs_per_n; ++run) {
            SplitMix64 krng(g.derive(2 * run));
            std::vector<BitKey> keys;
            keys.reserve(n);
            for (std::size_t i = 0; i < n; ++i) keys.push_back(BitKey::uniform(krng));
            const CoupledResult cr = coupled_run(keys, g.derive(2 * run + 1));
            ++report.runs;
            if (static_cast<std::int64_t>(cr.bits_plain) -
                    static_cast<std::int64_t>(cr.bits_stripped) != cr.savings_check)
                ++report.identity_violations;
            if (cr.bits_stripped > cr.bits_plain) ++report.order_violations;
        }
    }
    report.pass = report.identity_violations == 0 && report.order_violations == 0;
    return report;
}

std::string to_csv(const ExperimentResult& result, const ExperimentConfig& config) {
    const std::string echo = config_echo(config);
    std::ostringstream s;
    s << "# manifest: " << echo << "\n";
    s << "# hash: " << std::hex << fnv1a(echo) << std::dec << "\n";
    s << "statistic,trials,mean,var,se,min,max\n";
    s.precision(17);
    for (const auto& [name, st] : result.stats)
        s << name << ',' << st.count() << ',' << st.mean() << ',' << st.variance() << ','
          << st.stderr_mean() << ',' << st.min() << ',' << st.max() << '\n';
    return s.str();
}

std::string to_json(const ExperimentResult& result, const ExperimentConfig& config) {
    const std::string echo = config_echo(config);
    nlohmann::json doc;
    doc["manifest"]["config"] = echo;
    {
        std::ostringstream h;
        h << std::hex << fnv1a(echo);
        doc["manifest"]["hash"] = h.str();
    }
    doc["trials"] = result.trials;
    doc["aborted_trials"] = result.aborted_trials;
    for (const auto& [name, st] : result.stats) {
        doc["results"][name] = {{"trials", st.count()},   {"mean", st.mean()},
                                {"var", st.variance()},   {"se", st.stderr_mean()},
                                {"min", st.min()},        {"max", st.max()}};
    }
    return doc.dump(2);
}

} // namespace bitcomp
