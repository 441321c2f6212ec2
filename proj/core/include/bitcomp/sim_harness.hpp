#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bitcomp/densities.hpp"
#include "bitcomp/sorters.hpp"

namespace bitcomp {

enum class Algorithm { quicksort, bitsquick, radix_exchange, coupled };

struct ExperimentConfig {
    bool poisson_model = false; // false: fixed n keys; true: Poisson(lambda) count
    std::size_t n = 0;
    double lambda = 0;
    std::shared_ptr<const DensitySpec> density; // null = uniform (fast path)
    std::vector<Algorithm> algorithms = {Algorithm::quicksort};
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t depth_cap = kDefaultDepthCap;
};

// Streaming mean/variance/min/max with an associative merge, so trials can be
// summarized in parallel chunks and combined deterministically.
class SummaryStats {
public:
    void add(double x);
    void merge(const SummaryStats& other);

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    double variance() const { return count_ > 1 ? m2_ / (count_ - 1) : 0; }
    double stderr_mean() const;
    double min() const { return min_; }
    double max() const { return max_; }

private:
    std::size_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
    double min_ = 0;
    double max_ = 0;
};

struct ExperimentResult {
    std::map<std::string, SummaryStats> stats; // "K", "B", "Q", "inspections",
                                               // "B_over_K", "savings", "N"
    std::size_t trials = 0;
    std::size_t aborted_trials = 0; // depth-cap aborts; > 0.1% fails
    bool coupled_identity_ok = true;
};

// Runs config.trials independent trials (Poisson model draws N, then N keys);
// bitwise deterministic for a fixed seed at any thread count (fixed chunk
// partition, merged in chunk order). Throws if aborts exceed 0.1%.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 0);

// (lambda, sample Var(B)/lambda^2) per grid point.
std::vector<std::pair<double, double>>
variance_ratio_scan(const std::vector<double>& lams, std::size_t trials, std::uint64_t seed);

// (lambda, (mean B under f - exact uniform mean)/(2 lambda ln lambda)).
std::vector<std::pair<double, double>>
entropy_shift_estimate(std::shared_ptr<const DensitySpec> spec,
                       const std::vector<double>& lams, std::size_t trials,
                       std::uint64_t seed);

struct SavingsReport {
    bool pass = true;
    std::size_t runs = 0;
    std::size_t identity_violations = 0;
    std::size_t order_violations = 0; // Q > B occurrences
};

// Coupled-run audit: exact integer identity B - Q = trace savings and Q <= B
// for every run at every n.
SavingsReport savings_identity_suite(const std::vector<std::size_t>& n_values,
                                     std::size_t runs_per_n, std::uint64_t seed);

// Serialization: CSV (statistic, trials, mean, var, se, min, max) or JSON,
// each with a manifest echoing the config and a content hash of it.
std::string to_csv(const ExperimentResult& result, const ExperimentConfig& config);
std::string to_json(const ExperimentResult& result, const ExperimentConfig& config);

} // namespace bitcomp
