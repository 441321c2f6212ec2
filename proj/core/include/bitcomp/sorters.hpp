#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitcomp/bitkeys.hpp"
#include "bitcomp/rng.hpp"

namespace bitcomp {

// One pivot event: the pivot's final rank i and the 1-based rank interval
// [L, R] of the subarray it partitioned. Size-1 subarrays are recorded with
// L = R so every rank appears exactly once.
struct PivotRecord {
    std::size_t rank;
    std::size_t left;
    std::size_t right;
};

struct ComparisonTally {
    std::uint64_t key_comparisons = 0;
    std::uint64_t bit_comparisons = 0;
    std::optional<std::vector<PivotRecord>> partition_trace;
};

// Deterministic pivot-position script: pick(size) is uniform on [0, size).
// Two sorters driven by equal-seeded scripts make identical relative choices
// when their recursion trees have equal subarray sizes in equal order.
class PivotScript {
public:
    explicit PivotScript(std::uint64_t seed) : rng_(seed) {}
    std::size_t pick(std::size_t subarray_size) { return rng_.below(subarray_size); }

private:
    SplitMix64 rng_;
};

// Randomized quicksort charging b(x, pivot) bits per key comparison.
std::pair<std::vector<BitKey>, ComparisonTally>
quicksort(std::vector<BitKey> keys, PivotScript& pivots, bool record_trace = false);

// Quicksort variant that never re-compares bits already known to be shared:
// entering the call for a subarray bounded by keys u < v (sentinels 0 and 1
// at the root), all keys agree with both bounds on their first b(u,v) - 1
// bits, and exactly those bits are stripped (by left rotation) before the
// partition comparisons. Prefix lengths come from bookkeeping on already
// revealed bits and are not charged. Output is the full (unrotated) keys.
std::pair<std::vector<BitKey>, ComparisonTally>
bitsquick(std::vector<BitKey> keys, PivotScript& pivots);

struct CoupledResult {
    std::uint64_t bits_plain;    // B: quicksort bit comparisons
    std::uint64_t bits_stripped; // Q: bitsquick bit comparisons
    std::int64_t savings_check;  // trace sum; equals B - Q pathwise
};

// Runs quicksort and bitsquick with identical pivot scripts and computes the
// savings sum over pivots i of (R(i)-L(i)) * (b(X_(L-1), X_(R+1)) - 1) with
// sentinels X_(0) = 0 and X_(n+1) = 1.
CoupledResult coupled_run(const std::vector<BitKey>& keys, std::uint64_t pivot_seed);

// Classic radix-exchange sort: partition on bit 1, recurse with bit 2, ...
// Counts every key-bit inspected.
std::pair<std::vector<BitKey>, std::uint64_t> radix_exchange(std::vector<BitKey> keys);

// Savings implied by a partition trace over the sorted keys.
std::int64_t trace_savings(const std::vector<BitKey>& sorted,
                           const std::vector<PivotRecord>& trace);

// Debug dump: one line per pivot, "i L R b_sentinel".
std::string dump_trace(const std::vector<BitKey>& sorted,
                       const std::vector<PivotRecord>& trace);

} // namespace bitcomp
