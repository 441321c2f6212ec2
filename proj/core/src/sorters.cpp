#include "bitcomp/sorters.hpp"

#include <algorithm>
#include <sstream>

namespace bitcomp {
namespace {

void qs_recurse(std::vector<BitKey>& a, std::size_t lo, std::size_t hi, std::size_t base,
                PivotScript& pivots, ComparisonTally& tally) {
    const std::size_t n = hi - lo;
    if (n == 0) return;
    if (n == 1) {
        if (tally.partition_trace) tally.partition_trace->push_back({base, base, base});
        return;
    }
    const std::size_t pi = lo + pivots.pick(n);
    BitKey pivot = a[pi];
    std::vector<BitKey> less, greater;
    less.reserve(n);
    greater.reserve(n);
    for (std::size_t i = lo; i < hi; ++i) {
        if (i == pi) continue;
        const CompareResult c = compare_with_cost(a[i], pivot);
        ++tally.key_comparisons;
        tally.bit_comparisons += c.bits_used;
        (c.order == Ordering::Less ? less : greater).push_back(a[i]);
    }
    const std::size_t nl = less.size();
    std::copy(less.begin(), less.end(), a.begin() + lo);
    a[lo + nl] = pivot;
    std::copy(greater.begin(), greater.end(), a.begin() + lo + nl + 1);
    if (tally.partition_trace)
        tally.partition_trace->push_back({base + nl, base, base + n - 1});
    qs_recurse(a, lo, lo + nl, base, pivots, tally);
    qs_recurse(a, lo + nl + 1, hi, base + nl + 1, pivots, tally);
}

struct StrippedKey {
    BitKey full; // original representation, returned to the caller
    BitKey cur;  // current representation with the known prefix stripped
};

// Invariant: every key in [lo, hi) lies strictly between the sentinels
// `ubound` and `vbound`, and `cur` representations (keys and sentinels alike)
// have been rotated by the same accumulated amount.
void bq_recurse(std::vector<StrippedKey>& a, std::size_t lo, std::size_t hi,
                const BitKey& ubound, const BitKey& vbound,
                PivotScript& pivots, ComparisonTally& tally) {
    const std::size_t n = hi - lo;
    if (n <= 1) return;
    const std::size_t pi = lo + pivots.pick(n);
    StrippedKey pivot = a[pi];
    std::vector<StrippedKey> less, greater;
    less.reserve(n);
    greater.reserve(n);
    for (std::size_t i = lo; i < hi; ++i) {
        if (i == pi) continue;
        const CompareResult c = compare_with_cost(a[i].cur, pivot.cur);
        ++tally.key_comparisons;
        tally.bit_comparisons += c.bits_used;
        (c.order == Ordering::Less ? less : greater).push_back(a[i]);
    }
    const std::size_t nl = less.size();
    std::copy(less.begin(), less.end(), a.begin() + lo);
    a[lo + nl] = pivot;
    std::copy(greater.begin(), greater.end(), a.begin() + lo + nl + 1);

    // Bits shared with the new bounding pair are known from bookkeeping on
    // already revealed bits; strip them before recursing (not charged).
    if (nl > 1) {
        const std::size_t strip = first_diff_index(ubound, pivot.cur) - 1;
        for (std::size_t i = lo; i < lo + nl; ++i)
            a[i].cur = a[i].cur.rotate_left(strip);
        bq_recurse(a, lo, lo + nl, ubound.rotate_left(strip),
                   pivot.cur.rotate_left(strip), pivots, tally);
    }
    const std::size_t nr = n - nl - 1;
    if (nr > 1) {
        const std::size_t strip = first_diff_index(pivot.cur, vbound) - 1;
        for (std::size_t i = lo + nl + 1; i < hi; ++i)
            a[i].cur = a[i].cur.rotate_left(strip);
        bq_recurse(a, lo + nl + 1, hi, pivot.cur.rotate_left(strip),
                   vbound.rotate_left(strip), pivots, tally);
    }
}

} // namespace

std::pair<std::vector<BitKey>, ComparisonTally>
quicksort(std::vector<BitKey> keys, PivotScript& pivots, bool record_trace) {
    ComparisonTally tally;
    if (record_trace) tally.partition_trace.emplace();
    qs_recurse(keys, 0, keys.size(), 1, pivots, tally);
    if (tally.partition_trace)
        std::sort(tally.partition_trace->begin(), tally.partition_trace->end(),
                  [](const PivotRecord& x, const PivotRecord& y) { return x.rank < y.rank; });
    return {std::move(keys), std::move(tally)};
}

std::pair<std::vector<BitKey>, ComparisonTally>
bitsquick(std::vector<BitKey> keys, PivotScript& pivots) {
    ComparisonTally tally;
    const std::size_t cap = keys.empty() ? kDefaultDepthCap : keys.front().depth_cap();
    std::vector<StrippedKey> work;
    work.reserve(keys.size());
    for (auto& k : keys) work.push_back({k, k});
    bq_recurse(work, 0, work.size(), BitKey::zero(cap), BitKey::one(cap), pivots, tally);
    std::vector<BitKey> out;
    out.reserve(work.size());
    for (auto& w : work) out.push_back(std::move(w.full));
    return {std::move(out), std::move(tally)};
}

std::int64_t trace_savings(const std::vector<BitKey>& sorted,
                           const std::vector<PivotRecord>& trace) {
    const std::size_t n = sorted.size();
    const std::size_t cap = n ? sorted.front().depth_cap() : kDefaultDepthCap;
    const BitKey lo_sentinel = BitKey::zero(cap);
    const BitKey hi_sentinel = BitKey::one(cap);
    auto key_at = [&](std::size_t rank) -> const BitKey& { // 0 and n+1 are sentinels
        if (rank == 0) return lo_sentinel;
        if (rank == n + 1) return hi_sentinel;
        return sorted[rank - 1];
    };
    std::int64_t total = 0;
    for (const auto& rec : trace) {
        const std::size_t b = first_diff_index(key_at(rec.left - 1), key_at(rec.right + 1));
        total += static_cast<std::int64_t>(rec.right - rec.left) *
                 static_cast<std::int64_t>(b - 1);
    }
    return total;
}

std::string dump_trace(const std::vector<BitKey>& sorted,
                       const std::vector<PivotRecord>& trace) {
    const std::size_t n = sorted.size();
    const std::size_t cap = n ? sorted.front().depth_cap() : kDefaultDepthCap;
    const BitKey lo_sentinel = BitKey::zero(cap);
    const BitKey hi_sentinel = BitKey::one(cap);
    auto key_at = [&](std::size_t rank) -> const BitKey& {
        if (rank == 0) return lo_sentinel;
        if (rank == n + 1) return hi_sentinel;
        return sorted[rank - 1];
    };
    std::ostringstream out;
    for (const auto& rec : trace) {
        const std::size_t b = first_diff_index(key_at(rec.left - 1), key_at(rec.right + 1));
        out << rec.rank << ' ' << rec.left << ' ' << rec.right << ' ' << b << '\n';
    }
    return out.str();
}

CoupledResult coupled_run(const std::vector<BitKey>& keys, std::uint64_t pivot_seed) {
    PivotScript script_a(pivot_seed);
    auto [sorted, tally_a] = quicksort(keys, script_a, /*record_trace=*/true);
    PivotScript script_b(pivot_seed);
    auto [sorted_b, tally_b] = bitsquick(keys, script_b);
    const std::int64_t savings = trace_savings(sorted, *tally_a.partition_trace);
    return {tally_a.bit_comparisons, tally_b.bit_comparisons, savings};
}

namespace {

void rx_recurse(std::vector<BitKey>& a, std::size_t lo, std::size_t hi, std::size_t depth,
                std::uint64_t& inspections) {
    const std::size_t n = hi - lo;
    if (n <= 1) return;
    std::vector<BitKey> zeros, ones;
    zeros.reserve(n);
    ones.reserve(n);
    for (std::size_t i = lo; i < hi; ++i) {
        ++inspections;
        (a[i].bit(depth) == 0 ? zeros : ones).push_back(a[i]);
    }
    std::copy(zeros.begin(), zeros.end(), a.begin() + lo);
    std::copy(ones.begin(), ones.end(), a.begin() + lo + zeros.size());
    rx_recurse(a, lo, lo + zeros.size(), depth + 1, inspections);
    rx_recurse(a, lo + zeros.size(), hi, depth + 1, inspections);
}

} // namespace

std::pair<std::vector<BitKey>, std::uint64_t> radix_exchange(std::vector<BitKey> keys) {
    std::uint64_t inspections = 0;
    rx_recurse(keys, 0, keys.size(), 1, inspections);
    return {std::move(keys), inspections};
}

} // namespace bitcomp
