#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bitcomp/errors.hpp"
#include "bitcomp/rng.hpp"

namespace bitcomp {

inline constexpr std::size_t kDefaultDepthCap = 4096;

// Produces the next bit of a key's binary expansion on demand.
class BitSource {
public:
    virtual ~BitSource() = default;
    virtual int next_bit() = 0;
};

// Append-only backing store for a key's bits (most significant first; bit i
// has weight 2^-i, indices are 1-based). Shared between rotated views.
struct BitStream {
    std::vector<std::uint8_t> bits;
    std::unique_ptr<BitSource> source;
    std::size_t depth_cap = kDefaultDepthCap;
};

enum class Ordering { Less, Greater };

// A key in [0,1] as a lazily extended bit stream. Copies share the stream;
// rotate_left returns a view shifted by m bits into the same stream.
class BitKey {
public:
    BitKey() = default;

    // Key with independent fair bits: exactly Uniform(0,1) to any depth.
    static BitKey uniform(SplitMix64& rng, std::size_t depth_cap = kDefaultDepthCap);

    // Endpoint keys 0 = .000... and 1 = .111...
    static BitKey zero(std::size_t depth_cap = kDefaultDepthCap);
    static BitKey one(std::size_t depth_cap = kDefaultDepthCap);

    // Key literal: '0'/'1' characters, most significant first. A "..."
    // suffix means "extend with fair random bits from `tail_seed`";
    // otherwise the expansion terminates (all-zeros tail).
    static BitKey from_literal(std::string_view literal, std::uint64_t tail_seed = 0,
                               std::size_t depth_cap = kDefaultDepthCap);

    // Key whose expansion repeats `pattern` forever (subject to the cap).
    static BitKey repeating(std::string_view pattern,
                            std::size_t depth_cap = kDefaultDepthCap);

    // Key driven by a custom bit source.
    static BitKey from_source(std::unique_ptr<BitSource> source,
                              std::size_t depth_cap = kDefaultDepthCap);

    // Bit i (1-based), extending the stream as needed.
    int bit(std::size_t i) const;

    // View of this key with the first m bits dropped: bit i of the result is
    // bit i+m of *this. The dropped prefix stays in the shared stream, so the
    // inverse rotation is exact.
    BitKey rotate_left(std::size_t m) const;

    std::size_t offset() const { return offset_; }
    std::size_t depth_cap() const { return stream_->depth_cap; }
    // Bits this view can still expose before hitting the cap.
    std::size_t remaining_cap() const { return stream_->depth_cap - offset_; }

    bool same_stream(const BitKey& other) const { return stream_ == other.stream_; }

private:
    std::shared_ptr<BitStream> stream_;
    std::size_t offset_ = 0;
};

// Smallest index b >= 1 with x_b != y_b; charges exactly b bit comparisons.
std::size_t first_diff_index(const BitKey& x, const BitKey& y);

struct CompareResult {
    Ordering order;
    std::size_t bits_used;
};

// Ordering of x vs y together with the bit-comparison cost b(x,y).
CompareResult compare_with_cost(const BitKey& x, const BitKey& y);

} // namespace bitcomp
