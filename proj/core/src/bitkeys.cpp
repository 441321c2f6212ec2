#include "bitcomp/bitkeys.hpp"

#include <algorithm>

namespace bitcomp {
namespace {

class FairBitSource final : public BitSource {
public:
    explicit FairBitSource(std::uint64_t seed) : rng_(seed) {}
    int next_bit() override {
        if (left_ == 0) {
            word_ = rng_();
            left_ = 64;
        }
        --left_;
        const int b = static_cast<int>(word_ & 1);
        word_ >>= 1;
        return b;
    }

private:
    SplitMix64 rng_;
    std::uint64_t word_ = 0;
    int left_ = 0;
};

class ConstantBitSource final : public BitSource {
public:
    explicit ConstantBitSource(int value) : value_(value) {}
    int next_bit() override { return value_; }

private:
    int value_;
};

class RepeatingBitSource final : public BitSource {
public:
    explicit RepeatingBitSource(std::string pattern) : pattern_(std::move(pattern)) {}
    int next_bit() override {
        const int b = pattern_[pos_] == '1';
        pos_ = (pos_ + 1) % pattern_.size();
        return b;
    }

private:
    std::string pattern_;
    std::size_t pos_ = 0;
};

// Fixed prefix followed by a delegate tail source.
class PrefixBitSource final : public BitSource {
public:
    PrefixBitSource(std::string prefix, std::unique_ptr<BitSource> tail)
        : prefix_(std::move(prefix)), tail_(std::move(tail)) {}
    int next_bit() override {
        if (pos_ < prefix_.size()) return prefix_[pos_++] == '1';
        return tail_->next_bit();
    }

private:
    std::string prefix_;
    std::size_t pos_ = 0;
    std::unique_ptr<BitSource> tail_;
};

std::shared_ptr<BitStream> make_stream(std::unique_ptr<BitSource> source,
                                       std::size_t depth_cap) {
    auto s = std::make_shared<BitStream>();
    s->source = std::move(source);
    s->depth_cap = depth_cap;
    return s;
}

} // namespace

BitKey BitKey::from_source(std::unique_ptr<BitSource> source, std::size_t depth_cap) {
    BitKey k;
    k.stream_ = make_stream(std::move(source), depth_cap);
    return k;
}

BitKey BitKey::uniform(SplitMix64& rng, std::size_t depth_cap) {
    return from_source(std::make_unique<FairBitSource>(rng()), depth_cap);
}

BitKey BitKey::zero(std::size_t depth_cap) {
    return from_source(std::make_unique<ConstantBitSource>(0), depth_cap);
}

BitKey BitKey::one(std::size_t depth_cap) {
    return from_source(std::make_unique<ConstantBitSource>(1), depth_cap);
}

BitKey BitKey::from_literal(std::string_view literal, std::uint64_t tail_seed,
                            std::size_t depth_cap) {
    bool random_tail = false;
    if (literal.size() >= 3 && literal.substr(literal.size() - 3) == "...") {
        random_tail = true;
        literal.remove_suffix(3);
    }
    std::string prefix;
    prefix.reserve(literal.size());
    for (char c : literal) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("key literal must contain only '0'/'1'");
        prefix.push_back(c);
    }
    std::unique_ptr<BitSource> tail;
    if (random_tail)
        tail = std::make_unique<FairBitSource>(tail_seed);
    else
        tail = std::make_unique<ConstantBitSource>(0);
    return from_source(std::make_unique<PrefixBitSource>(std::move(prefix), std::move(tail)),
                       depth_cap);
}

BitKey BitKey::repeating(std::string_view pattern, std::size_t depth_cap) {
    if (pattern.empty()) throw std::invalid_argument("empty repeating pattern");
    for (char c : pattern)
        if (c != '0' && c != '1')
            throw std::invalid_argument("pattern must contain only '0'/'1'");
    return from_source(std::make_unique<RepeatingBitSource>(std::string(pattern)), depth_cap);
}

int BitKey::bit(std::size_t i) const {
    const std::size_t depth = offset_ + i; // 1-based absolute index
    BitStream& s = *stream_;
    if (depth > s.depth_cap)
        throw DepthCapExceeded("bit index exceeds depth cap");
    while (s.bits.size() < depth)
        s.bits.push_back(static_cast<std::uint8_t>(s.source->next_bit()));
    return s.bits[depth - 1];
}

BitKey BitKey::rotate_left(std::size_t m) const {
    if (offset_ + m > stream_->depth_cap)
        throw DepthCapExceeded("rotation exceeds depth cap");
    BitKey k(*this);
    k.offset_ += m;
    return k;
}

std::size_t first_diff_index(const BitKey& x, const BitKey& y) {
    const std::size_t cap = std::min(x.remaining_cap(), y.remaining_cap());
    for (std::size_t i = 1; i <= cap; ++i)
        if (x.bit(i) != y.bit(i)) return i;
    throw DepthCapExceeded("keys agree on all bits through the depth cap");
}

CompareResult compare_with_cost(const BitKey& x, const BitKey& y) {
    const std::size_t b = first_diff_index(x, y);
    return {x.bit(b) == 0 ? Ordering::Less : Ordering::Greater, b};
}

} // namespace bitcomp
