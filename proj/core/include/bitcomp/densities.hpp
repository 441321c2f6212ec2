#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bitcomp/bitkeys.hpp"
#include "bitcomp/rational.hpp"
#include "bitcomp/rng.hpp"

namespace bitcomp {

// I_{k,j} = [(j-1)·2^-k, j·2^-k), j in [1, 2^k].
struct DyadicInterval {
    unsigned k = 0;
    BigInt j = 1;
};

// Polynomial piece of a density: f(x) = sum coeffs[i]·x^i on [a, b).
struct DensityPiece {
    Rational a;
    Rational b;
    std::vector<Rational> coeffs;
};

// Piecewise-polynomial density on (0,1) with dyadic breakpoints. Immutable
// after construction; construction validates the partition, positivity
// (exactly at endpoints, at interior extrema for degree <= 3) and that the
// total mass is exactly 1.
class DensitySpec {
public:
    explicit DensitySpec(std::vector<DensityPiece> pieces);

    static DensitySpec uniform();
    static DensitySpec linear(); // f(x) = 2x
    static DensitySpec from_json_text(const std::string& text);
    static DensitySpec from_json_file(const std::string& path);

    const std::vector<DensityPiece>& pieces() const { return pieces_; }
    bool is_uniform() const;

    // Exact F(x) = integral of f over [0, x].
    Rational cdf(const Rational& x) const;
    double cdf_double(double x) const;
    // Density value at x.
    Rational value(const Rational& x) const;
    // Upper bound on sup f (sum of |coefficients|, valid since 0 <= x <= 1).
    double sup_bound() const;
    // The density of 1 - X.
    DensitySpec reflected() const;

private:
    std::vector<DensityPiece> pieces_;
    std::vector<Rational> cum_;            // exact F at piece left endpoints
    std::vector<std::vector<double>> anti_; // double antiderivative coeffs per piece
    std::vector<double> a_d_, cum_d_;
};

// p_{k,j} = integral of f over I_{k,j}, exact.
Rational interval_mass(const DensitySpec& spec, const DyadicInterval& iv);

// f_k(x) = 2^k · p_{k,j} for the rank-k interval containing x.
Rational smoothed_density(const DensitySpec& spec, unsigned k, const Rational& x);

// H(f) = integral of f·lg f over (0,1), in bits; absolute tolerance 1e-10.
double entropy_bits(const DensitySpec& spec);

// Draws BitKeys with law f: bit k+1 is 1 with probability
// mass(right half of current interval) / mass(current interval).
class DensitySampler {
public:
    DensitySampler(std::shared_ptr<const DensitySpec> spec, std::uint64_t seed);
    BitKey sample(std::size_t depth_cap = kDefaultDepthCap);

    // Copy sharing the (expensive) probability tables but with a fresh stream.
    DensitySampler reseeded(std::uint64_t seed) const {
        DensitySampler s(*this);
        s.rng_ = SplitMix64(seed);
        return s;
    }

private:
    std::shared_ptr<const DensitySpec> spec_;
    std::shared_ptr<const std::vector<std::vector<double>>> table_;
    SplitMix64 rng_;
};

// One-off convenience wrapper around DensitySampler.
BitKey sample_key_from_density(std::shared_ptr<const DensitySpec> spec, SplitMix64& rng,
                               std::size_t depth_cap = kDefaultDepthCap);

} // namespace bitcomp
