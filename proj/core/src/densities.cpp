#include "bitcomp/densities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <json.hpp>

#include "bitcomp/errors.hpp"

namespace bitcomp {
namespace {

constexpr unsigned kTableRanks = 16; // branch probabilities precomputed for k < 16
constexpr unsigned kExactRank = 40;  // beyond this, exact rational intervals

bool is_dyadic(const Rational& x) {
    BigInt d = boost::multiprecision::denominator(x);
    return (d & (d - 1)) == 0;
}

Rational poly_eval(const std::vector<Rational>& c, const Rational& x) {
    Rational v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

// Antiderivative coefficients: A(x) = sum c_i x^(i+1)/(i+1), A(0) = 0.
std::vector<Rational> antiderivative(const std::vector<Rational>& c) {
    std::vector<Rational> a(c.size() + 1);
    a[0] = 0;
    for (std::size_t i = 0; i < c.size(); ++i) a[i + 1] = c[i] / Rational(i + 1);
    return a;
}

void check_positive(const DensityPiece& p) {
    std::vector<Rational> c = p.coeffs;
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (poly_eval(c, p.a) < 0 || poly_eval(c, p.b) < 0)
        throw std::invalid_argument("density negative at a piece endpoint");
    // interior extrema (degree <= 3: derivative is at most quadratic)
    if (c.size() >= 3 && c.size() <= 4) {
        const double a = static_cast<double>(p.a), b = static_cast<double>(p.b);
        std::vector<double> cd(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) cd[i] = static_cast<double>(c[i]);
        std::vector<double> roots;
        if (c.size() == 3) {
            if (cd[2] != 0) roots.push_back(-cd[1] / (2 * cd[2]));
        } else {
            const double A = 3 * cd[3], B = 2 * cd[2], C = cd[1];
            if (A == 0) {
                if (B != 0) roots.push_back(-C / B);
            } else {
                const double disc = B * B - 4 * A * C;
                if (disc >= 0) {
                    roots.push_back((-B + std::sqrt(disc)) / (2 * A));
                    roots.push_back((-B - std::sqrt(disc)) / (2 * A));
                }
            }
        }
        for (double r : roots)
            if (r > a && r < b && poly_eval(cd, r) < -1e-12)
                throw std::invalid_argument("density negative at an interior extremum");
    }
}

} // namespace

DensitySpec::DensitySpec(std::vector<DensityPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("density needs at least one piece");
    Rational cursor = 0;
    Rational total = 0;
    for (const auto& p : pieces_) {
        if (p.a != cursor) throw std::invalid_argument("pieces must partition (0,1) contiguously");
        if (!(p.a < p.b)) throw std::invalid_argument("piece endpoints must satisfy a < b");
        if (!is_dyadic(p.a) || !is_dyadic(p.b))
            throw std::invalid_argument("piece endpoints must be dyadic rationals");
        if (p.coeffs.empty()) throw std::invalid_argument("piece polynomial is empty");
        check_positive(p);
        cursor = p.b;
        cum_.push_back(total);
        auto anti = antiderivative(p.coeffs);
        total += poly_eval(anti, p.b) - poly_eval(anti, p.a);
    }
    if (cursor != 1) throw std::invalid_argument("pieces must end at 1");
    if (total != 1) throw std::invalid_argument("density must integrate to exactly 1");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        auto anti = antiderivative(pieces_[i].coeffs);
        std::vector<double> ad(anti.size());
        for (std::size_t m = 0; m < anti.size(); ++m) ad[m] = static_cast<double>(anti[m]);
        anti_.push_back(std::move(ad));
        a_d_.push_back(static_cast<double>(pieces_[i].a));
        cum_d_.push_back(static_cast<double>(cum_[i]));
    }
}

DensitySpec DensitySpec::uniform() {
    return DensitySpec({DensityPiece{Rational(0), Rational(1), {Rational(1)}}});
}

DensitySpec DensitySpec::linear() {
    return DensitySpec({DensityPiece{Rational(0), Rational(1), {Rational(0), Rational(2)}}});
}

bool DensitySpec::is_uniform() const {
    for (const auto& p : pieces_) {
        if (p.coeffs[0] != 1) return false;
        for (std::size_t i = 1; i < p.coeffs.size(); ++i)
            if (p.coeffs[i] != 0) return false;
    }
    return true;
}

Rational DensitySpec::cdf(const Rational& x) const {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    std::size_t i = 0;
    while (i + 1 < pieces_.size() && x >= pieces_[i].b) ++i;
    auto anti = antiderivative(pieces_[i].coeffs);
    return cum_[i] + poly_eval(anti, x) - poly_eval(anti, pieces_[i].a);
}

double DensitySpec::cdf_double(double x) const {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    std::size_t i = 0;
    while (i + 1 < pieces_.size() && x >= static_cast<double>(pieces_[i].b)) ++i;
    return cum_d_[i] + poly_eval(anti_[i], x) - poly_eval(anti_[i], a_d_[i]);
}

Rational DensitySpec::value(const Rational& x) const {
    std::size_t i = 0;
    while (i + 1 < pieces_.size() && x >= pieces_[i].b) ++i;
    return poly_eval(pieces_[i].coeffs, x);
}

double DensitySpec::sup_bound() const {
    double best = 0;
    for (const auto& p : pieces_) {
        double s = 0;
        for (const auto& c : p.coeffs) s += std::abs(static_cast<double>(c));
        best = std::max(best, s);
    }
    return best;
}

DensitySpec DensitySpec::reflected() const {
    std::vector<DensityPiece> out;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
        const auto& c = it->coeffs;
        // q(x) = p(1-x)
        std::vector<Rational> q(c.size(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            Rational bin = 1;
            for (std::size_t m = 0; m <= i; ++m) {
                q[m] += c[i] * bin * ((m % 2) ? -1 : 1);
                bin = bin * Rational(static_cast<long>(i - m)) / Rational(static_cast<long>(m + 1));
            }
        }
        out.push_back(DensityPiece{1 - it->b, 1 - it->a, std::move(q)});
    }
    return DensitySpec(std::move(out));
}

DensitySpec DensitySpec::from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    const nlohmann::json& arr = doc.is_array() ? doc : doc.at("pieces");
    std::vector<DensityPiece> pieces;
    for (const auto& item : arr) {
        DensityPiece p;
        p.a = Rational(BigInt(item.at("a_num").get<long long>()),
                       BigInt(item.at("a_den").get<long long>()));
        p.b = Rational(BigInt(item.at("b_num").get<long long>()),
                       BigInt(item.at("b_den").get<long long>()));
        for (const auto& c : item.at("coeffs"))
            p.coeffs.push_back(parse_rational(c.get<std::string>()));
        pieces.push_back(std::move(p));
    }
    return DensitySpec(std::move(pieces));
}

DensitySpec DensitySpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open density file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

Rational interval_mass(const DensitySpec& spec, const DyadicInterval& iv) {
    if (iv.j < 1 || iv.j > (BigInt(1) << iv.k))
        throw std::invalid_argument("dyadic index out of range");
    Rational w = Rational(1, BigInt(1) << iv.k);
    return spec.cdf(Rational(iv.j) * w) - spec.cdf(Rational(iv.j - 1) * w);
}

Rational smoothed_density(const DensitySpec& spec, unsigned k, const Rational& x) {
    if (x <= 0 || x >= 1) throw std::invalid_argument("x must be in (0,1)");
    BigInt scale = BigInt(1) << k;
    Rational t = x * Rational(scale);
    BigInt j = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
    return Rational(scale) * interval_mass(spec, DyadicInterval{k, j + 1});
}

double entropy_bits(const DensitySpec& spec) {
    boost::math::quadrature::tanh_sinh<double> integ;
    const double lg_e = 1.4426950408889634074;
    double total = 0, err_total = 0;
    for (std::size_t i = 0; i < spec.pieces().size(); ++i) {
        const auto& p = spec.pieces()[i];
        std::vector<double> cd(p.coeffs.size());
        for (std::size_t m = 0; m < cd.size(); ++m) cd[m] = static_cast<double>(p.coeffs[m]);
        auto f = [&](double x) {
            const double v = poly_eval(cd, x);
            return v > 0 ? v * std::log(v) * lg_e : 0.0;
        };
        double err = 0, l1 = 0;
        total += integ.integrate(f, static_cast<double>(p.a), static_cast<double>(p.b),
                                 1e-12, &err, &l1);
        err_total += err * (l1 > 0 ? l1 : 1.0);
    }
    if (err_total > 1e-10)
        throw QuadratureFailure("entropy quadrature exceeded 1e-10 tolerance");
    return total;
}

namespace {

class DensityBitSource final : public BitSource {
public:
    DensityBitSource(std::shared_ptr<const DensitySpec> spec,
                     std::shared_ptr<const std::vector<std::vector<double>>> table,
                     std::uint64_t seed)
        : spec_(std::move(spec)), table_(std::move(table)), rng_(seed) {}

    int next_bit() override {
        double p;
        if (k_ < kTableRanks) {
            p = (*table_)[k_][j_ - 1];
            if (p < 0) throw ZeroMassInterval("sampler reached a zero-mass interval");
        } else if (k_ < kExactRank) {
            const double w = std::ldexp(1.0, -static_cast<int>(k_));
            const double f0 = spec_->cdf_double((j_ - 1) * w);
            const double f1 = spec_->cdf_double(j_ * w);
            const double fm = spec_->cdf_double((2 * j_ - 1) * (w / 2));
            const double mass = f1 - f0;
            if (!(mass > 0)) throw ZeroMassInterval("sampler reached a zero-mass interval");
            p = (f1 - fm) / mass;
        } else {
            if (!exact_) {
                Rational w(1, BigInt(1) << k_);
                lo_ = Rational(BigInt(j_ - 1)) * w;
                hi_ = Rational(BigInt(j_)) * w;
                exact_ = true;
            }
            const Rational mid = (lo_ + hi_) / 2;
            const Rational mass = spec_->cdf(hi_) - spec_->cdf(lo_);
            if (mass <= 0) throw ZeroMassInterval("sampler reached a zero-mass interval");
            p = static_cast<double>((spec_->cdf(hi_) - spec_->cdf(mid)) / mass);
        }
        const int b = rng_.next_double() < p ? 1 : 0;
        if (exact_) {
            const Rational mid = (lo_ + hi_) / 2;
            (b ? lo_ : hi_) = mid;
        } else {
            j_ = 2 * j_ - 1 + b;
        }
        ++k_;
        return b;
    }

private:
    std::shared_ptr<const DensitySpec> spec_;
    std::shared_ptr<const std::vector<std::vector<double>>> table_;
    SplitMix64 rng_;
    unsigned k_ = 0;
    std::uint64_t j_ = 1;
    bool exact_ = false;
    Rational lo_, hi_;
};

std::shared_ptr<const std::vector<std::vector<double>>>
build_prob_table(const DensitySpec& spec) {
    auto table = std::make_shared<std::vector<std::vector<double>>>(kTableRanks);
    // cdf at every dyadic point of rank kTableRanks, reused for all ranks
    const unsigned deep = kTableRanks;
    const std::size_t n = std::size_t(1) << deep;
    std::vector<double> F(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        F[i] = spec.cdf_double(std::ldexp(static_cast<double>(i), -static_cast<int>(deep)));
    for (unsigned k = 0; k < kTableRanks; ++k) {
        const std::size_t count = std::size_t(1) << k;
        const std::size_t step = n >> (k + 1); // half-interval stride at rank k
        auto& row = (*table)[k];
        row.resize(count);
        for (std::size_t j = 1; j <= count; ++j) {
            const double f0 = F[(j - 1) * 2 * step];
            const double fm = F[(2 * j - 1) * step];
            const double f1 = F[j * 2 * step];
            const double mass = f1 - f0;
            row[j - 1] = mass > 0 ? (f1 - fm) / mass : -1.0; // -1 marks zero mass
        }
    }
    return table;
}

} // namespace

DensitySampler::DensitySampler(std::shared_ptr<const DensitySpec> spec, std::uint64_t seed)
    : spec_(std::move(spec)), rng_(seed) {
    if (!spec_->is_uniform()) table_ = build_prob_table(*spec_);
}

BitKey DensitySampler::sample(std::size_t depth_cap) {
    if (!table_) { // uniform density: fair bits
        return BitKey::uniform(rng_, depth_cap);
    }
    return BitKey::from_source(
        std::make_unique<DensityBitSource>(spec_, table_, rng_()), depth_cap);
}

BitKey sample_key_from_density(std::shared_ptr<const DensitySpec> spec, SplitMix64& rng,
                               std::size_t depth_cap) {
    DensitySampler s(std::move(spec), rng());
    return s.sample(depth_cap);
}

} // namespace bitcomp
