#include "bitcomp/poisson_model.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "bitcomp/asymptotics.hpp"
#include "bitcomp/errors.hpp"

namespace bitcomp {
namespace {

using EC = ExpansionConstants;

// (e^-y - 1 + y) / y^2, extended by 1/2 at y = 0.
double g2(double y) {
    if (y < 1e-4) return 0.5 - y / 6 + y * y / 24 - y * y * y / 120;
    return (std::expm1(-y) + y) / (y * y);
}

} // namespace

double poisson_key_mean_exact(double lam, const PoissonEvalPolicy& policy) {
    if (!(lam > 0)) throw std::invalid_argument("lambda must be positive");
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0, l1 = 0;
    const double v = ts.integrate([&](double y) { return 2 * (lam - y) * g2(y); },
                                  0.0, lam, 5e-14, &err, &l1);
    if (err * (l1 > 0 ? l1 : 1.0) > policy.quad_tol * std::max(1.0, v))
        throw QuadratureFailure("key mean quadrature exceeded tolerance");
    return v;
}

double poisson_key_mean_closed(double lam) {
    if (!(lam > 0)) throw std::invalid_argument("lambda must be positive");
    if (lam < 1.0) {
        // 2 sum_{k>=2} (-1)^k lam^k / (k! (k-1) k)
        double sum = 0, t = lam * lam / 2; // lam^k / k!
        for (int k = 2; k < 60; ++k) {
            const double add = t / ((k - 1.0) * k);
            sum += (k % 2 == 0) ? add : -add;
            if (add < 1e-19) break;
            t *= lam / (k + 1);
        }
        return 2 * sum;
    }
    const double e1 = boost::math::expint(1, lam);
    return 2 * (lam * std::log(lam) - (2 - EC::gamma_euler) * lam + std::log(lam) +
                EC::gamma_euler + 1 + (1 + lam) * e1 - std::exp(-lam));
}

double poisson_key_mean_asymptotic(double lam, int m_terms) {
    if (!(lam >= 2)) throw std::invalid_argument("asymptotic needs lambda >= 2");
    const double ln_l = std::log(lam);
    double v = 2 * lam * ln_l - (4 - 2 * EC::gamma_euler) * lam + 2 * ln_l +
               2 * EC::gamma_euler + 2;
    double kfact = 1, lpow = lam * lam; // k!, lam^{k+1}
    for (int k = 1; k < m_terms; ++k) {
        kfact *= k;
        lpow *= lam;
        const double term = 2 * std::exp(-lam) * k * kfact / lpow;
        v += (k % 2 == 1) ? term : -term;
    }
    return v;
}

ValueWithError poisson_bit_mean_exact(double lam, const PoissonEvalPolicy& policy) {
    if (!(lam > 0)) throw std::invalid_argument("lambda must be positive");
    double sum = 0;
    int k = 0;
    for (;; ++k) {
        const double x = std::ldexp(lam, -k);
        if (x < policy.dyadic_eps) break;
        sum += std::ldexp(poisson_key_mean_exact(x, policy), k);
    }
    // analytic tail: sum_{j>=k} 2^j [x_j^2/2 - x_j^3/18], x_j = 2^-j lam
    const double tail_value = lam * lam * std::ldexp(1.0, -k) -
                              lam * lam * lam * std::ldexp(1.0, -2 * k) * 2 / 27;
    // next-order term bound plus accumulated quadrature tolerance
    const double err = 2 * std::pow(lam, 4) * std::ldexp(1.0, -3 * k) * 8 / (144 * 7) +
                       k * policy.quad_tol;
    return {sum + tail_value, err};
}

double poisson_bit_mean_asymptotic(double lam, bool refined) {
    if (!(lam >= 2)) throw std::invalid_argument("asymptotic needs lambda >= 2");
    const double ln_l = std::log(lam);
    double v = lam * ln_l * (ln_l / EC::ln2) - EC::c1() * lam * ln_l + EC::c2() * lam +
               periodic_pi(lam) * lam;
    if (refined) v += -2 * ln_l - EC::c4();
    return v;
}

BigFloat poisson_bit_mean_series(double lam) {
    if (!(lam > 0 && lam <= 50))
        throw std::invalid_argument("series oracle is for 0 < lambda <= 50");
    const BigFloat l(lam);
    BigFloat sum = 0, t = l * l / 2; // lam^k / k!
    BigFloat pk = 2;                 // 2^{k-1}
    for (int k = 2; k <= 500; ++k) {
        const BigFloat add = t * pk / (BigFloat(k - 1) * k * (pk - 1));
        sum += (k % 2 == 0) ? add : -add;
        if (t < BigFloat(1e-50)) break;
        t *= l / (k + 1);
        pk *= 2;
    }
    return 2 * sum;
}

ValueWithError mu_f(double lam, const DensitySpec& spec, int depth) {
    if (!(lam > 0)) throw std::invalid_argument("lambda must be positive");
    if (depth < 1 || depth > 24) throw std::invalid_argument("depth must be in [1, 24]");
    double total = 0;
    if (spec.is_uniform()) {
        // all rank-k masses equal 2^-k: the inner sum collapses, and the tail
        // has the same closed form as the dyadic bit-mean sum
        for (int k = 0; k <= depth; ++k)
            total += std::ldexp(poisson_key_mean_closed(std::ldexp(lam, -k)), k);
        const double tail_value = lam * lam * std::ldexp(1.0, -(depth + 1)) -
                                  lam * lam * lam * std::ldexp(1.0, -2 * (depth + 1)) * 2 / 27;
        const double err =
            2 * std::pow(lam, 4) * std::ldexp(1.0, -3 * (depth + 1)) * 8 / (144 * 7);
        return {total + tail_value, err};
    }
    {
        for (int k = 0; k <= depth; ++k) {
            const std::size_t count = std::size_t(1) << k;
            const double w = std::ldexp(1.0, -k);
            double prev = 0; // F(0)
            double rank_sum = 0;
            for (std::size_t j = 1; j <= count; ++j) {
                const double f = j == count ? 1.0 : spec.cdf_double(j * w);
                const double mass = f - prev;
                prev = f;
                if (mass > 0) rank_sum += poisson_key_mean_closed(lam * mass);
            }
            total += rank_sum;
        }
    }
    const double tail = 0.5 * lam * lam * spec.sup_bound() * std::ldexp(1.0, -depth);
    return {total, tail};
}

double bits_per_key_prediction(double lam) {
    if (!(lam > 1)) throw std::invalid_argument("prediction needs lambda > 1");
    return 0.5 * std::log2(lam);
}

} // namespace bitcomp
