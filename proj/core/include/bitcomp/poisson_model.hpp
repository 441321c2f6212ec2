#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bitcomp/densities.hpp"

namespace bitcomp {

// Extended-precision float for the small-lambda series cross-check (the
// alternating terms reach e^+lambda scale before cancelling).
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;

struct PoissonEvalPolicy {
    double quad_tol = 1e-12;  // absolute quadrature tolerance
    double dyadic_eps = 1e-6; // stop the dyadic k-sum once 2^-k lambda < eps
};

struct ValueWithError {
    double value;
    double error_bound;
};

// E K(lambda) = 2 int_0^lambda (lambda - y)(e^-y - 1 + y) y^-2 dy by adaptive
// quadrature (integrand extended by 1/2 at y = 0).
double poisson_key_mean_exact(double lam, const PoissonEvalPolicy& policy = {});

// Same quantity in closed form, 2[x ln x - (2-gamma)x + ln x + gamma + 1 +
// (1+x)E1(x) - e^-x] (series below x = 1/2): the fast path for dyadic sums.
double poisson_key_mean_closed(double lam);

// 2 lam ln lam - (4-2 gamma)lam + 2 ln lam + 2 gamma + 2, plus the
// exponentially small refinement 2 e^-lam sum_{k=1}^{M-1} (-1)^{k+1} k k!
// lam^{-k-1} (M = 0 or 1: no refinement terms).
double poisson_key_mean_asymptotic(double lam, int m_terms);

// E B(lambda) = sum_{k>=0} 2^k E K(2^-k lambda): dyadic sum of quadrature
// values, truncated per policy with the analytic two-term tail added and the
// next-order tail plus accumulated quadrature tolerance reported as error.
ValueWithError poisson_bit_mean_exact(double lam, const PoissonEvalPolicy& policy = {});

// lam(ln lam)(lg lam) - c1 lam ln lam + c2 lam + pi(lam) lam; `refined` adds
// the calibrated remainder -2 ln lam - c4.
double poisson_bit_mean_asymptotic(double lam, bool refined);

// Extended-precision evaluation of the alternating series
// 2 sum_{k>=2} (-1)^k lam^k / (k! (k-1) k [1 - 2^{-(k-1)}]); cross-check
// oracle for lam <= 50.
BigFloat poisson_bit_mean_series(double lam);

// mu_f(lambda) = sum_{k=0..depth} sum_j E K(lambda p_{k,j}); tail bounded by
// lambda^2 sup(f) 2^-depth / 2 (E K(x) <= x^2/2).
ValueWithError mu_f(double lam, const DensitySpec& spec, int depth);

// Predicted bits per key comparison at scale lambda: (1/2) lg lambda.
double bits_per_key_prediction(double lam);

} // namespace bitcomp
