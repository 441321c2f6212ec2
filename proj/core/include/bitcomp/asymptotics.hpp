#pragma once

#include <complex>
#include <utility>

#include "bitcomp/rational.hpp"

namespace bitcomp {

// Constants of the bit-cost expansions.
struct ExpansionConstants {
    static constexpr double gamma_euler = 0.577215664901532860606512090082;
    static constexpr double ln2 = 0.693147180559945309417232121458;
    static constexpr double pi = 3.141592653589793238462643383279;

    static double beta() { return 2 * pi / ln2; } // imaginary pole spacing
    static double c1() { return (4 - 2 * gamma_euler - ln2) / ln2; }          // ~3.105
    static double c2() {                                                      // ~6.872
        return ((6 - ln2) * (6 - ln2) / 6 - (4 - ln2) * gamma_euler +
                pi * pi / 6 + gamma_euler * gamma_euler) / ln2;
    }
    static double c4() { return 4 * ln2 + 2 + 2 * gamma_euler; }              // ~5.927
    static double c1_tilde() {                                                // ~13.9
        return 7 / ln2 + 7.5 - (3 / ln2 + 2) * gamma_euler;
    }
    static double sigma_sq() { return 7 - (2.0 / 3.0) * pi * pi; }            // ~0.4203

    static constexpr int default_truncation = 8; // periodic-series cutoff K
};

// Principal-branch log Gamma(z), relative error <= 1e-12 on the strip used
// here (Lanczos approximation plus reflection with a stable log-sin).
std::complex<double> complex_log_gamma(std::complex<double> z);

// H_x in double: exact summation for moderate x, Euler-Maclaurin beyond.
double harmonic_double(double x);
double harmonic2_double(double x); // second-order H_x^(2)

// pi(x): fluctuation sum over k != 0 of (i/(pi k(-1-i beta k))) Gamma(-1-i
// beta k) x^{i beta k}, conjugate pairs combined; 1-periodic in lg x.
double periodic_pi(double x, int truncation = ExpansionConstants::default_truncation);

// pi~(x): (1/ln2) sum over k != 0 of ((3-i beta k)/(1+i beta k)) Gamma(-1-i
// beta k) x^{i beta k}.
double periodic_pi_tilde(double x, int truncation = ExpansionConstants::default_truncation);

// Bound on the dropped tail of either periodic series.
double periodic_tail_bound(int truncation = ExpansionConstants::default_truncation);

// Residue evaluation of E B_n: exact up to floating point and the fluctuation
// truncation (no cancellation), valid far beyond the rational-sum range.
double rice_exact_bit_mean(unsigned long n,
                           int truncation = ExpansionConstants::default_truncation);

// Residue evaluation of E K_n: 2n(H_n - 2 - 1/n) + 2(H_n + 1).
double rice_exact_key_mean(unsigned long n);

// n(ln n)(lg n) - c1 n ln n + c2 n + pi(n) n  (remainder O(log n) omitted).
double bit_mean_asymptotic(double n);

// 2n ln n - (4-2 gamma)n + 2 ln n + 2 gamma + 1  (remainder O(1/n) omitted).
double key_mean_asymptotic(double n);

// (2 + 3/ln2) n ln n - c1~ n + pi~(n) n  (remainder O(log^2 n) omitted).
double bitsquick_mean_asymptotic(double n);

// Truncated expansion of the upper incomplete gamma integral
// int_lam^inf e^-y y^s dy = e^-lam lam^s sum_{k<=M} s^(falling k) lam^-k + tail,
// i.e. the partial sum through the lam^-M term with remainder O(lam^{-M-1});
// returns the partial sum and a rigorous tail bound (requires M + 1 >= Re s).
std::pair<std::complex<double>, double>
incomplete_gamma_upper_expansion(std::complex<double> s, double lam, int m_terms);

// (gamma1(-1), gamma2(-2)) = (-gamma, -(1-gamma)); with verify set, both are
// recomputed by adaptive quadrature of their defining integrals and checked
// to 1e-8.
std::pair<double, double> gamma_integral_constants(bool verify = false);

} // namespace bitcomp
