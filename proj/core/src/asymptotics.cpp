#include "bitcomp/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bitcomp/errors.hpp"

namespace bitcomp {
namespace {

using cplx = std::complex<double>;
using EC = ExpansionConstants;

constexpr double kLog2Pi = 1.837877066409345483560659472811; // ln(2*pi)

// Lanczos approximation, g = 7, 9 coefficients (double precision set).
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log_gamma(cplx z) { // requires Re z >= 0.5
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + 7.5;
    return 0.5 * kLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z), stable for large |Im z|; may differ from the principal
// value by 2*pi*i*k, which cancels whenever the result is exponentiated.
cplx log_sin_pi(cplx z) {
    const double pi = EC::pi;
    if (std::abs(z.imag()) < 10.0) {
        const cplx s = std::sin(pi * z);
        if (s == 0.0) throw PoleArgument("log sin at an integer");
        return std::log(s);
    }
    if (z.imag() > 0) {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        return cplx(-EC::ln2, pi / 2) + cplx(0, -pi) * z +
               std::log(1.0 - std::exp(cplx(0, 2 * pi) * z));
    }
    return cplx(-EC::ln2, -pi / 2) + cplx(0, pi) * z +
           std::log(1.0 - std::exp(cplx(0, -2 * pi) * z));
}

} // namespace

std::complex<double> complex_log_gamma(std::complex<double> z) {
    if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
        throw PoleArgument("log gamma pole at nonpositive integer");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(EC::pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

double harmonic_double(double x) {
    const double n = std::floor(x);
    if (n < 1) return 0;
    if (n <= 1048576) {
        double h = 0;
        for (double j = n; j >= 1; --j) h += 1.0 / j;
        return h;
    }
    const double inv = 1.0 / n, inv2 = inv * inv;
    return std::log(n) + EC::gamma_euler + 0.5 * inv - inv2 / 12 + inv2 * inv2 / 120;
}

double harmonic2_double(double x) {
    const double n = std::floor(x);
    if (n < 1) return 0;
    if (n <= 1048576) {
        double h = 0;
        for (double j = n; j >= 1; --j) h += 1.0 / (j * j);
        return h;
    }
    const double z2 = EC::pi * EC::pi / 6;
    const double inv = 1.0 / n, inv2 = inv * inv;
    return z2 - inv + 0.5 * inv2 - inv * inv2 / 6 + inv2 * inv2 * inv / 30;
}

double periodic_pi(double x, int truncation) {
    if (!(x > 1)) throw std::invalid_argument("periodic_pi needs x > 1");
    const double beta = EC::beta(), lx = std::log(x);
    double sum = 0;
    for (int k = 1; k <= truncation; ++k) {
        const double bk = beta * k;
        const cplx coeff = cplx(0, 1) / (EC::pi * k * cplx(-1, -bk));
        const cplx term = coeff * std::exp(complex_log_gamma(cplx(-1, -bk)) + cplx(0, bk * lx));
        sum += 2 * term.real();
    }
    return sum;
}

double periodic_pi_tilde(double x, int truncation) {
    if (!(x > 1)) throw std::invalid_argument("periodic_pi_tilde needs x > 1");
    const double beta = EC::beta(), lx = std::log(x);
    double sum = 0;
    for (int k = 1; k <= truncation; ++k) {
        const double bk = beta * k;
        const cplx coeff = cplx(3, -bk) / cplx(1, bk);
        const cplx term = coeff * std::exp(complex_log_gamma(cplx(-1, -bk)) + cplx(0, bk * lx));
        sum += 2 * term.real();
    }
    return sum / EC::ln2;
}

double periodic_tail_bound(int truncation) {
    const double bk = EC::beta() * (truncation + 1);
    const double g = std::abs(std::exp(complex_log_gamma(cplx(-1, -bk))));
    // worst coefficient magnitude of either series is < 1.5/ln2 < 2.2;
    // terms decay faster than e^{-pi beta/2} per step, so 2x covers the tail
    return 2 * 2 * 2.2 * g;
}

double rice_exact_bit_mean(unsigned long n, int truncation) {
    if (n < 2) throw std::invalid_argument("rice bit mean needs n >= 2");
    const double beta = EC::beta();
    const double h1 = harmonic_double(static_cast<double>(n - 1));
    const double h2 = harmonic2_double(static_cast<double>(n - 1));
    const double hn = harmonic_double(static_cast<double>(n));
    const double c = (6 - EC::ln2) * (6 - EC::ln2) / 6;
    const double triple_pole = n / EC::ln2 * (h1 * h1 - (4 - EC::ln2) * h1 + c + h2);
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1);
    double fluct = 0;
    for (int k = 1; k <= truncation; ++k) {
        const double bk = beta * k;
        const cplx coeff = cplx(0, 1) / (EC::pi * k * cplx(-1, -bk));
        const cplx ratio = std::exp(log_n_fact -
                                    complex_log_gamma(cplx(static_cast<double>(n), -bk)) +
                                    complex_log_gamma(cplx(-1, -bk)));
        fluct += 2 * (coeff * ratio).real();
    }
    const double double_pole = -2 * (hn + 2 * EC::ln2 + 1);
    return triple_pole + fluct + double_pole;
}

double rice_exact_key_mean(unsigned long n) {
    if (n < 1) return 0;
    const double nn = static_cast<double>(n);
    const double hn = harmonic_double(nn);
    return 2 * nn * (hn - 2 - 1 / nn) + 2 * (hn + 1);
}

double bit_mean_asymptotic(double n) {
    if (!(n >= 2)) throw std::invalid_argument("bit mean asymptotic needs n >= 2");
    const double ln_n = std::log(n);
    return n * ln_n * (ln_n / EC::ln2) - EC::c1() * n * ln_n + EC::c2() * n +
           periodic_pi(n) * n;
}

double key_mean_asymptotic(double n) {
    if (!(n >= 1)) throw std::invalid_argument("key mean asymptotic needs n >= 1");
    const double ln_n = std::log(n);
    return 2 * n * ln_n - (4 - 2 * EC::gamma_euler) * n + 2 * ln_n +
           2 * EC::gamma_euler + 1;
}

double bitsquick_mean_asymptotic(double n) {
    if (!(n >= 2)) throw std::invalid_argument("bitsquick asymptotic needs n >= 2");
    const double ln_n = std::log(n);
    return (2 + 3 / EC::ln2) * n * ln_n - EC::c1_tilde() * n + periodic_pi_tilde(n) * n;
}

std::pair<std::complex<double>, double>
incomplete_gamma_upper_expansion(std::complex<double> s, double lam, int m_terms) {
    if (!(lam >= 1)) throw std::invalid_argument("expansion needs lam >= 1");
    if (s.real() > m_terms + 1)
        throw std::invalid_argument("tail bound requires M + 1 >= Re s");
    // partial sum through the lam^-M term (k = 0..M), remainder O(lam^{-M-1})
    cplx sum = 0, falling = 1; // s^(falling k)
    double inv_pow = 1;        // lam^-k
    for (int k = 0; k <= m_terms; ++k) {
        sum += falling * inv_pow;
        falling *= s - static_cast<double>(k);
        inv_pow /= lam;
    }
    const cplx value = std::exp(-lam) * std::pow(cplx(lam), s) * sum;
    // remainder = s^(falling M+1) * int_lam^inf e^-y y^{s-M-1} dy, and for
    // Re(s-M-1) <= 0 the integral is bounded by e^-lam lam^{Re s - M - 1}
    const double tail = std::abs(falling) * std::exp(-lam) *
                        std::pow(lam, s.real() - (m_terms + 1));
    return {value, tail};
}

std::pair<double, double> gamma_integral_constants(bool verify) {
    const double g1 = -EC::gamma_euler;
    const double g2 = -(1 - EC::gamma_euler);
    if (verify) {
        boost::math::quadrature::tanh_sinh<double> ts;
        boost::math::quadrature::exp_sinh<double> es;
        const auto f1a = [](double y) { return y > 0 ? std::expm1(-y) / y : -1.0; };
        const auto f1b = [](double y) { return std::exp(-y) / y; };
        const double i1 = ts.integrate(f1a, 0.0, 1.0) +
                          es.integrate(f1b, 1.0, std::numeric_limits<double>::infinity());
        const auto f2a = [](double y) {
            if (y < 1e-4) return 0.5 - y / 6 + y * y / 24;
            return (std::expm1(-y) + y) / (y * y);
        };
        const auto f2b = [](double y) { return std::expm1(-y) / (y * y); };
        const double i2 = ts.integrate(f2a, 0.0, 1.0) +
                          es.integrate(f2b, 1.0, std::numeric_limits<double>::infinity());
        if (std::abs(i1 - g1) > 1e-8 || std::abs(i2 - g2) > 1e-8)
            throw QuadratureFailure("gamma integral verification exceeded 1e-8");
    }
    return {g1, g2};
}

} // namespace bitcomp
