#include "bitcomp/exact_means.hpp"

#include <cmath>
#include <stdexcept>

namespace bitcomp {
namespace {

// Iterates the alternating binomial sum: calls visit(k, term_k) with
// term_k = (-1)^k C(n,k) for k = 2..n; caller multiplies by its kernel.
template <typename Visit>
void alternating_binomials(unsigned long n, Visit visit) {
    BigInt binom = BigInt(n) * (n - 1) / 2; // C(n,2)
    for (unsigned long k = 2; k <= n; ++k) {
        visit(k, (k % 2 == 0) ? binom : BigInt(-binom));
        if (k < n) binom = binom * (n - k) / (k + 1);
    }
}

} // namespace

Rational harmonic(unsigned long n, unsigned long r) {
    if (r < 1) throw std::invalid_argument("harmonic order must be >= 1");
    Rational h = 0;
    for (unsigned long j = 1; j <= n; ++j) {
        BigInt p = 1;
        for (unsigned long i = 0; i < r; ++i) p *= j;
        h += Rational(1, p);
    }
    return h;
}

Rational exact_key_mean(unsigned long n) {
    if (n <= 1) return 0;
    return 2 * Rational(n + 1) * harmonic(n) - 4 * Rational(n);
}

Rational exact_key_mean_altsum(unsigned long n) {
    if (n < 2) throw std::invalid_argument("alternating sum needs n >= 2");
    Rational s = 0;
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        s += Rational(term) / Rational(BigInt(k - 1) * k);
    });
    return 2 * s;
}

Rational exact_bit_mean(unsigned long n) {
    if (n <= 1) return 0;
    Rational s = 0;
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        const BigInt p = BigInt(1) << (k - 1); // 2^{k-1}
        s += Rational(term * p) / Rational(BigInt(k - 1) * k * (p - 1));
    });
    return 2 * s;
}

Rational savings_component_q(unsigned long n) {
    if (n < 2) return 0;
    const Rational h = harmonic(n);
    return 2 * Rational(n) * h - 5 * Rational(n) + 2 * h + 1;
}

Rational savings_component_d(unsigned long n) {
    if (n < 2) return 0;
    Rational s = 0;
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        const BigInt p = BigInt(1) << (k - 1);
        // (k-3)(k-2) / (k (k-1) [1 - 2^{-(k-1)}])
        const BigInt num = (BigInt(k) - 3) * (BigInt(k) - 2) * p;
        s += Rational(term * num) / Rational(BigInt(k) * (k - 1) * (p - 1));
    });
    return s / 2;
}

Rational savings_component_e(unsigned long n) {
    if (n < 2) return 0;
    Rational s = 0;
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        const BigInt p = BigInt(1) << k;
        // -(k-2) / (k [1 - 2^{-k}])   (sign flip: sum has (-1)^{k-1})
        const BigInt num = (BigInt(k) - 2) * p;
        s -= Rational(term * num) / Rational(BigInt(k) * (p - 1));
    });
    return s;
}

Rational exact_savings_mean(unsigned long n) {
    if (n < 2) return 0;
    return 2 * savings_component_d(n) + 2 * savings_component_e(n) - savings_component_q(n);
}

Rational exact_bitsquick_mean(unsigned long n) {
    if (n <= 1) return 0;
    Rational s = 0;
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        const BigInt pk = BigInt(1) << k;        // 2^k
        const BigInt pk1 = BigInt(1) << (k - 1); // 2^{k-1}
        // k^{-1} [ 2(k-2)/(1-2^{-k}) - (k-4)/(1-2^{-(k-1)}) ]
        const Rational inner = Rational(2 * (BigInt(k) - 2) * pk, pk - 1) -
                               Rational((BigInt(k) - 4) * pk1, pk1 - 1);
        s += Rational(term) * inner / Rational(k);
    });
    return s + savings_component_q(n);
}

Rational pairwise_rate(unsigned long n, const Rational& d) {
    if (n < 2) throw std::invalid_argument("pairwise rate needs n >= 2");
    if (!(d > 0 && d < 1)) throw std::invalid_argument("d must be in (0,1)");
    Rational pow = 1;
    const Rational base = 1 - d;
    for (unsigned long i = 0; i < n; ++i) pow *= base;
    const Rational closed = Rational(2) / (d * d) * (pow - 1 + Rational(n) * d);
    Rational alt = 0;
    Rational dpow = 1; // d^{k-2}
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        alt += Rational(term) * dpow;
        (void)k;
        dpow *= d;
    });
    alt *= 2;
    if (closed != alt)
        throw std::logic_error("pairwise rate: closed form and alternating sum disagree");
    return closed;
}

std::pair<double, double> cancellation_report(unsigned long n) {
    if (n < 2) throw std::invalid_argument("cancellation report needs n >= 2");
    double max_log = -HUGE_VAL;
    alternating_binomials(n, [&](unsigned long k, const BigInt& term) {
        const BigInt p = BigInt(1) << (k - 1);
        const Rational t = Rational(2 * abs(term) * p) / Rational(BigInt(k - 1) * k * (p - 1));
        // log10 of the term, overflow-safe for huge binomials
        const double lg = static_cast<double>(
            log10(boost::multiprecision::mpf_float_100(t)));
        if (lg > max_log) max_log = lg;
    });
    const double max_term = std::pow(10.0, max_log); // may overflow to inf, honestly
    return {max_term, static_cast<double>(exact_bit_mean(n))};
}

} // namespace bitcomp
