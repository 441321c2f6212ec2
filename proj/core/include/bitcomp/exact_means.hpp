#pragma once

#include <utility>

#include "bitcomp/rational.hpp"

namespace bitcomp {

// H_n^(r) = sum_{j=1..n} j^-r (H_0 = 0).
Rational harmonic(unsigned long n, unsigned long r = 1);

// E K_n = 2(n+1)H_n - 4n: average quicksort key comparisons.
Rational exact_key_mean(unsigned long n);

// Same quantity via the alternating sum 2 sum_{k=2..n} (-1)^k C(n,k)/((k-1)k).
Rational exact_key_mean_altsum(unsigned long n);

// E B_n = 2 sum_{k=2..n} (-1)^k C(n,k) / ((k-1) k (1 - 2^{1-k})): average
// quicksort bit comparisons (1/(1-2^{-(k-1)}) = 2^{k-1}/(2^{k-1}-1) exactly).
Rational exact_bit_mean(unsigned long n);

// E Q_n: average bit comparisons of the prefix-stripping variant.
Rational exact_bitsquick_mean(unsigned long n);

// E B_n - E Q_n assembled as 2 D_n + 2 E_n - q_n.
Rational exact_savings_mean(unsigned long n);

// The three savings components.
Rational savings_component_d(unsigned long n);
Rational savings_component_e(unsigned long n);
Rational savings_component_q(unsigned long n); // q_n = 2nH_n - 5n + 2H_n + 1

// p_n(d) = (2/d^2)[(1-d)^n - 1 + nd] = 2 sum_{k=2..n} (-1)^k C(n,k) d^{k-2}:
// expected comparison count of a key pair at distance d. Both forms are
// computed and asserted equal.
Rational pairwise_rate(unsigned long n, const Rational& d);

// Largest |term| of the E B_n alternating sum next to the exact result:
// evidence that naive floating evaluation is hopeless.
std::pair<double, double> cancellation_report(unsigned long n);

} // namespace bitcomp
