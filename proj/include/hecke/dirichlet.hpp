#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hecke/field.hpp"

namespace hecke {

// chi(n) = kronecker(-d, n) tabulated over one period 0..|D|-1.
std::vector<int8_t> chi_period(const field_config& F);

// L(1, chi) by plain summation of n_blocks complete periods.
double l1_by_blocks(const field_config& F, int64_t n_blocks);

// L(s, chi) for complex s by Hurwitz-zeta decomposition over one period with
// Euler-Maclaurin tails.  The character's zero mean cancels the s = 1 pole;
// the cancellation is carried out analytically so s near (or at) 1 is fine.
std::complex<double> l_char(const field_config& F, std::complex<double> s);

// Riemann zeta by Euler-Maclaurin, valid for Re(s) > -1, s != 1,
// moderate |Im(s)|.
std::complex<double> zeta_em(std::complex<double> s);

// d/ds log L(s, chi) at s = 1 by Richardson-extrapolated central differences
// of l_char.  Serves as the independent check on the eta-function route.
double lprime_ratio_derivative_oracle(const field_config& F);

} // namespace hecke
