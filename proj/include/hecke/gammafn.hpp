#pragma once

#include <complex>

namespace hecke {

using cplx = std::complex<double>;

// Principal branch of log Gamma(z) for Re(z) > 0 (Lanczos, g = 7).
// Relative accuracy ~1e-13 on the right half-plane.
cplx log_gamma(cplx z);

// Regularized upper incomplete gamma Q(w, x) = Gamma(w, x)/Gamma(w) for
// complex w with Re(w) > 0 and real x >= 0.  Series for x < Re(w)+1,
// continued fraction otherwise; both branches are cancellation-free.
cplx upper_gamma_regularized(cplx w, double x);

} // namespace hecke
