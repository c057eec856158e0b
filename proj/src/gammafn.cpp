#include "hecke/gammafn.hpp"

#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Lanczos, g = 7, 9 terms.  Good to ~1e-13 relative on Re(z) > 0.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

cplx log_gamma_pos(cplx z) {
    // shifted series at z-1
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + double(i));
    cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

cplx log_gamma(cplx z) {
    if (z.real() <= 0.0)
        throw pole_hit("log_gamma restricted to Re(z) > 0");
    if (z.imag() < 0.0) return std::conj(log_gamma_pos(std::conj(z)));
    return log_gamma_pos(z);
}

cplx upper_gamma_regularized(cplx w, double x) {
    if (x < 0) throw bad_input("upper incomplete gamma needs x >= 0");
    if (w.real() <= 0) throw bad_input("upper incomplete gamma needs Re(w) > 0");
    if (x == 0) return 1.0;

    // The continued fraction stalls for x below |w|, which happens with large
    // imaginary shifts; the power series converges (in ~x + O(1) terms)
    // whenever x is moderate, and is cancellation-free in absolute terms.
    if (x < std::abs(w) + 2.0) {
        // P(w,x) = x^w e^{-x} / Gamma(w+1) * sum_j x^j / ((w+1)...(w+j))
        cplx sum = 1.0, term = 1.0;
        for (int j = 1; j < 10000; ++j) {
            term *= x / (w + double(j));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        cplx logpre = w * std::log(x) - x - log_gamma(w + 1.0);
        return 1.0 - std::exp(logpre) * sum;
    }

    // modified Lentz continued fraction for Q(w,x)
    const double tiny = 1e-300;
    cplx b = x + 1.0 - w;
    cplx c = 1.0 / tiny;
    cplx dd = 1.0 / b;
    cplx h = dd;
    for (int i = 1; i < 10000; ++i) {
        cplx an = -double(i) * (double(i) - w);
        b += 2.0;
        dd = an * dd + b;
        if (std::abs(dd) < tiny) dd = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        dd = 1.0 / dd;
        cplx delta = dd * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    cplx logpre = w * std::log(x) - x - log_gamma(w);
    return std::exp(logpre) * h;
}

} // namespace hecke
