#pragma once

#include <quadmath.h>

namespace hecke {

// 113-bit significand float and a minimal complex type over it.  This exists
// for one purpose: the smoothed central-value series loses ~pi*t/2 nats to
// cancellation high up the critical line, and past the double budget the sum
// has to be carried at higher precision before rounding the result back down.
using qfloat = __float128;

struct qcplx {
    qfloat re = 0.0, im = 0.0;
    qcplx() = default;
    qcplx(qfloat r) : re(r) {}
    qcplx(qfloat r, qfloat i) : re(r), im(i) {}
};

inline qcplx operator+(qcplx a, qcplx b) { return {a.re + b.re, a.im + b.im}; }
inline qcplx operator-(qcplx a, qcplx b) { return {a.re - b.re, a.im - b.im}; }
inline qcplx operator-(qcplx a) { return {-a.re, -a.im}; }
inline qcplx operator*(qcplx a, qcplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qcplx operator*(qfloat a, qcplx b) { return {a * b.re, a * b.im}; }
inline qcplx operator/(qcplx a, qcplx b) {
    // exponent range is +-4932 and every operand here is within e^+-400,
    // so the textbook formula cannot overflow
    qfloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline qcplx operator+(qcplx a, qfloat b) { return {a.re + b, a.im}; }
inline qcplx operator-(qfloat a, qcplx b) { return {a - b.re, -b.im}; }
inline qcplx operator+=(qcplx& a, qcplx b) { return a = a + b; }

inline qcplx conj(qcplx a) { return {a.re, -a.im}; }
inline qfloat abs(qcplx a) { return hypotq(a.re, a.im); }
inline qcplx exp(qcplx a) {
    qfloat m = expq(a.re);
    return {m * cosq(a.im), m * sinq(a.im)};
}
inline qcplx log(qcplx a) { return {logq(abs(a)), atan2q(a.im, a.re)}; }

// Principal log-gamma on Re(z) > 0.
qcplx log_gamma(qcplx z);

// Regularized upper incomplete gamma Q(w, x) for Re(w) > 0, x >= 0.
qcplx upper_gamma_regularized(qcplx w, qfloat x);

} // namespace hecke
