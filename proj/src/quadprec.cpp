#include "hecke/quadprec.hpp"

#include <cstdlib>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// B_{2n} / (2n (2n-1)) for the Stirling series, 44 digits.
constexpr int stirling_terms = 20;
const char* const stirling_digits[stirling_terms] = {
    "0.083333333333333333333333333333333333333333333",
    "-0.0027777777777777777777777777777777777777777778",
    "0.00079365079365079365079365079365079365079365079",
    "-0.00059523809523809523809523809523809523809523810",
    "0.00084175084175084175084175084175084175084175084",
    "-0.0019175269175269175269175269175269175269175269",
    "0.0064102564102564102564102564102564102564102564",
    "-0.029550653594771241830065359477124183006535948",
    "0.17964437236883057316493849001588939669435025",
    "-1.3924322169059011164274322169059011164274322",
    "13.402864044168391994478951000690131124913734",
    "-156.84828462600201730636513245208897382810426",
    "2193.1033333333333333333333333333333333333333",
    "-36108.771253724989357173265219242230736483610",
    "691472.26885131306710839525077567346755333407",
    "-15238221.539407416192283364958886780518659077",
    "382900751.39141414141414141414141414141414141",
    "-10882266035.784391089015149165525105374729435",
    "347320283765.00225225225225225225225225225225",
    "-12369602142269.274454251710349271324881080979",
};

struct stirling_table {
    qfloat a[stirling_terms];
    qfloat half_log_two_pi;
    stirling_table() {
        for (int i = 0; i < stirling_terms; ++i)
            a[i] = strtoflt128(stirling_digits[i], nullptr);
        half_log_two_pi = 0.5 * logq(2.0 * acosq(-1.0));
    }
};

const stirling_table& stirling() {
    static const stirling_table t;
    return t;
}

} // namespace

qcplx log_gamma(qcplx z) {
    if (z.re <= 0.0)
        throw pole_hit("log_gamma restricted to Re(z) > 0");
    // raise the argument until the Stirling tail at |z| >= 30 is below the
    // working precision, then subtract the logs back off
    qcplx shift = 0.0;
    while (abs(z) < 30.0) {
        shift += log(z);
        z = z + qfloat(1.0);
    }
    const stirling_table& st = stirling();
    qcplx lz = log(z);
    qcplx acc = (z - qcplx(qfloat(0.5))) * lz - z + qcplx(st.half_log_two_pi);
    qcplx zinv = qcplx(qfloat(1.0)) / z;
    qcplx z2inv = zinv * zinv;
    qcplx p = zinv;
    for (int i = 0; i < stirling_terms; ++i) {
        qcplx term = st.a[i] * p;
        acc += term;
        if (abs(term) < 1e-40 * abs(acc)) break;
        p = p * z2inv;
    }
    return acc - shift;
}

qcplx upper_gamma_regularized(qcplx w, qfloat x) {
    if (x < 0) throw bad_input("upper incomplete gamma needs x >= 0");
    if (w.re <= 0) throw bad_input("upper incomplete gamma needs Re(w) > 0");
    if (x == 0) return qcplx(qfloat(1.0));

    // same split as the double version: power series below the |w| shoulder
    // (cancellation-free there), Lentz continued fraction beyond it
    if (x < abs(w) + 2.0) {
        qcplx sum = qfloat(1.0), term = qfloat(1.0);
        for (int j = 1; j < 200000; ++j) {
            term = term * (qcplx(x) / (w + qfloat(j)));
            sum += term;
            if (abs(term) < 1e-36 * abs(sum)) break;
        }
        qcplx logpre = w * qcplx(logq(x)) - qcplx(x) - log_gamma(w + qfloat(1.0));
        return qfloat(1.0) - exp(logpre) * sum;
    }

    const qfloat tiny = FLT128_MIN * qfloat(1e30);
    qcplx b = qcplx(x + 1.0) - w;
    qcplx c = qcplx(qfloat(1.0) / tiny);
    qcplx dd = qcplx(qfloat(1.0)) / b;
    qcplx h = dd;
    for (int i = 1; i < 200000; ++i) {
        qcplx an = -qfloat(i) * (qcplx(qfloat(i)) - w);
        b += qcplx(qfloat(2.0));
        dd = an * dd + b;
        if (abs(dd) < tiny) dd = qcplx(tiny);
        c = b + an / c;
        if (abs(c) < tiny) c = qcplx(tiny);
        dd = qcplx(qfloat(1.0)) / dd;
        qcplx delta = dd * c;
        h = h * delta;
        if (abs(delta - qcplx(qfloat(1.0))) < 1e-34) break;
    }
    qcplx logpre = w * qcplx(logq(x)) - qcplx(x) - log_gamma(w);
    return exp(logpre) * h;
}

} // namespace hecke
