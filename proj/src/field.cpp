#include "hecke/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hecke/errors.hpp"

namespace hecke {

field_config make_field(int d, int N) {
    if (std::find(heegner_d.begin(), heegner_d.end(), d) == heegner_d.end())
        throw rejected_field(d);
    field_config F;
    F.d = d;
    F.unit_order = (d == 3) ? 6 : 2;
    if (N <= 0 || N % F.unit_order != 0) throw bad_frequency(N, F.unit_order);
    F.freq_mult = N;
    double sd = std::sqrt(double(d));
    if (d % 4 == 3) {
        F.disc_abs = d;
        F.c_aa = 1; F.c_ab = 1; F.c_bb = (d + 1) / 4;
        // generators 1 and (1 + i sqrt d)/2
        F.basis[0][0] = 1; F.basis[0][1] = 0.5;
        F.basis[1][0] = 0; F.basis[1][1] = sd / 2;
    } else {
        F.disc_abs = 4ll * d;
        F.c_aa = 1; F.c_ab = 0; F.c_bb = d;
        // generators 1 and i sqrt d
        F.basis[0][0] = 1; F.basis[0][1] = 0;
        F.basis[1][0] = 0; F.basis[1][1] = sd;
    }
    // Unimodular Iwasawa parameters of basis/sqrt(det), det = sqrt|D|/2:
    // the scaled basis is diag(a, 1/a) * [[1, n],[0, 1]] (upper triangular).
    double det = F.basis[0][0] * F.basis[1][1] - F.basis[0][1] * F.basis[1][0];
    F.iwasawa_a = F.basis[0][0] / std::sqrt(det);
    F.iwasawa_n = F.basis[0][1] / F.basis[0][0];
    return F;
}

int64_t norm_form(const field_config& F, int64_t a, int64_t b) {
    return F.c_aa * a * a + F.c_ab * a * b + F.c_bb * b * b;
}

namespace {

int64_t mulmod_u63(int64_t a, int64_t b, int64_t m) {
    return int64_t((__int128)a * b % m);
}

int64_t powmod(int64_t a, int64_t e, int64_t m) {
    int64_t r = 1 % m;
    a %= m; if (a < 0) a += m;
    while (e > 0) {
        if (e & 1) r = mulmod_u63(r, a, m);
        a = mulmod_u63(a, a, m);
        e >>= 1;
    }
    return r;
}

int kron2(int64_t a) {
    // (a/2): 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
    if (a % 2 == 0) return 0;
    int64_t m = a % 8; if (m < 0) m += 8;
    return (m == 1 || m == 7) ? 1 : -1;
}

} // namespace

int kronecker_prime(int64_t a, int64_t p) {
    if (p == 2) return kron2(a);
    int64_t r = powmod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

int kronecker(int64_t a, int64_t n, const sieve& sv) {
    if (n < 1) throw bad_input("kronecker: n must be >= 1");
    if (n == 1) return 1;
    int result = 1;
    for (auto [p, e] : sv.factor(n)) {
        int s = kronecker_prime(a, p);
        if (s == 0) return 0;
        if (s == -1 && (e & 1)) result = -result;
    }
    return result;
}

prime_class classify_prime(int64_t p, const field_config& F) {
    int chi = (p == F.d) ? 0 : kronecker_prime(-int64_t(F.d), p);
    split_class tag = chi == 0 ? split_class::ramified
                    : chi == 1 ? split_class::split
                               : split_class::inert;
    return {tag, chi};
}

namespace {

// hexagonal unit rotation for d = 3: multiplication by e^{i pi/3}
inline void rot6(int64_t& a, int64_t& b) {
    int64_t na = -b, nb = a + b;
    a = na; b = nb;
}

} // namespace

double ideal_angle(const field_config& F, int64_t a, int64_t b) {
    if (a == 0 && b == 0) throw zero_element();
    if (F.unit_order == 2) {
        // negate into the closed upper half-plane, positive real axis included
        if (b < 0 || (b == 0 && a < 0)) { a = -a; b = -b; }
    } else {
        // d = 3: the sector 0 <= arg < pi/3 is exactly {a > 0, b >= 0};
        // each rot6 advances the argument by pi/3, so at most 5 steps land inside.
        int guard = 0;
        while (!(a > 0 && b >= 0)) {
            rot6(a, b);
            if (++guard > 6) throw consistency_failure("unit reduction failed to converge");
        }
    }
    double x, y;
    F.embed(a, b, x, y);
    double th = std::atan2(y, x);
    // range [0, 2pi/w) is guaranteed by the integer sector choice; clamp edges
    double window = 2.0 * M_PI / F.unit_order;
    if (th < 0) th += 2.0 * M_PI;
    if (th >= window) th = std::nextafter(window, 0.0);
    return th;
}

double angle_bound_scan(const field_config& F, int N, double R, int Q) {
    if (R < 10) throw bad_input("angle_bound_scan: R must be >= 10");
    if (Q < 1) throw bad_input("angle_bound_scan: Q must be >= 1");
    double det = F.basis[0][0] * F.basis[1][1] - F.basis[0][1] * F.basis[1][0];
    if (!(std::abs(det) > 1e-12)) throw degenerate_lattice();
    double scale = 1.0 / std::sqrt(det);
    double sector = M_PI / (2.0 * N);

    // A line at angle theta admits the bound ||v||^q |alpha| >= C with q the
    // algebraic degree of n - cot(theta)/a^2 (q = 1 for the x-axis, where
    // the transverse coordinate is discrete outright).  The scan at a given
    // Q measures alpha only against lines of degree <= Q; against steeper
    // lines the product would sink to zero as R grows.  All degrees here
    // are 1 (the number is rational, a half-integer in every supported
    // field) or 2 (it is a quadratic irrational).
    std::vector<double> line_angles;
    for (int m = 0; m < 2 * N; ++m) {
        double theta = sector * double(m);
        int degree;
        if (m == 0) {
            degree = 1;
        } else {
            double x = F.iwasawa_n - 1.0 / (std::tan(theta) * F.iwasawa_a * F.iwasawa_a);
            degree = std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9 ? 1 : 2;
        }
        if (degree <= Q) line_angles.push_back(theta);
    }

    // ||v|| <= R  <=>  norm_form(a,b) <= R^2 det
    double M = R * R * det;
    int64_t bmax = int64_t(std::sqrt(4.0 * M / (4.0 * double(F.c_bb) - double(F.c_ab * F.c_ab))) ) + 1;
    double best = std::numeric_limits<double>::infinity();
    for (int64_t b = -bmax; b <= bmax; ++b) {
        // solve c_aa a^2 + c_ab a b + c_bb b^2 <= M for a
        double halfshift = -double(F.c_ab) * double(b) / (2.0 * F.c_aa);
        double disc = halfshift * halfshift - (double(F.c_bb) * double(b) * double(b) - M) / F.c_aa;
        if (disc < 0) continue;
        double root = std::sqrt(disc);
        int64_t alo = int64_t(std::ceil(halfshift - root)) - 1;
        int64_t ahi = int64_t(std::floor(halfshift + root)) + 1;
        for (int64_t a = alo; a <= ahi; ++a) {
            if (a == 0 && b == 0) continue;
            int64_t nf = norm_form(F, a, b);
            if (double(nf) > M) continue;
            double x, y;
            F.embed(a, b, x, y);
            double phi = std::atan2(y, x);
            double alpha = std::numeric_limits<double>::infinity();
            for (double theta : line_angles)
                alpha = std::min(alpha, std::abs(std::remainder(phi - theta, M_PI)));
            if (alpha < 1e-14) continue; // on a participating line
            double vnorm = std::sqrt(double(nf)) * scale;
            double val = std::pow(vnorm, Q) * alpha;
            best = std::min(best, val);
        }
    }
    return best;
}

} // namespace hecke
