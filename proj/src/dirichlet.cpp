#include "hecke/dirichlet.hpp"

#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

using cd = std::complex<double>;

std::vector<int8_t> chi_period(const field_config& F) {
    int64_t q = F.disc_abs;
    if (q < 3) throw bad_input("chi_period: field_config not initialized");
    std::vector<int8_t> chi(size_t(q), 0);
    chi[1] = 1;
    for (int64_t r = 2; r < q; ++r) {
        // factor r by trial division; r < |D| <= 163 keeps this trivial
        int64_t m = r;
        int v = 1;
        for (int64_t p = 2; p * p <= m; ++p) {
            while (m % p == 0) {
                int s = kronecker_prime(-int64_t(F.d), p);
                if (s == 0) { v = 0; m = 1; break; }
                v *= s;
                m /= p;
            }
            if (v == 0) break;
        }
        if (v != 0 && m > 1) {
            int s = kronecker_prime(-int64_t(F.d), m);
            v = (s == 0) ? 0 : v * s;
        }
        chi[size_t(r)] = int8_t(v);
    }
    return chi;
}

double l1_by_blocks(const field_config& F, int64_t n_blocks) {
    if (n_blocks < 1) throw bad_input("l1_by_blocks: need at least one block");
    auto chi = chi_period(F);
    int64_t q = F.disc_abs;
    double sum = 0.0;
    double n = 0.0;
    for (int64_t blk = 0; blk < n_blocks; ++blk) {
        double block = 0.0;
        for (int64_t r = 0; r < q; ++r) {
            n += 1.0;
            int8_t c = chi[size_t(r == q - 1 ? 0 : r + 1)];
            if (c) block += double(c) / n;
        }
        sum += block;
    }
    return sum;
}

namespace {

// exp(z) - 1, cancellation-free for small z
cd expm1c(cd z) {
    double x = z.real(), y = z.imag();
    double sy = std::sin(0.5 * y);
    return cd(std::expm1(x) * std::cos(y) - 2.0 * sy * sy,
              std::exp(x) * std::sin(y));
}

constexpr double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                           5.0 / 66, -691.0 / 2730, 7.0 / 6};
constexpr int n_bern = 7;

// Euler-Maclaurin tail sum_{j >= J} (j + a)^{-s} with the pole part
// reported separately: tail = pole_coeff(a)/(s-1) + rest(a).  Callers whose
// character sums to zero over the period may replace the pole part by its
// regularized limit; combined() below does the standard assembly.
struct em_tail {
    cd rest;      // everything except (J+a)^{1-s}/(s-1)
    double base;  // J + a
};

em_tail hurwitz_tail(cd s, double a, int J) {
    double base = double(J) + a;
    cd li = std::pow(cd(base), -s);  // (J+a)^{-s}
    cd rest = 0.5 * li;
    cd poch = s;              // s (s+1) ... rising
    double bp = 1.0 / base;
    cd scale = li * bp;       // (J+a)^{-s-1}
    for (int m = 0; m < n_bern; ++m) {
        // term: B_{2m+2}/(2m+2)! * s(s+1)...(s+2m) * (J+a)^{-s-2m-1}
        static const double factorial_inv[] = {
            1.0 / 2, 1.0 / 24, 1.0 / 720, 1.0 / 40320,
            1.0 / 3628800, 1.0 / 479001600, 1.0 / 87178291200.0};
        rest += bern[m] * factorial_inv[m] * poch * scale;
        poch *= (s + double(2 * m + 1)) * (s + double(2 * m + 2));
        scale *= bp * bp;
    }
    return {rest, base};
}

} // namespace

cd l_char(const field_config& F, cd s) {
    auto chi = chi_period(F);
    int64_t q = F.disc_abs;
    const int J = 40;
    cd direct = 0.0, rest = 0.0, pole = 0.0;
    for (int64_t r = 1; r < q; ++r) {
        int c = chi[size_t(r)];
        if (!c) continue;
        double a = double(r) / double(q);
        cd head = 0.0;
        for (int j = 0; j < J; ++j) head += std::pow(cd(double(j) + a), -s);
        auto tail = hurwitz_tail(s, a, J);
        direct += double(c) * head;
        rest += double(c) * tail.rest;
        // (J+a)^{1-s}/(s-1): character mean zero lets us subtract the
        // constant 1/(s-1), leaving expm1((1-s)log(J+a))/(s-1), finite at s=1
        cd z = (1.0 - s) * std::log(tail.base);
        cd sm1 = s - 1.0;
        if (std::abs(sm1) < 1e-12) {
            pole += double(c) * (-std::log(tail.base)) * (1.0 + 0.5 * z);
        } else {
            pole += double(c) * expm1c(z) / sm1;
        }
    }
    return std::pow(cd(double(q)), -s) * (direct + rest + pole);
}

cd zeta_em(cd s) {
    if (std::abs(s - 1.0) < 1e-14) throw pole_hit("zeta at s = 1");
    int J = 40 + int(std::abs(s.imag()));
    cd head = 0.0;
    for (int j = 1; j < J; ++j) head += std::pow(cd(double(j)), -s);
    auto tail = hurwitz_tail(s, 0.0, J);
    cd pole_part = std::pow(cd(tail.base), 1.0 - s) / (s - 1.0);
    return head + pole_part + tail.rest;
}

double lprime_ratio_derivative_oracle(const field_config& F) {
    auto logL = [&](double s) { return std::log(l_char(F, cd(s)).real()); };
    auto central = [&](double h) { return (logL(1.0 + h) - logL(1.0 - h)) / (2.0 * h); };
    double d1 = central(1e-3), d2 = central(5e-4);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace hecke
