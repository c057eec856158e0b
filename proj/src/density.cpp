#include "hecke/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

using cd = std::complex<double>;
constexpr double euler_gamma = std::numbers::egamma_v<double>;

double psi_integral(double T, const sieve& sv) {
    if (T < 1) throw bad_input("psi_integral: T must be >= 1");
    int64_t n_max = int64_t(T);
    if (n_max > sv.bound()) throw sieve_too_small(n_max, sv.bound());
    // integral_1^T (psi(t) - t)/t^2 dt = sum_{q <= T} Lambda(q)/q - psi(T)/T - log T,
    // by integrating t^{-2} against the staircase psi exactly.
    double lam_over = 0.0, psi = 0.0;
    for (int64_t n = 2; n <= n_max; ++n) {
        double lam = sv.von_mangoldt(n);
        if (lam != 0.0) {
            lam_over += lam / double(n);
            psi += lam;
        }
    }
    return lam_over - psi / T - std::log(T);
}

cd dedekind_eta(cd tau) {
    if (tau.imag() <= 0.1) throw lower_half_plane(tau.imag());
    cd q = std::exp(cd(0, 2.0 * M_PI) * tau);
    cd prod = 1.0, qn = 1.0;
    for (int n = 1; n < 4000; ++n) {
        qn *= q;
        prod *= (1.0 - qn);
        if (std::abs(qn) < 1e-18) break;
    }
    return std::exp(cd(0, M_PI / 12.0) * tau) * prod;
}

double lprime_ratio(const field_config& F) {
    cd tau0 = (F.d == 2) ? cd(0.0, std::sqrt(2.0))
                         : cd(-0.5, 0.5 * std::sqrt(double(F.d)));
    return euler_gamma - std::log(2.0) - 0.5 * std::log(double(F.disc_abs))
         - std::log(tau0.imag()) - 4.0 * std::log(std::abs(dedekind_eta(tau0)));
}

constants_bundle constants(const field_config& F, double psi_T, const sieve& sv,
                           double band, int64_t inert_bound) {
    constants_bundle c;
    c.psi_integral_trunc = psi_integral(psi_T, sv);
    if (std::abs(c.psi_integral_trunc - (-1.0 - euler_gamma)) > band)
        throw consistency_failure("truncated psi integral outside fluctuation band");
    c.lprime_ratio = lprime_ratio(F);
    if (inert_bound > sv.bound()) throw sieve_too_small(inert_bound, sv.bound());
    double isum = 0.0;
    for (int64_t p : sv.primes()) {
        if (p > inert_bound) break;
        if (p >= 3 && classify_prime(p, F).chi == -1)
            isum += std::log(double(p)) / (double(p) * double(p) - 1.0);
    }
    c.inert_sum = isum;

    double d = double(F.d);
    double logN = std::log(double(F.freq_mult));
    double log_sqrt_disc = 0.5 * std::log(double(F.disc_abs));
    double ram = std::sqrt(d) * std::log(d) / (d - 1.0);
    bool has_two_term = (F.d != 2 && F.d != 7);

    // the two theorem formulas, kept term-for-term as stated so their
    // cancellation is itself a meaningful check
    c.ell0 = (1.0 + euler_gamma) - c.lprime_ratio - 2.0 * isum
           + log_sqrt_disc - std::log(2.0 * M_PI) + logN - 2.0
           - ram - (has_two_term ? 2.0 * std::log(2.0) / 3.0 : 0.0);
    double a = has_two_term ? -1.0 : 0.0;
    c.ell1 = c.lprime_ratio + 2.0 * isum
           + std::log(2.0 * M_PI * std::exp(1.0) /
                      (double(F.freq_mult) * std::sqrt(double(F.disc_abs))))
           + ram - euler_gamma - 2.0 * a * std::log(2.0) / 3.0;

    c.l1_chi = 2.0 * M_PI / (double(F.unit_order) * std::sqrt(double(F.disc_abs)));
    return c;
}

namespace {
void require_k(int K) {
    if (K < 2) throw bad_input("K must be >= 2");
}
}

double s_x(int K, const test_function& tf, const field_config& F) {
    require_k(K);
    double lk = std::log(double(K));
    return tf.fhat(0.0) * (1.0 + (0.5 * std::log(double(F.disc_abs)) - std::log(2.0 * M_PI)
                                  + std::log(double(F.freq_mult)) - 1.0) / lk);
}

double s_inert(int K, const test_function& tf, const field_config& F, const sieve& sv) {
    require_k(K);
    double lk = std::log(double(K));
    double sigma = tf.sigma();
    int64_t p_bound = int64_t(std::exp(sigma * lk)) + 1;
    if (p_bound > sv.bound()) throw sieve_too_small(p_bound, sv.bound());
    double acc = 0.0;
    for (int64_t p : sv.primes()) {
        double logp = std::log(double(p));
        if (logp / lk >= sigma) break;
        if (classify_prime(p, F).chi != -1) continue;
        double pn = double(p);
        for (int n = 1; double(n) * logp / lk < sigma; ++n) {
            acc += logp / pn * tf.fhat(double(n) * logp / lk);
            pn *= double(p);
        }
    }
    return -2.0 / lk * acc;
}

double s_ram(int K, const test_function& tf, const field_config& F) {
    require_k(K);
    double lk = std::log(double(K));
    double sigma = tf.sigma();
    double logd = std::log(double(F.d));
    double acc = 0.0;
    for (int n = 1; double(n) * logd / (2.0 * lk) < sigma; ++n)
        acc += logd / std::pow(double(F.d), 0.5 * n) * tf.fhat(double(n) * logd / (2.0 * lk));
    return -acc / lk;
}

double s_split(int K, const test_function& tf, const field_config& F,
               const split_angle_table& angles) {
    require_k(K);
    double lk = std::log(double(K));
    double sigma = tf.sigma();
    int64_t p_bound = int64_t(std::exp(2.0 * sigma * lk)) + 1;
    if (p_bound > angles.p_max)
        throw sieve_too_small(p_bound, angles.p_max);
    double acc = 0.0;
    for (const auto& e : angles.entries) {
        double logp = std::log(double(e.p));
        if (logp / (2.0 * lk) >= sigma) break;
        for (int n = 1; double(n) * logp / (2.0 * lk) < sigma; ++n) {
            acc += logp / std::pow(double(e.p), 0.5 * n)
                 * tf.fhat(double(n) * logp / (2.0 * lk))
                 * dirichlet_kernel_sum(K, n, e.theta, F.freq_mult);
        }
    }
    return -acc / (double(K) * lk);
}

rc_term_bundle rc_terms(int K, const test_function& tf, const field_config& F,
                        const sieve& sv) {
    require_k(K);
    double lk = std::log(double(K));
    double sigma = tf.sigma();
    int64_t n_bound = int64_t(std::exp(sigma * lk)) + 1;
    if (n_bound > sv.bound()) throw sieve_too_small(n_bound, sv.bound());
    rc_term_bundle B;

    // S_zeta and S_L run over prime powers (Lambda support)
    for (int64_t p : sv.primes()) {
        double logp = std::log(double(p));
        if (logp / lk >= sigma) break;
        int chi = (p == F.d) ? 0 : kronecker_prime(-int64_t(F.d), p);
        double pn = double(p);
        int chin = chi;
        for (int n = 1; double(n) * logp / lk < sigma; ++n) {
            double fh = tf.fhat(double(n) * logp / lk);
            B.s_zeta += logp / pn * fh;
            if (chin) B.s_l += logp * double(chin) / pn * fh;
            pn *= double(p);
            chin *= chi;
        }
        // S_A': inert odd primes, even powers written as p^{2n}
        if (p >= 3 && chi == -1) {
            double p2n = double(p) * double(p);
            for (int n = 1; 2.0 * double(n) * logp / lk < sigma; ++n) {
                B.s_aprime += logp / p2n * tf.fhat(2.0 * double(n) * logp / lk);
                p2n *= double(p) * double(p);
            }
        }
    }
    B.s_zeta *= -1.0 / lk;
    B.s_l *= 1.0 / lk;
    B.s_aprime *= -2.0 / lk;

    double logd = std::log(double(F.d));
    double acc_d = 0.0;
    for (int n = 0; (0.5 + double(n)) * logd / lk < sigma; ++n)
        acc_d += std::pow(double(F.d), -double(n)) * tf.fhat((0.5 + double(n)) * logd / lk);
    B.s_d = -logd / (std::sqrt(double(F.d)) * lk) * acc_d;

    if (F.d != 2 && F.d != 7) {
        double log2 = std::log(2.0);
        double acc_h = 0.0;
        for (int n = 0; (2.0 * double(n) + 2.0) * log2 / lk < sigma; ++n)
            acc_h += std::pow(4.0, -double(n)) * tf.fhat((2.0 * double(n) + 2.0) * log2 / lk);
        B.s_h = -0.5 * log2 / lk * acc_h;  // a = -1
    }
    return B;
}

double rc_prediction(int K, const test_function& tf, const constants_bundle& c) {
    require_k(K);
    return tf.main_term() + c.ell0 * (tf.fhat(0.0) - tf.fhat(1.0)) / std::log(double(K));
}

double unconditional_prediction(int K, const test_function& tf, const constants_bundle& c) {
    require_k(K);
    return tf.main_term() + c.ell0 * tf.fhat(0.0) / std::log(double(K));
}

double default_zero_height(const test_function& tf, int K) {
    require_k(K);
    double s = tf.sigma();
    return M_PI / std::log(double(K)) * (40.0 / (s * s));
}

double empirical_tail_bound(double T, const test_function& tf, int K) {
    require_k(K);
    if (!(T > 0)) return 1e30;
    double x0 = T * std::log(double(K)) / M_PI;
    // |f| <= sigma/(pi sigma x)^2 past the support scale; summed against the
    // mean zero density 2 log k/pi and averaged over k <= K
    return 2.0 / (M_PI * M_PI * tf.sigma() * x0);
}

double empirical_density(const std::vector<zero_set>& zerosets,
                         const test_function& tf, int K, double tail_gate) {
    require_k(K);
    if (int(zerosets.size()) < K)
        throw bad_input("empirical_density: need zero sets for every k <= K");
    if (!(tail_gate > 0))
        throw bad_input("empirical_density: tail_gate must be positive");
    double t_min = 1e300;
    for (int k = 0; k < K; ++k) t_min = std::min(t_min, zerosets[size_t(k)].T);
    if (empirical_tail_bound(t_min, tf, K) > tail_gate)
        throw tail_too_large("zero sets truncated below the height needed for tail <= " +
                             std::to_string(tail_gate) + "; raise T");
    double scale = std::log(double(K)) / M_PI;
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
        const zero_set& Z = zerosets[size_t(k)];
        double local = 0.0;
        for (double g : Z.gammas) local += 2.0 * tf.f(g * scale);
        if (Z.zero_at_center) local += tf.f(0.0);
        acc += local;
    }
    return acc / double(K);
}

namespace {

cd fd_factor_c(const field_config& F, cd alpha, cd gamma) {
    double d = double(F.d);
    cd num = (1.0 + std::pow(d, -(0.5 + alpha))) * (1.0 - std::pow(d, -(0.5 + gamma)));
    return num / (1.0 - std::pow(d, -(1.0 + alpha + gamma)));
}

cd h2_factor_c(const field_config& F, cd alpha, cd gamma) {
    auto p2 = [](cd e) { return std::exp(-e * std::log(2.0)); }; // 2^{-e}
    if (F.d == 2) return 1.0;
    if (F.d == 7) {
        cd t = 1.0 - p2(1.0 + alpha + gamma);
        return (1.0 - p2(1.0 + 2.0 * gamma)) / (t * t)
             * (1.0 - p2(alpha + gamma) + p2(1.0 + 2.0 * gamma));
    }
    return (1.0 - p2(2.0 * (1.0 + 2.0 * gamma))) / (1.0 - p2(2.0 * (1.0 + alpha + gamma)));
}

cd a1_product_c(const field_config& F, cd alpha, cd gamma, int64_t p_max, const sieve& sv) {
    if (p_max > sv.bound()) throw sieve_too_small(p_max, sv.bound());
    cd log_acc = 0.0;
    for (int64_t p : sv.primes()) {
        if (p > p_max) break;
        if (p < 3 || classify_prime(p, F).chi != 1) continue;
        double dp = double(p);
        cd pag = std::pow(dp, -(1.0 + alpha + gamma));
        cd pg = std::pow(dp, -(1.0 + 2.0 * gamma));
        cd f = (1.0 - 2.0 * pag + pg) * (1.0 - pg) / ((1.0 - pag) * (1.0 - pag));
        log_acc += std::log(f);
    }
    return std::exp(log_acc);
}

cd am1_product_c(const field_config& F, cd alpha, cd gamma, int64_t p_max, const sieve& sv) {
    if (p_max > sv.bound()) throw sieve_too_small(p_max, sv.bound());
    cd log_acc = 0.0;
    for (int64_t p : sv.primes()) {
        if (p > p_max) break;
        if (p < 3 || classify_prime(p, F).chi != -1) continue;
        double dp = double(p);
        cd pag = std::pow(dp, -2.0 * (1.0 + alpha + gamma));
        cd pg = std::pow(dp, -2.0 * (1.0 + 2.0 * gamma));
        log_acc += std::log((1.0 - pg) / (1.0 - pag));
    }
    return std::exp(log_acc);
}

} // namespace

double fd_factor(const field_config& F, double alpha, double gamma) {
    return fd_factor_c(F, alpha, gamma).real();
}
double h2_factor(const field_config& F, double alpha, double gamma) {
    return h2_factor_c(F, alpha, gamma).real();
}
double a1_product(const field_config& F, double alpha, double gamma,
                  int64_t p_max, const sieve& sv) {
    return a1_product_c(F, alpha, gamma, p_max, sv).real();
}
double am1_product(const field_config& F, double alpha, double gamma,
                   int64_t p_max, const sieve& sv) {
    return am1_product_c(F, alpha, gamma, p_max, sv).real();
}

cd ratios_J(const field_config& F, cd r, int K, int64_t p_max, const sieve& sv) {
    require_k(K);
    if (p_max < 100'000)
        throw truncation_too_coarse("ratios_J needs p_max >= 1e5");
    if (!(r.real() > 0.0) || r.real() >= 0.25)
        throw bad_input("ratios_J: Re(r) must lie in (0, 1/4)");
    cd two_r = 2.0 * r;
    cd zeta1m = zeta_em(1.0 - two_r);
    cd lnum = l_char(F, 1.0 + two_r);
    cd lden = l_char(F, 1.0);
    cd scale = std::exp(two_r * std::log(2.0 * M_PI /
                        (double(K) * double(F.freq_mult) * std::sqrt(double(F.disc_abs)))));
    cd prod = fd_factor_c(F, -r, r) * h2_factor_c(F, -r, r)
            * a1_product_c(F, -r, r, p_max, sv) * am1_product_c(F, -r, r, p_max, sv);
    return -zeta1m * lnum / lden / (1.0 - two_r) * scale * prod;
}

std::string report_json(const density_report& rep) {
    std::ostringstream o;
    o.precision(17);
    o << "{\n"
      << "  \"d\": " << rep.d << ",\n"
      << "  \"N\": " << rep.N << ",\n"
      << "  \"K\": " << rep.K << ",\n"
      << "  \"sigma\": " << rep.sigma << ",\n"
      << "  \"empirical\": " << rep.empirical << ",\n"
      << "  \"s_x\": " << rep.s_x << ",\n"
      << "  \"s_inert\": " << rep.s_inert << ",\n"
      << "  \"s_split\": " << rep.s_split << ",\n"
      << "  \"s_ram\": " << rep.s_ram << ",\n"
      << "  \"explicit_total\": " << rep.explicit_total << ",\n"
      << "  \"rc_prediction\": " << rep.rc_prediction << ",\n"
      << "  \"unconditional_prediction\": " << rep.unconditional_prediction << ",\n"
      << "  \"identity_residual\": " << rep.identity_residual << ",\n"
      << "  \"tail_bound\": " << rep.tail_bound << ",\n"
      << "  \"ell0\": " << rep.ell0 << ",\n"
      << "  \"ell1\": " << rep.ell1 << ",\n"
      << "  \"complete_count\": " << rep.complete_count << ",\n"
      << "  \"incomplete_k\": [";
    for (size_t i = 0; i < rep.incomplete_k.size(); ++i)
        o << (i ? "," : "") << rep.incomplete_k[i];
    o << "]\n}\n";
    return o.str();
}

std::string report_csv_header() {
    return "d,N,K,sigma,empirical,s_x,s_inert,s_split,s_ram,explicit_total,"
           "rc_prediction,unconditional_prediction,identity_residual,tail_bound,"
           "ell0,ell1,complete_count";
}

std::string report_csv_row(const density_report& rep) {
    std::ostringstream o;
    o.precision(17);
    o << rep.d << ',' << rep.N << ',' << rep.K << ',' << rep.sigma << ','
      << rep.empirical << ',' << rep.s_x << ',' << rep.s_inert << ',' << rep.s_split << ','
      << rep.s_ram << ',' << rep.explicit_total << ',' << rep.rc_prediction << ','
      << rep.unconditional_prediction << ',' << rep.identity_residual << ','
      << rep.tail_bound << ',' << rep.ell0 << ',' << rep.ell1 << ','
      << rep.complete_count;
    return o.str();
}

} // namespace hecke
