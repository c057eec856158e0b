#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hecke/dirichlet.hpp"
#include "hecke/field.hpp"
#include "hecke/ideals.hpp"
#include "hecke/lfunction.hpp"
#include "hecke/testfn.hpp"

namespace hecke {

// Truncated integral_1^T (psi(t) - t)/t^2 dt, evaluated exactly piecewise:
// sum_{q <= T} Lambda(q)/q - psi(T)/T - log T.  Tends to -1 - gamma.
double psi_integral(double T, const sieve& sv);

// Dedekind eta, q-product truncated below 1e-18 term modulus.
std::complex<double> dedekind_eta(std::complex<double> tau);

// L'(1,chi)/L(1,chi) by the Kronecker limit formula:
// gamma - log 2 - log|D|/2 - log Im(tau0) - 4 log|eta(tau0)|,
// tau0 = i sqrt(2) for d = 2, (-1 + i sqrt(d))/2 otherwise.
double lprime_ratio(const field_config& F);

struct constants_bundle {
    double psi_integral_trunc = 0; // truncated value, consistency check only
    double lprime_ratio = 0;       // L'(1,chi)/L(1,chi)
    double inert_sum = 0;          // sum over inert p >= 3 of log p/(p^2-1)
    double ell0 = 0;
    double ell1 = 0;
    double l1_chi = 0;             // L(1,chi) = 2 pi/(w sqrt|D|)
};

// Assembles the bundle.  psi_T sets the truncation of the cross-check
// integral; the analytic value -1-gamma is what enters ell0.  Throws
// consistency_failure if the truncated integral leaves the fluctuation band.
constants_bundle constants(const field_config& F, double psi_T, const sieve& sv,
                           double band = 0.05, int64_t inert_bound = 10'000'000);

// The four exact finite sums of the explicit-formula decomposition.
double s_x(int K, const test_function& tf, const field_config& F);
double s_inert(int K, const test_function& tf, const field_config& F, const sieve& sv);
double s_split(int K, const test_function& tf, const field_config& F,
               const split_angle_table& angles);
double s_ram(int K, const test_function& tf, const field_config& F);

// The same quantity s_inert + s_ram rearranged into zeta/L/auxiliary pieces;
// the rearrangement is exact at matched support.
struct rc_term_bundle {
    double s_zeta = 0;  // -(1/log K) sum Lambda(n)/n fhat(log n/log K)
    double s_l = 0;     // +(1/log K) sum Lambda(n) chi(n)/n fhat(log n/log K)
    double s_aprime = 0;// inert p >= 3 squares correction
    double s_d = 0;     // ramified-prime geometric piece
    double s_h = 0;     // 2-adic correction, zero for d in {2, 7}
    double total() const { return s_zeta + s_l + s_aprime + s_d + s_h; }
};

rc_term_bundle rc_terms(int K, const test_function& tf, const field_config& F,
                        const sieve& sv);

// main_term(tf) + ell0 (fhat(0) - fhat(1))/log K.
double rc_prediction(int K, const test_function& tf, const constants_bundle& c);
// main_term(tf) + ell0 fhat(0)/log K.
double unconditional_prediction(int K, const test_function& tf, const constants_bundle& c);

// (1/K) sum_k sum_zeros f(gamma log K / pi); pairs +-gamma counted twice,
// a center zero once.  Throws tail_too_large if any T is below the bound
// that keeps the neglected tail under tail_gate.  Small K forces short
// rescaled supports, so callers there may need to loosen the gate.
double empirical_density(const std::vector<zero_set>& zerosets,
                         const test_function& tf, int K, double tail_gate = 0.01);

// Default height making the Fejer tail bound ~0.003: (pi/log K)(40/sigma^2).
double default_zero_height(const test_function& tf, int K);

// The tail estimate itself for a given uniform height T.
double empirical_tail_bound(double T, const test_function& tf, int K);

struct density_report {
    int d = 0, N = 0, K = 0;
    double sigma = 0;
    double empirical = 0;
    double s_x = 0, s_inert = 0, s_split = 0, s_ram = 0;
    double explicit_total = 0;     // s_x + s_inert + s_split + s_ram
    double rc_prediction = 0;
    double unconditional_prediction = 0;
    double identity_residual = 0;  // (s_inert + s_ram) - rearranged total
    double tail_bound = 0;
    double ell0 = 0, ell1 = 0;
    int complete_count = 0;        // zero sets whose completeness heuristic passed
    std::vector<int> incomplete_k;
};

std::string report_json(const density_report& rep);
std::string report_csv_row(const density_report& rep);
std::string report_csv_header();

// Ratios closed form J(r).  K enters through the (2 pi/(K N sqrt|D|))^{2r}
// factor; Euler products truncated at p_max (>= 1e5, else
// truncation_too_coarse).
std::complex<double> ratios_J(const field_config& F, std::complex<double> r,
                              int K, int64_t p_max, const sieve& sv);

// Factor helpers at general shifts; all equal 1 at alpha = gamma.
double fd_factor(const field_config& F, double alpha, double gamma);
double h2_factor(const field_config& F, double alpha, double gamma);
double a1_product(const field_config& F, double alpha, double gamma,
                  int64_t p_max, const sieve& sv);
double am1_product(const field_config& F, double alpha, double gamma,
                   int64_t p_max, const sieve& sv);

} // namespace hecke
