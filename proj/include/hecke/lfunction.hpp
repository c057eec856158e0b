#pragma once

#include <complex>
#include <vector>

#include "hecke/field.hpp"
#include "hecke/gammafn.hpp"
#include "hecke/ideals.hpp"

namespace hecke {

// Evaluation parameters of one member L_k of the family.
struct l_spec {
    field_config field;
    int k = 0;
    int mu_shift = 0;   // N*k, the gamma shift
    double q_scale = 0; // sqrt(|D|)/(2 pi)
};

l_spec make_l_spec(const field_config& F, int k);

// Functional-equation factor X_k(s) = Gamma(1-s+Nk)/Gamma(s+Nk)
// * |D|^(1/2-s) * (2 pi)^(2s-1), computed in log space.
cplx x_factor(const l_spec& spec, cplx s);

// Completed L-function via the smoothed (incomplete-gamma) series,
// normalized by exp(-Re log Gamma(Nk + 1/2 + i Im s)) so values stay O(1)
// for large Nk.  The normalizer is positive and invariant under s -> 1-s,
// so the symmetry Lambda(s) = Lambda(1-s) and the sign pattern on the
// critical line survive unchanged.  Absolute error <= eps in this scale.
// Throws insufficient_terms if coeffs.n_max cannot meet the tail bound.
cplx lambda_complete(const l_spec& spec, cplx s, const coeff_table& coeffs, double eps);

// The normalizer itself: exp of it times lambda_complete recovers the
// unnormalized completed L-function.
double lambda_log_scale(const l_spec& spec, double t);

// Nats lost to cancellation when the smoothed series is summed at height t:
// log Gamma(Nk+1/2) - Re log Gamma(Nk+1/2+it).  The individual terms of the
// series reach this factor above the O(1) result, so the absolute noise of a
// p-bit accumulation is about e^(nats - p log 2).  lambda_complete switches
// to 113-bit arithmetic when the double budget runs out, and refuses heights
// whose noise would exceed eps even there (capacity_exceeded).
double lambda_cancellation(const l_spec& spec, double t);

// Largest t whose cancellation stays within the given budget (monotone
// inversion of lambda_cancellation; capped at 1e6).
double cancellation_height(const l_spec& spec, double nats);

// Largest height lambda_complete accepts at this eps; zero scans clamp to it.
double height_ceiling(const l_spec& spec, double eps);

// Ordinary L_k(s) recovered from the smoothed series by dividing out the
// gamma factor; accurate where the completed function is not microscopic.
cplx l_value(const l_spec& spec, cplx s, const coeff_table& coeffs, double eps);

struct zero_set {
    int k = 0;
    double T = 0;
    std::vector<double> gammas;   // strictly increasing, positive ordinates
    std::vector<double> residuals;// |Lambda| at each gamma, normalized scale
    bool zero_at_center = false;
    double precision = 0;         // max residual observed (>= eps floor)
    bool complete = false;        // sign-change count matched the density heuristic
};

// Sign-scan of the real-valued normalized Lambda on the critical line over
// [0, T] at resolution delta = pi/(8 log(max(k,3))), bisection to width eps.
zero_set find_zeros(const l_spec& spec, const coeff_table& coeffs, double T, double eps);

// 2 T log(k) / pi, the leading zero-count asymptotic.  Requires k >= 2.
double count_asymptotic(int k, double T);

} // namespace hecke
