#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/field.hpp"

namespace hecke {

// Ideals of norm <= n_max, one representative angle per ideal.
// r(n) = number of ideals of norm n = (lattice points of norm n)/w.
struct ideal_class_table {
    int d = 0;
    int64_t n_max = 0;
    std::vector<std::vector<double>> ideals_by_norm;  // [n] -> angles in [0, 2pi/w)
    std::vector<int32_t> r;                           // [n] -> ideal count, r[0] unused

    int64_t r_of(int64_t n) const { return (n >= 1 && n <= n_max) ? r[size_t(n)] : 0; }
};

// Enumerates every lattice point of norm <= n_max exactly once up to units
// (a fundamental sector for the unit action is selected by exact integer
// inequalities on the coordinates).  Throws capacity_exceeded past the
// memory budget.
ideal_class_table enumerate_ideals(const field_config& F, int64_t n_max);

// Binary cache, versioned header keyed by (d, n_max).  Load returns false on
// missing file, wrong key, or wrong version; corrupt payloads throw bad_input.
void save_ideal_table(const ideal_class_table& T, const std::string& path);
bool load_ideal_table(ideal_class_table& T, int d, int64_t n_max, const std::string& path);

// One chosen prime ideal over each split prime p: theta_p in (0, pi) is the
// ideal angle of the generator (a,b).
struct split_angle_entry {
    int64_t p;
    double theta;
    int64_t a, b;
};

struct split_angle_table {
    int d = 0;
    int64_t p_max = 0;  // coverage bound: every split p <= p_max has an entry
    std::vector<split_angle_entry> entries;  // p ascending

    const split_angle_entry* find(int64_t p) const;
};

// One entry per split prime p <= p_max.  Representative: the generator in the
// open upper half-plane with the smallest nonnegative angle.
split_angle_table split_angles(const field_config& F, int64_t p_max, const sieve& sv);

void save_split_angles_csv(const split_angle_table& T, const std::string& path);

// Per-k coefficient arrays on 1..n_max.
//   A: Dirichlet coefficients of L_k,
//   mu: coefficients of 1/L_k,
//   c: explicit-formula coefficients (supported on prime powers).
// r duplicates the ideal counts for tail bounds in the evaluator.
struct coeff_table {
    int k = 0;
    int64_t n_max = 0;
    std::vector<double> A, mu, c;
    std::vector<int32_t> r;
};

// Closed-form/multiplicative construction seeded by the split-angle table.
coeff_table build_coeffs(const field_config& F, int k, int64_t n_max,
                         const split_angle_table& angles, const sieve& sv);

double coeff_A(const field_config& F, int k, int64_t n, const coeff_table& T);
double coeff_mu(const field_config& F, int k, int64_t n, const coeff_table& T);
double coeff_c(const field_config& F, int k, int64_t n, const coeff_table& T);

// sum_{k=1..K} 2 cos(k x) with x = 2 N n theta, in closed form:
// -1 + sin((K+1/2)x)/sin(x/2).  At x = 0 mod 2pi returns the limit 2K.
double dirichlet_kernel_sum(int K, int64_t n, double theta, int N);

} // namespace hecke
