#pragma once

#include <array>
#include <cstdint>

#include "hecke/sieve.hpp"

namespace hecke {

// The eight imaginary quadratic fields Q(sqrt(-d)) of class number one, d > 1.
inline constexpr std::array<int, 8> heegner_d = {2, 3, 7, 11, 19, 43, 67, 163};

enum class split_class { split, inert, ramified };

struct lattice_point {
    int64_t a = 0, b = 0;
};

// One field instance together with the character frequency multiplier N.
// basis maps integer coordinates (a,b) of a ring element to its embedding
// in R^2 = C; its columns are the generators 1 and omega, where
// omega = (1+sqrt(-d))/2 for d = 3 mod 4 and omega = sqrt(-d) for d = 2.
struct field_config {
    int d = 0;
    int64_t disc_abs = 0;     // |D|
    int unit_order = 0;       // w = |O_K^x|
    int freq_mult = 0;        // N, positive multiple of w
    double basis[2][2] = {};  // column-major meaning: basis[r][c], column c = generator
    double iwasawa_a = 0;     // diagonal of the unimodular Iwasawa form of basis/sqrt(det)
    double iwasawa_n = 0;     // shear of the same
    int64_t c_aa = 0, c_ab = 0, c_bb = 0;  // norm form N(a,b) = c_aa a^2 + c_ab ab + c_bb b^2

    // Embedding of (a,b): x + iy.
    void embed(int64_t a, int64_t b, double& x, double& y) const {
        x = basis[0][0] * double(a) + basis[0][1] * double(b);
        y = basis[1][0] * double(a) + basis[1][1] * double(b);
    }
};

// Throws rejected_field unless d is one of the eight supported values,
// bad_frequency unless N is a positive multiple of the unit order.
field_config make_field(int d, int N);

// Kronecker symbol (a/n) for n >= 1, via the factorization of n.
// Throws sieve_too_small if n exceeds the sieve bound.
int kronecker(int64_t a, int64_t n, const sieve& sv);

// Legendre/Kronecker symbol (a/p) for prime p, no sieve needed.
int kronecker_prime(int64_t a, int64_t p);

struct prime_class {
    split_class tag;
    int chi;  // kronecker(-d, p)
};

// p must be prime.  chi = 0 iff p ramifies (iff p = d here), +1 split, -1 inert.
prime_class classify_prime(int64_t p, const field_config& F);

// Exact integer value of the norm form.
int64_t norm_form(const field_config& F, int64_t a, int64_t b);

// Argument of the embedding of (a,b), reduced modulo 2*pi/w into [0, 2*pi/w).
// Unit reduction acts on (a,b) as exact integer maps, so no float drift.
// Throws zero_element for (0,0).
double ideal_angle(const field_config& F, int64_t a, int64_t b);

// Minimum of ||v||^Q * alpha(v) over nonzero lattice points v of the
// determinant-normalized ring lattice with ||v|| <= R, where alpha(v) is the
// angular distance from v to the nearest line through the origin at an angle
// pi*m/(2*N) whose Diophantine degree is <= Q.  Each line carries degree 1 or
// 2 according to whether its slope datum n - cot(theta)/a^2 is rational, and
// only lines of degree <= Q enter the minimum: against a steeper line the
// product has no positive floor and the scan would report noise.  Points
// within 1e-14 of a participating line are skipped; if nothing remains the
// scan reports +infinity.
double angle_bound_scan(const field_config& F, int N, double R, int Q);

} // namespace hecke
