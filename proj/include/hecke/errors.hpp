#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Base class for all domain errors thrown by this library.  The CLI maps
// these to exit code 2 when they arise from bad configuration and to exit
// code 1 when a verification fails.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct rejected_field : error {
    explicit rejected_field(int d)
        : error("d=" + std::to_string(d) + " is not a supported class-number-one field") {}
};

struct bad_frequency : error {
    bad_frequency(int N, int w)
        : error("frequency multiplier N=" + std::to_string(N) +
                " must be a positive multiple of the unit order w=" + std::to_string(w)) {}
};

struct zero_element : error {
    zero_element() : error("(0,0) has no angle") {}
};

struct out_of_range : error {
    explicit out_of_range(const std::string& msg) : error(msg) {}
};

struct degenerate_lattice : error {
    degenerate_lattice() : error("lattice basis is numerically singular") {}
};

struct sieve_too_small : error {
    sieve_too_small(long long need, long long have)
        : error("sieve bound " + std::to_string(have) +
                " is below required " + std::to_string(need)) {}
};

struct capacity_exceeded : error {
    explicit capacity_exceeded(const std::string& msg) : error(msg) {}
};

struct generator_search_failed : error {
    generator_search_failed(int d, long long p)
        : error("no generator of norm " + std::to_string(p) +
                " found for d=" + std::to_string(d)) {}
};

struct pole_hit : error {
    explicit pole_hit(const std::string& msg) : error(msg) {}
};

struct insufficient_terms : error {
    explicit insufficient_terms(const std::string& msg) : error(msg) {}
};

struct tail_too_large : error {
    explicit tail_too_large(const std::string& msg) : error(msg) {}
};

struct consistency_failure : error {
    explicit consistency_failure(const std::string& msg) : error(msg) {}
};

struct truncation_too_coarse : error {
    explicit truncation_too_coarse(const std::string& msg) : error(msg) {}
};

struct lower_half_plane : error {
    explicit lower_half_plane(double im)
        : error("tau with Im = " + std::to_string(im) + " is outside the evaluation domain") {}
};

struct bad_input : error {
    explicit bad_input(const std::string& msg) : error(msg) {}
};

} // namespace hecke
