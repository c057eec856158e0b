#pragma once

#include <string>
#include <vector>

namespace hecke {

// Even real test function f whose Fourier transform fhat is continuous,
// even, and supported in [-sigma, sigma].  Convention:
// fhat(u) = integral f(x) exp(-2 pi i x u) dx.
class test_function {
public:
    // Fejer pair: fhat(u) = max(0, 1 - |u|/sigma),
    // f(x) = sigma * (sin(pi sigma x)/(pi sigma x))^2.
    static test_function fejer(double sigma);

    // fhat sampled on a uniform symmetric grid, cubic interpolation in
    // between, f recovered by cosine quadrature.
    static test_function sampled(std::vector<double> u, std::vector<double> fhat);

    // Two-column CSV (u, fhat), u ascending on a symmetric uniform grid.
    static test_function sampled_from_csv(const std::string& path);

    double sigma() const { return sigma_; }
    bool is_fejer() const { return fejer_; }

    double f(double x) const;
    double fhat(double u) const;

    // integral f(x)(1 - sin(2 pi x)/(2 pi x)) dx = fhat(0) - (1/2) integral_{-1}^{1} fhat.
    double main_term() const;

private:
    test_function() = default;

    bool fejer_ = true;
    double sigma_ = 0;
    // sampled representation: values of fhat on [0, sigma], uniform step h_
    std::vector<double> grid_vals_;
    double h_ = 0;

    double fhat_sampled(double u) const;
};

} // namespace hecke
