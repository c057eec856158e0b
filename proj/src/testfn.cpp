#include "hecke/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

test_function test_function::fejer(double sigma) {
    if (!(sigma > 0)) throw bad_input("fejer: sigma must be positive");
    test_function tf;
    tf.fejer_ = true;
    tf.sigma_ = sigma;
    return tf;
}

test_function test_function::sampled(std::vector<double> u, std::vector<double> vals) {
    if (u.size() != vals.size() || u.size() < 5)
        throw bad_input("sampled test function needs matching grids, >= 5 points");
    size_t n = u.size();
    if (n % 2 == 0) throw bad_input("sampled grid must be symmetric about 0 (odd count)");
    size_t mid = n / 2;
    double h = u[1] - u[0];
    for (size_t i = 0; i + 1 < n; ++i) {
        if (!(u[i + 1] > u[i])) throw bad_input("sampled grid must ascend");
        if (std::abs((u[i + 1] - u[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw bad_input("sampled grid must be uniform");
    }
    if (std::abs(u[mid]) > 1e-12) throw bad_input("sampled grid must contain 0");
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(u[i] + u[n - 1 - i]) > 1e-9)
            throw bad_input("sampled grid must be symmetric");
        if (std::abs(vals[i] - vals[n - 1 - i]) > 1e-9)
            throw bad_input("sampled fhat must be even");
    }
    test_function tf;
    tf.fejer_ = false;
    tf.sigma_ = u.back();
    tf.h_ = h;
    tf.grid_vals_.assign(vals.begin() + std::ptrdiff_t(mid), vals.end());
    return tf;
}

test_function test_function::sampled_from_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw bad_input("cannot open " + path);
    std::vector<double> u, v;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        // skip an optional header
        if (line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos) continue;
        std::istringstream ss(line);
        double a, b;
        char comma;
        if (ss >> a >> comma >> b) {
            u.push_back(a);
            v.push_back(b);
        }
    }
    return sampled(std::move(u), std::move(v));
}

double test_function::fhat(double u) const {
    u = std::abs(u);
    if (u >= sigma_) return 0.0;
    if (fejer_) return 1.0 - u / sigma_;
    return fhat_sampled(u);
}

double test_function::fhat_sampled(double u) const {
    // Catmull-Rom cubic on the uniform half-grid [0, sigma], even extension
    double pos = u / h_;
    size_t i = std::min(size_t(pos), grid_vals_.size() - 2);
    double s = pos - double(i);
    auto at = [&](long j) -> double {
        // even reflection at 0, zero continuation past sigma
        long n = long(grid_vals_.size());
        if (j < 0) j = -j;
        if (j >= n) return 0.0;
        return grid_vals_[size_t(j)];
    };
    double p0 = at(long(i) - 1), p1 = at(long(i)), p2 = at(long(i) + 1), p3 = at(long(i) + 2);
    double a0 = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    double a1 = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    double a2 = -0.5 * p0 + 0.5 * p2;
    return ((a0 * s + a1) * s + a2) * s + p1;
}

double test_function::f(double x) const {
    if (fejer_) {
        double z = M_PI * sigma_ * x;
        if (std::abs(z) < 1e-8) {
            // sinc^2 = 1 - z^2/3 + ...
            return sigma_ * (1.0 - z * z / 3.0);
        }
        double s = std::sin(z) / z;
        return sigma_ * s * s;
    }
    // f(x) = 2 integral_0^sigma fhat(u) cos(2 pi u x) du, composite Simpson
    // on a refinement of the sample grid
    size_t panels = (grid_vals_.size() - 1) * 8;
    double h = sigma_ / double(panels);
    double acc = 0.0;
    for (size_t j = 0; j <= panels; ++j) {
        double u = double(j) * h;
        double wgt = (j == 0 || j == panels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc += wgt * fhat(u) * std::cos(2.0 * M_PI * u * x);
    }
    return 2.0 * acc * h / 3.0;
}

double test_function::main_term() const {
    // fhat(0) - (1/2) integral_{-1}^{1} fhat = fhat(0) - integral_0^{min(1,sigma)} fhat
    if (fejer_) {
        double edge = std::min(1.0, sigma_);
        // integral_0^edge (1 - u/sigma) du
        double integral = edge - edge * edge / (2.0 * sigma_);
        return 1.0 - integral;
    }
    double edge = std::min(1.0, sigma_);
    size_t panels = 2 * ((grid_vals_.size() - 1) * 8);
    double h = edge / double(panels);
    double acc = 0.0;
    for (size_t j = 0; j <= panels; ++j) {
        double wgt = (j == 0 || j == panels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc += wgt * fhat(double(j) * h);
    }
    return fhat(0.0) - acc * h / 3.0;
}

} // namespace hecke
