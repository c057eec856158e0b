#include "hecke/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Fundamental sector for the unit action, chosen by exact integer tests:
// w = 2: upper half-plane plus the positive real axis;
// w = 6 (d = 3): the sector [0, pi/3), which is {a > 0, b >= 0}.
inline bool in_fundamental_sector(const field_config& F, int64_t a, int64_t b) {
    if (F.unit_order == 2) return b > 0 || (b == 0 && a > 0);
    return a > 0 && b >= 0;
}

constexpr int64_t enum_budget = 5'000'000;

} // namespace

ideal_class_table enumerate_ideals(const field_config& F, int64_t n_max) {
    if (n_max < 1) throw bad_input("enumerate_ideals: n_max must be >= 1");
    if (n_max > enum_budget)
        throw capacity_exceeded("enumerate_ideals: n_max beyond memory budget");
    ideal_class_table T;
    T.d = F.d;
    T.n_max = n_max;
    T.ideals_by_norm.assign(size_t(n_max) + 1, {});
    T.r.assign(size_t(n_max) + 1, 0);

    double M = double(n_max);
    int64_t bmax = int64_t(std::sqrt(4.0 * M / (4.0 * double(F.c_bb) - double(F.c_ab * F.c_ab)))) + 1;
    for (int64_t b = -bmax; b <= bmax; ++b) {
        double halfshift = -double(F.c_ab) * double(b) / 2.0;
        double disc = halfshift * halfshift - (double(F.c_bb) * b * b - M);
        if (disc < 0) continue;
        double root = std::sqrt(disc);
        int64_t alo = int64_t(std::ceil(halfshift - root)) - 1;
        int64_t ahi = int64_t(std::floor(halfshift + root)) + 1;
        for (int64_t a = alo; a <= ahi; ++a) {
            if ((a == 0 && b == 0) || !in_fundamental_sector(F, a, b)) continue;
            int64_t n = norm_form(F, a, b);
            if (n > n_max) continue;
            T.ideals_by_norm[size_t(n)].push_back(ideal_angle(F, a, b));
            ++T.r[size_t(n)];
        }
    }
    for (auto& v : T.ideals_by_norm) std::sort(v.begin(), v.end());
    return T;
}

namespace {
constexpr uint32_t cache_magic = 0x48494454; // "HIDT"
constexpr uint32_t cache_version = 1;
}

void save_ideal_table(const ideal_class_table& T, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw bad_input("cannot open " + path + " for writing");
    auto put32 = [&](uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    auto put64 = [&](int64_t v) { f.write(reinterpret_cast<const char*>(&v), 8); };
    put32(cache_magic);
    put32(cache_version);
    put32(uint32_t(T.d));
    put64(T.n_max);
    for (int64_t n = 1; n <= T.n_max; ++n) {
        const auto& v = T.ideals_by_norm[size_t(n)];
        put32(uint32_t(v.size()));
        f.write(reinterpret_cast<const char*>(v.data()),
                std::streamsize(v.size() * sizeof(double)));
    }
    if (!f) throw bad_input("write failure on " + path);
}

bool load_ideal_table(ideal_class_table& T, int d, int64_t n_max, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    uint32_t magic = 0, version = 0, fd = 0;
    int64_t fn = 0;
    f.read(reinterpret_cast<char*>(&magic), 4);
    f.read(reinterpret_cast<char*>(&version), 4);
    f.read(reinterpret_cast<char*>(&fd), 4);
    f.read(reinterpret_cast<char*>(&fn), 8);
    if (!f || magic != cache_magic) throw bad_input("not an ideal-table cache: " + path);
    if (version != cache_version || int(fd) != d || fn != n_max) return false;
    T.d = d;
    T.n_max = n_max;
    T.ideals_by_norm.assign(size_t(n_max) + 1, {});
    T.r.assign(size_t(n_max) + 1, 0);
    for (int64_t n = 1; n <= n_max; ++n) {
        uint32_t cnt = 0;
        f.read(reinterpret_cast<char*>(&cnt), 4);
        if (!f || cnt > 1u << 20) throw bad_input("corrupt ideal-table cache: " + path);
        auto& v = T.ideals_by_norm[size_t(n)];
        v.resize(cnt);
        f.read(reinterpret_cast<char*>(v.data()), std::streamsize(cnt * sizeof(double)));
        T.r[size_t(n)] = int32_t(cnt);
    }
    if (!f) throw bad_input("corrupt ideal-table cache: " + path);
    return true;
}

const split_angle_entry* split_angle_table::find(int64_t p) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), p,
                               [](const split_angle_entry& e, int64_t v) { return e.p < v; });
    return (it != entries.end() && it->p == p) ? &*it : nullptr;
}

split_angle_table split_angles(const field_config& F, int64_t p_max, const sieve& sv) {
    if (p_max > sv.bound()) throw sieve_too_small(p_max, sv.bound());
    split_angle_table T;
    T.d = F.d;
    T.p_max = p_max;
    for (int64_t p : sv.primes()) {
        if (p > p_max) break;
        if (classify_prime(p, F).tag != split_class::split) continue;
        // search a generator of norm p; upper half-plane means b >= 1
        double best_theta = -1;
        int64_t best_a = 0, best_b = 0;
        int64_t bmax = int64_t(std::sqrt(4.0 * double(p) /
                               (4.0 * double(F.c_bb) - double(F.c_ab * F.c_ab)))) + 1;
        for (int64_t b = 1; b <= bmax; ++b) {
            double halfshift = -double(F.c_ab) * double(b) / 2.0;
            double disc = halfshift * halfshift - (double(F.c_bb) * b * b - double(p));
            if (disc < 0) continue;
            double root = std::sqrt(disc);
            for (int64_t a = int64_t(std::ceil(halfshift - root)) - 1;
                 a <= int64_t(std::floor(halfshift + root)) + 1; ++a) {
                if (norm_form(F, a, b) != p) continue;
                double x, y;
                F.embed(a, b, x, y);
                if (y <= 0) continue;
                double th = std::atan2(y, x);
                if (best_theta < 0 || th < best_theta) {
                    best_theta = th;
                    best_a = a; best_b = b;
                }
            }
        }
        if (best_theta < 0) throw generator_search_failed(F.d, p);
        T.entries.push_back({p, best_theta, best_a, best_b});
    }
    return T;
}

void save_split_angles_csv(const split_angle_table& T, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw bad_input("cannot open " + path + " for writing");
    f << "p,theta_p,a,b\n";
    char buf[64];
    for (const auto& e : T.entries) {
        std::snprintf(buf, sizeof buf, "%.17g", e.theta);
        f << e.p << ',' << buf << ',' << e.a << ',' << e.b << '\n';
    }
}

namespace {

// A_k on p^e per splitting class.  x = 2 N k theta_p for split p.
double A_split_power(double x, int e) {
    // sum_{j=0}^{e} cos((2j - e) x); summed symmetrically, always stable
    double s = 0;
    for (int j = 0; j <= e; ++j) s += std::cos((2.0 * j - e) * x);
    return s;
}

} // namespace

coeff_table build_coeffs(const field_config& F, int k, int64_t n_max,
                         const split_angle_table& angles, const sieve& sv) {
    if (k < 1) throw bad_input("build_coeffs: k must be >= 1");
    if (n_max > sv.bound()) throw sieve_too_small(n_max, sv.bound());
    coeff_table T;
    T.k = k;
    T.n_max = n_max;
    T.A.assign(size_t(n_max) + 1, 0.0);
    T.mu.assign(size_t(n_max) + 1, 0.0);
    T.c.assign(size_t(n_max) + 1, 0.0);
    T.r.assign(size_t(n_max) + 1, 0);
    if (n_max < 1) return T;
    T.A[1] = 1; T.mu[1] = 1; T.c[1] = 0; T.r[1] = 1;

    for (int64_t n = 2; n <= n_max; ++n) {
        int64_t p = sv.smallest_factor(n);
        int e = 0;
        int64_t m = n, pe = 1;
        while (m % p == 0) { m /= p; ++e; pe *= p; }
        if (m != 1) {
            // multiplicative assembly from the coprime split n = p^e * m
            T.A[size_t(n)] = T.A[size_t(pe)] * T.A[size_t(m)];
            T.mu[size_t(n)] = T.mu[size_t(pe)] * T.mu[size_t(m)];
            T.c[size_t(n)] = 0.0;
            T.r[size_t(n)] = int32_t(T.r[size_t(pe)] * T.r[size_t(m)]);
            continue;
        }
        double logp = std::log(double(p));
        auto cls = classify_prime(p, F);
        switch (cls.tag) {
        case split_class::ramified: {
            // the ramified prime has a unit quotient q/conj(q), and N k is even
            T.A[size_t(n)] = 1.0;
            T.mu[size_t(n)] = (e == 1) ? -1.0 : 0.0;
            T.c[size_t(n)] = logp;
            T.r[size_t(n)] = 1;
            break;
        }
        case split_class::inert: {
            T.A[size_t(n)] = (e % 2 == 0) ? 1.0 : 0.0;
            T.mu[size_t(n)] = (e == 1) ? 0.0 : (e == 2 ? -1.0 : 0.0);
            T.c[size_t(n)] = (e % 2 == 0) ? 2.0 * logp : 0.0;
            T.r[size_t(n)] = (e % 2 == 0) ? 1 : 0;
            break;
        }
        case split_class::split: {
            const split_angle_entry* ent = angles.find(p);
            if (!ent) throw bad_input("split-angle table misses p=" + std::to_string(p));
            double x = 2.0 * F.freq_mult * k * ent->theta;
            T.A[size_t(n)] = A_split_power(x, e);
            T.mu[size_t(n)] = (e == 1) ? -T.A[size_t(p)] : (e == 2 ? 1.0 : 0.0);
            T.c[size_t(n)] = 2.0 * std::cos(double(e) * x) * logp;
            T.r[size_t(n)] = int32_t(e + 1);
            break;
        }
        }
    }
    return T;
}

namespace {
void check_range(int64_t n, const coeff_table& T) {
    if (n < 1 || n > T.n_max)
        throw out_of_range("coefficient index " + std::to_string(n) +
                           " outside table of size " + std::to_string(T.n_max));
}
}

double coeff_A(const field_config&, int, int64_t n, const coeff_table& T) {
    check_range(n, T);
    return T.A[size_t(n)];
}

double coeff_mu(const field_config&, int, int64_t n, const coeff_table& T) {
    check_range(n, T);
    return T.mu[size_t(n)];
}

double coeff_c(const field_config&, int, int64_t n, const coeff_table& T) {
    check_range(n, T);
    return T.c[size_t(n)];
}

double dirichlet_kernel_sum(int K, int64_t n, double theta, int N) {
    if (K < 1) throw bad_input("dirichlet_kernel_sum: K must be >= 1");
    double x = 2.0 * N * double(n) * theta;
    double s = std::sin(0.5 * x);
    // kernel pole: x = 0 mod 2pi; every cosine is 1, the limit is exactly 2K
    if (std::abs(s) < 1e-12) return 2.0 * K;
    return -1.0 + std::sin((K + 0.5) * x) / s;
}

} // namespace hecke
