// Batch driver for the Hecke family density pipeline: constants, parallel
// zero scans with an on-disk cache, density reports, the invariant suite,
// and the lattice angle-bound export.

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hecke/density.hpp"
#include "hecke/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hecke;

namespace {

struct run_config {
    int d = 7;
    int N = 0;           // 0: the unit order of the chosen field
    int K = 40;
    double sigma = 0.6;
    double T = 0;        // 0: automatic per-k height
    double eps = 1e-8;
    int64_t sieve_bound = 0;  // 0: smallest bound the subcommand needs
    double psi_T = 1e6;
    std::string out_dir = "out";
    int threads = 0;     // 0: hardware concurrency
    bool all_fields = false;
};

int default_unit_order(int d) { return d == 3 ? 6 : 2; }

// Coefficients are double-rounded, so the evaluated series drifts from the
// ideal-coefficient one by roughly exp(cancellation - 41).  Automatic scan
// heights stop at 38 nats, where that drift is still a few percent of the
// O(1) scale of the completed function; the arithmetic ceiling at eps is
// applied on top.
constexpr double fidelity_nats = 38.0;

double auto_height(const l_spec& spec, double eps) {
    return std::min(cancellation_height(spec, fidelity_nats), height_ceiling(spec, eps));
}

double effective_height(const run_config& cfg, const l_spec& spec) {
    double cap = auto_height(spec, cfg.eps);
    if (cfg.T > 0) return std::min(cfg.T, std::min(cap, height_ceiling(spec, cfg.eps)));
    return cap;
}

// Series length covering the gamma bulge plus the exponential die-off down
// to the stopping threshold, with slack for oscillation dips.
int64_t series_length(const field_config& F, int k, double T) {
    double q = std::sqrt(double(F.disc_abs)) / (2.0 * std::numbers::pi);
    double bulge = q * (double(F.freq_mult) * k + T) + 5.0 * q + 10.0;
    return int64_t(std::ceil(bulge + 40.0 * (q + 1.0) + 80.0));
}

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

std::vector<int> field_list(const run_config& cfg) {
    if (!cfg.all_fields) return {cfg.d};
    return std::vector<int>(heegner_d.begin(), heegner_d.end());
}

field_config field_for(const run_config& cfg, int d) {
    int N = cfg.N > 0 ? cfg.N : default_unit_order(d);
    return make_field(d, N);
}

sieve make_sieve(const run_config& cfg, int64_t needed) {
    int64_t bound = cfg.sieve_bound > 0 ? cfg.sieve_bound : needed;
    return sieve(bound);
}

// ---------------------------------------------------------------------------
// constants

json constants_json(const field_config& F, const constants_bundle& c) {
    return json{{"d", F.d},
                {"N", F.freq_mult},
                {"psi_integral_trunc", c.psi_integral_trunc},
                {"lprime_ratio", c.lprime_ratio},
                {"inert_sum", c.inert_sum},
                {"ell0", c.ell0},
                {"ell1", c.ell1},
                {"l1_chi", c.l1_chi}};
}

int cmd_constants(const run_config& cfg) {
    fs::create_directories(cfg.out_dir);
    for (int d : field_list(cfg)) {
        field_config F = field_for(cfg, d);
        sieve sv = make_sieve(cfg, std::max<int64_t>(int64_t(cfg.psi_T) + 2, 10'000'000));
        constants_bundle c = constants(F, cfg.psi_T, sv);
        fs::path out = fs::path(cfg.out_dir) /
                       ("constants_d" + std::to_string(d) + "_N" + std::to_string(F.freq_mult) + ".json");
        std::ofstream(out) << constants_json(F, c).dump(2) << "\n";
        std::printf("d=%-3d N=%d  ell0=%.12f  ell1=%.12f  L'(1)/L(1)=%.12f  L(1)=%.12f  -> %s\n",
                    d, F.freq_mult, c.ell0, c.ell1, c.lprime_ratio, c.l1_chi, out.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// zeros

struct zero_job {
    double T = 0;
    zero_set Z;
    bool cached = false;
};

fs::path zeros_dir(const run_config& cfg, const field_config& F) {
    return fs::path(cfg.out_dir) /
           ("zeros_d" + std::to_string(F.d) + "_N" + std::to_string(F.freq_mult));
}

fs::path zero_csv_path(const run_config& cfg, const field_config& F, int k) {
    return zeros_dir(cfg, F) / ("k" + std::to_string(k) + ".csv");
}

void write_zero_csv(const fs::path& path, const field_config& F, double eps, const zero_set& Z) {
    std::ofstream f(path);
    f << "# d=" << F.d << " N=" << F.freq_mult << " k=" << Z.k
      << " T=" << fmt_g(Z.T) << " eps=" << fmt_g(eps)
      << " zero_at_center=" << (Z.zero_at_center ? 1 : 0)
      << " complete=" << (Z.complete ? 1 : 0)
      << " precision=" << fmt_g(Z.precision)
      << " count=" << Z.gammas.size() << "\n";
    f << "gamma,residual\n";
    for (size_t i = 0; i < Z.gammas.size(); ++i)
        f << fmt_g(Z.gammas[i]) << "," << fmt_g(Z.residuals[i]) << "\n";
}

// A cache hit must match field, k, height, and eps exactly (string-level on
// the %.17g forms, which round-trip doubles losslessly).
bool load_zero_csv(const fs::path& path, const field_config& F, int k, double T, double eps,
                   zero_set& Z) {
    std::ifstream f(path);
    if (!f) return false;
    std::string header;
    if (!std::getline(f, header)) return false;
    std::ostringstream want;
    want << "# d=" << F.d << " N=" << F.freq_mult << " k=" << k
         << " T=" << fmt_g(T) << " eps=" << fmt_g(eps) << " ";
    if (header.rfind(want.str(), 0) != 0) return false;

    Z = zero_set{};
    Z.k = k;
    Z.T = T;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "zero_at_center") Z.zero_at_center = val == "1";
            else if (key == "complete") Z.complete = val == "1";
            else if (key == "precision") Z.precision = std::strtod(val.c_str(), nullptr);
        }
    }
    std::string line;
    if (!std::getline(f, line) || line != "gamma,residual") return false;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) return false;
        Z.gammas.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
        Z.residuals.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
    }
    return true;
}

// Scans (or loads) the zero sets for k = 1..K.  Workers pull k values off a
// shared counter; everything downstream of the join runs single-threaded in
// k order, so reports do not depend on scheduling.
std::vector<zero_job> compute_zero_sets(const run_config& cfg, const field_config& F,
                                        const sieve& sv, const split_angle_table& angles) {
    std::vector<zero_job> jobs(size_t(cfg.K));
    for (int k = 1; k <= cfg.K; ++k)
        jobs[size_t(k - 1)].T = effective_height(cfg, make_l_spec(F, k));

    std::atomic<int> next{1};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k > cfg.K || failed.load()) return;
            zero_job& J = jobs[size_t(k - 1)];
            try {
                l_spec spec = make_l_spec(F, k);
                if (load_zero_csv(zero_csv_path(cfg, F, k), F, k, J.T, cfg.eps, J.Z)) {
                    J.cached = true;
                    continue;
                }
                coeff_table ct = build_coeffs(F, k, series_length(F, k, J.T), angles, sv);
                J.Z = find_zeros(spec, ct, J.T, cfg.eps);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) error_msg = e.what();
                return;
            }
        }
    };

    int nthreads = std::min(resolve_threads(cfg.threads), cfg.K);
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw capacity_exceeded("zero scan failed: " + error_msg);
    return jobs;
}

void write_zero_outputs(const run_config& cfg, const field_config& F,
                        const std::vector<zero_job>& jobs) {
    fs::create_directories(zeros_dir(cfg, F));
    json sets = json::array();
    for (int k = 1; k <= cfg.K; ++k) {
        const zero_job& J = jobs[size_t(k - 1)];
        fs::path csv = zero_csv_path(cfg, F, k);
        if (!J.cached) write_zero_csv(csv, F, cfg.eps, J.Z);
        sets.push_back(json{{"k", k},
                            {"T", J.Z.T},
                            {"count", J.Z.gammas.size()},
                            {"zero_at_center", J.Z.zero_at_center},
                            {"complete", J.Z.complete},
                            {"precision", J.Z.precision},
                            {"file", csv.filename().string()}});
    }
    json manifest{{"d", F.d},
                  {"N", F.freq_mult},
                  {"K", cfg.K},
                  {"eps", cfg.eps},
                  {"T_requested", cfg.T},
                  {"sets", sets}};
    std::ofstream(zeros_dir(cfg, F) / "manifest.json") << manifest.dump(2) << "\n";
}

int cmd_zeros(const run_config& cfg) {
    field_config F = field_for(cfg, cfg.d);
    l_spec top = make_l_spec(F, cfg.K);
    int64_t n_need = series_length(F, cfg.K, effective_height(cfg, top));
    sieve sv = make_sieve(cfg, std::max<int64_t>(n_need + 1, 1000));
    split_angle_table angles = split_angles(F, std::max<int64_t>(n_need, 1000), sv);

    auto jobs = compute_zero_sets(cfg, F, sv, angles);
    write_zero_outputs(cfg, F, jobs);

    int complete = 0, cached = 0;
    size_t zeros = 0;
    for (const auto& J : jobs) {
        complete += J.Z.complete ? 1 : 0;
        cached += J.cached ? 1 : 0;
        zeros += J.Z.gammas.size();
    }
    std::printf("d=%d N=%d K=%d: %zu zeros, %d/%d sets complete, %d cache hits -> %s\n",
                F.d, F.freq_mult, cfg.K, zeros, complete, cfg.K, cached,
                zeros_dir(cfg, F).c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// density

int cmd_density(const run_config& cfg) {
    field_config F = field_for(cfg, cfg.d);
    test_function tf = test_function::fejer(cfg.sigma);

    l_spec top = make_l_spec(F, cfg.K);
    int64_t n_need = series_length(F, cfg.K, effective_height(cfg, top));
    int64_t sieve_need = std::max<int64_t>({n_need + 1, int64_t(cfg.psi_T) + 2, 10'000'000});
    sieve sv = make_sieve(cfg, sieve_need);
    split_angle_table angles = split_angles(F, std::max<int64_t>(n_need, 1000), sv);

    auto jobs = compute_zero_sets(cfg, F, sv, angles);
    write_zero_outputs(cfg, F, jobs);

    std::vector<zero_set> zs;
    zs.reserve(size_t(cfg.K));
    double t_min = 1e300;
    for (const auto& J : jobs) {
        zs.push_back(J.Z);
        t_min = std::min(t_min, J.Z.T);
    }

    constants_bundle c = constants(F, cfg.psi_T, sv);

    density_report rep;
    rep.d = F.d;
    rep.N = F.freq_mult;
    rep.K = cfg.K;
    rep.sigma = cfg.sigma;
    rep.empirical = empirical_density(zs, tf, cfg.K);
    rep.s_x = s_x(cfg.K, tf, F);
    rep.s_inert = s_inert(cfg.K, tf, F, sv);
    rep.s_split = s_split(cfg.K, tf, F, angles);
    rep.s_ram = s_ram(cfg.K, tf, F);
    rep.explicit_total = rep.s_x + rep.s_inert + rep.s_split + rep.s_ram;
    rep.rc_prediction = rc_prediction(cfg.K, tf, c);
    rep.unconditional_prediction = unconditional_prediction(cfg.K, tf, c);
    rc_term_bundle rc = rc_terms(cfg.K, tf, F, sv);
    rep.identity_residual = (rep.s_inert + rep.s_ram) - rc.total();
    rep.tail_bound = empirical_tail_bound(t_min, tf, cfg.K);
    rep.ell0 = c.ell0;
    rep.ell1 = c.ell1;
    for (int k = 1; k <= cfg.K; ++k) {
        if (jobs[size_t(k - 1)].Z.complete) ++rep.complete_count;
        else rep.incomplete_k.push_back(k);
    }

    fs::create_directories(cfg.out_dir);
    std::ostringstream stem;
    stem << "density_d" << F.d << "_N" << F.freq_mult << "_K" << cfg.K << "_s" << cfg.sigma;
    fs::path jpath = fs::path(cfg.out_dir) / (stem.str() + ".json");
    fs::path cpath = fs::path(cfg.out_dir) / (stem.str() + ".csv");
    std::ofstream(jpath) << report_json(rep) << "\n";
    std::ofstream(cpath) << report_csv_header() << "\n" << report_csv_row(rep) << "\n";

    std::printf("empirical                 %+.6f\n", rep.empirical);
    std::printf("unconditional prediction  %+.6f   (residual %+.6f)\n",
                rep.unconditional_prediction, rep.empirical - rep.unconditional_prediction);
    std::printf("ratios prediction         %+.6f   (residual %+.6f)\n",
                rep.rc_prediction, rep.empirical - rep.rc_prediction);
    std::printf("explicit-formula total    %+.6f   (residual %+.6f)\n",
                rep.explicit_total, rep.empirical - rep.explicit_total);
    std::printf("identity residual         %.3e\n", std::abs(rep.identity_residual));
    std::printf("zero-tail bound           %.3e   (min scan height %.3f)\n", rep.tail_bound,
                t_min);
    if (!rep.incomplete_k.empty()) {
        std::printf("incomplete zero sets      ");
        for (int k : rep.incomplete_k) std::printf("%d ", k);
        std::printf("\n");
    }
    std::printf("report -> %s\n", jpath.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct check_row {
    std::string name;
    bool pass = false;
    std::string detail;
};

void report_check(std::vector<check_row>& rows, const std::string& name, bool pass,
                  const std::string& detail) {
    rows.push_back({name, pass, detail});
    std::printf("%-4s %-22s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
}

fs::path coeff_cache_path(const run_config& cfg, const field_config& F) {
    return fs::path(cfg.out_dir) /
           ("coeffcache_d" + std::to_string(F.d) + "_N" + std::to_string(F.freq_mult) + ".csv");
}

void verify_field(const run_config& cfg, int d, std::vector<check_row>& rows) {
    field_config F = field_for(cfg, d);
    std::string tag = "d" + std::to_string(d) + " ";

    int64_t n_small = 400;
    sieve sv = make_sieve(cfg, std::max<int64_t>({int64_t(cfg.psi_T) + 2, 10'000'000, 2000}));
    split_angle_table angles = split_angles(F, 2000, sv);

    // Multiplicative coefficients against the direct lattice enumeration.
    {
        ideal_class_table ideals = enumerate_ideals(F, n_small);
        double worst = 0;
        for (int k : {1, 3}) {
            coeff_table ct = build_coeffs(F, k, n_small, angles, sv);
            for (int64_t n = 1; n <= n_small; ++n) {
                double direct = 0;
                for (double th : ideals.ideals_by_norm[size_t(n)])
                    direct += std::cos(2.0 * double(F.freq_mult) * double(k) * th);
                worst = std::max(worst, std::abs(direct - ct.A[size_t(n)]));
            }
        }
        report_check(rows, tag + "coeff-oracle", worst <= 1e-10,
                     "max |closed-form - enumeration| = " + fmt_g(worst));
    }

    // Durable coefficient cache: created on first run, compared afterwards.
    {
        fs::create_directories(cfg.out_dir);
        fs::path cache = coeff_cache_path(cfg, F);
        coeff_table fresh = build_coeffs(F, 1, 1000, angles, sv);
        if (!fs::exists(cache)) {
            std::ofstream f(cache);
            f << "n,A,r\n";
            for (int64_t n = 1; n <= fresh.n_max; ++n)
                f << n << "," << fmt_g(fresh.A[size_t(n)]) << "," << fresh.r[size_t(n)] << "\n";
            report_check(rows, tag + "coeff-cache", true, "created " + cache.filename().string());
        } else {
            std::ifstream f(cache);
            std::string line;
            std::getline(f, line);
            bool ok = line == "n,A,r";
            double worst = 0;
            int64_t seen = 0;
            while (ok && std::getline(f, line)) {
                if (line.empty()) continue;
                int64_t n;
                double A;
                int r;
                if (std::sscanf(line.c_str(), "%" SCNd64 ",%lf,%d", &n, &A, &r) != 3 ||
                    n < 1 || n > fresh.n_max) {
                    ok = false;
                    break;
                }
                ++seen;
                worst = std::max(worst, std::abs(A - fresh.A[size_t(n)]));
                if (r != fresh.r[size_t(n)]) ok = false;
            }
            ok = ok && seen == fresh.n_max && worst <= 1e-12;
            report_check(rows, tag + "coeff-cache", ok,
                         ok ? "cache matches rebuild, max drift = " + fmt_g(worst)
                            : "oracle mismatch against " + cache.filename().string());
        }
    }

    // Functional equation on the critical line, plus reality of the
    // normalized completed function there.
    {
        double worst = 0;
        for (int k : {1, 7}) {
            l_spec spec = make_l_spec(F, k);
            coeff_table ct = build_coeffs(F, k, series_length(F, k, 10.0), angles, sv);
            for (double t : {1.7, 6.3, 9.1}) {
                cplx a = lambda_complete(spec, cplx(0.5, t), ct, cfg.eps);
                cplx b = lambda_complete(spec, cplx(0.5, -t), ct, cfg.eps);
                worst = std::max(worst, std::abs(a - b));
                worst = std::max(worst, std::abs(a.imag()));
            }
        }
        report_check(rows, tag + "functional-eq", worst <= 2.0 * cfg.eps,
                     "max residual = " + fmt_g(worst));
    }

    // Closed-form Dirichlet kernel against the direct cosine sum.
    {
        std::mt19937_64 rng(20240817);
        std::uniform_int_distribution<int> pick_k(1, 100);
        std::uniform_int_distribution<int64_t> pick_n(1, 20);
        std::uniform_real_distribution<double> pick_theta(0.01, 3.13);
        double worst = 0;
        auto direct = [&](int K, int64_t n, double theta) {
            double s = 0;
            for (int j = 1; j <= K; ++j)
                s += 2.0 * std::cos(2.0 * double(F.freq_mult) * double(j) * double(n) * theta);
            return s;
        };
        for (int i = 0; i < 100; ++i) {
            int K = pick_k(rng);
            int64_t n = pick_n(rng);
            double theta = pick_theta(rng);
            worst = std::max(worst,
                             std::abs(dirichlet_kernel_sum(K, n, theta, F.freq_mult) -
                                      direct(K, n, theta)));
        }
        for (const auto& e : angles.entries) {
            if (e.p > 1000) break;
            worst = std::max(worst, std::abs(dirichlet_kernel_sum(40, 1, e.theta, F.freq_mult) -
                                             direct(40, 1, e.theta)));
        }
        report_check(rows, tag + "kernel-identity", worst <= 1e-10,
                     "max |closed form - direct| = " + fmt_g(worst));
    }

    // Constants: the two scale constants must be exact negatives, and the
    // truncated integral must sit in the fluctuation band around -1-gamma.
    {
        constants_bundle c = constants(F, cfg.psi_T, sv);
        double asym = std::abs(c.ell1 + c.ell0);
        report_check(rows, tag + "scale-antisymmetry", asym <= 1e-12,
                     "|ell1 + ell0| = " + fmt_g(asym));
        double target = -1.0 - std::numbers::egamma;
        double dev = std::abs(c.psi_integral_trunc - target);
        report_check(rows, tag + "psi-integral", dev <= 0.02,
                     "deviation from -1-gamma = " + fmt_g(dev));
    }

    // Lattice angle bound: strictly positive and stable in the radius.
    {
        double s100 = angle_bound_scan(F, F.freq_mult, 100.0, 1);
        double s200 = angle_bound_scan(F, F.freq_mult, 200.0, 1);
        bool ok = s100 > 0 && s200 > 0 && std::abs(s200 - s100) / s100 < 0.10;
        report_check(rows, tag + "angle-bound", ok,
                     "R=100: " + fmt_g(s100) + ", R=200: " + fmt_g(s200));
    }
}

int cmd_verify(const run_config& cfg) {
    std::vector<check_row> rows;
    for (int d : field_list(cfg)) verify_field(cfg, d, rows);
    int failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;
    std::printf("%zu checks, %d failed\n", rows.size(), failed);
    return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// angles

int cmd_angles(const run_config& cfg) {
    fs::create_directories(cfg.out_dir);
    for (int d : field_list(cfg)) {
        field_config F = field_for(cfg, d);
        fs::path out = fs::path(cfg.out_dir) /
                       ("angles_d" + std::to_string(d) + "_N" + std::to_string(F.freq_mult) + ".csv");
        std::ofstream f(out);
        f << "R,Q,min_scaled_angle\n";
        for (double R : {50.0, 100.0, 150.0, 200.0}) {
            for (int Q : {1, 2}) {
                double v = angle_bound_scan(F, F.freq_mult, R, Q);
                f << fmt_g(R) << "," << Q << "," << fmt_g(v) << "\n";
                std::printf("d=%-3d N=%d R=%-4g Q=%d  min ||v||^Q alpha(v) = %.9f\n",
                            d, F.freq_mult, R, Q, v);
            }
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

void apply_config_file(const std::string& path, run_config& cfg) {
    std::ifstream f(path);
    if (!f) throw bad_input("cannot open config file " + path);
    json j = json::parse(f, nullptr, true, true);
    if (j.contains("d")) cfg.d = j.at("d").get<int>();
    if (j.contains("N")) cfg.N = j.at("N").get<int>();
    if (j.contains("K")) cfg.K = j.at("K").get<int>();
    if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<double>();
    if (j.contains("T")) cfg.T = j.at("T").get<double>();
    if (j.contains("eps")) cfg.eps = j.at("eps").get<double>();
    if (j.contains("sieve")) cfg.sieve_bound = j.at("sieve").get<int64_t>();
    if (j.contains("psi_T")) cfg.psi_T = j.at("psi_T").get<double>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("field")) cfg.all_fields = j.at("field").get<std::string>() == "all";
}

void validate(const run_config& cfg) {
    if (cfg.K < 1) throw bad_input("K must be >= 1");
    if (!(cfg.sigma > 0)) throw bad_input("sigma must be positive");
    if (!(cfg.eps >= 1e-12 && cfg.eps <= 1e-4))
        throw bad_input("eps must lie in [1e-12, 1e-4]");
    if (cfg.T < 0) throw bad_input("T must be positive when given");
    if (!(cfg.psi_T >= 1)) throw bad_input("psi-T must be >= 1");
    if (cfg.threads < 0) throw bad_input("threads must be >= 0");
    if (cfg.sieve_bound < 0) throw bad_input("sieve must be >= 0");
}

} // namespace

int main(int argc, char** argv) {
    run_config cfg;

    // The config file seeds the defaults, so explicit flags always win.
    for (int i = 1; i < argc - 1; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(argv[i + 1], cfg);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 2;
            }
        }
    }

    CLI::App app{"angular Hecke family: zero scans and 1-level density reports"};
    app.require_subcommand(1);
    std::string config_path, field_sel;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat JSON config; flags override");
        sub->add_option("--d", cfg.d, "field discriminant selector");
        sub->add_option("--N", cfg.N, "character frequency multiple (default: unit order)");
        sub->add_option("--K", cfg.K, "family size");
        sub->add_option("--sigma", cfg.sigma, "test-function support parameter");
        sub->add_option("--T", cfg.T, "zero-scan height (default: per-k precision cap)");
        sub->add_option("--eps", cfg.eps, "evaluation accuracy");
        sub->add_option("--sieve", cfg.sieve_bound, "sieve bound (default: as needed)");
        sub->add_option("--psi-T", cfg.psi_T, "truncation of the prime-counting integral");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--threads", cfg.threads, "worker threads (default: hardware)");
        sub->add_option("--field", field_sel, "'all' iterates the eight fields");
    };

    CLI::App* c_const = app.add_subcommand("constants", "family scale constants");
    CLI::App* c_zeros = app.add_subcommand("zeros", "parallel zero scan with caching");
    CLI::App* c_dens = app.add_subcommand("density", "one-level density report");
    CLI::App* c_verify = app.add_subcommand("verify", "invariant suite");
    CLI::App* c_angles = app.add_subcommand("angles", "lattice angle-bound export");
    for (CLI::App* sub : {c_const, c_zeros, c_dens, c_verify, c_angles}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!field_sel.empty()) {
        if (field_sel != "all") {
            std::fprintf(stderr, "error: --field accepts only 'all' (use --d to pick one)\n");
            return 2;
        }
        cfg.all_fields = true;
    }

    try {
        validate(cfg);
        if (c_const->parsed()) return cmd_constants(cfg);
        if (c_zeros->parsed()) return cmd_zeros(cfg);
        if (c_dens->parsed()) return cmd_density(cfg);
        if (c_verify->parsed()) return cmd_verify(cfg);
        if (c_angles->parsed()) return cmd_angles(cfg);
    } catch (const hecke::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 2;
}
