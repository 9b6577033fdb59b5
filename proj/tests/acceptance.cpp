// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. Exits nonzero if any criterion fails.
//
// argv[1] (optional): path to the diffract CLI binary, used by the
// reproducibility criterion. Without it that criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "diffract/correlation.hpp"
#include "diffract/io.hpp"
#include "diffract/random_combs.hpp"
#include "diffract/spectral.hpp"
#include "diffract/substitution.hpp"

using namespace diffract;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

struct Check {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// 1. TM exact autocorrelation: eta(0)=1, eta(+-1)=-1/3 exactly; values for
//    |m| <= 10^3 in < 1 s.
bool criterion_tm_exact(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    CorrelationSeries eta = tm_exact_eta(1000);
    double elapsed = seconds_since(start);
    bool ok = eta.eta_exact(0).re == Rational(1) &&
              eta.eta_exact(1).re == Rational(-1, 3) &&
              eta.eta_exact(-1).re == Rational(-1, 3) && elapsed < 1.0;
    detail = "eta(1) = " + eta.eta_exact(1).re.to_string() + ", " +
             std::to_string(elapsed) + " s";
    return ok;
}

// 2. Empirical vs exact TM autocorrelation at N = 2^18, |m| <= 32, within
//    0.01, in < 30 s.
bool criterion_tm_oracle(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    WeightedComb comb = tm_comb(1 << 18);
    CorrelationSeries empirical = empirical_autocorrelation(comb, 32);
    CorrelationSeries exact = tm_exact_eta(32);
    double worst = 0.0;
    for (long long m = -32; m <= 32; ++m)
        worst = std::max(worst,
                         std::abs(empirical.eta(m).real() - exact.eta(m).real()));
    double elapsed = seconds_since(start);
    detail = "max |empirical - exact| = " + std::to_string(worst) + ", " +
             std::to_string(elapsed) + " s";
    return worst <= 0.01 && elapsed < 30.0;
}

// 3. Wiener inequality Sigma(4N) <= (3/2) Sigma(2N) for N = 2^0..2^10, and
//    Sigma(N)/N strictly decreasing along N = 2^4..2^14; exact arithmetic.
bool criterion_wiener(std::string& detail) {
    CorrelationSeries eta = tm_exact_eta(1 << 14);
    for (long long N = 1; N <= (1 << 10); N *= 2) {
        Rational lhs = wiener_sigma_exact(eta, 4 * N);
        Rational rhs = Rational(3, 2) * wiener_sigma_exact(eta, 2 * N);
        if (!(lhs <= rhs)) {
            detail = "Sigma(4N) > (3/2) Sigma(2N) at N = " + std::to_string(N);
            return false;
        }
    }
    Rational previous;
    bool first = true;
    for (long long N = 1 << 4; N <= (1 << 14); N *= 2) {
        Rational ratio = wiener_sigma_exact(eta, N) / Rational(N);
        if (!first && !(ratio < previous)) {
            detail = "Sigma(N)/N did not decrease at N = " + std::to_string(N);
            return false;
        }
        previous = ratio;
        first = false;
    }
    detail = "inequality chain and strict decay hold";
    return true;
}

// 4. Generalised Morse closed form eta(+-1) = (k+l-3)/(k+l+1) for k+l <= 8;
//    gm(1,1) equals the TM series exactly for |m| <= 10^3.
bool criterion_gm(std::string& detail) {
    for (int k = 1; k <= 7; ++k)
        for (int l = 1; k + l <= 8; ++l) {
            CorrelationSeries eta = gm_exact_eta(k, l, 8);
            Rational expected(k + l - 3, k + l + 1);
            if (!(eta.eta_exact(1).re == expected &&
                  eta.eta_exact(-1).re == expected)) {
                detail = "closed form failed at (k,l) = (" + std::to_string(k) +
                         "," + std::to_string(l) + ")";
                return false;
            }
        }
    CorrelationSeries tm = tm_exact_eta(1000);
    CorrelationSeries gm = gm_exact_eta(1, 1, 1000);
    for (long long m = -1000; m <= 1000; ++m)
        if (!(tm.eta_exact(m) == gm.eta_exact(m))) {
            detail = "gm(1,1) differs from TM at m = " + std::to_string(m);
            return false;
        }
    detail = "all (k,l) with k+l <= 8; gm(1,1) == tm over |m| <= 1000";
    return true;
}

// 5. Three-route TM distribution function: pairwise sup norm <= 1e-2,
//    strictly increasing, endpoints exact within 1e-6, under 2 minutes.
bool criterion_three_routes(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    const long long G = 1 << 12;
    DistributionFunction fourier =
        fourier_distribution(tm_exact_eta(1 << 16), 1 << 16, G);
    DistributionFunction volterra = volterra_distribution(G, 64, 1e-8);
    DistributionFunction riesz =
        riesz_partial_distribution(RieszProfile::make(1, 1), 14, G);
    double fv = sup_norm_diff(fourier, volterra);
    double fr = sup_norm_diff(fourier, riesz);
    double vr = sup_norm_diff(volterra, riesz);
    double elapsed = seconds_since(start);
    bool endpoints = fourier.values.front() == 0.0 &&
                     volterra.values.front() == 0.0 &&
                     riesz.values.front() == 0.0 &&
                     approx(fourier.values.back(), 1.0, 1e-6) &&
                     approx(volterra.values.back(), 1.0, 1e-6) &&
                     approx(riesz.values.back(), 1.0, 1e-6);
    bool strict = volterra.converged && volterra.increments_positive();
    detail = "sup norms f/v " + std::to_string(fv) + ", f/r " + std::to_string(fr) +
             ", v/r " + std::to_string(vr) + ", " + std::to_string(elapsed) + " s";
    return fv <= 1e-2 && fr <= 1e-2 && vr <= 1e-2 && endpoints && strict &&
           elapsed < 120.0;
}

// 6. Functional-relation residuals on the converged TM function over dyadic
//    subintervals of width 1/64: residual+ <= 1e-3, residual- <= 5e-3.
bool criterion_functional_relations(std::string& detail) {
    DistributionFunction F = volterra_distribution(1 << 12, 64, 1e-8);
    if (!F.converged) {
        detail = "Volterra iteration did not converge";
        return false;
    }
    std::vector<std::pair<double, double>> intervals;
    for (int j = 0; j < 64; ++j) intervals.emplace_back(j / 64.0, (j + 1) / 64.0);
    FunctionalRelationReport report = tm_functional_relation_residual(F, intervals);
    detail = "max residual+ = " + sci(report.max_residual_plus) +
             ", max residual- = " + sci(report.max_residual_minus);
    return report.max_residual_plus <= 1e-3 && report.max_residual_minus <= 5e-3;
}

// 7. Rudin-Shapiro: recursions give theta == 0 and eta = delta exactly for
//    |m| <= 10^3; empirical eta at N = 2^18 within 4/sqrt(2N+1) of 0 for
//    1 <= |m| <= 16.
bool criterion_rs(std::string& detail) {
    CorrelationSeries exact = rs_exact_eta_theta(1000);
    if (!(exact.eta_exact(0).re == Rational(1))) {
        detail = "eta(0) != 1";
        return false;
    }
    for (long long m = -1000; m <= 1000; ++m) {
        if (!(exact.theta_exact(m).re == Rational(0))) {
            detail = "theta(" + std::to_string(m) + ") != 0";
            return false;
        }
        if (m != 0 && !(exact.eta_exact(m).re == Rational(0))) {
            detail = "eta(" + std::to_string(m) + ") != 0";
            return false;
        }
    }
    const long long N = 1 << 18;
    WeightedComb comb = rs_comb(N);
    CorrelationSeries empirical = empirical_autocorrelation(comb, 16);
    const double band = 4.0 / std::sqrt(static_cast<double>(2 * N + 1));
    double worst = 0.0;
    for (long long m = 1; m <= 16; ++m)
        worst = std::max({worst, std::abs(empirical.eta(m).real()),
                          std::abs(empirical.eta(-m).real())});
    detail = "exact delta; max |empirical eta(m != 0)| = " + std::to_string(worst) +
             " vs band " + std::to_string(band);
    return worst <= band;
}

// 8. Period doubling Bragg checks at N = 2^18: |A|^2 at k = 1 and k = 1/2
//    within 0.01 of 4/9 and 1/9 for the a-indicator comb; the constant comb
//    has unit peaks at the integers and nothing elsewhere.
bool criterion_pd_bragg(std::string& detail) {
    WeightedComb comb = pd_comb(1.0, 0.0, 1 << 18);
    double at_one = empirical_bragg_intensity(comb, 1.0);
    double at_half = empirical_bragg_intensity(comb, 0.5);
    bool formula_ok = pd_bragg_intensity(1.0, 1.0, 0, 0).intensity == 1.0 &&
                      pd_bragg_intensity(1.0, 1.0, 5, 0).intensity == 1.0 &&
                      pd_bragg_intensity(1.0, 1.0, 1, 1).intensity == 0.0 &&
                      pd_bragg_intensity(1.0, 1.0, 3, 2).intensity == 0.0;
    detail = "I(1) = " + std::to_string(at_one) + " (4/9 = 0.4444...), I(1/2) = " +
             std::to_string(at_half) + " (1/9 = 0.1111...)";
    return approx(at_one, 4.0 / 9.0, 0.01) && approx(at_half, 1.0 / 9.0, 0.01) &&
           formula_ok;
}

// 9. Homometry certification for the 6-periodic pair: identical eta and
//    Bragg spectra (exact), orders 2-5 equal over lags in [0,5]^(q-1), an
//    order-6 witness found and printed; < 10 s.
bool criterion_homometry(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    PeriodicComb row1, row2;
    for (long long c : {11, 25, 42, 45, 31, 14})
        row1.coefficients.push_back(RatComplex(Rational(c)));
    for (long long c : {10, 21, 39, 46, 35, 17})
        row2.coefficients.push_back(RatComplex(Rational(c)));

    CorrelationSeries eta1 = periodic_autocorrelation(row1);
    CorrelationSeries eta2 = periodic_autocorrelation(row2);
    for (long long m = -6; m <= 6; ++m)
        if (!(eta1.eta_exact(m) == eta2.eta_exact(m))) {
            detail = "eta differs at m = " + std::to_string(m);
            return false;
        }

    PurePointSpectrum s1 = periodic_diffraction(row1);
    PurePointSpectrum s2 = periodic_diffraction(row2);
    for (std::size_t j = 0; j < s1.peaks.size(); ++j)
        if (std::memcmp(&s1.peaks[j].intensity, &s2.peaks[j].intensity,
                        sizeof(double)) != 0) {
            detail = "spectra differ at peak " + std::to_string(j);
            return false;
        }

    HomometryReport report = compare_correlations(row1, row2, 6, 5);
    for (std::size_t i = 0; i < report.orders_checked.size(); ++i) {
        bool expected_equal = report.orders_checked[i] <= 5;
        if (report.order_equal[i] != expected_equal) {
            detail = "order " + std::to_string(report.orders_checked[i]) +
                     " unexpected";
            return false;
        }
    }
    if (!report.witness_lags || report.witness_order != 6) {
        detail = "no order-6 witness found";
        return false;
    }
    double elapsed = seconds_since(start);
    std::ostringstream witness;
    witness << "order-6 witness lags (";
    for (std::size_t i = 0; i < report.witness_lags->size(); ++i)
        witness << (i ? "," : "") << (*report.witness_lags)[i];
    witness << "): " << report.witness_a.re.to_string() << " vs "
            << report.witness_b.re.to_string();
    detail = witness.str() + ", " + std::to_string(elapsed) + " s";
    return elapsed < 10.0;
}

// 10. Bernoulli predictions: for p in {0.1, 0.25, 0.5, 0.75}, per-trial
//     empirical eta(m), 1 <= m <= 8, within 4/sqrt(2N+1) of (2p-1)^2 at
//     N = 2^20 in >= 95% of 100 trials.
bool criterion_bernoulli(std::string& detail) {
    std::ostringstream note;
    for (double p : {0.1, 0.25, 0.5, 0.75}) {
        RandomCombSpec spec;
        spec.p = p;
        spec.half_length = 1 << 20;
        spec.seed = 20260808;
        CorrelationSeries predicted = predicted_bernoulli_autocorrelation(p, 8);
        MonteCarloReport report = monte_carlo_eta(spec, 100, 8, &predicted);
        long long worst = report.trials;
        for (const auto& stat : report.lags)
            if (stat.m != 0) worst = std::min(worst, stat.trials_within_band);
        note << "p=" << p << ": worst lag " << worst << "/100; ";
        if (!report.all_within_band(0.95)) {
            detail = note.str() + "below 95%";
            return false;
        }
    }
    detail = note.str();
    return true;
}

// 11. Bernoullised RS: p in {0.1, 0.3, 0.5, 0.7, 0.9}, empirical
//     eta(m != 0) within the same band of 0 regardless of p.
bool criterion_bernoullisation(std::string& detail) {
    CorrelationSeries base_eta = rs_exact_eta_theta(8);
    WeightedComb base = rs_comb(1 << 20);
    std::ostringstream note;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        RandomCombSpec spec;
        spec.p = p;
        spec.half_length = 1 << 20;
        spec.seed = 424242;
        spec.base = base;
        CorrelationSeries predicted =
            predicted_bernoullisation_autocorrelation(base_eta, p);
        MonteCarloReport report = monte_carlo_eta(spec, 100, 8, &predicted);
        long long worst = report.trials;
        for (const auto& stat : report.lags)
            if (stat.m != 0) worst = std::min(worst, stat.trials_within_band);
        note << "p=" << p << ": worst lag " << worst << "/100; ";
        if (!report.all_within_band(0.95)) {
            detail = note.str() + "below 95%";
            return false;
        }
    }
    detail = note.str();
    return true;
}

// 12. Reproducibility: re-running a manifest reproduces every dataset byte
//     for byte. Exercised through the CLI binary.
bool criterion_reproducibility(std::string& detail) {
    if (g_cli_path.empty()) {
        detail = "CLI binary path not supplied";
        return false;
    }
    fs::path dir = fs::temp_directory_path() /
                   ("diffract-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);

    auto run = [&](const std::string& args) {
        std::string command = g_cli_path + " " + args + " >/dev/null 2>&1";
        int status = std::system(command.c_str());
        return status == 0;
    };
    auto bytes = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    struct Job {
        std::string args;
        std::vector<std::string> datasets;
    };
    std::vector<Job> jobs = {
        {"autocorr --system rs --exact --max-lag 64", {".csv", ".rational.json"}},
        {"autocorr --system rs --exact --max-lag 0", {".csv"}},
        {"autocorr --system gm:2,2 --exact --max-lag 32", {".csv", ".rational.json"}},
        {"distfn --system tm --method volterra --grid 1024", {".csv", ".meta.json"}},
        {"random --mode bernoulli --p 0.25 --half-length 4096 --seed 9 --trials 8 "
         "--max-lag 4",
         {".json"}},
        {"spectrum --system gm-pair --row 1", {".csv"}},
    };
    fs::path volterra_manifest;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        fs::path first = dir / ("run" + std::to_string(j));
        fs::path second = dir / ("replay" + std::to_string(j));
        if (jobs[j].args.find("volterra") != std::string::npos)
            volterra_manifest = fs::path(first.string() + ".manifest.json");
        if (!run(jobs[j].args + " --out " + first.string())) {
            detail = "CLI run failed: " + jobs[j].args;
            return false;
        }
        if (!run("replay " + first.string() + ".manifest.json --out " +
                 second.string())) {
            detail = "replay failed: " + jobs[j].args;
            return false;
        }
        for (const std::string& suffix : jobs[j].datasets) {
            std::string a = bytes(fs::path(first.string() + suffix));
            std::string b = bytes(fs::path(second.string() + suffix));
            if (a.empty() || a != b) {
                detail = "dataset differs after replay: " + jobs[j].args + suffix;
                return false;
            }
        }
    }

    // The compare command agrees at tolerance zero.
    if (std::system((g_cli_path + " compare " + (dir / "run0.manifest.json").string() +
                     " " + (dir / "replay0.manifest.json").string() +
                     " --tolerance 0 >/dev/null 2>&1")
                        .c_str()) != 0) {
        detail = "compare reported a deviation between run and replay";
        return false;
    }

    // Cross-method compare: Volterra vs Fourier stay inside 1e-2.
    if (!run("distfn --system tm --method fourier --grid 1024 --truncation 16384 "
             "--out " + (dir / "four").string())) {
        detail = "fourier distfn run failed";
        return false;
    }
    if (std::system((g_cli_path + " compare " + volterra_manifest.string() + " " +
                     (dir / "four.manifest.json").string() +
                     " --tolerance 1e-2 >/dev/null 2>&1")
                        .c_str()) != 0) {
        detail = "volterra vs fourier compare exceeded 1e-2";
        return false;
    }

    // The two homometric rows give byte-identical spectra through the CLI.
    if (!run("spectrum --system gm-pair --row 2 --out " + (dir / "row2").string())) {
        detail = "gm-pair row 2 spectrum run failed";
        return false;
    }
    fs::path row1_manifest;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        if (jobs[j].args.find("gm-pair") != std::string::npos)
            row1_manifest = dir / ("run" + std::to_string(j) + ".manifest.json");
    if (std::system((g_cli_path + " compare " + row1_manifest.string() + " " +
                     (dir / "row2.manifest.json").string() +
                     " --tolerance 0 >/dev/null 2>&1")
                        .c_str()) != 0) {
        detail = "homometric spectra deviate through the CLI";
        return false;
    }

    // Usage errors and non-convergence exit with distinct nonzero codes.
    if (std::system((g_cli_path + " distfn --no-such-flag >/dev/null 2>&1").c_str()) ==
        0) {
        detail = "unknown flag was accepted";
        return false;
    }
    int status = std::system((g_cli_path +
                              " distfn --system tm --method volterra --grid 1024 "
                              "--max-iterations 1 --tolerance 1e-12 --out " +
                              (dir / "short").string() + " >/dev/null 2>&1")
                                 .c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 3) {
        detail = "non-convergence did not exit with code 3";
        return false;
    }

    // DIFFRACT_OUT_DIR provides the default output directory.
    fs::path envdir = dir / "envout";
    if (std::system(("DIFFRACT_OUT_DIR=" + envdir.string() + " " + g_cli_path +
                     " autocorr --system tm --exact --max-lag 4 --out env "
                     ">/dev/null 2>&1")
                        .c_str()) != 0 ||
        !fs::exists(envdir / "env.csv")) {
        detail = "DIFFRACT_OUT_DIR was not honoured";
        return false;
    }

    fs::remove_all(dir);
    detail = "replays bit-identical; compare, exit codes and DIFFRACT_OUT_DIR checked";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    std::vector<Check> checks = {
        {1, "tm exact autocorrelation", criterion_tm_exact},
        {2, "tm empirical vs exact oracle", criterion_tm_oracle},
        {3, "wiener inequality and decay", criterion_wiener},
        {4, "generalised morse closed form", criterion_gm},
        {5, "three-route tm distribution function", criterion_three_routes},
        {6, "functional relation residuals", criterion_functional_relations},
        {7, "rudin-shapiro flat spectrum", criterion_rs},
        {8, "period doubling bragg intensities", criterion_pd_bragg},
        {9, "homometry certification", criterion_homometry},
        {10, "bernoulli concentration", criterion_bernoulli},
        {11, "bernoullised rs flatness", criterion_bernoullisation},
        {12, "manifest reproducibility", criterion_reproducibility},
    };

    int failures = 0;
    for (const auto& check : checks) {
        std::string detail;
        bool ok = false;
        try {
            ok = check.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%2d] %s  %s (%s)\n", check.id, ok ? "PASS" : "FAIL",
                    check.name.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
