// diffract: autocorrelation and diffraction of one-dimensional weighted
// Dirac combs. Every run writes its datasets next to a JSON manifest that
// records the resolved configuration; `diffract replay` re-executes a
// manifest and reproduces the datasets byte for byte.

#include <chrono>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diffract/correlation.hpp"
#include "diffract/io.hpp"
#include "diffract/random_combs.hpp"
#include "diffract/spectral.hpp"
#include "diffract/substitution.hpp"
#include "diffract/version.hpp"

namespace fs = std::filesystem;
using namespace diffract;

namespace {

constexpr int kExitRuntimeError = 1;
constexpr int kExitNonConvergence = 3;
constexpr int kExitCompareFailed = 4;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

fs::path resolve_out(const std::string& base) {
    fs::path p(base);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("DIFFRACT_OUT_DIR")) return fs::path(dir) / p;
    return p;
}

Complex parse_complex(const std::string& text) {
    // "re" or "re,im"
    auto comma = text.find(',');
    if (comma == std::string::npos) return Complex(io::parse_double(text), 0.0);
    return Complex(io::parse_double(text.substr(0, comma)),
                   io::parse_double(text.substr(comma + 1)));
}

PeriodicComb parse_coefficients(const std::string& text) {
    PeriodicComb comb;
    std::string field;
    for (char c : text + ",") {
        if (c == ',') {
            if (field.empty()) throw std::runtime_error("empty coefficient");
            comb.coefficients.push_back(RatComplex(Rational::parse(field)));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    return comb;
}

// Accepts the compact "gm:k,l" system name and splits it into its parts.
void apply_system_shorthand(std::string& system, int& k, int& l) {
    if (!system.starts_with("gm:")) return;
    std::string params = system.substr(3);
    auto comma = params.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("expected gm:k,l, e.g. gm:2,2");
    k = static_cast<int>(io::parse_double(params.substr(0, comma)));
    l = static_cast<int>(io::parse_double(params.substr(comma + 1)));
    system = "gm";
}

PeriodicComb table_row(int row) {
    PeriodicComb comb;
    const std::vector<long long>& values =
        row == 1 ? std::vector<long long>{11, 25, 42, 45, 31, 14}
                 : std::vector<long long>{10, 21, 39, 46, 35, 17};
    for (long long c : values) comb.coefficients.push_back(RatComplex(Rational(c)));
    return comb;
}

struct RunContext {
    io::Manifest manifest;
    fs::path base;
    Timer timer;

    explicit RunContext(std::string command, const std::string& out) {
        manifest.command = std::move(command);
        manifest.library_version = kVersion;
        base = resolve_out(out);
    }

    void param(const std::string& key, const std::string& value) {
        manifest.parameters[key] = value;
    }
    void param(const std::string& key, long long value) {
        manifest.parameters[key] = std::to_string(value);
    }
    void param(const std::string& key, int value) {
        manifest.parameters[key] = std::to_string(value);
    }
    void param(const std::string& key, double value) {
        manifest.parameters[key] = io::format_double(value);
    }

    fs::path output(const std::string& suffix, const std::string& schema) {
        fs::path path = base;
        path += suffix;
        manifest.outputs.push_back({path.filename().string(), schema});
        return path;
    }

    void finish() {
        manifest.timings_ms["total"] = timer.elapsed_ms();
        fs::path path = base;
        path += ".manifest.json";
        io::write_manifest(path, manifest);
        std::cout << "wrote " << path.string() << "\n";
    }
};

// --- generate ---------------------------------------------------------------

struct GenerateOptions {
    std::string system;
    int k = 2, l = 2;
    long long half_length = 256;
    std::string h_plus = "1", h_minus = "0";
    std::string method = "closed";
    std::string out = "window";
};

int run_generate(GenerateOptions opt) {
    apply_system_shorthand(opt.system, opt.k, opt.l);
    RunContext ctx("generate", opt.out);
    ctx.param("system", opt.system);
    ctx.param("half-length", opt.half_length);
    ctx.param("method", opt.method);

    SymbolicWindow window;
    std::map<std::string, Complex> weights;
    if (opt.system == "tm" || opt.system == "rs" || opt.system == "gm") {
        Substitution rule = opt.system == "tm" ? thue_morse_rule()
                            : opt.system == "rs"
                                ? rudin_shapiro_rule()
                                : generalized_morse_rule(opt.k, opt.l);
        if (opt.system == "gm") {
            ctx.param("k", opt.k);
            ctx.param("l", opt.l);
        }
        if (opt.method == "closed") {
            window = opt.system == "tm"   ? tm_window(opt.half_length)
                     : opt.system == "rs" ? rs_window(opt.half_length)
                                          : gm_window(opt.k, opt.l, opt.half_length);
            weights = window.alphabet.size() == 2
                          ? std::map<std::string, Complex>{{"1", 1.0}, {"1b", -1.0}}
                          : rule.weight_map();
        } else {
            SymbolId left, right;
            if (opt.system == "rs") {
                left = rule.id_of("b");
                right = rule.id_of("a");
            } else {
                left = right = rule.id_of("1");
            }
            int generations = 0;
            SymbolicWindow grown;
            do {
                ++generations;
                grown = iterate_fixed_point(rule, left, right, 2, generations);
            } while (grown.hi() < opt.half_length || -grown.lo < opt.half_length);
            window = central_window(grown, opt.half_length);
            weights = rule.weight_map();
        }
    } else if (opt.system == "pd") {
        window = pd_window(opt.half_length);
        weights = {{"a", parse_complex(opt.h_plus)}, {"b", parse_complex(opt.h_minus)}};
        ctx.param("h-plus", opt.h_plus);
        ctx.param("h-minus", opt.h_minus);
        ctx.param("method", "rewrite");
    } else {
        throw std::runtime_error("unknown system '" + opt.system + "'");
    }

    io::write_window_csv(ctx.output(".csv", "window_csv"), window, weights);
    ctx.finish();
    return 0;
}

// --- autocorr ---------------------------------------------------------------

struct AutocorrOptions {
    std::string system;
    int k = 2, l = 2;
    long long max_lag = 32;
    bool exact = false;
    long long half_length = 1 << 16;
    std::string coeffs;
    std::string h_plus = "1", h_minus = "0";
    std::string out = "autocorr";
};

int run_autocorr(AutocorrOptions opt) {
    apply_system_shorthand(opt.system, opt.k, opt.l);
    RunContext ctx("autocorr", opt.out);
    ctx.param("system", opt.system);

    std::optional<CorrelationSeries> series;
    if (opt.system == "periodic") {
        // Lags cover one period; --max-lag plays no role here.
        if (opt.coeffs.empty())
            throw std::runtime_error("--coeffs is required for periodic combs");
        ctx.param("coeffs", opt.coeffs);
        series = periodic_autocorrelation(parse_coefficients(opt.coeffs));
    } else if (opt.exact) {
        ctx.param("max-lag", opt.max_lag);
        ctx.param("exact", "true");
        if (opt.system == "tm") {
            series = tm_exact_eta(opt.max_lag);
        } else if (opt.system == "rs") {
            series = rs_exact_eta_theta(opt.max_lag);
        } else if (opt.system == "gm") {
            ctx.param("k", opt.k);
            ctx.param("l", opt.l);
            series = gm_exact_eta(opt.k, opt.l, opt.max_lag);
        } else {
            throw std::runtime_error("exact recursions exist for tm, gm and rs only");
        }
    } else {
        ctx.param("max-lag", opt.max_lag);
        ctx.param("half-length", opt.half_length);
        WeightedComb comb;
        if (opt.system == "tm") {
            comb = tm_comb(opt.half_length);
        } else if (opt.system == "rs") {
            comb = rs_comb(opt.half_length);
        } else if (opt.system == "gm") {
            ctx.param("k", opt.k);
            ctx.param("l", opt.l);
            comb = gm_comb(opt.k, opt.l, opt.half_length);
        } else if (opt.system == "pd") {
            ctx.param("h-plus", opt.h_plus);
            ctx.param("h-minus", opt.h_minus);
            comb = pd_comb(parse_complex(opt.h_plus), parse_complex(opt.h_minus),
                           opt.half_length);
        } else {
            throw std::runtime_error("unknown system '" + opt.system + "'");
        }
        series = empirical_autocorrelation(comb, opt.max_lag);
    }

    series->validate();
    io::write_series_csv(ctx.output(".csv", "series_csv"), *series);
    if (series->has_exact_values())
        io::write_series_sidecar_json(
            ctx.output(".rational.json", "series_sidecar_json"), *series);
    ctx.finish();
    return 0;
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumOptions {
    std::string system;
    std::string coeffs;
    int table_row = 1;
    std::string h_plus = "1", h_minus = "0";
    int max_power = 6;
    long long kmax = 2;
    std::string out = "spectrum";
};

int run_spectrum(const SpectrumOptions& opt) {
    RunContext ctx("spectrum", opt.out);
    ctx.param("system", opt.system);

    PurePointSpectrum spectrum;
    if (opt.system == "periodic" || opt.system == "gm-pair") {
        PeriodicComb comb;
        if (opt.system == "gm-pair") {
            ctx.param("row", opt.table_row);
            comb = table_row(opt.table_row);
        } else {
            if (opt.coeffs.empty())
                throw std::runtime_error("--coeffs is required for periodic combs");
            ctx.param("coeffs", opt.coeffs);
            comb = parse_coefficients(opt.coeffs);
        }
        spectrum = periodic_diffraction(comb);
    } else if (opt.system == "pd") {
        ctx.param("h-plus", opt.h_plus);
        ctx.param("h-minus", opt.h_minus);
        ctx.param("max-power", opt.max_power);
        ctx.param("kmax", opt.kmax);
        Complex hp = parse_complex(opt.h_plus), hm = parse_complex(opt.h_minus);
        spectrum.module_description = "Z/2^r parametrisation, r <= " +
                                      std::to_string(opt.max_power);
        for (long long m = -opt.kmax; m <= opt.kmax; ++m)
            spectrum.peaks.push_back(pd_bragg_intensity(hp, hm, m, 0));
        for (int r = 1; r <= opt.max_power; ++r)
            for (long long m = -(opt.kmax << r) + 1; m <= (opt.kmax << r); m += 2)
                spectrum.peaks.push_back(pd_bragg_intensity(hp, hm, m, r));
    } else {
        throw std::runtime_error("spectrum supports systems: periodic, gm-pair, pd");
    }

    io::write_spectrum_csv(ctx.output(".csv", "spectrum_csv"), spectrum);
    ctx.finish();
    return 0;
}

// --- distfn -----------------------------------------------------------------

struct DistfnOptions {
    std::string system = "tm";
    int k = 2, l = 2;
    std::string method = "volterra";
    long long grid = 4096;
    long long truncation = 1 << 16;
    int factors = 0;  // 0 = auto
    double tolerance = 1e-8;
    int max_iterations = 64;
    std::string out = "distfn";
};

int run_distfn(DistfnOptions opt) {
    apply_system_shorthand(opt.system, opt.k, opt.l);
    RunContext ctx("distfn", opt.out);
    ctx.param("system", opt.system);
    ctx.param("method", opt.method);
    ctx.param("grid", opt.grid);

    int base = 0;
    if (opt.system == "gm") {
        ctx.param("k", opt.k);
        ctx.param("l", opt.l);
        base = opt.k + opt.l;
    } else if (opt.system == "tm") {
        base = 2;
    }

    DistributionFunction F;
    if (opt.method == "fourier") {
        ctx.param("truncation", opt.truncation);
        CorrelationSeries series =
            opt.system == "tm"   ? tm_exact_eta(opt.truncation)
            : opt.system == "gm" ? gm_exact_eta(opt.k, opt.l, opt.truncation)
            : opt.system == "rs"
                ? rs_exact_eta_theta(opt.truncation)
                : throw std::runtime_error("fourier supports tm, gm and rs");
        F = fourier_distribution(series, opt.truncation, opt.grid);
    } else if (opt.method == "volterra") {
        if (opt.system != "tm")
            throw std::runtime_error(
                "the Volterra iteration is only established for the TM system");
        ctx.param("tolerance", opt.tolerance);
        ctx.param("max-iterations", opt.max_iterations);
        F = volterra_distribution(opt.grid, opt.max_iterations, opt.tolerance);
    } else if (opt.method == "riesz") {
        if (base == 0)
            throw std::runtime_error("riesz supports the tm and gm systems");
        int factors = opt.factors;
        if (factors == 0) {
            factors = 1;
            long long power = base;
            while (power * base <= (1 << 14)) {
                power *= base;
                ++factors;
            }
        }
        ctx.param("factors", factors);
        F = riesz_partial_distribution(RieszProfile::make(opt.k, opt.l), factors,
                                       opt.grid);
    } else {
        throw std::runtime_error("unknown method '" + opt.method + "'");
    }

    io::write_distribution_csv(ctx.output(".csv", "distfn_csv"), F);
    io::write_distribution_meta_json(ctx.output(".meta.json", "distfn_meta_json"), F);
    ctx.finish();
    if (!F.converged) {
        std::cerr << "did not converge: residual " << F.params.at("residual")
                  << " after " << F.params.at("iterations") << " iterations\n";
        return kExitNonConvergence;
    }
    return 0;
}

// --- homometry ----------------------------------------------------------------

struct HomometryOptions {
    std::string table = "gm-pair";
    int max_order = 6;
    long long lag_bound = 5;
    std::string out = "homometry";
};

int run_homometry(const HomometryOptions& opt) {
    RunContext ctx("homometry", opt.out);
    ctx.param("table", opt.table);
    ctx.param("max-order", opt.max_order);
    ctx.param("lag-bound", opt.lag_bound);
    if (opt.table != "gm-pair")
        throw std::runtime_error("only the built-in table 'gm-pair' is available");

    HomometryReport report =
        compare_correlations(table_row(1), table_row(2), opt.max_order, opt.lag_bound);
    for (std::size_t i = 0; i < report.orders_checked.size(); ++i)
        std::cout << "order " << report.orders_checked[i] << ": "
                  << (report.order_equal[i] ? "equal" : "differs") << "\n";
    if (report.witness_lags) {
        std::cout << "witness at order " << report.witness_order << ", lags (";
        for (std::size_t i = 0; i < report.witness_lags->size(); ++i)
            std::cout << (i ? "," : "") << (*report.witness_lags)[i];
        std::cout << "): " << report.witness_a.re.to_string() << " vs "
                  << report.witness_b.re.to_string() << "\n";
    }

    io::write_homometry_report_json(ctx.output(".json", "homometry_json"), report);
    ctx.finish();
    return 0;
}

// --- random -------------------------------------------------------------------

struct RandomOptions {
    std::string mode = "bernoulli";
    double p = 0.5;
    long long half_length = 1 << 16;
    std::uint64_t seed = 1;
    long long trials = 1;
    long long max_lag = 8;
    std::string base = "rs";
    std::string h_plus = "1", h_minus = "-1";
    std::string out = "random";
};

int run_random(const RandomOptions& opt) {
    RunContext ctx("random", opt.out);
    ctx.param("mode", opt.mode);
    ctx.param("half-length", opt.half_length);
    ctx.param("trials", opt.trials);
    ctx.param("max-lag", opt.max_lag);
    ctx.manifest.seed = opt.seed;

    RandomCombSpec spec;
    spec.half_length = opt.half_length;
    spec.seed = opt.seed;
    std::optional<CorrelationSeries> predicted;

    if (opt.mode == "bernoulli") {
        ctx.param("p", opt.p);
        spec.p = opt.p;
        predicted = predicted_bernoulli_autocorrelation(opt.p, opt.max_lag);
    } else if (opt.mode == "weighted") {
        ctx.param("h-plus", opt.h_plus);
        ctx.param("h-minus", opt.h_minus);
        spec.p = 0.5;
        spec.h_plus = parse_complex(opt.h_plus);
        spec.h_minus = parse_complex(opt.h_minus);
    } else if (opt.mode == "bernoullise") {
        ctx.param("p", opt.p);
        ctx.param("base", opt.base);
        spec.p = opt.p;
        CorrelationSeries base_eta =
            opt.base == "rs"   ? rs_exact_eta_theta(opt.max_lag)
            : opt.base == "tm" ? tm_exact_eta(opt.max_lag)
                               : throw std::runtime_error(
                                     "Bernoullisation bases: rs, tm");
        spec.base = opt.base == "rs" ? rs_comb(opt.half_length)
                                     : tm_comb(opt.half_length);
        predicted = predicted_bernoullisation_autocorrelation(base_eta, opt.p);
    } else {
        throw std::runtime_error("unknown mode '" + opt.mode + "'");
    }

    MonteCarloReport report = monte_carlo_eta(
        spec, opt.trials, opt.max_lag, predicted ? &*predicted : nullptr);
    io::write_mc_report_json(ctx.output(".json", "mc_report_json"), report);
    ctx.finish();
    return 0;
}

// --- compare / replay -----------------------------------------------------------

int run_compare(const std::string& manifest_a, const std::string& manifest_b,
                double tolerance) {
    io::CompareReport report =
        io::compare_manifest_datasets(resolve_out(manifest_a), resolve_out(manifest_b));
    for (const auto& column : report.columns) {
        std::cout << column.file_a << " vs " << column.file_b << " ["
                  << column.column << "]: ";
        if (column.text_mismatch)
            std::cout << "text mismatch\n";
        else
            std::cout << "max |dev| = " << io::format_double(column.max_abs_deviation)
                      << "\n";
    }
    bool pass = report.pass(tolerance);
    std::cout << (pass ? "PASS" : "FAIL") << " (tolerance "
              << io::format_double(tolerance) << ")\n";
    return pass ? 0 : kExitCompareFailed;
}

int run_argv(const std::vector<std::string>& args);

int run_replay(const std::string& manifest_path, const std::string& out) {
    io::Manifest manifest = io::read_manifest(resolve_out(manifest_path));
    std::vector<std::string> args{manifest.command};
    for (const auto& [key, value] : manifest.parameters) {
        if (value == "true") {
            args.push_back("--" + key);
        } else {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    if (manifest.seed) {
        args.push_back("--seed");
        args.push_back(std::to_string(*manifest.seed));
    }
    args.push_back("--out");
    args.push_back(out);
    return run_argv(args);
}

int run_argv(const std::vector<std::string>& args) {
    CLI::App app{"autocorrelation and diffraction of 1d weighted Dirac combs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenerateOptions gen;
    CLI::App* generate = app.add_subcommand("generate", "emit a sequence window");
    generate->add_option("--system", gen.system, "tm | pd | rs | gm")->required();
    generate->add_option("--k", gen.k, "gm parameter k");
    generate->add_option("--l", gen.l, "gm parameter l");
    generate->add_option("--half-length", gen.half_length, "window half-length N");
    generate->add_option("--h-plus", gen.h_plus, "pd weight of letter a");
    generate->add_option("--h-minus", gen.h_minus, "pd weight of letter b");
    generate->add_option("--method", gen.method, "closed | rewrite")
        ->check(CLI::IsMember({"closed", "rewrite"}));
    generate->add_option("--out", gen.out, "output base path");

    AutocorrOptions ac;
    CLI::App* autocorr = app.add_subcommand("autocorr", "autocorrelation coefficients");
    autocorr->add_option("--system", ac.system, "tm | rs | gm | pd | periodic")
        ->required();
    autocorr->add_option("--k", ac.k, "gm parameter k");
    autocorr->add_option("--l", ac.l, "gm parameter l");
    autocorr->add_option("--max-lag", ac.max_lag, "largest lag M");
    autocorr->add_flag("--exact", ac.exact, "use the exact recursions");
    autocorr->add_option("--half-length", ac.half_length,
                         "window half-length for the empirical estimator");
    autocorr->add_option("--coeffs", ac.coeffs, "periodic coefficients, e.g. 1,2/3,4");
    autocorr->add_option("--h-plus", ac.h_plus, "pd weight of letter a");
    autocorr->add_option("--h-minus", ac.h_minus, "pd weight of letter b");
    autocorr->add_option("--out", ac.out, "output base path");

    SpectrumOptions sp;
    CLI::App* spectrum = app.add_subcommand("spectrum", "pure point diffraction");
    spectrum->add_option("--system", sp.system, "periodic | gm-pair | pd")->required();
    spectrum->add_option("--coeffs", sp.coeffs, "periodic coefficients");
    spectrum->add_option("--row", sp.table_row, "gm-pair row (1 or 2)")
        ->check(CLI::Range(1, 2));
    spectrum->add_option("--h-plus", sp.h_plus, "pd weight of letter a");
    spectrum->add_option("--h-minus", sp.h_minus, "pd weight of letter b");
    spectrum->add_option("--max-power", sp.max_power, "largest r in k = m/2^r");
    spectrum->add_option("--kmax", sp.kmax, "frequency range |k| <= kmax");
    spectrum->add_option("--out", sp.out, "output base path");

    DistfnOptions df;
    CLI::App* distfn = app.add_subcommand("distfn", "distribution function of the "
                                                    "diffraction measure");
    distfn->add_option("--system", df.system, "tm | gm | rs");
    distfn->add_option("--k", df.k, "gm parameter k");
    distfn->add_option("--l", df.l, "gm parameter l");
    distfn->add_option("--method", df.method, "fourier | volterra | riesz")
        ->check(CLI::IsMember({"fourier", "volterra", "riesz"}));
    distfn->add_option("--grid", df.grid, "display grid size G");
    distfn->add_option("--truncation", df.truncation, "Fourier truncation M");
    distfn->add_option("--factors", df.factors, "Riesz factor count (0 = auto)");
    distfn->add_option("--tolerance", df.tolerance, "Volterra sup-norm tolerance");
    distfn->add_option("--max-iterations", df.max_iterations, "Volterra cap");
    distfn->add_option("--out", df.out, "output base path");

    HomometryOptions hm;
    CLI::App* homometry = app.add_subcommand("homometry",
                                             "correlations of the homometric pair");
    homometry->add_option("--table", hm.table, "built-in table name");
    homometry->add_option("--max-order", hm.max_order, "highest correlation order")
        ->check(CLI::Range(2, 8));
    homometry->add_option("--lag-bound", hm.lag_bound, "lags run over [0, bound]");
    homometry->add_option("--out", hm.out, "output base path");

    RandomOptions rnd;
    CLI::App* random = app.add_subcommand("random", "seeded random combs and "
                                                    "Monte Carlo verification");
    random->add_option("--mode", rnd.mode, "bernoulli | weighted | bernoullise")
        ->check(CLI::IsMember({"bernoulli", "weighted", "bernoullise"}));
    random->add_option("--p", rnd.p, "probability of keeping +1");
    random->add_option("--half-length", rnd.half_length, "comb half-length N");
    random->add_option("--seed", rnd.seed, "stream seed");
    random->add_option("--trials", rnd.trials, "number of Monte Carlo trials");
    random->add_option("--max-lag", rnd.max_lag, "largest lag M");
    random->add_option("--base", rnd.base, "Bernoullisation base: rs | tm");
    random->add_option("--h-plus", rnd.h_plus, "weighted-coin value h+");
    random->add_option("--h-minus", rnd.h_minus, "weighted-coin value h-");
    random->add_option("--out", rnd.out, "output base path");

    std::string cmp_a, cmp_b;
    double cmp_tolerance = 0.0;
    CLI::App* compare = app.add_subcommand("compare", "compare two run manifests");
    compare->add_option("manifest_a", cmp_a)->required();
    compare->add_option("manifest_b", cmp_b)->required();
    compare->add_option("--tolerance", cmp_tolerance, "max allowed |deviation|");

    std::string replay_manifest, replay_out = "replay";
    CLI::App* replay = app.add_subcommand("replay", "re-run a manifest");
    replay->add_option("manifest", replay_manifest)->required();
    replay->add_option("--out", replay_out, "output base path for the re-run");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(generate)) return run_generate(gen);
        if (app.got_subcommand(autocorr)) return run_autocorr(ac);
        if (app.got_subcommand(spectrum)) return run_spectrum(sp);
        if (app.got_subcommand(distfn)) return run_distfn(df);
        if (app.got_subcommand(homometry)) return run_homometry(hm);
        if (app.got_subcommand(random)) return run_random(rnd);
        if (app.got_subcommand(compare)) return run_compare(cmp_a, cmp_b, cmp_tolerance);
        if (app.got_subcommand(replay)) return run_replay(replay_manifest, replay_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_argv(args);
}
