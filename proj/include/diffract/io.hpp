#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffract/correlation.hpp"
#include "diffract/random_combs.hpp"
#include "diffract/spectral.hpp"
#include "diffract/substitution.hpp"

namespace diffract::io {

// Doubles are serialised with 17 significant digits so that re-parsing
// restores the bit pattern; exact values travel as "p/q" strings.
std::string format_double(double x);
double parse_double(const std::string& s);

// Writes via a temporary file in the target directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// --- symbolic windows: n,symbol,re(w),im(w) ---------------------------------

void write_window_csv(const std::filesystem::path& path,
                      const SymbolicWindow& window,
                      const std::map<std::string, Complex>& weights);

struct WindowData {
    long long lo = 0;
    std::vector<std::string> symbols;
    std::vector<Complex> weights;
};
WindowData read_window_csv(const std::filesystem::path& path);
bool same_window(const WindowData& data, const SymbolicWindow& window,
                 const std::map<std::string, Complex>& weights);

// --- correlation series: m,re_eta,im_eta[,re_theta,im_theta],kind -----------

void write_series_csv(const std::filesystem::path& path,
                      const CorrelationSeries& series);
// Exact rationals, one record per lag; only meaningful for exact series.
void write_series_sidecar_json(const std::filesystem::path& path,
                               const CorrelationSeries& series);
CorrelationSeries read_series_csv(const std::filesystem::path& path);
CorrelationSeries read_series_with_sidecar(const std::filesystem::path& csv_path,
                                           const std::filesystem::path& sidecar_path);

// --- distribution functions: x,F ---------------------------------------------

void write_distribution_csv(const std::filesystem::path& path,
                            const DistributionFunction& F);
void write_distribution_meta_json(const std::filesystem::path& path,
                                  const DistributionFunction& F);
DistributionFunction read_distribution_csv(const std::filesystem::path& path);

// --- pure point spectra: k_num,k_den,intensity -------------------------------

void write_spectrum_csv(const std::filesystem::path& path,
                        const PurePointSpectrum& spectrum);
PurePointSpectrum read_spectrum_csv(const std::filesystem::path& path);

// --- Monte Carlo reports ------------------------------------------------------

void write_mc_report_json(const std::filesystem::path& path,
                          const MonteCarloReport& report);
MonteCarloReport read_mc_report_json(const std::filesystem::path& path);

// --- homometry reports --------------------------------------------------------

void write_homometry_report_json(const std::filesystem::path& path,
                                 const HomometryReport& report);
HomometryReport read_homometry_report_json(const std::filesystem::path& path);

// --- run manifests --------------------------------------------------------------

struct ManifestOutput {
    std::string path;    // relative to the manifest's directory
    std::string schema;  // window_csv | series_csv | series_sidecar_json | ...
};

struct Manifest {
    int schema = 1;
    std::string command;
    std::map<std::string, std::string> parameters;
    std::optional<std::uint64_t> seed;
    std::vector<ManifestOutput> outputs;
    std::string library_version;
    std::map<std::string, double> timings_ms;
};

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

// --- dataset comparison ----------------------------------------------------------

struct ColumnDeviation {
    std::string file_a, file_b;
    std::string column;
    double max_abs_deviation = 0.0;
    bool text_mismatch = false;
};

struct CompareReport {
    std::vector<ColumnDeviation> columns;
    double max_abs_deviation = 0.0;
    bool text_mismatch = false;

    bool pass(double tolerance) const {
        return !text_mismatch && max_abs_deviation <= tolerance;
    }
};

// Pairs the outputs of two manifests (same order); schema mismatch throws.
CompareReport compare_manifest_datasets(const std::filesystem::path& manifest_a,
                                        const std::filesystem::path& manifest_b);

}  // namespace diffract::io
