#pragma once

#include <cstdint>
#include <optional>

#include "diffract/correlation.hpp"
#include "diffract/spectral.hpp"

namespace diffract {

// Counter-based generator: the draw for (seed, trial, index) is a pure
// function of those three values, so trials can run in parallel and any
// index can be sampled without generating its predecessors.
struct CounterRng {
    std::uint64_t seed = 0;

    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t word(std::uint64_t trial, long long n) const;
    double uniform01(std::uint64_t trial, long long n) const;  // in [0, 1)
};

struct RandomCombSpec {
    double p = 0.5;
    Complex h_plus{1.0, 0.0};
    Complex h_minus{-1.0, 0.0};
    long long half_length = 0;
    std::uint64_t seed = 0;
    std::optional<WeightedComb> base;  // set => Bernoullisation mode

    void validate() const;
};

// w(n) = h_plus with probability p, h_minus otherwise, i.i.d. over n.
WeightedComb sample_bernoulli_comb(const RandomCombSpec& spec,
                                   std::uint64_t trial = 0);

// w(n) = base(n) * W(n) with W(n) = +1 (probability p) or -1; the base comb
// must carry +-1 weights.
WeightedComb sample_bernoullisation(const RandomCombSpec& spec,
                                    std::uint64_t trial = 0);

// Almost-sure predictions.
CorrelationSeries predicted_bernoulli_autocorrelation(double p, long long max_lag);

struct PredictedSpectrum {
    PurePointSpectrum point_part;  // one representative peak; uniform over Z
    double ac_density = 0.0;       // multiple of Lebesgue measure
    std::string note;
};
PredictedSpectrum predicted_mixed_diffraction(double p);
PredictedSpectrum predicted_mixed_diffraction(Complex h_plus, Complex h_minus);

CorrelationSeries predicted_bernoullisation_autocorrelation(
    const CorrelationSeries& base_eta, double p);

// Seeded Monte Carlo verification of the almost-sure statements. Trial t
// draws from the stream (seed, t); per-trial results are stored by index, so
// the aggregate is independent of scheduling.
struct MonteCarloReport {
    struct LagStats {
        long long m = 0;
        double mean = 0.0;
        double standard_error = 0.0;
        std::optional<double> predicted;
        long long trials_within_band = 0;
    };
    long long trials = 0;
    long long max_lag = 0;
    long long half_length = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    bool bernoullisation = false;
    double band = 0.0;  // 4 / sqrt(2N+1)
    std::vector<LagStats> lags;

    bool all_within_band(double required_fraction) const;
};

MonteCarloReport monte_carlo_eta(const RandomCombSpec& spec, long long trials,
                                 long long max_lag,
                                 const CorrelationSeries* predicted = nullptr);

}  // namespace diffract
