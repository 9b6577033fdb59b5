#include "diffract/random_combs.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace diffract {

std::uint64_t CounterRng::mix(std::uint64_t z) {
    // splitmix64 finaliser
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::word(std::uint64_t trial, long long n) const {
    std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ULL);
    h = mix(h ^ (trial * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    h = mix(h ^ (static_cast<std::uint64_t>(n) * 0xaf251af3b0f025b5ULL));
    return h;
}

double CounterRng::uniform01(std::uint64_t trial, long long n) const {
    return static_cast<double>(word(trial, n) >> 11) * 0x1.0p-53;
}

void RandomCombSpec::validate() const {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability must lie in [0, 1]");
    if (half_length < 1) throw std::invalid_argument("half_length must be >= 1");
    if (base) {
        if (base->half_length() < half_length)
            throw std::invalid_argument("base comb is shorter than the request");
        for (const Complex& w : base->weights)
            if (w.imag() != 0.0 || std::abs(w.real()) != 1.0)
                throw std::invalid_argument("Bernoullisation needs a +-1 base comb");
    }
}

WeightedComb sample_bernoulli_comb(const RandomCombSpec& spec, std::uint64_t trial) {
    spec.validate();
    if (spec.base)
        throw std::invalid_argument("spec has a base comb; use sample_bernoullisation");
    CounterRng rng{spec.seed};
    WeightedComb comb;
    comb.lo = -spec.half_length;
    comb.weights.resize(static_cast<std::size_t>(2 * spec.half_length + 1));
    for (long long n = -spec.half_length; n <= spec.half_length; ++n)
        comb.weights[static_cast<std::size_t>(n + spec.half_length)] =
            rng.uniform01(trial, n) < spec.p ? spec.h_plus : spec.h_minus;
    comb.provenance = "bernoulli p=" + std::to_string(spec.p) +
                      " seed=" + std::to_string(spec.seed) +
                      " trial=" + std::to_string(trial);
    return comb;
}

WeightedComb sample_bernoullisation(const RandomCombSpec& spec, std::uint64_t trial) {
    spec.validate();
    if (!spec.base)
        throw std::invalid_argument("Bernoullisation needs a base comb");
    CounterRng rng{spec.seed};
    WeightedComb comb;
    comb.lo = -spec.half_length;
    comb.weights.resize(static_cast<std::size_t>(2 * spec.half_length + 1));
    for (long long n = -spec.half_length; n <= spec.half_length; ++n) {
        double flip = rng.uniform01(trial, n) < spec.p ? 1.0 : -1.0;
        comb.weights[static_cast<std::size_t>(n + spec.half_length)] =
            spec.base->at(n).real() * flip;
    }
    comb.provenance = "bernoullisation p=" + std::to_string(spec.p) +
                      " seed=" + std::to_string(spec.seed) +
                      " trial=" + std::to_string(trial);
    return comb;
}

CorrelationSeries predicted_bernoulli_autocorrelation(double p, long long max_lag) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability must lie in [0, 1]");
    if (max_lag < 0) throw std::invalid_argument("negative max_lag");
    const double off = (2.0 * p - 1.0) * (2.0 * p - 1.0);
    std::vector<Complex> eta(static_cast<std::size_t>(2 * max_lag + 1), Complex(off));
    eta[static_cast<std::size_t>(max_lag)] = 1.0;
    return CorrelationSeries::exact_double(std::move(eta));
}

PredictedSpectrum predicted_mixed_diffraction(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability must lie in [0, 1]");
    PredictedSpectrum s;
    Peak peak;
    peak.intensity = (2.0 * p - 1.0) * (2.0 * p - 1.0);
    s.point_part.peaks.push_back(peak);
    s.point_part.module_description = "uniform intensity at every integer";
    s.ac_density = 4.0 * p * (1.0 - p);
    s.note = "Bernoulli comb, parameter p";
    return s;
}

PredictedSpectrum predicted_mixed_diffraction(Complex h_plus, Complex h_minus) {
    PredictedSpectrum s;
    Peak peak;
    peak.intensity = std::norm((h_plus + h_minus) / 2.0);
    s.point_part.peaks.push_back(peak);
    s.point_part.module_description = "uniform intensity at every integer";
    s.ac_density = std::norm((h_plus - h_minus) / 2.0);
    s.note = "fair coin with weights h+, h-";
    return s;
}

CorrelationSeries predicted_bernoullisation_autocorrelation(
    const CorrelationSeries& base_eta, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability must lie in [0, 1]");
    if (std::abs(base_eta.eta(0) - Complex(1.0)) > 1e-12)
        throw std::invalid_argument("base series must have eta(0) = 1");
    const double damp = (2.0 * p - 1.0) * (2.0 * p - 1.0);
    const long long M = base_eta.max_lag();
    std::vector<Complex> eta(static_cast<std::size_t>(2 * M + 1));
    for (long long m = -M; m <= M; ++m)
        eta[static_cast<std::size_t>(m + M)] =
            m == 0 ? Complex(1.0) : damp * base_eta.eta(m);
    return CorrelationSeries::exact_double(std::move(eta));
}

bool MonteCarloReport::all_within_band(double required_fraction) const {
    for (const auto& stat : lags) {
        if (stat.m == 0 || !stat.predicted) continue;
        double fraction = static_cast<double>(stat.trials_within_band) /
                          static_cast<double>(trials);
        if (fraction < required_fraction) return false;
    }
    return true;
}

MonteCarloReport monte_carlo_eta(const RandomCombSpec& spec, long long trials,
                                 long long max_lag,
                                 const CorrelationSeries* predicted) {
    spec.validate();
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (max_lag < 0 || max_lag > spec.half_length)
        throw std::invalid_argument("max_lag must lie in [0, half_length]");
    if (predicted && predicted->max_lag() < max_lag)
        throw std::invalid_argument("predicted series is too short");

    const std::size_t lag_count = static_cast<std::size_t>(max_lag + 1);
    std::vector<std::vector<Complex>> per_trial(
        static_cast<std::size_t>(trials), std::vector<Complex>(lag_count));

    auto run_trial = [&](long long t) {
        WeightedComb comb = spec.base
                                ? sample_bernoullisation(spec, static_cast<std::uint64_t>(t))
                                : sample_bernoulli_comb(spec, static_cast<std::uint64_t>(t));
        CorrelationSeries series = empirical_autocorrelation(comb, max_lag);
        for (long long m = 0; m <= max_lag; ++m)
            per_trial[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] =
                series.eta(m);
    };

    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(trials));
    if (workers <= 1) {
        for (long long t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<long long> cursor{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                long long t;
                while ((t = cursor.fetch_add(1)) < trials) run_trial(t);
            });
        for (auto& th : pool) th.join();
    }

    MonteCarloReport report;
    report.trials = trials;
    report.max_lag = max_lag;
    report.half_length = spec.half_length;
    report.p = spec.p;
    report.seed = spec.seed;
    report.bernoullisation = spec.base.has_value();
    report.band = 4.0 / std::sqrt(static_cast<double>(2 * spec.half_length + 1));
    for (long long m = 0; m <= max_lag; ++m) {
        MonteCarloReport::LagStats stat;
        stat.m = m;
        Complex sum = 0.0;
        for (const auto& row : per_trial) sum += row[static_cast<std::size_t>(m)];
        Complex mean = sum / static_cast<double>(trials);
        stat.mean = mean.real();
        double var = 0.0;
        for (const auto& row : per_trial)
            var += std::norm(row[static_cast<std::size_t>(m)] - mean);
        if (trials > 1)
            stat.standard_error =
                std::sqrt(var / static_cast<double>(trials - 1)) /
                std::sqrt(static_cast<double>(trials));
        if (predicted) {
            Complex pred = predicted->eta(m);
            stat.predicted = pred.real();
            for (const auto& row : per_trial)
                if (std::abs(row[static_cast<std::size_t>(m)] - pred) <= report.band)
                    ++stat.trials_within_band;
        }
        report.lags.push_back(stat);
    }
    return report;
}

}  // namespace diffract
