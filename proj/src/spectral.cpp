#include "diffract/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace diffract {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(2 pi t / G) for t = 0..G-1 with exact zeros at t = 0 and t = G/2,
// so that grid sums hit F(0) = 0 and F(1) = eta(0) exactly.
std::vector<double> sine_table(long long G) {
    std::vector<double> table(static_cast<std::size_t>(G));
    if (G % 2 == 0) {
        table[0] = 0.0;
        table[static_cast<std::size_t>(G / 2)] = 0.0;
        for (long long t = 1; t < G / 2; ++t) {
            double s = std::sin(2.0 * kPi * static_cast<double>(t) / static_cast<double>(G));
            table[static_cast<std::size_t>(t)] = s;
            table[static_cast<std::size_t>(G - t)] = -s;
        }
    } else {
        table[0] = 0.0;
        for (long long t = 1; t < G; ++t)
            table[static_cast<std::size_t>(t)] =
                std::sin(2.0 * kPi * static_cast<double>(t) / static_cast<double>(G));
    }
    return table;
}

std::vector<double> values_to_increments(const std::vector<double>& values) {
    std::vector<double> inc(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) inc[i] = values[i + 1] - values[i];
    return inc;
}

}  // namespace

bool DistributionFunction::increments_positive() const {
    return std::all_of(increments.begin(), increments.end(),
                       [](double m) { return m > 0.0; });
}

bool DistributionFunction::nondecreasing(double tol) const {
    return std::all_of(increments.begin(), increments.end(),
                       [tol](double m) { return m >= -tol; });
}

DistributionFunction DistributionFunction::from_increments(
    long long grid, std::vector<double> increments, std::string method) {
    DistributionFunction F;
    F.grid = grid;
    F.method = std::move(method);
    F.increments = std::move(increments);
    F.values.resize(F.increments.size() + 1);
    F.values[0] = 0.0;
    for (std::size_t i = 0; i < F.increments.size(); ++i)
        F.values[i + 1] = F.values[i] + F.increments[i];
    return F;
}

double sup_norm_diff(const DistributionFunction& a, const DistributionFunction& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("distribution functions live on different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

DistributionFunction fourier_distribution(const CorrelationSeries& series,
                                          long long truncation, long long grid) {
    if (!series.is_real())
        throw std::invalid_argument(
            "fourier_distribution expects a real series (signed weights)");
    if (truncation < 0 || truncation > series.max_lag())
        throw std::invalid_argument("truncation exceeds the stored lags");
    if (grid < 1) throw std::invalid_argument("grid must be >= 1");

    const long long G = grid;
    const double eta0 = series.eta(0).real();

    // sin(2 pi m x_i) depends on m only through (m i) mod G, so the series
    // folds into at most G distinct terms before the grid evaluation.
    std::vector<double> folded(static_cast<std::size_t>(G), 0.0);
    for (long long m = 1; m <= truncation; ++m)
        folded[static_cast<std::size_t>(m % G)] +=
            series.eta(m).real() / (static_cast<double>(m) * kPi);

    std::vector<double> table = sine_table(G);
    std::vector<double> values(static_cast<std::size_t>(G + 1));
    for (long long i = 0; i <= G; ++i) {
        double acc = 0.0;
        for (long long j = 0; j < G; ++j)
            acc += folded[static_cast<std::size_t>(j)] *
                   table[static_cast<std::size_t>((j * i) % G)];
        values[static_cast<std::size_t>(i)] =
            eta0 * (static_cast<double>(i) / static_cast<double>(G)) + acc;
    }

    DistributionFunction F;
    F.grid = G;
    F.method = "fourier";
    F.values = std::move(values);
    F.increments = values_to_increments(F.values);
    F.params["truncation"] = static_cast<double>(truncation);
    return F;
}

DistributionFunction volterra_distribution(long long grid, int max_iterations,
                                           double tolerance) {
    if (grid < 1024 || (grid & (grid - 1)) != 0)
        throw std::invalid_argument("grid must be a power of two >= 1024");
    if (max_iterations < 0) throw std::invalid_argument("negative iteration count");
    if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");

    const long long G = grid;
    const std::size_t g = static_cast<std::size_t>(G);

    // (1 - cos(pi y)) averaged over each cell of [0, 2] (trapezoid).
    std::vector<double> cosv(2 * g + 1);
    for (std::size_t c = 0; c <= 2 * g; ++c)
        cosv[c] = std::cos(kPi * static_cast<double>(c) / static_cast<double>(G));
    std::vector<double> weight(2 * g);
    for (std::size_t c = 0; c < 2 * g; ++c)
        weight[c] = 1.0 - 0.5 * (cosv[c] + cosv[c + 1]);

    std::vector<double> mass(g, 1.0 / static_cast<double>(G));  // dF_0
    std::vector<double> prev_values(g + 1);
    for (std::size_t i = 0; i <= g; ++i)
        prev_values[i] = static_cast<double>(i) / static_cast<double>(G);

    double residual = 0.0;
    int iter = 0;
    bool converged = max_iterations == 0;
    std::vector<double> next(g);
    while (iter < max_iterations) {
        // New cell i collects cells 2i and 2i+1 of the measure on [0, 2];
        // the mass of cell G + c equals the mass of cell c.
        for (std::size_t i = 0; i < g; ++i) {
            std::size_t c0 = 2 * i, c1 = 2 * i + 1;
            double m0 = mass[c0 < g ? c0 : c0 - g];
            double m1 = mass[c1 < g ? c1 : c1 - g];
            next[i] = 0.5 * (m0 * weight[c0] + m1 * weight[c1]);
        }
        mass.swap(next);
        ++iter;

        double acc = 0.0;
        residual = 0.0;
        std::vector<double> values(g + 1);
        values[0] = 0.0;
        for (std::size_t i = 0; i < g; ++i) {
            acc += mass[i];
            values[i + 1] = acc;
            residual = std::max(residual, std::abs(acc - prev_values[i + 1]));
        }
        prev_values = std::move(values);
        if (residual <= tolerance) {
            converged = true;
            break;
        }
    }

    DistributionFunction F = DistributionFunction::from_increments(G, std::move(mass),
                                                                   "volterra");
    F.converged = converged;
    F.params["tolerance"] = tolerance;
    F.params["max_iterations"] = static_cast<double>(max_iterations);
    F.params["iterations"] = static_cast<double>(iter);
    F.params["residual"] = residual;
    return F;
}

RieszProfile RieszProfile::make(int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("profile parameters must be >= 1");
    RieszProfile p;
    p.k = k;
    p.l = l;
    for (long long r = 1; r < k + l; ++r) p.alpha.push_back(gm_alpha(k, l, r));
    // The factor must be a nonnegative density of mean one.
    for (int i = 0; i <= 4096; ++i) {
        if (p.theta(static_cast<double>(i) / 4096.0) < -1e-9)
            throw std::logic_error("Riesz factor is negative");
    }
    return p;
}

double RieszProfile::theta(double x) const {
    double acc = 1.0;
    const double scale = 2.0 / static_cast<double>(k + l);
    for (std::size_t r = 1; r <= alpha.size(); ++r)
        acc += scale * static_cast<double>(alpha[r - 1]) *
               std::cos(2.0 * kPi * static_cast<double>(r) * x);
    return acc;
}

DistributionFunction riesz_partial_distribution(const RieszProfile& profile,
                                                int factors, long long grid) {
    if (factors < 1) throw std::invalid_argument("need at least one factor");
    if (grid < 1) throw std::invalid_argument("grid must be >= 1");
    const long long b = profile.k + profile.l;

    // Fine grid step <= 1/(8 b^n), as an even number of Simpson subintervals
    // per display cell.
    double fastest = std::pow(static_cast<double>(b), factors);
    constexpr double kMaxFineNodes = 1 << 24;
    double required = 8.0 * fastest;
    if (required > kMaxFineNodes)
        throw std::invalid_argument(
            "Riesz quadrature needs a fine grid of about " +
            std::to_string(static_cast<long long>(required)) +
            " points, above the cap of " +
            std::to_string(static_cast<long long>(kMaxFineNodes)) +
            "; lower the factor count");
    long long sub = 2 * ((static_cast<long long>(required) + 2 * grid - 1) / (2 * grid));
    if (sub < 2) sub = 2;

    std::vector<double> scales(static_cast<std::size_t>(factors));
    for (int j = 0; j < factors; ++j)
        scales[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(b), j);
    auto density = [&](double y) {
        double prod = 1.0;
        for (double s : scales) prod *= profile.theta(s * y);
        return prod;
    };

    const double h = 1.0 / (static_cast<double>(grid) * static_cast<double>(sub));
    std::vector<double> increments(static_cast<std::size_t>(grid));
    double left = density(0.0);
    for (long long i = 0; i < grid; ++i) {
        double cell = 0.0;
        double base = static_cast<double>(i) / static_cast<double>(grid);
        for (long long t = 1; t <= sub; t += 2) {
            double mid = density(base + static_cast<double>(t) * h);
            double right = density(base + static_cast<double>(t + 1) * h);
            cell += left + 4.0 * mid + right;
            left = right;
        }
        increments[static_cast<std::size_t>(i)] = cell * h / 3.0;
    }

    DistributionFunction F = DistributionFunction::from_increments(
        grid, std::move(increments), "riesz");
    F.params["factors"] = static_cast<double>(factors);
    F.params["base"] = static_cast<double>(b);
    F.params["fine_subdivision"] = static_cast<double>(sub);
    return F;
}

FunctionalRelationReport tm_functional_relation_residual(
    const DistributionFunction& F,
    const std::vector<std::pair<double, double>>& subintervals) {
    const long long G = F.grid;
    auto grid_index = [G](double x) {
        double scaled = x * static_cast<double>(G);
        long long i = std::llround(scaled);
        if (std::abs(scaled - static_cast<double>(i)) > 1e-9 || i < 0 || i > G)
            throw std::invalid_argument("subinterval endpoint is not a grid point");
        if (i % 2 != 0)
            throw std::invalid_argument(
                "subinterval endpoints must sit on even grid indices so that x/2 "
                "stays on the grid");
        return i;
    };

    // Cell averages of cos(pi y), matching the quadrature used elsewhere.
    std::vector<double> cos_avg(static_cast<std::size_t>(G));
    for (long long c = 0; c < G; ++c) {
        double c0 = std::cos(kPi * static_cast<double>(c) / static_cast<double>(G));
        double c1 = std::cos(kPi * static_cast<double>(c + 1) / static_cast<double>(G));
        cos_avg[static_cast<std::size_t>(c)] = 0.5 * (c0 + c1);
    }

    FunctionalRelationReport report;
    for (auto [a, b] : subintervals) {
        if (!(a < b) || a < 0.0 || b > 1.0)
            throw std::invalid_argument("subintervals must satisfy 0 <= a < b <= 1");
        long long ia = grid_index(a), ib = grid_index(b);
        double lower_half = F.at_index(ib / 2) - F.at_index(ia / 2);
        double upper_half = F.at_index((ib + G) / 2) - F.at_index((ia + G) / 2);
        double full = F.at_index(ib) - F.at_index(ia);

        double integral = 0.0;  // int_a^b (-cos(pi y)) dF(y)
        for (long long c = ia; c < ib; ++c)
            integral -= cos_avg[static_cast<std::size_t>(c)] *
                        F.increments[static_cast<std::size_t>(c)];

        FunctionalRelationReport::Row row;
        row.a = a;
        row.b = b;
        row.residual_plus = std::abs(lower_half + upper_half - full);
        row.residual_minus = std::abs(lower_half - upper_half - integral);
        report.max_residual_plus = std::max(report.max_residual_plus, row.residual_plus);
        report.max_residual_minus = std::max(report.max_residual_minus, row.residual_minus);
        report.rows.push_back(row);
    }
    return report;
}

Peak pd_bragg_intensity(Complex h_plus, Complex h_minus, long long m, int r) {
    if (r < 0) throw std::invalid_argument("r must be >= 0");
    if (r >= 62) throw std::invalid_argument("denominator 2^r out of range");
    if (r >= 1 && m % 2 == 0)
        throw std::invalid_argument(
            "outside the Fourier module parametrisation: r >= 1 needs m odd");
    const long long den = 1LL << r;
    long long frac = m % den;
    if (frac < 0) frac += den;
    const double angle = 2.0 * kPi * static_cast<double>(frac) / static_cast<double>(den);
    const double magnitude = 2.0 / (3.0 * static_cast<double>(den));
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    Complex A = sign * magnitude * Complex(std::cos(angle), std::sin(angle));
    Complex B = (r == 0 ? Complex(1.0) : Complex(0.0)) - A;
    Peak peak;
    peak.k_num = m;
    peak.k_den = den;
    peak.k = static_cast<double>(m) / static_cast<double>(den);
    peak.intensity = std::norm(h_plus * A + h_minus * B);
    return peak;
}

PurePointSpectrum periodic_diffraction(const PeriodicComb& comb) {
    const long long L = comb.period();
    if (L < 1) throw std::invalid_argument("periodic comb needs period >= 1");
    CorrelationSeries eta = periodic_autocorrelation(comb);

    std::vector<double> cosv(static_cast<std::size_t>(L)), sinv(static_cast<std::size_t>(L));
    for (long long t = 0; t < L; ++t) {
        double angle = -2.0 * kPi * static_cast<double>(t) / static_cast<double>(L);
        cosv[static_cast<std::size_t>(t)] = std::cos(angle);
        sinv[static_cast<std::size_t>(t)] = std::sin(angle);
    }

    PurePointSpectrum spectrum;
    spectrum.module_description =
        "one period of (1/" + std::to_string(L) + ") Z";
    for (long long j = 0; j < L; ++j) {
        double acc = 0.0;
        for (long long m = 0; m < L; ++m) {
            std::size_t t = static_cast<std::size_t>((j * m) % L);
            Complex e = eta.eta(m);
            acc += e.real() * cosv[t] - e.imag() * sinv[t];
        }
        acc /= static_cast<double>(L);
        if (acc < 0.0) {
            if (acc < -1e-9) throw std::logic_error("negative Bragg intensity");
            acc = 0.0;
        }
        long long g = std::gcd(j, L);
        Peak peak;
        peak.k_num = j / g;
        peak.k_den = L / g;
        peak.k = static_cast<double>(j) / static_cast<double>(L);
        peak.intensity = acc;
        spectrum.peaks.push_back(peak);
    }
    return spectrum;
}

namespace {

Complex window_exponential_sum(const WeightedComb& comb, double k) {
    if (comb.weights.empty()) throw std::invalid_argument("empty comb");
    Complex acc = 0.0;
    for (long long n = comb.lo; n <= comb.hi(); ++n) {
        double t = k * static_cast<double>(n);
        t -= std::floor(t);
        double angle = -2.0 * kPi * t;
        acc += comb.at(n) * Complex(std::cos(angle), std::sin(angle));
    }
    return acc;
}

}  // namespace

double empirical_diffraction_intensity(const WeightedComb& comb, double k) {
    double size = static_cast<double>(comb.weights.size());
    return std::norm(window_exponential_sum(comb, k)) / size;
}

double empirical_bragg_intensity(const WeightedComb& comb, double k) {
    double size = static_cast<double>(comb.weights.size());
    return std::norm(window_exponential_sum(comb, k) / size);
}

}  // namespace diffract
