#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffract/correlation.hpp"

namespace diffract {

// Sampled distribution function F(x) = diffraction mass of [0, x] on the
// uniform grid x_i = i/G. The cell increments are kept as the primary data;
// near F = 1 the true increments of the singular measures handled here fall
// below double resolution of the running sum, so monotonicity questions are
// answered on the increments.
struct DistributionFunction {
    long long grid = 0;
    std::vector<double> values;      // size grid+1, values[0] = 0
    std::vector<double> increments;  // size grid
    std::string method;
    std::map<std::string, double> params;
    bool converged = true;

    double at_index(long long i) const { return values.at(static_cast<std::size_t>(i)); }
    bool increments_positive() const;
    bool nondecreasing(double tol) const;

    static DistributionFunction from_increments(long long grid,
                                                std::vector<double> increments,
                                                std::string method);
};

double sup_norm_diff(const DistributionFunction& a, const DistributionFunction& b);

struct Peak {
    long long k_num = 0;
    long long k_den = 1;
    double k = 0.0;
    double intensity = 0.0;
};

struct PurePointSpectrum {
    std::vector<Peak> peaks;
    std::string module_description;
};

// theta(x) = 1 + (2/(k+l)) sum_{r=1}^{k+l-1} alpha(k,l,r) cos(2 pi r x),
// the single factor of the Riesz product for the (k,l) Morse system.
struct RieszProfile {
    int k = 1;
    int l = 1;
    std::vector<long long> alpha;  // alpha[r-1] = alpha(k,l,r), r = 1..k+l-1

    static RieszProfile make(int k, int l);
    double theta(double x) const;
};

// --- spectral operations -----------------------------------------------------

// F(x_i) = eta(0) x_i + sum_{m=1}^{M} eta(m) sin(2 pi m x_i)/(m pi).
// Real series only. Endpoints are exact: F(0) = 0 and F(1) = eta(0).
DistributionFunction fourier_distribution(const CorrelationSeries& series,
                                          long long truncation, long long grid);

// F_{n+1}(x) = (1/2) int_0^{2x} (1 - cos(pi y)) dF_n(y) with F_0(x) = x,
// carried on cell increments; F(x+1) = F(x) + 1 extends the measure to [0,2].
// Stops when successive iterates differ by at most `tolerance` in sup norm;
// a run that exhausts max_iterations reports converged = false and the
// achieved residual in params.
DistributionFunction volterra_distribution(long long grid, int max_iterations,
                                           double tolerance);

// F_n(x) = int_0^x prod_{j=0}^{n-1} theta((k+l)^j y) dy by composite Simpson
// quadrature on a fine grid with step <= 1/(8 (k+l)^n).
DistributionFunction riesz_partial_distribution(const RieszProfile& profile,
                                                int factors, long long grid);

// Residuals of dF(x/2) +- dF((x+1)/2) = {1; -cos(pi x)} dF(x) over the given
// subintervals (endpoints must lie on even grid indices).
struct FunctionalRelationReport {
    struct Row {
        double a = 0.0, b = 0.0;
        double residual_plus = 0.0, residual_minus = 0.0;
    };
    std::vector<Row> rows;
    double max_residual_plus = 0.0;
    double max_residual_minus = 0.0;
};
FunctionalRelationReport tm_functional_relation_residual(
    const DistributionFunction& F,
    const std::vector<std::pair<double, double>>& subintervals);

// Bragg peak of the period doubling comb at k = m/2^r, using
// A(k) = 2 e^(2 pi i k) / (3 (-2)^r) and B(k) = delta_{r,0} - A(k).
// The Fourier module is parametrised by (r = 0, m in Z) or (r >= 1, m odd).
Peak pd_bragg_intensity(Complex h_plus, Complex h_minus, long long m, int r);

// One period of Bragg peaks of an L-periodic comb, at k = j/L.
//
// For omega = mu * delta_{L Z} with mu = sum_{n<L} c_n delta_n, Poisson
// summation (dens(L Z) = 1/L, dual module (1/L) Z) gives
//   diffraction = sum_{k in (1/L) Z} (1/L^2) |mu_hat(k)|^2 delta_k,
// and (1/L^2)|mu_hat(k)|^2 = (1/L) sum_{m=0}^{L-1} eta(m) e^(-2 pi i k m)
// with the L-periodic autocorrelation eta. The intensities are computed from
// eta, so homometric combs produce identical spectra bit for bit.
PurePointSpectrum periodic_diffraction(const PeriodicComb& comb);

// Periodogram (1/(2N+1)) |sum_n w(n) e^(-2 pi i k n)|^2: grows linearly in N
// at a Bragg frequency, stays bounded elsewhere.
double empirical_diffraction_intensity(const WeightedComb& comb, double k);

// Bragg mass estimator |(1/(2N+1)) sum_n w(n) e^(-2 pi i k n)|^2, the
// finite-window value of |A(k)|^2.
double empirical_bragg_intensity(const WeightedComb& comb, double k);

}  // namespace diffract
