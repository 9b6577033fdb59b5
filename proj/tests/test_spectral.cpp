#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "diffract/spectral.hpp"

using namespace diffract;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle for the Riesz route: the partial product of cosine
// factors is itself a cosine polynomial, computed here by coefficient
// convolution and integrated term by term. No quadrature involved.
std::vector<double> riesz_cos_coefficients(const RieszProfile& profile, int factors) {
    const int b = profile.k + profile.l;
    std::vector<double> coeff{1.0};  // P(x) = sum_r coeff[r] cos(2 pi r x)
    long long scale = 1;             // b^j for factor j
    for (int j = 0; j < factors; ++j, scale *= b) {
        long long old_deg = static_cast<long long>(coeff.size()) - 1;
        long long new_deg = old_deg + scale * (b - 1);
        std::vector<double> next(static_cast<std::size_t>(new_deg) + 1, 0.0);
        // cos A cos B = (cos(A+B) + cos(A-B))/2
        for (long long r = 0; r <= old_deg; ++r) {
            double cr = coeff[static_cast<std::size_t>(r)];
            if (cr == 0.0) continue;
            next[static_cast<std::size_t>(r)] += cr;  // the constant term of theta
            for (std::size_t a = 1; a <= profile.alpha.size(); ++a) {
                double g = 2.0 * static_cast<double>(profile.alpha[a - 1]) /
                           static_cast<double>(b);
                long long off = scale * static_cast<long long>(a);
                next[static_cast<std::size_t>(r + off)] += 0.5 * cr * g;
                next[static_cast<std::size_t>(std::llabs(r - off))] += 0.5 * cr * g;
            }
        }
        coeff = std::move(next);
    }
    return coeff;
}

double riesz_oracle_value(const std::vector<double>& cos_coeff, double x) {
    // F(x) = c_0 x + sum_r c_r sin(2 pi r x) / (2 pi r), cosine convention.
    double acc = cos_coeff[0] * x;
    for (std::size_t r = 1; r < cos_coeff.size(); ++r) {
        if (cos_coeff[r] == 0.0) continue;
        acc += cos_coeff[r] * std::sin(2.0 * kPi * static_cast<double>(r) * x) /
               (2.0 * kPi * static_cast<double>(r));
    }
    return acc;
}

}  // namespace

TEST_CASE("riesz coefficient oracle sanity: one TM factor") {
    // theta(x) = 1 - cos(2 pi x): cosine coefficients {1, -1}.
    RieszProfile tm = RieszProfile::make(1, 1);
    auto coeff = riesz_cos_coefficients(tm, 1);
    REQUIRE(coeff.size() == 2);
    CHECK(coeff[0] == doctest::Approx(1.0));
    CHECK(coeff[1] == doctest::Approx(-1.0));
    // F_1(x) = x - sin(2 pi x)/(2 pi)
    CHECK(riesz_oracle_value(coeff, 0.25) ==
          doctest::Approx(0.25 - std::sin(kPi / 2) / (2 * kPi)));
}

TEST_CASE("fourier distribution endpoints and symmetry") {
    CorrelationSeries tm = tm_exact_eta(1 << 12);
    DistributionFunction F = fourier_distribution(tm, 1 << 12, 1 << 10);
    CHECK(F.values.front() == 0.0);
    CHECK(F.values.back() == 1.0);
    // sin(pi m) = 0 for every m, so F(1/2) = eta(0)/2 exactly.
    CHECK(F.at_index(F.grid / 2) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(F.nondecreasing(1e-3));
}

TEST_CASE("fourier distribution of the RS series is Lebesgue") {
    CorrelationSeries rs = rs_exact_eta_theta(256);
    DistributionFunction F = fourier_distribution(rs, 256, 512);
    for (long long i = 0; i <= F.grid; ++i)
        CHECK(std::abs(F.at_index(i) -
                       static_cast<double>(i) / static_cast<double>(F.grid)) <
              1e-15);
}

TEST_CASE("fourier distribution rejects complex series") {
    std::vector<Complex> values(3, Complex(0.0));
    values[1] = Complex(0.5, 0.25);
    values[0] = std::conj(values[1]);
    values[2] = Complex(1.0);
    // values indexed m+1 for m = -1..1: eta(0) = 1 at centre.
    std::vector<Complex> eta = {Complex(0.25, 0.25), Complex(1.0),
                                Complex(0.25, -0.25)};
    CorrelationSeries s = CorrelationSeries::empirical(std::move(eta), 3);
    CHECK_THROWS_AS(fourier_distribution(s, 1, 16), std::invalid_argument);
    CorrelationSeries tm = tm_exact_eta(4);
    CHECK_THROWS_AS(fourier_distribution(tm, 8, 16), std::invalid_argument);
}

TEST_CASE("volterra iteration") {
    // Zero iterations: the Lebesgue start.
    DistributionFunction F0 = volterra_distribution(1024, 0, 1e-8);
    for (long long i = 0; i <= 1024; ++i)
        CHECK(F0.at_index(i) == doctest::Approx(i / 1024.0).epsilon(1e-15));

    CHECK_THROWS_AS(volterra_distribution(1000, 8, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(volterra_distribution(512, 8, 1e-8), std::invalid_argument);

    // One iteration reproduces F_1(x) = x - sin(2 pi x)/(2 pi) up to the
    // cell quadrature error.
    DistributionFunction F1 = volterra_distribution(1024, 1, 1e-30);
    for (long long i = 0; i <= 1024; i += 32) {
        double x = static_cast<double>(i) / 1024.0;
        CHECK(F1.at_index(i) ==
              doctest::Approx(x - std::sin(2 * kPi * x) / (2 * kPi)).epsilon(1e-6));
    }
    CHECK_FALSE(F1.converged);
    CHECK(F1.params.at("residual") > 0.0);

    DistributionFunction F = volterra_distribution(1024, 64, 1e-8);
    CHECK(F.converged);
    CHECK(F.params.at("iterations") < 64);
    CHECK(F.values.back() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(F.nondecreasing(0.0));
    CHECK(F.increments_positive());
}

TEST_CASE("riesz profile factors") {
    RieszProfile tm = RieszProfile::make(1, 1);
    REQUIRE(tm.alpha.size() == 1);
    CHECK(tm.alpha[0] == -1);
    CHECK(tm.theta(0.0) == doctest::Approx(0.0));
    CHECK(tm.theta(0.5) == doctest::Approx(2.0));
    CHECK(tm.theta(0.25) == doctest::Approx(1.0));

    // theta >= 0 on a dense grid for every implemented profile up to (4,4).
    for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l) {
            RieszProfile p = RieszProfile::make(k, l);
            double min_value = 1e9;
            for (int i = 0; i <= 100000; ++i)
                min_value = std::min(min_value, p.theta(i / 100000.0));
            CHECK(min_value >= -1e-12);
        }
}

TEST_CASE("riesz partial distribution") {
    RieszProfile tm = RieszProfile::make(1, 1);
    DistributionFunction F1 = riesz_partial_distribution(tm, 1, 1024);
    for (long long i = 0; i <= 1024; i += 64) {
        double x = static_cast<double>(i) / 1024.0;
        CHECK(F1.at_index(i) ==
              doctest::Approx(x - std::sin(2 * kPi * x) / (2 * kPi)).epsilon(1e-8));
    }

    DistributionFunction F8 = riesz_partial_distribution(tm, 8, 1024);
    CHECK(F8.values.back() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(F8.nondecreasing(1e-15));

    // Quadrature vs the coefficient-convolution oracle.
    auto coeff = riesz_cos_coefficients(tm, 8);
    double worst = 0.0;
    for (long long i = 0; i <= 1024; i += 8) {
        double x = static_cast<double>(i) / 1024.0;
        worst = std::max(worst, std::abs(F8.at_index(i) - riesz_oracle_value(coeff, x)));
    }
    CHECK(worst < 1e-3);

    CHECK_THROWS_AS(riesz_partial_distribution(tm, 40, 1024), std::invalid_argument);
}

TEST_CASE("cross-route bounds at production parameters") {
    DistributionFunction fourier =
        fourier_distribution(tm_exact_eta(1 << 16), 1 << 16, 4096);
    DistributionFunction volterra = volterra_distribution(4096, 64, 1e-8);
    CHECK(sup_norm_diff(fourier, volterra) < 1e-3);
    DistributionFunction riesz =
        riesz_partial_distribution(RieszProfile::make(1, 1), 14, 4096);
    CHECK(sup_norm_diff(fourier, riesz) < 5e-3);
}

TEST_CASE("three TM routes agree at reduced parameters") {
    DistributionFunction fourier =
        fourier_distribution(tm_exact_eta(1 << 12), 1 << 12, 1024);
    DistributionFunction volterra = volterra_distribution(1024, 64, 1e-8);
    DistributionFunction riesz =
        riesz_partial_distribution(RieszProfile::make(1, 1), 10, 1024);
    CHECK(sup_norm_diff(fourier, volterra) < 1e-2);
    CHECK(sup_norm_diff(fourier, riesz) < 1e-2);
    CHECK(sup_norm_diff(volterra, riesz) < 1e-2);
}

TEST_CASE("functional relation residuals vanish for Lebesgue") {
    DistributionFunction lebesgue = volterra_distribution(1024, 0, 1e-8);
    std::vector<std::pair<double, double>> intervals;
    for (int j = 0; j < 64; ++j)
        intervals.emplace_back(j / 64.0, (j + 1) / 64.0);
    FunctionalRelationReport report =
        tm_functional_relation_residual(lebesgue, intervals);
    CHECK(report.max_residual_plus < 1e-14);
    CHECK(report.rows.size() == 64);

    CHECK_THROWS_AS(tm_functional_relation_residual(
                        lebesgue, {{0.0, 1.0 / 3.0}}),
                    std::invalid_argument);
}

TEST_CASE("functional relation residuals on the converged TM function") {
    DistributionFunction F = volterra_distribution(4096, 64, 1e-8);
    REQUIRE(F.converged);
    std::vector<std::pair<double, double>> intervals;
    for (int j = 0; j < 64; ++j)
        intervals.emplace_back(j / 64.0, (j + 1) / 64.0);
    FunctionalRelationReport report = tm_functional_relation_residual(F, intervals);
    CHECK(report.max_residual_plus <= 1e-3);
    CHECK(report.max_residual_minus <= 5e-3);
}

TEST_CASE("pd Bragg intensities") {
    // h+ = 1, h- = 0: |A(k)|^2 = 4/(9 4^r) independent of the phase.
    Peak integer_peak = pd_bragg_intensity(1.0, 0.0, 5, 0);
    CHECK(integer_peak.k == 5.0);
    CHECK(integer_peak.intensity == doctest::Approx(4.0 / 9.0).epsilon(1e-15));

    Peak half = pd_bragg_intensity(1.0, 0.0, 1, 1);
    CHECK(half.k_num == 1);
    CHECK(half.k_den == 2);
    CHECK(half.intensity == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    // h+ = h- = 1: the constant comb, unit peaks at integers and nothing else.
    CHECK(pd_bragg_intensity(1.0, 1.0, 3, 0).intensity == 1.0);
    CHECK(pd_bragg_intensity(1.0, 1.0, 3, 1).intensity == 0.0);
    CHECK(pd_bragg_intensity(1.0, 1.0, 7, 3).intensity == 0.0);

    // B(k) = -A(k) away from the integers: h- alone gives 1/9 at k = 1/2 too.
    CHECK(pd_bragg_intensity(0.0, 1.0, 1, 1).intensity ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    CHECK_THROWS_AS(pd_bragg_intensity(1.0, 0.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(pd_bragg_intensity(1.0, 0.0, 1, -1), std::invalid_argument);
}

TEST_CASE("pd Bragg intensities over one period sum to the site density") {
    // Parseval over k in [0,1): 4/9 at k = 0 plus 2^(r-1) peaks of 4/(9 4^r)
    // per level r converges to the a-letter density 2/3; the tail beyond
    // R levels is (2/9) 2^(-R).
    double sum = pd_bragg_intensity(1.0, 0.0, 0, 0).intensity;
    const int R = 12;
    for (int r = 1; r <= R; ++r)
        for (long long m = 1; m < (1LL << r); m += 2)
            sum += pd_bragg_intensity(1.0, 0.0, m, r).intensity;
    CHECK(sum == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("periodic diffraction") {
    PeriodicComb site;
    site.coefficients.push_back(RatComplex(Rational(1)));
    PurePointSpectrum lattice = periodic_diffraction(site);
    REQUIRE(lattice.peaks.size() == 1);
    CHECK(lattice.peaks[0].intensity == doctest::Approx(1.0).epsilon(1e-15));

    PeriodicComb row1, row2;
    for (long long c : {11, 25, 42, 45, 31, 14})
        row1.coefficients.push_back(RatComplex(Rational(c)));
    for (long long c : {10, 21, 39, 46, 35, 17})
        row2.coefficients.push_back(RatComplex(Rational(c)));

    PurePointSpectrum s1 = periodic_diffraction(row1);
    PurePointSpectrum s2 = periodic_diffraction(row2);
    REQUIRE(s1.peaks.size() == 6);
    REQUIRE(s2.peaks.size() == 6);
    // Identical autocorrelation makes the spectra identical bit for bit.
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(std::memcmp(&s1.peaks[j].intensity, &s2.peaks[j].intensity,
                          sizeof(double)) == 0);
    }
    // I(0) = |mean|^2 = (168/6)^2.
    CHECK(s1.peaks[0].intensity == doctest::Approx(784.0).epsilon(1e-12));

    // Parseval over one period: the peak masses add up to eta(0) = 5692/6.
    double total = 0.0;
    for (const Peak& peak : s1.peaks) total += peak.intensity;
    CHECK(total == doctest::Approx(5692.0 / 6.0).epsilon(1e-12));

    // Independent route: directly from the coefficients.
    std::vector<long long> c1{11, 25, 42, 45, 31, 14};
    for (std::size_t j = 0; j < 6; ++j) {
        Complex amplitude = 0.0;
        for (int n = 0; n < 6; ++n) {
            double angle = -2.0 * kPi * static_cast<double>(j) * n / 6.0;
            amplitude += static_cast<double>(c1[static_cast<std::size_t>(n)]) *
                         Complex(std::cos(angle), std::sin(angle));
        }
        double direct = std::norm(amplitude) / 36.0;
        CHECK(s1.peaks[j].intensity == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("empirical diffraction estimators") {
    WeightedComb ones;
    ones.lo = -512;
    ones.weights.assign(1025, Complex(1.0));
    CHECK(empirical_diffraction_intensity(ones, 0.0) ==
          doctest::Approx(1025.0).epsilon(1e-12));
    CHECK(empirical_diffraction_intensity(ones, 0.5) <= 1.0 / 1025.0 + 1e-12);
    CHECK(empirical_bragg_intensity(ones, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // TM has no point part: the periodogram at k = 0 decays.
    double previous = 1e300;
    for (long long N = 1 << 10; N <= (1 << 18); N *= 4) {
        double value = empirical_diffraction_intensity(tm_comb(N), 0.0);
        CHECK(value < previous);
        previous = value;
    }

    // pd Bragg mass at an integer approaches |A|^2 = 4/9.
    WeightedComb pd = pd_comb(1.0, 0.0, 1 << 14);
    CHECK(std::abs(empirical_bragg_intensity(pd, 1.0) - 4.0 / 9.0) < 0.01);
}
