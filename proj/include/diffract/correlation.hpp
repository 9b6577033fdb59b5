#pragma once

#include <optional>
#include <vector>

#include "diffract/rational.hpp"
#include "diffract/substitution.hpp"

namespace diffract {

enum class SeriesKind { exact, empirical };

// Autocorrelation coefficients eta(m) for |m| <= max_lag, plus the companion
// theta(m) for the Rudin-Shapiro system. Exact series carry their values as
// rationals alongside the double view.
class CorrelationSeries {
public:
    static CorrelationSeries empirical(std::vector<Complex> eta,
                                       std::optional<long long> normalisation);
    // values indexed m + max_lag, m in [-max_lag, max_lag]
    static CorrelationSeries exact(std::vector<RatComplex> eta,
                                   std::optional<std::vector<RatComplex>> theta = {});
    // Exact in the closed-form sense (no rational storage), e.g. the
    // almost-sure Bernoulli predictions with a double-valued p.
    static CorrelationSeries exact_double(std::vector<Complex> eta);

    SeriesKind kind() const { return kind_; }
    long long max_lag() const { return max_lag_; }
    bool has_theta() const { return theta_.has_value(); }
    bool has_exact_values() const { return eta_exact_.has_value(); }
    std::optional<long long> normalisation() const { return normalisation_; }

    Complex eta(long long m) const;
    Complex theta(long long m) const;
    const RatComplex& eta_exact(long long m) const;
    const RatComplex& theta_exact(long long m) const;
    bool is_real() const;

    // Hermitian symmetry, eta(0) real and >= 0, |eta(m)| <= eta(0).
    void validate() const;

private:
    std::size_t index(long long m) const;

    SeriesKind kind_ = SeriesKind::empirical;
    long long max_lag_ = 0;
    std::vector<Complex> eta_;
    std::optional<std::vector<Complex>> theta_;
    std::optional<std::vector<RatComplex>> eta_exact_;
    std::optional<std::vector<RatComplex>> theta_exact_;
    std::optional<long long> normalisation_;
};

// An L-periodic comb delta_{L Z} * sum_j c_j delta_j with exact coefficients.
struct PeriodicComb {
    std::vector<RatComplex> coefficients;

    long long period() const { return static_cast<long long>(coefficients.size()); }
    const RatComplex& coefficient(long long j) const;  // index mod L
};

// --- correlation operations -------------------------------------------------

// eta(m) = (1/(2N+1)) sum_n w(n) conj(w(n-m)), products with either factor
// outside the window dropped. Hermitian symmetry holds by construction.
CorrelationSeries empirical_autocorrelation(const WeightedComb& comb,
                                            long long max_lag);

// eta(0) = 1; eta(2m) = eta(m); eta(2m+1) = -(eta(m) + eta(m+1))/2.
// eta(+-1) is solved from the m = 0 / m = -1 instances of the recursion.
CorrelationSeries tm_exact_eta(long long max_lag);

// Recursion with coefficients alpha(k,l,r) = k+l-r - 2 min(k,l,r,k+l-r).
CorrelationSeries gm_exact_eta(int k, int l, long long max_lag);
long long gm_alpha(int k, int l, long long r);

// The coupled eta/theta recursions; returns both series.
CorrelationSeries rs_exact_eta_theta(long long max_lag);

// eta(m) = (1/L) sum_j c_j conj(c_{(j-m) mod L}), exact; max_lag = L.
CorrelationSeries periodic_autocorrelation(const PeriodicComb& comb);
RatComplex periodic_eta(const PeriodicComb& comb, long long m);

// Order-q correlation (1/L) sum_j c_j c_{j+m_1} ... c_{j+m_{q-1}} with plain
// products (no conjugation; the homometry table is real).
RatComplex higher_order_correlation(const PeriodicComb& comb,
                                    const std::vector<long long>& lags);

// Sigma(N) = sum_{|n| <= N} |eta(n)|^2.
double wiener_sigma(const CorrelationSeries& series, long long N);
Rational wiener_sigma_exact(const CorrelationSeries& series, long long N);

// Exhaustive comparison of correlations of orders 2..max_order over lag
// tuples in [0, lag_bound]^(q-1); stops at the first differing tuple.
struct HomometryReport {
    int max_order = 0;
    long long lag_bound = 0;
    std::vector<int> orders_checked;
    std::vector<bool> order_equal;  // parallel to orders_checked
    std::optional<std::vector<long long>> witness_lags;
    int witness_order = 0;
    RatComplex witness_a, witness_b;
};
HomometryReport compare_correlations(const PeriodicComb& a, const PeriodicComb& b,
                                     int max_order, long long lag_bound = 5);

}  // namespace diffract
