#include "diffract/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace diffract {

namespace {

Complex to_complex(const RatComplex& z) {
    return {z.re.to_double(), z.im.to_double()};
}

std::vector<Complex> to_complex_vec(const std::vector<RatComplex>& v) {
    std::vector<Complex> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), to_complex);
    return out;
}

}  // namespace

CorrelationSeries CorrelationSeries::empirical(std::vector<Complex> eta,
                                               std::optional<long long> normalisation) {
    if (eta.size() % 2 == 0) throw std::invalid_argument("series needs 2M+1 values");
    CorrelationSeries s;
    s.kind_ = SeriesKind::empirical;
    s.max_lag_ = static_cast<long long>(eta.size() / 2);
    s.eta_ = std::move(eta);
    s.normalisation_ = normalisation;
    return s;
}

CorrelationSeries CorrelationSeries::exact(std::vector<RatComplex> eta,
                                           std::optional<std::vector<RatComplex>> theta) {
    if (eta.size() % 2 == 0) throw std::invalid_argument("series needs 2M+1 values");
    if (theta && theta->size() != eta.size())
        throw std::invalid_argument("theta must cover the same lags as eta");
    CorrelationSeries s;
    s.kind_ = SeriesKind::exact;
    s.max_lag_ = static_cast<long long>(eta.size() / 2);
    s.eta_ = to_complex_vec(eta);
    s.eta_exact_ = std::move(eta);
    if (theta) {
        s.theta_ = to_complex_vec(*theta);
        s.theta_exact_ = std::move(theta);
    }
    return s;
}

CorrelationSeries CorrelationSeries::exact_double(std::vector<Complex> eta) {
    if (eta.size() % 2 == 0) throw std::invalid_argument("series needs 2M+1 values");
    CorrelationSeries s;
    s.kind_ = SeriesKind::exact;
    s.max_lag_ = static_cast<long long>(eta.size() / 2);
    s.eta_ = std::move(eta);
    return s;
}

std::size_t CorrelationSeries::index(long long m) const {
    if (m < -max_lag_ || m > max_lag_)
        throw std::out_of_range("lag outside stored range");
    return static_cast<std::size_t>(m + max_lag_);
}

Complex CorrelationSeries::eta(long long m) const { return eta_[index(m)]; }

Complex CorrelationSeries::theta(long long m) const {
    if (!theta_) throw std::logic_error("series has no companion theta");
    return (*theta_)[index(m)];
}

const RatComplex& CorrelationSeries::eta_exact(long long m) const {
    if (!eta_exact_) throw std::logic_error("series has no exact values");
    return (*eta_exact_)[index(m)];
}

const RatComplex& CorrelationSeries::theta_exact(long long m) const {
    if (!theta_exact_) throw std::logic_error("series has no exact theta");
    return (*theta_exact_)[index(m)];
}

bool CorrelationSeries::is_real() const {
    return std::all_of(eta_.begin(), eta_.end(),
                       [](Complex z) { return z.imag() == 0.0; });
}

void CorrelationSeries::validate() const {
    const double tol = 1e-12;
    Complex e0 = eta(0);
    if (std::abs(e0.imag()) > tol || e0.real() < -tol)
        throw std::logic_error("eta(0) must be real and nonnegative");
    for (long long m = 0; m <= max_lag_; ++m) {
        Complex plus = eta(m), minus = eta(-m);
        if (std::abs(plus - std::conj(minus)) > tol)
            throw std::logic_error("Hermitian symmetry violated at lag " +
                                   std::to_string(m));
        if (std::abs(plus) > e0.real() + tol)
            throw std::logic_error("|eta(m)| exceeds eta(0) at lag " +
                                   std::to_string(m));
    }
    if (eta_exact_) {
        Rational bound = (*eta_exact_)[index(0)].re;
        for (const auto& z : *eta_exact_)
            if (z.norm_sq() > bound * bound)
                throw std::logic_error("|eta(m)| exceeds eta(0) (exact check)");
    }
}

const RatComplex& PeriodicComb::coefficient(long long j) const {
    long long L = period();
    if (L < 1) throw std::logic_error("empty periodic comb");
    long long r = j % L;
    if (r < 0) r += L;
    return coefficients[static_cast<std::size_t>(r)];
}

CorrelationSeries empirical_autocorrelation(const WeightedComb& comb,
                                            long long max_lag) {
    if (comb.weights.empty()) throw std::invalid_argument("empty comb");
    const long long N = comb.half_length();
    if (max_lag > N)
        throw std::invalid_argument("max_lag exceeds comb half-length");
    const long long size = 2 * N + 1;
    std::vector<Complex> eta(static_cast<std::size_t>(2 * max_lag + 1));

    if (comb.all_real()) {
        std::vector<double> re(comb.weights.size());
        for (std::size_t i = 0; i < re.size(); ++i) re[i] = comb.weights[i].real();
        for (long long m = 0; m <= max_lag; ++m) {
            double acc = 0.0;
            const std::size_t count = re.size() - static_cast<std::size_t>(m);
            const double* x = re.data() + m;  // w(n), n = -N+m .. N
            const double* y = re.data();      // w(n-m)
            for (std::size_t i = 0; i < count; ++i) acc += x[i] * y[i];
            Complex value(acc / static_cast<double>(size), 0.0);
            eta[static_cast<std::size_t>(max_lag + m)] = value;
            eta[static_cast<std::size_t>(max_lag - m)] = value;
        }
    } else {
        for (long long m = 0; m <= max_lag; ++m) {
            Complex acc = 0.0;
            for (long long n = -N + m; n <= N; ++n)
                acc += comb.at(n) * std::conj(comb.at(n - m));
            Complex value = acc / static_cast<double>(size);
            eta[static_cast<std::size_t>(max_lag + m)] = value;
            eta[static_cast<std::size_t>(max_lag - m)] = std::conj(value);
        }
    }
    return CorrelationSeries::empirical(std::move(eta), size);
}

namespace {

// Memoised descent shared by the exact recursions. Lags are bounded by
// max_lag + 1 (the recursion may touch eta(m+1) one step past the range).
class MemoTable {
public:
    explicit MemoTable(long long bound) : bound_(bound),
        values_(static_cast<std::size_t>(2 * bound + 1)),
        set_(static_cast<std::size_t>(2 * bound + 1), false) {}

    bool contains(long long m) const { return set_[index(m)]; }
    const Rational& get(long long m) const { return values_[index(m)]; }
    void put(long long m, Rational v) {
        values_[index(m)] = v;
        set_[index(m)] = true;
    }

private:
    std::size_t index(long long m) const {
        if (m < -bound_ || m > bound_)
            throw std::logic_error("recursion left the memo range");
        return static_cast<std::size_t>(m + bound_);
    }
    long long bound_;
    std::vector<Rational> values_;
    std::vector<bool> set_;
};

std::vector<RatComplex> collect_real(const std::function<Rational(long long)>& f,
                                     long long max_lag) {
    std::vector<RatComplex> out(static_cast<std::size_t>(2 * max_lag + 1));
    for (long long m = -max_lag; m <= max_lag; ++m)
        out[static_cast<std::size_t>(m + max_lag)] = RatComplex(f(m));
    return out;
}

}  // namespace

CorrelationSeries tm_exact_eta(long long max_lag) {
    if (max_lag < 0) throw std::invalid_argument("negative max_lag");
    const long long bound = max_lag + 2;
    MemoTable memo(bound);
    memo.put(0, Rational(1));
    // m = 0 instance of eta(2m+1) = -(eta(m) + eta(m+1))/2:
    //   eta(1) = -(eta(0) + eta(1))/2  =>  eta(1) = -eta(0)/3,
    // and the m = -1 instance gives the same value for eta(-1).
    Rational eta1 = -Rational(1) / Rational(3);
    memo.put(1, eta1);
    memo.put(-1, eta1);

    std::function<Rational(long long)> eta = [&](long long m) -> Rational {
        if (memo.contains(m)) return memo.get(m);
        long long r = m & 1;
        long long q = (m - r) / 2;
        Rational v = r == 0 ? eta(q)
                            : -(eta(q) + eta(q + 1)) / Rational(2);
        memo.put(m, v);
        return v;
    };
    return CorrelationSeries::exact(collect_real(eta, max_lag));
}

long long gm_alpha(int k, int l, long long r) {
    long long b = k + l;
    if (r < 0 || r > b) throw std::invalid_argument("alpha index out of range");
    long long m = std::min<long long>(std::min<long long>(k, l),
                                      std::min<long long>(r, b - r));
    return b - r - 2 * m;
}

CorrelationSeries gm_exact_eta(int k, int l, long long max_lag) {
    if (k < 1 || l < 1) throw std::invalid_argument("gm parameters must be >= 1");
    if (max_lag < 0) throw std::invalid_argument("negative max_lag");
    const long long b = k + l;
    const long long bound = max_lag + 2;
    MemoTable memo(bound);
    memo.put(0, Rational(1));
    // Base values from the m = 0, r = 1 and m = -1, r = b-1 instances:
    //   b eta(1) = alpha(1) eta(0) + alpha(b-1) eta(1), and symmetrically.
    Rational base = Rational(gm_alpha(k, l, 1)) /
                    Rational(b - gm_alpha(k, l, b - 1));
    memo.put(1, base);
    memo.put(-1, base);

    std::function<Rational(long long)> eta = [&](long long m) -> Rational {
        if (memo.contains(m)) return memo.get(m);
        long long r = m % b;
        if (r < 0) r += b;
        long long q = (m - r) / b;
        // r = 0 reduces to eta(bm) = eta(m): alpha(0) = b and alpha(b) = 0,
        // and the second term must not be evaluated (q+1 is m itself).
        Rational v = r == 0 ? eta(q)
                            : (Rational(gm_alpha(k, l, r)) * eta(q) +
                               Rational(gm_alpha(k, l, b - r)) * eta(q + 1)) /
                                  Rational(b);
        memo.put(m, v);
        return v;
    };
    return CorrelationSeries::exact(collect_real(eta, max_lag));
}

CorrelationSeries rs_exact_eta_theta(long long max_lag) {
    if (max_lag < 0) throw std::invalid_argument("negative max_lag");
    const long long bound = max_lag + 2;
    MemoTable eta_memo(bound), theta_memo(bound);
    const Rational quarter(1, 4);
    const Rational eta0(1), theta0(0);
    eta_memo.put(0, eta0);
    theta_memo.put(0, theta0);
    // theta(1) from the 4m+1 equation at m = 0 (sigma = +1):
    //   theta(1) = ((1-sigma)/4) eta(0) - (sigma/4) theta(0) + (1/4) theta(1)
    {
        Rational s(1);
        Rational rhs = (Rational(1) - s) * quarter * eta0 - s * quarter * theta0;
        theta_memo.put(1, rhs / (Rational(1) - quarter));
    }
    // theta(-1) from the 4m+3 equation at m = -1 (sigma = -1):
    //   theta(-1) = -((1+sigma)/4) eta(0) - (sigma/4) theta(-1) + (1/4) theta(0)
    {
        Rational s(-1);
        Rational rhs = -(Rational(1) + s) * quarter * eta0 + quarter * theta0;
        theta_memo.put(-1, rhs / (Rational(1) + s * quarter));
    }

    std::function<Rational(long long)> eta, theta;
    auto split = [](long long m, long long& q, long long& r) {
        r = m & 3;
        q = (m - r) / 4;
    };
    auto sigma = [](long long m) { return (m & 1) ? Rational(-1) : Rational(1); };

    eta = [&](long long n) -> Rational {
        if (eta_memo.contains(n)) return eta_memo.get(n);
        long long q, r;
        split(n, q, r);
        Rational s = sigma(q);
        Rational v;
        switch (r) {
            case 0: v = (Rational(1) + s) / Rational(2) * eta(q); break;
            case 2: v = Rational(0); break;
            case 1:
                v = (Rational(1) - s) * quarter * eta(q) +
                    s * quarter * theta(q) - quarter * theta(q + 1);
                break;
            default:
                v = (Rational(1) + s) * quarter * eta(q + 1) -
                    s * quarter * theta(q) + quarter * theta(q + 1);
                break;
        }
        eta_memo.put(n, v);
        return v;
    };
    theta = [&](long long n) -> Rational {
        if (theta_memo.contains(n)) return theta_memo.get(n);
        long long q, r;
        split(n, q, r);
        Rational s = sigma(q);
        Rational v;
        switch (r) {
            case 0: v = Rational(0); break;
            case 2: v = s / Rational(2) * theta(q) + Rational(1, 2) * theta(q + 1); break;
            case 1:
                v = (Rational(1) - s) * quarter * eta(q) -
                    s * quarter * theta(q) + quarter * theta(q + 1);
                break;
            default:
                v = -(Rational(1) + s) * quarter * eta(q + 1) -
                    s * quarter * theta(q) + quarter * theta(q + 1);
                break;
        }
        theta_memo.put(n, v);
        return v;
    };

    return CorrelationSeries::exact(collect_real(eta, max_lag),
                                    collect_real(theta, max_lag));
}

RatComplex periodic_eta(const PeriodicComb& comb, long long m) {
    const long long L = comb.period();
    if (L < 1) throw std::invalid_argument("periodic comb needs period >= 1");
    RatComplex acc;
    for (long long j = 0; j < L; ++j)
        acc = acc + comb.coefficient(j) * comb.coefficient(j - m).conj();
    return acc * RatComplex(Rational(1, L));
}

CorrelationSeries periodic_autocorrelation(const PeriodicComb& comb) {
    const long long L = comb.period();
    if (L < 1) throw std::invalid_argument("periodic comb needs period >= 1");
    std::vector<RatComplex> eta(static_cast<std::size_t>(2 * L + 1));
    for (long long m = -L; m <= L; ++m)
        eta[static_cast<std::size_t>(m + L)] = periodic_eta(comb, m);
    return CorrelationSeries::exact(std::move(eta));
}

RatComplex higher_order_correlation(const PeriodicComb& comb,
                                    const std::vector<long long>& lags) {
    if (lags.empty())
        throw std::invalid_argument("order-q correlation needs q-1 >= 1 lags");
    const long long L = comb.period();
    RatComplex acc;
    for (long long j = 0; j < L; ++j) {
        RatComplex term = comb.coefficient(j);
        for (long long m : lags) term = term * comb.coefficient(j + m);
        acc = acc + term;
    }
    return acc * RatComplex(Rational(1, L));
}

double wiener_sigma(const CorrelationSeries& series, long long N) {
    if (N < 0 || N > series.max_lag())
        throw std::invalid_argument("Sigma(N) needs lags up to N in the series");
    double acc = 0.0;
    for (long long n = -N; n <= N; ++n) acc += std::norm(series.eta(n));
    return acc;
}

Rational wiener_sigma_exact(const CorrelationSeries& series, long long N) {
    if (N < 0 || N > series.max_lag())
        throw std::invalid_argument("Sigma(N) needs lags up to N in the series");
    if (!series.has_exact_values())
        throw std::logic_error("exact Sigma(N) needs an exact series");
    Rational acc;
    for (long long n = -N; n <= N; ++n) acc += series.eta_exact(n).norm_sq();
    return acc;
}

namespace {

// Enumerates lag tuples in [0, bound]^count in lexicographic order.
bool next_tuple(std::vector<long long>& t, long long bound) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (t[i] < bound) {
            ++t[i];
            std::fill(t.begin() + i + 1, t.end(), 0);
            return true;
        }
    }
    return false;
}

}  // namespace

HomometryReport compare_correlations(const PeriodicComb& a, const PeriodicComb& b,
                                     int max_order, long long lag_bound) {
    if (max_order < 2) throw std::invalid_argument("max_order must be >= 2");
    if (a.period() != b.period())
        throw std::invalid_argument("combs must share the period");
    HomometryReport report;
    report.max_order = max_order;
    report.lag_bound = lag_bound;
    for (int q = 2; q <= max_order; ++q) {
        std::vector<long long> lags(static_cast<std::size_t>(q - 1), 0);
        bool equal = true;
        do {
            RatComplex va = higher_order_correlation(a, lags);
            RatComplex vb = higher_order_correlation(b, lags);
            if (!(va == vb)) {
                equal = false;
                if (!report.witness_lags) {
                    report.witness_lags = lags;
                    report.witness_order = q;
                    report.witness_a = va;
                    report.witness_b = vb;
                }
                break;
            }
        } while (next_tuple(lags, lag_bound));
        report.orders_checked.push_back(q);
        report.order_equal.push_back(equal);
    }
    return report;
}

}  // namespace diffract
