#include "diffract/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace diffract {

namespace {

// Factor enumeration bound from the design notes: the two-letter factor set
// of a primitive rule stabilises after finitely many rounds; we cap the
// search at 12 rounds.
constexpr int kFactorSearchBound = 12;

[[noreturn]] void throw_unknown(std::string_view name) {
    throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
}

}  // namespace

Substitution::Substitution(std::vector<std::string> alphabet,
                           std::vector<std::vector<std::string>> rules,
                           std::vector<Complex> weights)
    : alphabet_(std::move(alphabet)), weights_(std::move(weights)) {
    if (alphabet_.empty()) throw std::invalid_argument("empty alphabet");
    if (alphabet_.size() > 255) throw std::invalid_argument("alphabet too large");
    if (rules.size() != alphabet_.size() || weights_.size() != alphabet_.size())
        throw std::invalid_argument("every alphabet symbol needs a rule and a weight");
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (!index_.emplace(alphabet_[i], static_cast<SymbolId>(i)).second)
            throw std::invalid_argument("duplicate symbol '" + alphabet_[i] + "'");
    }
    rules_.reserve(rules.size());
    for (const auto& image : rules) {
        if (image.empty()) throw std::invalid_argument("empty rule image");
        Word w;
        w.reserve(image.size());
        for (const auto& name : image) w.push_back(id_of(name));
        rules_.push_back(std::move(w));
    }
}

SymbolId Substitution::id_of(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw_unknown(name);
    return it->second;
}

std::map<std::string, Complex> Substitution::weight_map() const {
    std::map<std::string, Complex> m;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) m[alphabet_[i]] = weights_[i];
    return m;
}

Word Substitution::parse_word(const std::vector<std::string>& names) const {
    Word w;
    w.reserve(names.size());
    for (const auto& name : names) w.push_back(id_of(name));
    return w;
}

Word Substitution::apply(const Word& word) const {
    if (word.empty()) throw std::invalid_argument("cannot rewrite the empty word");
    std::size_t len = 0;
    for (SymbolId s : word) {
        if (s >= rules_.size()) throw std::invalid_argument("symbol id out of range");
        len += rules_[s].size();
    }
    Word out;
    out.reserve(len);
    for (SymbolId s : word) {
        const Word& image = rules_[s];
        out.insert(out.end(), image.begin(), image.end());
    }
    return out;
}

Word Substitution::apply_power(Word word, int power) const {
    if (power < 0) throw std::invalid_argument("negative rewriting power");
    for (int i = 0; i < power; ++i) word = apply(word);
    return word;
}

SymbolId SymbolicWindow::at(long long n) const {
    if (n < lo || n > hi()) throw std::out_of_range("window index out of range");
    return symbols[static_cast<std::size_t>(n - lo)];
}

long long SymbolicWindow::half_length() const {
    if (lo > 0 || hi() != -lo)
        throw std::logic_error("window is not symmetric around the origin");
    return -lo;
}

Complex WeightedComb::at(long long n) const {
    if (n < lo || n > hi()) throw std::out_of_range("comb index out of range");
    return weights[static_cast<std::size_t>(n - lo)];
}

long long WeightedComb::half_length() const {
    if (lo > 0 || hi() != -lo)
        throw std::logic_error("comb is not symmetric around the origin");
    return -lo;
}

bool WeightedComb::all_real() const {
    return std::all_of(weights.begin(), weights.end(),
                       [](Complex w) { return w.imag() == 0.0; });
}

namespace {

using Pair = std::pair<SymbolId, SymbolId>;

// Two-letter factors of images and of the expansions of known factors,
// iterated to a fixed point (bounded). For primitive rules this is the
// complete set of legal two-letter words.
std::set<Pair> two_factor_language(const Substitution& rule) {
    std::set<Pair> within;
    for (SymbolId s = 0; s < rule.size(); ++s) {
        const Word& image = rule.rule(s);
        for (std::size_t i = 0; i + 1 < image.size(); ++i)
            within.insert({image[i], image[i + 1]});
    }
    std::set<Pair> factors = within;
    for (int round = 0; round < kFactorSearchBound; ++round) {
        std::set<Pair> next = factors;
        for (const auto& [u, v] : factors)
            next.insert({rule.rule(u).back(), rule.rule(v).front()});
        if (next == factors) break;
        factors = std::move(next);
    }
    return factors;
}

SymbolId iterate_map(const Substitution& rule, SymbolId s, int power, bool first) {
    for (int i = 0; i < power; ++i) {
        const Word& image = rule.rule(s);
        s = first ? image.front() : image.back();
    }
    return s;
}

}  // namespace

bool check_legal_seed(const Substitution& rule, SymbolId left, SymbolId right,
                      int power) {
    if (power < 1) throw std::invalid_argument("power must be >= 1");
    if (left >= rule.size() || right >= rule.size()) return false;
    auto factors = two_factor_language(rule);
    if (!factors.count({left, right})) return false;
    return iterate_map(rule, left, power, /*first=*/false) == left &&
           iterate_map(rule, right, power, /*first=*/true) == right;
}

SymbolicWindow iterate_fixed_point(const Substitution& rule, SymbolId left,
                                   SymbolId right, int power, int generations) {
    if (generations < 0) throw std::invalid_argument("negative generation count");
    if (!check_legal_seed(rule, left, right, power))
        throw std::invalid_argument(
            "seed " + rule.symbol_name(left) + "|" + rule.symbol_name(right) +
            " is not legal for this rule at power " + std::to_string(power));
    Word lword{left}, rword{right};
    lword = rule.apply_power(std::move(lword), power * generations);
    rword = rule.apply_power(std::move(rword), power * generations);
    SymbolicWindow w;
    w.alphabet = rule.alphabet();
    w.lo = -static_cast<long long>(lword.size());
    w.symbols = std::move(lword);
    w.symbols.insert(w.symbols.end(), rword.begin(), rword.end());
    return w;
}

int tm_symbol(long long n) {
    if (n < 0)
        throw std::invalid_argument(
            "tm_symbol is one-sided; negative indices come from the mirror rule");
    // binary descent: v(2n) = v(n), v(2n+1) = -v(n)
    int sign = 1;
    while (n > 0) {
        if (n & 1) sign = -sign;
        n >>= 1;
    }
    return sign;
}

int gm_symbol(int k, int l, long long n) {
    if (k < 1 || l < 1) throw std::invalid_argument("gm parameters must be >= 1");
    if (n < 0)
        throw std::invalid_argument(
            "gm_symbol is one-sided; negative indices come from the mirror rule");
    const long long b = k + l;
    int sign = 1;
    while (n > 0) {
        long long r = n % b;
        if (r >= k) sign = -sign;
        n /= b;
    }
    return sign;
}

int rs_symbol(long long n) {
    // w(4n+l) = w(n) for l in {0,1}, (-1)^(n+l) w(n) for l in {2,3};
    // base values w(0) = 1, w(-1) = -1 (the only self-referential indices).
    int sign = 1;
    while (n != 0 && n != -1) {
        long long l = n & 3;  // remainder in {0,1,2,3}, floor division
        long long q = (n - l) / 4;
        if (l >= 2 && ((q + l) & 1)) sign = -sign;
        n = q;
    }
    return n == 0 ? sign : -sign;
}

namespace {

const std::vector<std::string> kSignedAlphabet = {"1", "1b"};

SymbolicWindow signed_window(long long half_length, int (*one_sided)(long long),
                             bool mirror) {
    if (half_length < 1) throw std::invalid_argument("half_length must be >= 1");
    SymbolicWindow w;
    w.alphabet = kSignedAlphabet;
    w.lo = -half_length;
    w.symbols.resize(static_cast<std::size_t>(2 * half_length + 1));
    for (long long n = -half_length; n <= half_length; ++n) {
        long long i = mirror && n < 0 ? -n - 1 : n;
        w.symbols[static_cast<std::size_t>(n + half_length)] =
            one_sided(i) > 0 ? 0 : 1;
    }
    return w;
}

}  // namespace

SymbolicWindow tm_window(long long half_length) {
    return signed_window(half_length, &tm_symbol, /*mirror=*/true);
}

SymbolicWindow gm_window(int k, int l, long long half_length) {
    if (half_length < 1) throw std::invalid_argument("half_length must be >= 1");
    SymbolicWindow w;
    w.alphabet = kSignedAlphabet;
    w.lo = -half_length;
    w.symbols.resize(static_cast<std::size_t>(2 * half_length + 1));
    for (long long n = -half_length; n <= half_length; ++n) {
        long long i = n < 0 ? -n - 1 : n;
        w.symbols[static_cast<std::size_t>(n + half_length)] =
            gm_symbol(k, l, i) > 0 ? 0 : 1;
    }
    return w;
}

SymbolicWindow rs_window(long long half_length) {
    return signed_window(half_length, &rs_symbol, /*mirror=*/false);
}

SymbolicWindow pd_window(long long half_length) {
    if (half_length < 1) throw std::invalid_argument("half_length must be >= 1");
    Substitution pd = period_doubling_rule();
    SymbolId a = pd.id_of("a");
    int generations = 1;
    long long len = 4;  // |rho^2(a)| per generation of rho^2
    while (len - 1 < half_length) {
        len *= 4;
        ++generations;
    }
    return central_window(iterate_fixed_point(pd, a, a, 2, generations),
                          half_length);
}

SymbolicWindow block_map(const SymbolicWindow& window) {
    if (window.alphabet.size() != 2)
        throw std::invalid_argument("block map expects a two-letter window");
    if (window.symbols.size() < 2)
        throw std::invalid_argument("block map needs a window of length >= 2");
    SymbolicWindow out;
    out.alphabet = {"a", "b"};
    out.lo = window.lo;
    out.symbols.resize(window.symbols.size() - 1);
    for (std::size_t i = 0; i + 1 < window.symbols.size(); ++i)
        out.symbols[i] = window.symbols[i] != window.symbols[i + 1] ? 0 : 1;
    return out;
}

SymbolicWindow central_window(const SymbolicWindow& window, long long half_length) {
    if (half_length < 0) throw std::invalid_argument("negative half_length");
    if (window.lo > -half_length || window.hi() < half_length)
        throw std::invalid_argument("window too short for requested central block");
    SymbolicWindow out;
    out.alphabet = window.alphabet;
    out.lo = -half_length;
    auto first = window.symbols.begin() + static_cast<std::size_t>(-half_length - window.lo);
    out.symbols.assign(first, first + static_cast<std::size_t>(2 * half_length + 1));
    return out;
}

WeightedComb make_comb(const SymbolicWindow& window,
                       const std::map<std::string, Complex>& weights) {
    std::vector<Complex> table(window.alphabet.size());
    for (std::size_t i = 0; i < window.alphabet.size(); ++i) {
        auto it = weights.find(window.alphabet[i]);
        if (it == weights.end())
            throw std::invalid_argument("no weight for symbol '" + window.alphabet[i] + "'");
        if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag()))
            throw std::invalid_argument("non-finite weight for symbol '" +
                                        window.alphabet[i] + "'");
        table[i] = it->second;
    }
    WeightedComb comb;
    comb.lo = window.lo;
    comb.weights.resize(window.symbols.size());
    for (std::size_t i = 0; i < window.symbols.size(); ++i)
        comb.weights[i] = table[window.symbols[i]];
    return comb;
}

Substitution period_doubling_rule(Complex h_plus, Complex h_minus) {
    return Substitution({"a", "b"}, {{"a", "b"}, {"a", "a"}}, {h_plus, h_minus});
}

Substitution thue_morse_rule() {
    return Substitution({"1", "1b"}, {{"1", "1b"}, {"1b", "1"}}, {1.0, -1.0});
}

Substitution generalized_morse_rule(int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("gm parameters must be >= 1");
    std::vector<std::string> plus_image, minus_image;
    for (int i = 0; i < k; ++i) plus_image.push_back("1");
    for (int i = 0; i < l; ++i) plus_image.push_back("1b");
    for (int i = 0; i < k; ++i) minus_image.push_back("1b");
    for (int i = 0; i < l; ++i) minus_image.push_back("1");
    return Substitution({"1", "1b"}, {plus_image, minus_image}, {1.0, -1.0});
}

Substitution generalized_pd_rule(int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("gpd parameters must be >= 1");
    std::vector<std::string> a_image, b_image;
    for (int i = 0; i < k - 1; ++i) a_image.push_back("b");
    a_image.push_back("a");
    for (int i = 0; i < l - 1; ++i) a_image.push_back("b");
    a_image.push_back("b");
    for (int i = 0; i < k - 1; ++i) b_image.push_back("b");
    b_image.push_back("a");
    for (int i = 0; i < l - 1; ++i) b_image.push_back("b");
    b_image.push_back("a");
    return Substitution({"a", "b"}, {a_image, b_image}, {1.0, 0.0});
}

Substitution rudin_shapiro_rule() {
    return Substitution({"a", "b", "c", "d"},
                        {{"a", "c"}, {"d", "c"}, {"a", "b"}, {"d", "b"}},
                        {1.0, -1.0, 1.0, -1.0});
}

namespace {

WeightedComb signed_comb(SymbolicWindow window, std::string provenance) {
    WeightedComb comb = make_comb(window, {{"1", 1.0}, {"1b", -1.0}});
    comb.provenance = std::move(provenance);
    return comb;
}

}  // namespace

WeightedComb tm_comb(long long half_length) {
    return signed_comb(tm_window(half_length), "tm");
}

WeightedComb gm_comb(int k, int l, long long half_length) {
    return signed_comb(gm_window(k, l, half_length),
                       "gm:" + std::to_string(k) + "," + std::to_string(l));
}

WeightedComb rs_comb(long long half_length) {
    return signed_comb(rs_window(half_length), "rs");
}

WeightedComb pd_comb(Complex h_plus, Complex h_minus, long long half_length) {
    WeightedComb comb = make_comb(pd_window(half_length),
                                  {{"a", h_plus}, {"b", h_minus}});
    comb.provenance = "pd";
    return comb;
}

}  // namespace diffract
