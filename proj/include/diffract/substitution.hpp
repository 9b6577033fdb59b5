#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace diffract {

using Complex = std::complex<double>;
using SymbolId = std::uint8_t;
using Word = std::vector<SymbolId>;

// A substitution rule on a finite alphabet, together with a complex weight
// per symbol. Symbols are abstract names; the same sequence can be re-weighted
// by building the comb with a different weight map.
class Substitution {
public:
    Substitution(std::vector<std::string> alphabet,
                 std::vector<std::vector<std::string>> rules,
                 std::vector<Complex> weights);

    std::size_t size() const { return alphabet_.size(); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::string& symbol_name(SymbolId s) const { return alphabet_.at(s); }
    SymbolId id_of(std::string_view name) const;  // throws on unknown symbol
    const Word& rule(SymbolId s) const { return rules_.at(s); }
    Complex weight(SymbolId s) const { return weights_.at(s); }
    std::map<std::string, Complex> weight_map() const;

    Word parse_word(const std::vector<std::string>& names) const;

    // One rewriting step: concatenation of the rule images in order.
    // Rejects the empty word.
    Word apply(const Word& word) const;
    Word apply_power(Word word, int power) const;

private:
    std::vector<std::string> alphabet_;
    std::vector<Word> rules_;
    std::vector<Complex> weights_;
    std::map<std::string, SymbolId, std::less<>> index_;
};

// A finite window of a symbolic sequence, indices n in [lo, lo+size-1].
// Fixed-point windows are centred on the seed (origin between indices -1
// and 0); the block map shortens the range by one on the right, so the
// range is kept explicit.
struct SymbolicWindow {
    std::vector<SymbolId> symbols;
    long long lo = 0;
    std::vector<std::string> alphabet;

    long long hi() const { return lo + static_cast<long long>(symbols.size()) - 1; }
    SymbolId at(long long n) const;
    // Half-length N of a symmetric window [-N, N]; throws if not symmetric.
    long long half_length() const;

    friend bool operator==(const SymbolicWindow&, const SymbolicWindow&) = default;
};

// A finite weighted Dirac comb, weights w(n) for n in [lo, lo+size-1].
struct WeightedComb {
    std::vector<Complex> weights;
    long long lo = 0;
    std::string provenance;

    long long hi() const { return lo + static_cast<long long>(weights.size()) - 1; }
    Complex at(long long n) const;
    long long half_length() const;
    bool all_real() const;
};

// --- substitution-engine operations ---------------------------------------

// True iff (left,right) occurs as a two-letter factor of the language and
// rule^power reproduces the pair at the centre, i.e. rule^power(left) ends
// in `left` and rule^power(right) starts with `right`.
bool check_legal_seed(const Substitution& rule, SymbolId left, SymbolId right,
                      int power);

// Central block of rule^(power*generations)(left|right). The returned window
// covers every index the expansion determines on both sides of the origin.
SymbolicWindow iterate_fixed_point(const Substitution& rule, SymbolId left,
                                   SymbolId right, int power, int generations);

// Closed forms, values in {+1, -1}.
int tm_symbol(long long n);                     // n >= 0
int gm_symbol(int k, int l, long long n);       // n >= 0
int rs_symbol(long long n);                     // all n

// Two-sided windows over the signed binary alphabet {"1", "1b"}.
// tm/gm extend the one-sided fixed point by mirroring (w(-i-1) = v(i));
// rs uses its recursion, valid for every integer index.
SymbolicWindow tm_window(long long half_length);
SymbolicWindow gm_window(int k, int l, long long half_length);
SymbolicWindow rs_window(long long half_length);
SymbolicWindow pd_window(long long half_length);  // by rewriting, seed a|a

// Sliding 2-block map: unequal neighbours -> "a", equal -> "b".
// Output covers [lo, hi-1] of the input window.
SymbolicWindow block_map(const SymbolicWindow& window);

SymbolicWindow central_window(const SymbolicWindow& window, long long half_length);

WeightedComb make_comb(const SymbolicWindow& window,
                       const std::map<std::string, Complex>& weights);

// --- named rules -----------------------------------------------------------

Substitution period_doubling_rule(Complex h_plus = 1.0, Complex h_minus = 0.0);
Substitution thue_morse_rule();
Substitution generalized_morse_rule(int k, int l);
// a -> b^(k-1) a b^(l-1) b,  b -> b^(k-1) a b^(l-1) a
Substitution generalized_pd_rule(int k, int l);
// Quaternary rule; weights carry the binary reduction a,c -> +1, b,d -> -1.
Substitution rudin_shapiro_rule();

// Signed combs used throughout the tests and the CLI.
WeightedComb tm_comb(long long half_length);
WeightedComb gm_comb(int k, int l, long long half_length);
WeightedComb rs_comb(long long half_length);
WeightedComb pd_comb(Complex h_plus, Complex h_minus, long long half_length);

}  // namespace diffract
