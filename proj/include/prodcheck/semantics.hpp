/* semantics.hpp -- least-fixed-point semantics: bounded trace oracles for all
 * four model types, the inference maps, value iteration and the exact product
 * value solver with divergence detection. */

#ifndef PRODCHECK_SEMANTICS_HPP_
#define PRODCHECK_SEMANTICS_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "prodcheck/models.hpp"
#include "prodcheck/product.hpp"
#include "prodcheck/rational.hpp"

namespace prodcheck {

// Bounded semantic-domain elements are stored densely per word length: level k
// (0-based) holds all words of length k+1 in radix order over the alphabet.
// Desk-scale alphabets keep these arrays small; a hard cap guards against
// accidental blowups (|A|^depth growth).
inline constexpr size_t kMaxOracleEntries = size_t(1) << 22;

namespace detail {
size_t level_size(size_t nletters, unsigned level1based);
void check_oracle_size(size_t nletters, unsigned depth);
size_t word_index(const Alphabet& a, const Word& w); // radix encoding within its level
} // namespace detail

/// Depth-truncated subprobability distribution over non-empty traces.
struct TraceSubdist {
    Alphabet alphabet;
    unsigned depth = 0;
    std::vector<std::vector<Rational>> level; // level[k]: words of length k+1

    static TraceSubdist zeros(Alphabet a, unsigned depth);
    void set(const Word& w, Rational v);

    Rational at(const Word& w) const; // 0 beyond depth support
    Rational total_mass() const;
};

/// Depth-truncated multiset of traces (accepting-run counts per word).
struct TraceMultiset {
    Alphabet alphabet;
    unsigned depth = 0;
    std::vector<std::vector<mpz_class>> level;

    static TraceMultiset zeros(Alphabet a, unsigned depth);
    void set(const Word& w, mpz_class v);

    mpz_class at(const Word& w) const;
};

/// Depth-truncated language of non-empty words.
struct Language {
    Alphabet alphabet;
    unsigned depth = 0;
    std::vector<std::vector<uint8_t>> level;

    static Language empty(Alphabet a, unsigned depth);
    void insert(const Word& w);

    bool contains(const Word& w) const;
    std::vector<Word> words() const; // all members, shortest first, radix order
    size_t size() const;
};

/// Exact probability of terminating with trace w, for every |w| <= depth.
/// Monotone in depth (depth iterations of the MC's predicate transformer).
TraceSubdist mc_bounded_traces(const LabelledMC& mc, const std::string& state, unsigned depth);

/// Accepted words of length <= depth.
Language dfa_bounded_language(const Dfa& dfa, const std::string& state, unsigned depth);

/// Words of length <= depth with at least one accepting run.
Language nfa_bounded_language(const Nfa& nfa, const std::string& state, unsigned depth);

/// Exact accepting-run counts for words of length <= depth.
TraceMultiset mfa_bounded_multiset(const Mfa& mfa, const std::string& state, unsigned depth);

/// q(sigma, L) = sum of sigma over the language: truncated acceptance
/// probability, a lower bound of the true value.
Rational infer_q_prob(const TraceSubdist& sigma, const Language& lang);

/// q(sigma, mu) = sum over words of mu(w) * sigma(w): truncated expected
/// accepting-run count.
Rational infer_q_expected(const TraceSubdist& sigma, const TraceMultiset& mu);

/// steps-th Kleene iterate v_{k+1}(s) = w(s)(CHECK) + sum w(s)(s') v_k(s')
/// from v_0 = 0; monotone nondecreasing in steps.
Rational product_value_iterate(const WeightedProduct& p, const PairState& init, unsigned steps);
Rational product_value_iterate(const CompiledProduct& c, uint32_t init, unsigned steps);

/// Least fixed point of the product value recursion at `init`, or infinity
/// when the associated linear system admits no nonnegative solution.
///
/// Pipeline: restrict to states reachable from init through positive weights;
/// states that cannot reach CHECK are pruned at value 0; the rest is solved
/// SCC by SCC in reverse topological order, each SCC by fraction-free Gaussian
/// elimination with an exact-LP fallback (least solution via lexicographic
/// minimization). Divergence anywhere reachable makes the answer infinite.
ExtValue product_value_exact(const WeightedProduct& p, const PairState& init);
ExtValue product_value_exact(const CompiledProduct& c, uint32_t init);

} // namespace prodcheck

#endif // PRODCHECK_SEMANTICS_HPP_
