/* product.hpp -- coalgebraic products of an MC with a DFA or MFA, and the
 * reduction to a reward-annotated Markov chain. */

#ifndef PRODCHECK_PRODUCT_HPP_
#define PRODCHECK_PRODUCT_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodcheck/models.hpp"
#include "prodcheck/rational.hpp"

namespace prodcheck {

using PairState = std::pair<std::string, std::string>; // (mc state, spec state)

std::string pair_name(const PairState& s); // "x,y1"

/// Weighted transition system over pair states. Rows are not substochastic in
/// general: the MC x MFA law multiplies multiplicities into probabilities and
/// row sums may exceed 1. Zero weights are not stored.
struct WeightedProduct {
    Alphabet alphabet;
    std::vector<PairState> states;
    std::map<PairState, std::map<PairState, Rational>> weight;
    std::map<PairState, Rational> weight_check;

    bool has_state(const PairState& s) const;
    Rational row_total(const PairState& s) const; // outgoing weight incl. CHECK
};

/// Standard MC x DFA product: the DFA step is driven by the source state's
/// letter; mass to CHECK survives only on accepting outputs. Rows stay
/// substochastic. When `initials` is given, only pairs reachable from them are
/// constructed. `max_states` caps the product size (0 = unlimited).
WeightedProduct mc_dfa_product(const LabelledMC& mc, const Dfa& dfa,
                               const std::optional<std::vector<PairState>>& initials = std::nullopt,
                               size_t max_states = 0);

/// MC x MFA product: weight((x,y))((x',y')) = delta(y)(label x)(y') * succ(x)(x')
/// and weight to CHECK = delta(y)(label x)(CHECK) * succ(x)(CHECK).
WeightedProduct mc_mfa_product(const LabelledMC& mc, const Mfa& mfa,
                               const std::optional<std::vector<PairState>>& initials = std::nullopt,
                               size_t max_states = 0);

/// MC with multiplicative rewards. Probability rows sum to exactly 1; states
/// with no outgoing product weight are wired to an absorbing sink with reward
/// 0. The expected multiplicative reward to CHECK equals the product's value
/// semantics.
struct RewardMC {
    std::vector<PairState> states;
    bool has_sink = false; // absorbing, reward 0, self-loop probability 1
    std::map<PairState, std::map<PairState, Rational>> prob;
    std::map<PairState, Rational> prob_check;
    std::map<PairState, Rational> prob_sink;
    std::map<PairState, Rational> reward; // total outgoing weight of the product row
};

RewardMC normalize_to_reward_mc(const WeightedProduct& p);

/// steps-th Kleene iterate of the reward MC's value recursion
///   v(s) = reward(s) * (prob(s)(CHECK) + sum prob(s)(s') v(s'))
/// from bottom; equals product_value_iterate on the originating product.
Rational reward_mc_value_iterate(const RewardMC& rmc, const PairState& init, unsigned steps);

// compiled form shared by the solver and the iterator
struct CompiledProduct {
    size_t n = 0;
    std::vector<PairState> names;
    std::vector<std::vector<std::pair<uint32_t, Rational>>> weight; // positive entries only
    std::vector<Rational> weight_check;

    uint32_t index_of(const PairState& s) const;
};

CompiledProduct compile_product(const WeightedProduct& p);

} // namespace prodcheck

#endif // PRODCHECK_PRODUCT_HPP_
