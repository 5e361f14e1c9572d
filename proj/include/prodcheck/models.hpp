/* models.hpp -- labelled Markov chains, DFA/NFA/MFA specifications, and the
 * operations on them: validation, determinization, NFA->MFA embedding and
 * unambiguity checking. */

#ifndef PRODCHECK_MODELS_HPP_
#define PRODCHECK_MODELS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prodcheck/rational.hpp"

namespace prodcheck {

/// Reserved state name for the distinguished termination/acceptance target.
inline constexpr const char* kCheck = "CHECK";

/// A word is a sequence of letter names; languages never contain the empty word.
using Word = std::vector<std::string>;

std::string word_str(const Word& w); // letters concatenated, "" for the empty word

struct Alphabet {
    std::vector<std::string> letters;

    std::optional<uint32_t> index_of(const std::string& letter) const;
    bool operator==(const Alphabet& o) const { return letters == o.letters; }

    /// Order-insensitive comparison; products only require equal letter sets.
    bool same_letters(const Alphabet& o) const;
};

/// Throws ValidationError unless letters are non-empty, distinct and non-"".
void validate_alphabet(const Alphabet& a, const std::string& owner);

/// Labelled Markov chain: every state carries one letter and a substochastic
/// successor map over states and CHECK. Rows with total mass < 1 are legal
/// (deadlock mass); no normalization is ever applied.
struct LabelledMC {
    std::vector<std::string> states;
    Alphabet alphabet;
    std::map<std::string, std::string> label;                      // state -> letter
    std::map<std::string, std::map<std::string, Rational>> trans;  // state -> (state|CHECK) -> prob
};

/// Mealy-style DFA: the acceptance bit sits on the transition output.
struct Dfa {
    struct Edge {
        std::string to;
        bool accept = false;
    };
    std::vector<std::string> states;
    Alphabet alphabet;
    std::map<std::string, std::map<std::string, Edge>> delta;      // state -> letter -> edge
};

/// NFA with set-valued successors; targets may include CHECK.
struct Nfa {
    std::vector<std::string> states;
    Alphabet alphabet;
    std::map<std::string, std::map<std::string, std::vector<std::string>>> delta;
};

/// Multiset finite automaton: successor multiplicities count parallel runs.
struct Mfa {
    std::vector<std::string> states;
    Alphabet alphabet;
    std::map<std::string, std::map<std::string, std::map<std::string, uint64_t>>> delta;
};

// ---------------------------------------------------------------------------
// validation

struct Violation {
    std::string state;
    std::string rule; // human-readable, names the offending rule
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

/// Checks substochasticity, label totality and key validity for every state.
/// Violations are the report content; this never throws.
ValidationReport validate_mc(const LabelledMC& mc);

void validate_dfa(const Dfa& dfa);  // throws ValidationError (totality, key validity)
void validate_nfa(const Nfa& nfa);  // throws ValidationError
void validate_mfa(const Mfa& mfa);  // throws ValidationError

// ---------------------------------------------------------------------------
// compiled (index-based) forms used by the semantics and product modules

struct CompiledMc {
    size_t n = 0;
    Alphabet alphabet;
    std::vector<std::string> names;
    std::vector<uint32_t> label;                                  // per state, letter index
    std::vector<std::vector<std::pair<uint32_t, Rational>>> succ; // per state, (state, prob)
    std::vector<Rational> succ_check;                             // per state, mass to CHECK

    uint32_t index_of(const std::string& state) const;
};

/// Validates and indexes; throws ValidationError when validate_mc reports.
CompiledMc compile_mc(const LabelledMC& mc);

struct CompiledDfa {
    size_t n = 0;
    Alphabet alphabet;
    std::vector<std::string> names;
    std::vector<std::vector<std::pair<uint32_t, bool>>> delta; // [state][letter] -> (to, accept)

    uint32_t index_of(const std::string& state) const;
};

CompiledDfa compile_dfa(const Dfa& dfa);

struct CompiledNfa {
    size_t n = 0;
    Alphabet alphabet;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<uint32_t>>> delta; // [state][letter] -> successor states
    std::vector<std::vector<bool>> check;                  // [state][letter] -> CHECK in successors

    uint32_t index_of(const std::string& state) const;
};

CompiledNfa compile_nfa(const Nfa& nfa);

struct CompiledMfa {
    size_t n = 0;
    Alphabet alphabet;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<std::pair<uint32_t, uint64_t>>>> delta; // [state][letter]
    std::vector<std::vector<uint64_t>> check;                                   // [state][letter]

    uint32_t index_of(const std::string& state) const;
};

CompiledMfa compile_mfa(const Mfa& mfa);

// ---------------------------------------------------------------------------
// operations

/// Canonical name of a subset state produced by determinize: "{y1,y2}" with
/// members sorted by their order in the NFA state list.
std::string subset_state_name(std::vector<std::string> members);

/// Subset construction. Explores only subsets reachable from the singleton
/// subsets of `initials` (all states when absent). A transition accepts iff
/// CHECK is among the NFA successors. `max_states` caps the subset count.
Dfa determinize(const Nfa& nfa,
                const std::optional<std::vector<std::string>>& initials = std::nullopt,
                size_t max_states = 0);

/// Multiplicity-1 image of an NFA; the multiset value of a word equals the
/// NFA's accepting-run count.
Mfa embed_nfa_as_mfa(const Nfa& nfa);

struct AmbiguityReport {
    bool unambiguous = true;
    std::optional<Word> witness; // shortest ambiguous word, when found within depth
};

/// Decides unambiguity exactly via reachability on the self-product; `depth`
/// only bounds the length of the reported witness word.
AmbiguityReport check_unambiguous(const Nfa& nfa, unsigned depth,
                                  const std::optional<std::vector<std::string>>& initials = std::nullopt);

} // namespace prodcheck

#endif // PRODCHECK_MODELS_HPP_
