/* natlaws.hpp -- the laws lab: finite commutative monoids, the weighting
 * functor F_A, construction/enumeration/certification of natural
 * transformations between such functors, the executable correctness criterion
 * for product laws, and the MC x NFA impossibility witness. */

#ifndef PRODCHECK_NATLAWS_HPP_
#define PRODCHECK_NATLAWS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prodcheck/rational.hpp"
#include "prodcheck/semantics.hpp"

namespace prodcheck::natlaws {

/// Finite commutative monoid given by an explicit operation table. All three
/// axioms are verified exhaustively at construction.
class FinMonoid {
public:
    static FinMonoid make(std::vector<std::string> elements,
                          std::vector<std::vector<std::string>> op_table, std::string zero);

    size_t size() const { return names_.size(); }
    uint32_t zero() const { return zero_; }
    uint32_t add(uint32_t a, uint32_t b) const { return op_[a * names_.size() + b]; }
    uint32_t nmul(const mpz_class& n, uint32_t a) const; // n-fold sum of a
    const std::string& name(uint32_t a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    uint32_t index_of(const std::string& name) const; // throws DomainError

    /// Smallest element whose orbit {0, a, 2a, ...} covers the monoid.
    std::optional<uint32_t> generator() const;

    struct CyclicShape {
        uint32_t generator = 0;
        unsigned n = 0;          // least n > 1 with n*gen = gen
        bool strict = false;     // (n-1)*gen != 0 as well
    };
    /// Shape of the generator orbit when it returns to the generator.
    std::optional<CyclicShape> cyclic_shape() const;

    /// N(v): least l with l*gen = v, for singly generated monoids.
    std::vector<unsigned> orbit_positions() const;

    std::vector<uint32_t> n_idempotents(const mpz_class& n) const; // {c | n*c = c}

private:
    std::vector<std::string> names_;
    std::vector<uint32_t> op_;
    uint32_t zero_ = 0;
};

// ---------------------------------------------------------------------------
// weight domains and F_A elements

/// A value in a weight domain: index into a finite monoid, or an exact
/// nonnegative rational (naturals embed as integral rationals).
using Val = std::variant<uint32_t, Rational>;

/// Element of F_A(<k>): a total map from the canonical k-element set.
using FaElem = std::vector<Val>;

/// Weight domain for a family's source or target: a finite monoid, (N, +, 0),
/// or (Q>=0, +, 0).
class Domain {
public:
    enum class Kind { finite, naturals, rationals };

    static Domain finite(FinMonoid m);
    static Domain naturals();
    static Domain rationals();

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    const FinMonoid& monoid() const;

    Val zero() const;
    Val add(const Val& a, const Val& b) const;
    Val nmul(const mpz_class& n, const Val& a) const;
    bool eq(const Val& a, const Val& b) const;
    bool is_zero(const Val& a) const { return eq(a, zero()); }
    std::string str(const Val& a) const;

    /// Entry pool for exhaustive bounded checks: every element (finite),
    /// 0..max_nat (naturals), or the fixed rational pool {0,1/4,1/3,1/2,1}.
    std::vector<Val> sample_values(unsigned max_nat) const;

private:
    Kind kind_ = Kind::naturals;
    std::optional<FinMonoid> monoid_;
};

/// Pushforward F_A(g): sums f over the fibers of g; preserves the total sum.
/// g maps <|f|> into <codomain_size> (0-based entries).
FaElem fa_apply(const Domain& a, const std::vector<uint32_t>& g, size_t codomain_size,
                const FaElem& f);
FaElem fa_apply(const FinMonoid& a, const std::vector<uint32_t>& g, size_t codomain_size,
                const FaElem& f);

// ---------------------------------------------------------------------------
// natural-transformation families

enum class FamilyKind { case1, case2, scaled, normalized, raw };

/// Explicit component table for one set size: entry `i` (radix-|A| encoding of
/// f over <k>) holds the output map over <k> as target-monoid indices.
using RawTable = std::vector<std::vector<uint32_t>>;

/// An evaluable family of maps lambda_<k>: F_A(<k>) -> F_B(<k>). Closed-form
/// kinds evaluate at any set size; raw families use their explicit tables and
/// otherwise the canonical extension determined by their component at <2>.
class NatTransFamily {
public:
    FamilyKind kind() const { return kind_; }
    const Domain& source() const { return source_; }
    const Domain& target() const { return target_; }

    FaElem component(size_t k, const FaElem& f) const;

    /// <2> component packed as T(p, q) = lambda_<2>(p, q)(first), row-major
    /// over source-monoid indices. Finite source and target only.
    std::vector<uint32_t> table2() const;

    std::string param_str() const; // parameter rendering for reports

    // construction (free functions are the public surface)
    friend NatTransFamily make_case1(Domain target, std::vector<Val> b);
    friend NatTransFamily make_case1_normalized(std::vector<Rational> b);
    friend NatTransFamily make_case2(FinMonoid a, FinMonoid b, std::vector<uint32_t> param);
    friend NatTransFamily make_scaled(std::vector<std::pair<Rational, Rational>> table);
    friend NatTransFamily make_scaled_const(Rational b);
    friend NatTransFamily make_normalized(std::vector<std::pair<Rational, Rational>> table);
    friend NatTransFamily make_raw(FinMonoid a, FinMonoid b, std::map<size_t, RawTable> tables);
    friend NatTransFamily family_from_table2(FinMonoid a, FinMonoid b,
                                             std::vector<uint32_t> table2);

private:
    NatTransFamily(FamilyKind kind, Domain source, Domain target)
        : kind_(kind), source_(std::move(source)), target_(std::move(target)) {}

    Val extend_at(const Val& own, const Val& rest) const; // <2>-determined extension

    FamilyKind kind_;
    Domain source_;
    Domain target_;
    std::vector<Val> param_;                               // case1/case2 tables
    std::vector<std::pair<Rational, Rational>> rat_table_; // scaled/normalized
    std::optional<Rational> rat_const_;                    // constant-b scaled family
    bool normalized_case1_ = false;
    unsigned case2_n_ = 0;
    std::vector<unsigned> orbit_;                          // N() table for case2
    std::map<size_t, RawTable> raw_;                       // raw kind
    std::vector<uint32_t> table2_;                         // canonical extension data
};

/// Case 1 of the singly-generated characterisation: source (N, +, 0), target
/// any domain; b is indexed by the total sum and must satisfy b(0) = 0.
/// Evaluates lambda(f)(x) = f(x)-fold sum of b(total).
NatTransFamily make_case1(Domain target, std::vector<Val> b);

/// The multiset-to-subdistribution instance: lambda(f)(x) =
/// f(x)/total * b(total) for positive totals; b values lie in [0, 1].
NatTransFamily make_case1_normalized(std::vector<Rational> b);

/// Case 2: source finite, singly generated, orbit returning to the generator
/// (least n > 1 with n*gen = gen and (n-1)*gen != 0). b maps {0..n-2} into
/// the n-idempotents of the target.
NatTransFamily make_case2(FinMonoid a, FinMonoid b, std::vector<uint32_t> param);

/// Rational scaling family lambda(f)(x) = f(x) * b(total); b(0) = 0.
NatTransFamily make_scaled(std::vector<std::pair<Rational, Rational>> table);
NatTransFamily make_scaled_const(Rational b);

/// Rational normalization family lambda(f)(x) = f(x)/total * b(total); b maps
/// into [0, 1].
NatTransFamily make_normalized(std::vector<std::pair<Rational, Rational>> table);

/// Family given by explicit component tables (finite monoids). Sizes without
/// a table evaluate through the canonical extension of the <2> table.
NatTransFamily make_raw(FinMonoid a, FinMonoid b, std::map<size_t, RawTable> tables);

/// Family determined by a packed <2> table T (row-major over A x A).
NatTransFamily family_from_table2(FinMonoid a, FinMonoid b, std::vector<uint32_t> table2);

// ---------------------------------------------------------------------------
// certification, extraction, enumeration

struct NaturalitySquare {
    size_t from = 0, to = 0;
    std::vector<uint32_t> g;
    FaElem f;
    FaElem lhs, rhs; // lambda(F_A(g) f) vs F_B(g)(lambda f)
    std::string str(const Domain& a, const Domain& b) const;
};

struct NaturalityResult {
    std::optional<NaturalitySquare> counterexample;
    bool natural() const { return !counterexample; }
};

/// Exhaustively checks lambda_Y . F_A(g) = F_B(g) . lambda_X for all functions
/// g between sets of size <= max_set_size, with f ranging over the full source
/// grid (finite) or entries bounded by max_total (naturals / rational pool).
NaturalityResult check_naturality(const NatTransFamily& family, unsigned max_set_size,
                                  unsigned max_total = 3);

struct ExtractedParam {
    FamilyKind shape = FamilyKind::case1; // case1 or case2
    unsigned case2_n = 0;
    std::vector<Val> b;
    std::string str(const Domain& target) const;
};

/// Recovers the closed-form parameter table of a (bounded-certified) natural
/// family whose source is (N,+,0) or a finite singly generated monoid with a
/// cycle, by evaluating components on the canonical probe elements. Throws
/// DomainError describing the violating square when the input is not natural
/// up to `certify_set_size`.
ExtractedParam extract_b(const NatTransFamily& family, unsigned max_total,
                         unsigned certify_set_size = 4, unsigned certify_max_total = 3);

struct EnumeratedFamily {
    std::vector<uint32_t> table2; // packed T
    NatTransFamily family;
};

/// All maps F_A(<2>) -> F_B(<2>) whose canonical extension passes the
/// exhaustive naturality check up to max_set_size (>= 3), in lexicographic
/// table order. Finite monoids only.
std::vector<EnumeratedFamily> enumerate_nat_trans(const FinMonoid& a, const FinMonoid& b,
                                                  unsigned max_set_size,
                                                  size_t max_candidates = size_t(1) << 22);

// ---------------------------------------------------------------------------
// executable correctness criterion for the product laws

/// One sampled input (nu, a, delta) for the MC x MFA law: nu is a finite
/// subdistribution over truncated trace subdistributions plus direct CHECK
/// mass, delta(a) a finite multiset over truncated trace multisets plus CHECK.
struct MfaCriterionInput {
    Alphabet alphabet;
    unsigned depth = 0;
    std::vector<std::pair<TraceSubdist, Rational>> nu;
    Rational nu_check;
    std::string letter;
    std::vector<std::pair<TraceMultiset, mpz_class>> delta;
    mpz_class delta_check;
};

struct MfaLawWeights {
    Rational check_weight;
    std::vector<std::vector<Rational>> pair_weight; // indexed [nu support][delta support]
};
using MfaLaw = std::function<MfaLawWeights(const MfaCriterionInput&)>;

MfaLawWeights mc_mfa_law(const MfaCriterionInput& in);           // the product law
MfaLawWeights mc_mfa_law_perturbed(const MfaCriterionInput& in); // one weight bumped by +1

struct DfaCriterionInput {
    Alphabet alphabet;
    unsigned depth = 0;
    std::vector<std::pair<TraceSubdist, Rational>> nu;
    Rational nu_check;
    std::string letter;
    Language lang;
    bool accept = false;
};

struct DfaLawWeights {
    Rational check_weight;
    std::vector<Rational> pair_weight; // indexed [nu support]
};
using DfaLaw = std::function<DfaLawWeights(const DfaCriterionInput&)>;

DfaLawWeights mc_dfa_law(const DfaCriterionInput& in);

struct CriterionReport {
    size_t checked = 0;
    std::optional<size_t> failed_index;
    Rational lhs, rhs; // sides of the first failing input
    bool pass() const { return !failed_index.has_value(); }
};

/// Evaluates both sides of the correctness equation exactly on each input.
CriterionReport check_criterion_mfa(const std::vector<MfaCriterionInput>& inputs,
                                    const MfaLaw& law = mc_mfa_law);
CriterionReport check_criterion_dfa(const std::vector<DfaCriterionInput>& inputs,
                                    const DfaLaw& law = mc_dfa_law);

/// Seeded input corpora: words of length <= 4 over {a, b}, entries from the
/// pool {0, 1/4, 1/3, 1/2, 1}, multiplicities <= 3.
std::vector<MfaCriterionInput> sample_mfa_criterion_inputs(size_t count, uint64_t seed);
std::vector<DfaCriterionInput> sample_dfa_criterion_inputs(size_t count, uint64_t seed);

// ---------------------------------------------------------------------------
// MC x NFA impossibility witness

struct NoGoReport {
    Rational r;
    std::string letter;
    Word word;
    std::string forced_check_shape; // shape forced for the CHECK weight
    std::string forced_pair_shape;  // shape forced for the pair weights
    Rational left, right;           // criterion equation on the witness input
    bool contradiction = false;
    Rational family1_left, family1_forced; // the first probe family agrees
};

/// Reproduces the impossibility argument for MC x NFA product laws: on the
/// Dirac-trace witness input the criterion equation's left side equals r while
/// the forced law shape yields 0.
NoGoReport no_go_witness(const Rational& r, const std::string& letter, const Word& word);

} // namespace prodcheck::natlaws

#endif // PRODCHECK_NATLAWS_HPP_
