/* semantics.cpp */

#include "prodcheck/semantics.hpp"

#include <algorithm>

#include "prodcheck/linsolve.hpp"

namespace prodcheck {

namespace detail {

size_t level_size(size_t nletters, unsigned level1based) {
    size_t size = 1;
    for (unsigned i = 0; i < level1based; ++i) {
        if (size > kMaxOracleEntries / nletters + 1)
            throw LimitError("bounded oracle would exceed the dense storage cap; "
                             "reduce the depth or the alphabet");
        size *= nletters;
    }
    return size;
}

void check_oracle_size(size_t nletters, unsigned depth) {
    size_t total = 0;
    size_t size = 1;
    for (unsigned l = 1; l <= depth; ++l) {
        size = level_size(nletters, 1) * size;
        total += size;
        if (total > kMaxOracleEntries)
            throw LimitError("bounded oracle would exceed the dense storage cap; "
                             "reduce the depth or the alphabet");
    }
}

size_t word_index(const Alphabet& a, const Word& w) {
    size_t idx = 0;
    for (const auto& letter : w) {
        auto d = a.index_of(letter);
        if (!d) throw DomainError("word uses letter \"" + letter + "\" outside the alphabet");
        idx = idx * a.letters.size() + *d;
    }
    return idx;
}

} // namespace detail

// ---------------------------------------------------------------------------
// truncated semantic-domain elements

namespace {

template <typename T, typename Value>
T zero_levels(Alphabet a, unsigned depth, const Value& fill) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    validate_alphabet(a, "semantic element");
    size_t nletters = a.letters.size();
    detail::check_oracle_size(nletters, depth);
    T out;
    out.alphabet = std::move(a);
    out.depth = depth;
    size_t size = 1;
    for (unsigned l = 1; l <= depth; ++l) {
        size *= nletters;
        out.level.emplace_back(size, fill);
    }
    return out;
}

} // namespace

TraceSubdist TraceSubdist::zeros(Alphabet a, unsigned depth) {
    return zero_levels<TraceSubdist>(std::move(a), depth, Rational(0));
}

void TraceSubdist::set(const Word& w, Rational v) {
    if (w.empty() || w.size() > depth) throw DomainError("word length outside the truncation");
    level[w.size() - 1][detail::word_index(alphabet, w)] = std::move(v);
}

TraceMultiset TraceMultiset::zeros(Alphabet a, unsigned depth) {
    return zero_levels<TraceMultiset>(std::move(a), depth, mpz_class(0));
}

void TraceMultiset::set(const Word& w, mpz_class v) {
    if (w.empty() || w.size() > depth) throw DomainError("word length outside the truncation");
    level[w.size() - 1][detail::word_index(alphabet, w)] = std::move(v);
}

Language Language::empty(Alphabet a, unsigned depth) {
    return zero_levels<Language>(std::move(a), depth, uint8_t(0));
}

void Language::insert(const Word& w) {
    if (w.empty() || w.size() > depth) throw DomainError("word length outside the truncation");
    level[w.size() - 1][detail::word_index(alphabet, w)] = 1;
}

Rational TraceSubdist::at(const Word& w) const {
    if (w.empty()) throw DomainError("traces are non-empty words");
    if (w.size() > depth) return 0;
    return level[w.size() - 1][detail::word_index(alphabet, w)];
}

Rational TraceSubdist::total_mass() const {
    Rational total(0);
    for (const auto& lvl : level)
        for (const auto& p : lvl) total += p;
    return total;
}

mpz_class TraceMultiset::at(const Word& w) const {
    if (w.empty()) throw DomainError("traces are non-empty words");
    if (w.size() > depth) return 0;
    return level[w.size() - 1][detail::word_index(alphabet, w)];
}

bool Language::contains(const Word& w) const {
    if (w.empty()) return false; // languages are over non-empty words
    if (w.size() > depth) return false;
    return level[w.size() - 1][detail::word_index(alphabet, w)] != 0;
}

size_t Language::size() const {
    size_t count = 0;
    for (const auto& lvl : level)
        for (uint8_t b : lvl) count += b != 0;
    return count;
}

std::vector<Word> Language::words() const {
    std::vector<Word> out;
    size_t nletters = alphabet.letters.size();
    for (size_t l = 0; l < level.size(); ++l) {
        for (size_t idx = 0; idx < level[l].size(); ++idx) {
            if (!level[l][idx]) continue;
            Word w(l + 1);
            size_t rest = idx;
            for (size_t pos = l + 1; pos-- > 0;) {
                w[pos] = alphabet.letters[rest % nletters];
                rest /= nletters;
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// bounded oracles: per-level dynamic programming, exact throughout

TraceSubdist mc_bounded_traces(const LabelledMC& mc, const std::string& state, unsigned depth) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    CompiledMc c = compile_mc(mc);
    uint32_t x = c.index_of(state);
    size_t nletters = c.alphabet.letters.size();
    detail::check_oracle_size(nletters, depth);

    TraceSubdist out;
    out.alphabet = c.alphabet;
    out.depth = depth;

    std::vector<std::vector<Rational>> prev(c.n, std::vector<Rational>(nletters, Rational(0)));
    for (uint32_t s = 0; s < c.n; ++s) prev[s][c.label[s]] = c.succ_check[s];
    out.level.push_back(prev[x]);

    for (unsigned l = 2; l <= depth; ++l) {
        size_t prev_size = prev[0].size();
        std::vector<std::vector<Rational>> cur(c.n,
                                               std::vector<Rational>(prev_size * nletters, Rational(0)));
        for (uint32_t s = 0; s < c.n; ++s) {
            size_t base = c.label[s] * prev_size;
            for (const auto& [t, p] : c.succ[s])
                for (size_t idx = 0; idx < prev_size; ++idx)
                    if (prev[t][idx] != 0) cur[s][base + idx] += p * prev[t][idx];
        }
        out.level.push_back(cur[x]);
        prev = std::move(cur);
    }
    return out;
}

TraceMultiset mfa_bounded_multiset(const Mfa& mfa, const std::string& state, unsigned depth) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    CompiledMfa c = compile_mfa(mfa);
    uint32_t y = c.index_of(state);
    size_t nletters = c.alphabet.letters.size();
    detail::check_oracle_size(nletters, depth);

    TraceMultiset out;
    out.alphabet = c.alphabet;
    out.depth = depth;

    std::vector<std::vector<mpz_class>> prev(c.n, std::vector<mpz_class>(nletters, 0));
    for (uint32_t s = 0; s < c.n; ++s)
        for (size_t a = 0; a < nletters; ++a) prev[s][a] = c.check[s][a];
    out.level.push_back(prev[y]);

    for (unsigned l = 2; l <= depth; ++l) {
        size_t prev_size = prev[0].size();
        std::vector<std::vector<mpz_class>> cur(c.n, std::vector<mpz_class>(prev_size * nletters, 0));
        for (uint32_t s = 0; s < c.n; ++s) {
            for (size_t a = 0; a < nletters; ++a) {
                size_t base = a * prev_size;
                for (const auto& [t, m] : c.delta[s][a])
                    for (size_t idx = 0; idx < prev_size; ++idx)
                        if (prev[t][idx] != 0) cur[s][base + idx] += m * prev[t][idx];
            }
        }
        out.level.push_back(cur[y]);
        prev = std::move(cur);
    }
    return out;
}

namespace {

template <typename Step>
Language bounded_language(const Alphabet& alphabet, size_t nstates, uint32_t start, unsigned depth,
                          Step step) {
    // step(s, a, prev) -> whether some run from s on letter a accepts into prev
    if (depth < 1) throw DomainError("depth must be >= 1");
    size_t nletters = alphabet.letters.size();
    detail::check_oracle_size(nletters, depth);

    Language out;
    out.alphabet = alphabet;
    out.depth = depth;

    std::vector<std::vector<uint8_t>> prev(nstates, std::vector<uint8_t>(nletters, 0));
    for (uint32_t s = 0; s < nstates; ++s)
        for (size_t a = 0; a < nletters; ++a) prev[s][a] = step(s, a, nullptr, 0);
    out.level.push_back(prev[start]);

    for (unsigned l = 2; l <= depth; ++l) {
        size_t prev_size = prev[0].size();
        std::vector<std::vector<uint8_t>> cur(nstates,
                                              std::vector<uint8_t>(prev_size * nletters, 0));
        for (uint32_t s = 0; s < nstates; ++s)
            for (size_t a = 0; a < nletters; ++a)
                for (size_t idx = 0; idx < prev_size; ++idx)
                    cur[s][a * prev_size + idx] = step(s, a, &prev, idx);
        out.level.push_back(cur[start]);
        prev = std::move(cur);
    }
    return out;
}

} // namespace

Language dfa_bounded_language(const Dfa& dfa, const std::string& state, unsigned depth) {
    CompiledDfa c = compile_dfa(dfa);
    uint32_t y = c.index_of(state);
    return bounded_language(c.alphabet, c.n, y, depth,
                            [&](uint32_t s, size_t a, const std::vector<std::vector<uint8_t>>* prev,
                                size_t idx) -> uint8_t {
                                if (!prev) return c.delta[s][a].second ? 1 : 0;
                                return (*prev)[c.delta[s][a].first][idx];
                            });
}

Language nfa_bounded_language(const Nfa& nfa, const std::string& state, unsigned depth) {
    CompiledNfa c = compile_nfa(nfa);
    uint32_t y = c.index_of(state);
    return bounded_language(c.alphabet, c.n, y, depth,
                            [&](uint32_t s, size_t a, const std::vector<std::vector<uint8_t>>* prev,
                                size_t idx) -> uint8_t {
                                if (!prev) return c.check[s][a] ? 1 : 0;
                                for (uint32_t t : c.delta[s][a])
                                    if ((*prev)[t][idx]) return 1;
                                return 0;
                            });
}

// ---------------------------------------------------------------------------
// inference maps

namespace {

// index permutation for level arrays when the two alphabets list the same
// letters in different orders
std::vector<uint32_t> letter_map(const Alphabet& from, const Alphabet& to) {
    std::vector<uint32_t> map(from.letters.size());
    for (size_t i = 0; i < from.letters.size(); ++i) {
        auto j = to.index_of(from.letters[i]);
        if (!j) throw DomainError("inference requires a shared alphabet");
        map[i] = *j;
    }
    return map;
}

size_t remap_index(size_t idx, size_t len, size_t nletters, const std::vector<uint32_t>& map) {
    std::vector<uint32_t> digits(len);
    for (size_t pos = len; pos-- > 0;) {
        digits[pos] = map[idx % nletters];
        idx /= nletters;
    }
    size_t out = 0;
    for (size_t pos = 0; pos < len; ++pos) out = out * nletters + digits[pos];
    return out;
}

} // namespace

Rational infer_q_prob(const TraceSubdist& sigma, const Language& lang) {
    if (sigma.depth != lang.depth)
        throw DomainError("infer_q_prob: operands truncated at different depths");
    if (!sigma.alphabet.same_letters(lang.alphabet))
        throw DomainError("infer_q_prob: alphabet mismatch");
    bool same_order = sigma.alphabet == lang.alphabet;
    auto map = same_order ? std::vector<uint32_t>{} : letter_map(sigma.alphabet, lang.alphabet);

    Rational total(0);
    size_t nletters = sigma.alphabet.letters.size();
    for (size_t l = 0; l < sigma.level.size(); ++l) {
        for (size_t idx = 0; idx < sigma.level[l].size(); ++idx) {
            const Rational& p = sigma.level[l][idx];
            if (p == 0) continue;
            size_t j = same_order ? idx : remap_index(idx, l + 1, nletters, map);
            if (lang.level[l][j]) total += p;
        }
    }
    return total;
}

Rational infer_q_expected(const TraceSubdist& sigma, const TraceMultiset& mu) {
    if (sigma.depth != mu.depth)
        throw DomainError("infer_q_expected: operands truncated at different depths");
    if (!sigma.alphabet.same_letters(mu.alphabet))
        throw DomainError("infer_q_expected: alphabet mismatch");
    bool same_order = sigma.alphabet == mu.alphabet;
    auto map = same_order ? std::vector<uint32_t>{} : letter_map(sigma.alphabet, mu.alphabet);

    Rational total(0);
    size_t nletters = sigma.alphabet.letters.size();
    for (size_t l = 0; l < sigma.level.size(); ++l) {
        for (size_t idx = 0; idx < sigma.level[l].size(); ++idx) {
            const Rational& p = sigma.level[l][idx];
            if (p == 0) continue;
            size_t j = same_order ? idx : remap_index(idx, l + 1, nletters, map);
            if (mu.level[l][j] != 0) total += Rational(mu.level[l][j]) * p;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// value iteration

Rational product_value_iterate(const CompiledProduct& c, uint32_t init, unsigned steps) {
    if (init >= c.n) throw DomainError("product_value_iterate: state out of range");
    std::vector<Rational> value(c.n, Rational(0));
    for (unsigned k = 0; k < steps; ++k) {
        std::vector<Rational> next(c.n);
        for (size_t s = 0; s < c.n; ++s) {
            Rational acc = c.weight_check[s];
            for (const auto& [t, w] : c.weight[s]) acc += w * value[t];
            next[s] = std::move(acc);
        }
        value = std::move(next);
    }
    return value[init];
}

Rational product_value_iterate(const WeightedProduct& p, const PairState& init, unsigned steps) {
    CompiledProduct c = compile_product(p);
    return product_value_iterate(c, c.index_of(init), steps);
}

// ---------------------------------------------------------------------------
// exact solve

namespace {

// iterative Tarjan; returns SCCs in reverse topological order of the
// condensation (every inter-SCC edge goes from a later element into an
// earlier one)
std::vector<std::vector<uint32_t>> tarjan_sccs(const std::vector<std::vector<uint32_t>>& adj) {
    size_t n = adj.size();
    std::vector<uint32_t> index(n, UINT32_MAX), low(n, 0);
    std::vector<uint8_t> on_stack(n, 0);
    std::vector<uint32_t> stack;
    std::vector<std::vector<uint32_t>> sccs;
    uint32_t counter = 0;

    struct Frame {
        uint32_t v;
        size_t edge;
    };
    for (uint32_t root = 0; root < n; ++root) {
        if (index[root] != UINT32_MAX) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                uint32_t w = adj[f.v][f.edge++];
                if (index[w] == UINT32_MAX) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<uint32_t> scc;
                    for (;;) {
                        uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        scc.push_back(w);
                        if (w == f.v) break;
                    }
                    sccs.push_back(std::move(scc));
                }
                uint32_t v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    return sccs;
}

} // namespace

ExtValue product_value_exact(const CompiledProduct& c, uint32_t init) {
    if (init >= c.n) throw DomainError("product_value_exact: state out of range");

    // forward reachability from init through positive weights
    std::vector<uint8_t> reach(c.n, 0);
    {
        std::vector<uint32_t> todo{init};
        reach[init] = 1;
        while (!todo.empty()) {
            uint32_t s = todo.back();
            todo.pop_back();
            for (const auto& [t, w] : c.weight[s])
                if (!reach[t]) {
                    reach[t] = 1;
                    todo.push_back(t);
                }
        }
    }

    // prune: keep only reachable states from which CHECK is graph-reachable
    std::vector<std::vector<uint32_t>> radj(c.n);
    std::vector<uint8_t> alive(c.n, 0);
    std::vector<uint32_t> todo;
    for (uint32_t s = 0; s < c.n; ++s) {
        if (!reach[s]) continue;
        for (const auto& [t, w] : c.weight[s])
            if (reach[t]) radj[t].push_back(s);
        if (c.weight_check[s] != 0 && !alive[s]) {
            alive[s] = 1;
            todo.push_back(s);
        }
    }
    while (!todo.empty()) {
        uint32_t s = todo.back();
        todo.pop_back();
        for (uint32_t p : radj[s])
            if (!alive[p]) {
                alive[p] = 1;
                todo.push_back(p);
            }
    }
    if (!alive[init]) return ExtValue(Rational(0));

    // condense the live subgraph
    std::vector<uint32_t> live;
    std::vector<uint32_t> live_index(c.n, UINT32_MAX);
    for (uint32_t s = 0; s < c.n; ++s)
        if (alive[s]) {
            live_index[s] = static_cast<uint32_t>(live.size());
            live.push_back(s);
        }
    std::vector<std::vector<uint32_t>> adj(live.size());
    for (size_t i = 0; i < live.size(); ++i)
        for (const auto& [t, w] : c.weight[live[i]])
            if (alive[t]) adj[i].push_back(live_index[t]);

    auto sccs = tarjan_sccs(adj);

    std::vector<Rational> value(live.size(), Rational(0));
    std::vector<uint8_t> divergent(live.size(), 0);
    std::vector<uint32_t> scc_of(live.size(), 0);
    for (uint32_t k = 0; k < sccs.size(); ++k)
        for (uint32_t v : sccs[k]) scc_of[v] = k;

    for (uint32_t k = 0; k < sccs.size(); ++k) {
        auto& members = sccs[k];
        std::sort(members.begin(), members.end()); // deterministic system layout
        size_t m = members.size();
        std::vector<uint32_t> pos(live.size(), UINT32_MAX);
        for (size_t i = 0; i < m; ++i) pos[members[i]] = static_cast<uint32_t>(i);

        bool inf = false;
        Matrix a(m, std::vector<Rational>(m, Rational(0)));
        std::vector<Rational> b(m, Rational(0));
        for (size_t i = 0; i < m && !inf; ++i) {
            uint32_t s = live[members[i]];
            a[i][i] = 1;
            b[i] = c.weight_check[s];
            for (const auto& [t, w] : c.weight[s]) {
                if (!alive[t]) continue; // pruned states carry value 0
                uint32_t lt = live_index[t];
                if (pos[lt] != UINT32_MAX) {
                    a[i][pos[lt]] -= w;
                } else if (divergent[lt]) {
                    inf = true; // positive weight into a divergent state
                    break;
                } else {
                    b[i] += w * value[lt];
                }
            }
        }

        if (!inf) {
            bool solved = false;
            if (auto sol = solve_linear_system(a, b)) {
                bool nonneg = true;
                for (const auto& v : *sol) nonneg = nonneg && v >= 0;
                if (nonneg) {
                    for (size_t i = 0; i < m; ++i) value[members[i]] = (*sol)[i];
                    solved = true;
                }
            }
            if (!solved) {
                auto lp = lexmin_nonnegative_solution(a, b);
                if (lp.feasible)
                    for (size_t i = 0; i < m; ++i) value[members[i]] = lp.point[i];
                else
                    inf = true;
            }
        }
        if (inf)
            for (uint32_t v : members) divergent[v] = 1;
    }

    uint32_t li = live_index[init];
    if (divergent[li]) return ExtValue::infinity();
    return ExtValue(value[li]);
}

ExtValue product_value_exact(const WeightedProduct& p, const PairState& init) {
    CompiledProduct c = compile_product(p);
    return product_value_exact(c, c.index_of(init));
}

} // namespace prodcheck
