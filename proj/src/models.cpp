/* models.cpp */

#include "prodcheck/models.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace prodcheck {

std::string word_str(const Word& w) {
    std::string out;
    for (const auto& letter : w) out += letter;
    return out;
}

std::optional<uint32_t> Alphabet::index_of(const std::string& letter) const {
    for (size_t i = 0; i < letters.size(); ++i)
        if (letters[i] == letter) return static_cast<uint32_t>(i);
    return std::nullopt;
}

bool Alphabet::same_letters(const Alphabet& o) const {
    std::set<std::string> a(letters.begin(), letters.end());
    std::set<std::string> b(o.letters.begin(), o.letters.end());
    return a == b;
}

void validate_alphabet(const Alphabet& a, const std::string& owner) {
    if (a.letters.empty())
        throw ValidationError(owner + ": alphabet is empty");
    std::set<std::string> seen;
    for (const auto& l : a.letters) {
        if (l.empty()) throw ValidationError(owner + ": empty letter name");
        if (!seen.insert(l).second)
            throw ValidationError(owner + ": duplicate letter \"" + l + "\"");
    }
}

namespace {

std::optional<uint32_t> find_state(const std::vector<std::string>& names, const std::string& s) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<uint32_t>(i);
    return std::nullopt;
}

void check_state_list(const std::vector<std::string>& states, const std::string& owner) {
    if (states.empty()) throw ValidationError(owner + ": no states");
    std::set<std::string> seen;
    for (const auto& s : states) {
        if (s.empty()) throw ValidationError(owner + ": empty state name");
        if (s == kCheck) throw ValidationError(owner + ": state name \"CHECK\" is reserved");
        if (!seen.insert(s).second)
            throw ValidationError(owner + ": duplicate state \"" + s + "\"");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// validation

std::string ValidationReport::str() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (const auto& v : violations) {
        if (&v != &violations.front()) out << "\n";
        out << v.rule;
    }
    return out.str();
}

ValidationReport validate_mc(const LabelledMC& mc) {
    ValidationReport report;
    auto flag = [&](const std::string& state, std::string rule) {
        report.violations.push_back({state, std::move(rule)});
    };

    try {
        check_state_list(mc.states, "mc");
        validate_alphabet(mc.alphabet, "mc");
    } catch (const ValidationError& e) {
        flag("", e.what());
        return report;
    }

    for (const auto& s : mc.states) {
        auto lab = mc.label.find(s);
        if (lab == mc.label.end()) {
            flag(s, "missing label at " + s);
        } else if (!mc.alphabet.index_of(lab->second)) {
            flag(s, "label \"" + lab->second + "\" at " + s + " is not in the alphabet");
        }

        Rational mass(0);
        auto row = mc.trans.find(s);
        if (row != mc.trans.end()) {
            for (const auto& [target, p] : row->second) {
                if (target != kCheck && !find_state(mc.states, target))
                    flag(s, "unknown successor \"" + target + "\" at " + s);
                if (p < 0)
                    flag(s, "negative probability at " + s + " -> " + target);
                mass += p;
            }
        }
        if (mass > 1) flag(s, "mass exceeds 1 at " + s);
    }
    for (const auto& [s, _] : mc.label)
        if (!find_state(mc.states, s)) flag(s, "label for unknown state \"" + s + "\"");
    for (const auto& [s, _] : mc.trans)
        if (!find_state(mc.states, s)) flag(s, "transitions for unknown state \"" + s + "\"");

    return report;
}

void validate_dfa(const Dfa& dfa) {
    check_state_list(dfa.states, "dfa");
    validate_alphabet(dfa.alphabet, "dfa");
    for (const auto& s : dfa.states) {
        auto row = dfa.delta.find(s);
        if (row == dfa.delta.end())
            throw ValidationError("dfa: missing transitions at " + s);
        for (const auto& l : dfa.alphabet.letters) {
            auto e = row->second.find(l);
            if (e == row->second.end())
                throw ValidationError("dfa: missing transition at " + s + " on \"" + l + "\"");
            if (!find_state(dfa.states, e->second.to))
                throw ValidationError("dfa: unknown successor \"" + e->second.to + "\" at " + s);
        }
        for (const auto& [l, _] : row->second)
            if (!dfa.alphabet.index_of(l))
                throw ValidationError("dfa: transition on unknown letter \"" + l + "\" at " + s);
    }
    for (const auto& [s, _] : dfa.delta)
        if (!find_state(dfa.states, s))
            throw ValidationError("dfa: transitions for unknown state \"" + s + "\"");
}

void validate_nfa(const Nfa& nfa) {
    check_state_list(nfa.states, "nfa");
    validate_alphabet(nfa.alphabet, "nfa");
    for (const auto& [s, row] : nfa.delta) {
        if (!find_state(nfa.states, s))
            throw ValidationError("nfa: transitions for unknown state \"" + s + "\"");
        for (const auto& [l, targets] : row) {
            if (!nfa.alphabet.index_of(l))
                throw ValidationError("nfa: transition on unknown letter \"" + l + "\" at " + s);
            std::set<std::string> seen;
            for (const auto& t : targets) {
                if (t != kCheck && !find_state(nfa.states, t))
                    throw ValidationError("nfa: unknown successor \"" + t + "\" at " + s);
                if (!seen.insert(t).second)
                    throw ValidationError("nfa: duplicate successor \"" + t + "\" at " + s);
            }
        }
    }
    // missing rows and missing letters mean the empty successor set
}

void validate_mfa(const Mfa& mfa) {
    check_state_list(mfa.states, "mfa");
    validate_alphabet(mfa.alphabet, "mfa");
    for (const auto& [s, row] : mfa.delta) {
        if (!find_state(mfa.states, s))
            throw ValidationError("mfa: transitions for unknown state \"" + s + "\"");
        for (const auto& [l, targets] : row) {
            if (!mfa.alphabet.index_of(l))
                throw ValidationError("mfa: transition on unknown letter \"" + l + "\" at " + s);
            for (const auto& [t, _] : targets)
                if (t != kCheck && !find_state(mfa.states, t))
                    throw ValidationError("mfa: unknown successor \"" + t + "\" at " + s);
        }
    }
}

// ---------------------------------------------------------------------------
// compiled forms

uint32_t CompiledMc::index_of(const std::string& state) const {
    if (auto i = find_state(names, state)) return *i;
    throw DomainError("unknown mc state \"" + state + "\"");
}

uint32_t CompiledDfa::index_of(const std::string& state) const {
    if (auto i = find_state(names, state)) return *i;
    throw DomainError("unknown dfa state \"" + state + "\"");
}

uint32_t CompiledNfa::index_of(const std::string& state) const {
    if (auto i = find_state(names, state)) return *i;
    throw DomainError("unknown nfa state \"" + state + "\"");
}

uint32_t CompiledMfa::index_of(const std::string& state) const {
    if (auto i = find_state(names, state)) return *i;
    throw DomainError("unknown mfa state \"" + state + "\"");
}

CompiledMc compile_mc(const LabelledMC& mc) {
    auto report = validate_mc(mc);
    if (!report.ok()) throw ValidationError("invalid mc: " + report.str());

    CompiledMc out;
    out.n = mc.states.size();
    out.alphabet = mc.alphabet;
    out.names = mc.states;
    out.label.resize(out.n);
    out.succ.resize(out.n);
    out.succ_check.assign(out.n, Rational(0));
    for (size_t i = 0; i < out.n; ++i) {
        out.label[i] = *mc.alphabet.index_of(mc.label.at(mc.states[i]));
        auto row = mc.trans.find(mc.states[i]);
        if (row == mc.trans.end()) continue;
        for (const auto& [target, p] : row->second) {
            if (p == 0) continue;
            if (target == kCheck)
                out.succ_check[i] = p;
            else
                out.succ[i].emplace_back(*find_state(mc.states, target), p);
        }
    }
    return out;
}

CompiledDfa compile_dfa(const Dfa& dfa) {
    validate_dfa(dfa);
    CompiledDfa out;
    out.n = dfa.states.size();
    out.alphabet = dfa.alphabet;
    out.names = dfa.states;
    out.delta.assign(out.n, {});
    for (size_t i = 0; i < out.n; ++i) {
        const auto& row = dfa.delta.at(dfa.states[i]);
        out.delta[i].resize(dfa.alphabet.letters.size());
        for (size_t a = 0; a < dfa.alphabet.letters.size(); ++a) {
            const auto& e = row.at(dfa.alphabet.letters[a]);
            out.delta[i][a] = {*find_state(dfa.states, e.to), e.accept};
        }
    }
    return out;
}

CompiledNfa compile_nfa(const Nfa& nfa) {
    validate_nfa(nfa);
    CompiledNfa out;
    out.n = nfa.states.size();
    out.alphabet = nfa.alphabet;
    out.names = nfa.states;
    out.delta.assign(out.n, std::vector<std::vector<uint32_t>>(nfa.alphabet.letters.size()));
    out.check.assign(out.n, std::vector<bool>(nfa.alphabet.letters.size(), false));
    for (size_t i = 0; i < out.n; ++i) {
        auto row = nfa.delta.find(nfa.states[i]);
        if (row == nfa.delta.end()) continue;
        for (const auto& [l, targets] : row->second) {
            uint32_t a = *nfa.alphabet.index_of(l);
            for (const auto& t : targets) {
                if (t == kCheck)
                    out.check[i][a] = true;
                else
                    out.delta[i][a].push_back(*find_state(nfa.states, t));
            }
            std::sort(out.delta[i][a].begin(), out.delta[i][a].end());
        }
    }
    return out;
}

CompiledMfa compile_mfa(const Mfa& mfa) {
    validate_mfa(mfa);
    CompiledMfa out;
    out.n = mfa.states.size();
    out.alphabet = mfa.alphabet;
    out.names = mfa.states;
    out.delta.assign(out.n, std::vector<std::vector<std::pair<uint32_t, uint64_t>>>(
                                mfa.alphabet.letters.size()));
    out.check.assign(out.n, std::vector<uint64_t>(mfa.alphabet.letters.size(), 0));
    for (size_t i = 0; i < out.n; ++i) {
        auto row = mfa.delta.find(mfa.states[i]);
        if (row == mfa.delta.end()) continue;
        for (const auto& [l, targets] : row->second) {
            uint32_t a = *mfa.alphabet.index_of(l);
            for (const auto& [t, m] : targets) {
                if (m == 0) continue;
                if (t == kCheck)
                    out.check[i][a] = m;
                else
                    out.delta[i][a].emplace_back(*find_state(mfa.states, t), m);
            }
            std::sort(out.delta[i][a].begin(), out.delta[i][a].end());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// determinize

std::string subset_state_name(std::vector<std::string> members) {
    std::string out = "{";
    for (size_t i = 0; i < members.size(); ++i) {
        if (i) out += ",";
        out += members[i];
    }
    out += "}";
    return out;
}

Dfa determinize(const Nfa& nfa, const std::optional<std::vector<std::string>>& initials,
                size_t max_states) {
    CompiledNfa c = compile_nfa(nfa);
    size_t nletters = c.alphabet.letters.size();

    std::vector<std::vector<uint32_t>> seeds;
    if (initials) {
        for (const auto& s : *initials) seeds.push_back({c.index_of(s)});
    } else {
        for (uint32_t i = 0; i < c.n; ++i) seeds.push_back({i});
    }

    std::map<std::vector<uint32_t>, uint32_t> subset_id; // sorted member list -> dfa index
    std::vector<std::vector<uint32_t>> subsets;
    std::deque<uint32_t> queue;
    auto intern = [&](std::vector<uint32_t> members) {
        auto it = subset_id.find(members);
        if (it != subset_id.end()) return it->second;
        if (max_states && subsets.size() >= max_states)
            throw LimitError("determinize: subset count exceeds the configured cap");
        uint32_t id = static_cast<uint32_t>(subsets.size());
        subset_id.emplace(members, id);
        subsets.push_back(std::move(members));
        queue.push_back(id);
        return id;
    };
    for (auto& s : seeds) intern(std::move(s));

    struct Row {
        std::vector<std::pair<uint32_t, bool>> edges; // per letter: (subset, accept)
    };
    std::vector<Row> rows;
    while (!queue.empty()) {
        uint32_t id = queue.front();
        queue.pop_front();
        std::vector<uint32_t> members = subsets[id]; // copy: subsets may reallocate
        if (rows.size() <= id) rows.resize(id + 1);
        rows[id].edges.resize(nletters);
        for (size_t a = 0; a < nletters; ++a) {
            std::set<uint32_t> next;
            bool accept = false;
            for (uint32_t m : members) {
                for (uint32_t t : c.delta[m][a]) next.insert(t);
                accept = accept || c.check[m][a];
            }
            uint32_t to = intern(std::vector<uint32_t>(next.begin(), next.end()));
            rows[id].edges[a] = {to, accept};
        }
    }

    Dfa dfa;
    dfa.alphabet = c.alphabet;
    for (const auto& members : subsets) {
        std::vector<std::string> names;
        for (uint32_t m : members) names.push_back(c.names[m]);
        dfa.states.push_back(subset_state_name(std::move(names)));
    }
    for (size_t id = 0; id < subsets.size(); ++id) {
        auto& row = dfa.delta[dfa.states[id]];
        for (size_t a = 0; a < nletters; ++a) {
            auto [to, accept] = rows[id].edges[a];
            row[c.alphabet.letters[a]] = {dfa.states[to], accept};
        }
    }
    return dfa;
}

Mfa embed_nfa_as_mfa(const Nfa& nfa) {
    validate_nfa(nfa);
    Mfa mfa;
    mfa.states = nfa.states;
    mfa.alphabet = nfa.alphabet;
    for (const auto& [s, row] : nfa.delta) {
        for (const auto& [l, targets] : row) {
            auto& cell = mfa.delta[s][l];
            for (const auto& t : targets) cell[t] = 1;
        }
    }
    return mfa;
}

// ---------------------------------------------------------------------------
// unambiguity via the self-product

AmbiguityReport check_unambiguous(const Nfa& nfa, unsigned depth,
                                  const std::optional<std::vector<std::string>>& initials) {
    if (depth < 1) throw DomainError("check_unambiguous: depth must be >= 1");
    CompiledNfa c = compile_nfa(nfa);
    size_t nletters = c.alphabet.letters.size();

    std::vector<uint32_t> starts;
    if (initials) {
        for (const auto& s : *initials) starts.push_back(c.index_of(s));
    } else {
        for (uint32_t i = 0; i < c.n; ++i) starts.push_back(i);
    }

    // node = (p, q, diverged); diverged records whether the two runs have
    // differed at any position so far
    auto encode = [&](uint32_t p, uint32_t q, bool d) { return (p * c.n + q) * 2 + (d ? 1 : 0); };
    size_t total = c.n * c.n * 2;
    std::vector<int8_t> seen(total, 0);
    struct Node {
        uint32_t p, q;
        bool d;
    };
    std::vector<Node> bfs;
    std::vector<int64_t> parent(total, -1);
    std::vector<uint32_t> via_letter(total, 0);

    for (uint32_t s : starts) {
        size_t e = encode(s, s, false);
        if (!seen[e]) {
            seen[e] = 1;
            parent[e] = -1;
            bfs.push_back({s, s, false});
        }
    }

    std::vector<size_t> dist(total, 0);
    for (size_t head = 0; head < bfs.size(); ++head) {
        Node cur = bfs[head];
        size_t cur_code = encode(cur.p, cur.q, cur.d);

        // a pair of runs that both step to CHECK on the same letter gives two
        // accepting runs on the same word; they are distinct iff diverged
        if (cur.d) {
            for (size_t a = 0; a < nletters; ++a) {
                if (c.check[cur.p][a] && c.check[cur.q][a]) {
                    AmbiguityReport report;
                    report.unambiguous = false;
                    Word w;
                    w.push_back(c.alphabet.letters[a]);
                    for (int64_t e = static_cast<int64_t>(cur_code); parent[e] >= 0;
                         e = parent[e])
                        w.push_back(c.alphabet.letters[via_letter[e]]);
                    std::reverse(w.begin(), w.end());
                    if (w.size() <= depth) report.witness = std::move(w);
                    return report;
                }
            }
        }

        for (size_t a = 0; a < nletters; ++a) {
            for (uint32_t np : c.delta[cur.p][a]) {
                for (uint32_t nq : c.delta[cur.q][a]) {
                    bool nd = cur.d || np != nq;
                    size_t e = encode(np, nq, nd);
                    if (seen[e]) continue;
                    seen[e] = 1;
                    parent[e] = static_cast<int64_t>(cur_code);
                    via_letter[e] = static_cast<uint32_t>(a);
                    dist[e] = dist[cur_code] + 1;
                    bfs.push_back({np, nq, nd});
                }
            }
        }
    }
    return {};
}

} // namespace prodcheck
