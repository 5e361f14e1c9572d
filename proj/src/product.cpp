/* product.cpp */

#include "prodcheck/product.hpp"

#include <deque>
#include <set>

namespace prodcheck {

std::string pair_name(const PairState& s) {
    return s.first + "," + s.second;
}

bool WeightedProduct::has_state(const PairState& s) const {
    for (const auto& t : states)
        if (t == s) return true;
    return false;
}

Rational WeightedProduct::row_total(const PairState& s) const {
    Rational total(0);
    if (auto row = weight.find(s); row != weight.end())
        for (const auto& [_, w] : row->second) total += w;
    if (auto w = weight_check.find(s); w != weight_check.end()) total += w->second;
    return total;
}

namespace {

void require_shared_alphabet(const Alphabet& mc, const Alphabet& spec) {
    if (!mc.same_letters(spec))
        throw DomainError("alphabet mismatch between the mc and the specification");
}

// Generic product exploration. `expand` receives a pair (x, y) and emits the
// successor weights; exploration is breadth-first from `initials`, or over the
// full state grid when no initials are given.
template <typename Spec, typename Expand>
WeightedProduct explore(const CompiledMc& mc, const Spec& spec,
                        const std::optional<std::vector<PairState>>& initials,
                        size_t max_states, Expand expand) {
    WeightedProduct out;
    out.alphabet = mc.alphabet;

    std::deque<std::pair<uint32_t, uint32_t>> queue;
    std::set<std::pair<uint32_t, uint32_t>> seen;
    auto push = [&](uint32_t x, uint32_t y) {
        if (seen.emplace(x, y).second) {
            if (max_states && seen.size() > max_states)
                throw LimitError("product exceeds the configured state cap");
            queue.emplace_back(x, y);
        }
    };

    if (initials) {
        for (const auto& [xs, ys] : *initials) push(mc.index_of(xs), spec.index_of(ys));
    } else {
        for (uint32_t x = 0; x < mc.n; ++x)
            for (uint32_t y = 0; y < spec.n; ++y) push(x, y);
    }

    bool reachability = initials.has_value();
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        PairState s{mc.names[x], spec.names[y]};
        out.states.push_back(s);

        auto emit_pair = [&](uint32_t nx, uint32_t ny, const Rational& w) {
            if (w == 0) return;
            out.weight[s][{mc.names[nx], spec.names[ny]}] += w;
            if (reachability) push(nx, ny);
        };
        auto emit_check = [&](const Rational& w) {
            if (w != 0) out.weight_check[s] += w;
        };
        expand(x, y, emit_pair, emit_check);
    }
    return out;
}

} // namespace

WeightedProduct mc_dfa_product(const LabelledMC& mc, const Dfa& dfa,
                               const std::optional<std::vector<PairState>>& initials,
                               size_t max_states) {
    require_shared_alphabet(mc.alphabet, dfa.alphabet);
    CompiledMc cm = compile_mc(mc);
    CompiledDfa cd = compile_dfa(dfa);

    return explore(cm, cd, initials, max_states,
                   [&](uint32_t x, uint32_t y, auto emit_pair, auto emit_check) {
                       // the DFA reads the letter emitted by the source MC state
                       uint32_t a = *cd.alphabet.index_of(cm.alphabet.letters[cm.label[x]]);
                       auto [ny, accept] = cd.delta[y][a];
                       for (const auto& [nx, p] : cm.succ[x]) emit_pair(nx, ny, p);
                       if (accept) emit_check(cm.succ_check[x]);
                   });
}

WeightedProduct mc_mfa_product(const LabelledMC& mc, const Mfa& mfa,
                               const std::optional<std::vector<PairState>>& initials,
                               size_t max_states) {
    require_shared_alphabet(mc.alphabet, mfa.alphabet);
    CompiledMc cm = compile_mc(mc);
    CompiledMfa cf = compile_mfa(mfa);

    return explore(cm, cf, initials, max_states,
                   [&](uint32_t x, uint32_t y, auto emit_pair, auto emit_check) {
                       uint32_t a = *cf.alphabet.index_of(cm.alphabet.letters[cm.label[x]]);
                       for (const auto& [ny, m] : cf.delta[y][a])
                           for (const auto& [nx, p] : cm.succ[x])
                               emit_pair(nx, ny, Rational(static_cast<unsigned long>(m)) * p);
                       if (cf.check[y][a] > 0)
                           emit_check(Rational(static_cast<unsigned long>(cf.check[y][a])) *
                                      cm.succ_check[x]);
                   });
}

RewardMC normalize_to_reward_mc(const WeightedProduct& p) {
    RewardMC out;
    out.states = p.states;
    for (const auto& s : p.states) {
        Rational total = p.row_total(s);
        out.reward[s] = total;
        if (total == 0) {
            out.has_sink = true;
            out.prob_sink[s] = 1;
            continue;
        }
        if (auto row = p.weight.find(s); row != p.weight.end())
            for (const auto& [t, w] : row->second) out.prob[s][t] = w / total;
        if (auto w = p.weight_check.find(s); w != p.weight_check.end())
            out.prob_check[s] = w->second / total;
    }
    return out;
}

Rational reward_mc_value_iterate(const RewardMC& rmc, const PairState& init, unsigned steps) {
    std::map<PairState, Rational> value;
    for (const auto& s : rmc.states) value[s] = 0;
    if (!value.count(init)) throw DomainError("unknown product state " + pair_name(init));

    for (unsigned k = 0; k < steps; ++k) {
        std::map<PairState, Rational> next;
        for (const auto& s : rmc.states) {
            Rational acc(0);
            if (auto w = rmc.prob_check.find(s); w != rmc.prob_check.end()) acc += w->second;
            if (auto row = rmc.prob.find(s); row != rmc.prob.end())
                for (const auto& [t, pr] : row->second) acc += pr * value.at(t);
            next[s] = rmc.reward.at(s) * acc; // sink contributes value 0
        }
        value = std::move(next);
    }
    return value.at(init);
}

uint32_t CompiledProduct::index_of(const PairState& s) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<uint32_t>(i);
    throw DomainError("unknown product state " + pair_name(s));
}

CompiledProduct compile_product(const WeightedProduct& p) {
    CompiledProduct out;
    out.n = p.states.size();
    out.names = p.states;
    out.weight.resize(out.n);
    out.weight_check.assign(out.n, Rational(0));

    std::map<PairState, uint32_t> index;
    for (uint32_t i = 0; i < out.n; ++i) index[p.states[i]] = i;

    for (const auto& [s, row] : p.weight) {
        auto is = index.find(s);
        if (is == index.end()) throw ValidationError("product row for undeclared state " + pair_name(s));
        for (const auto& [t, w] : row) {
            if (w < 0) throw ValidationError("negative product weight at " + pair_name(s));
            if (w == 0) continue;
            auto it = index.find(t);
            if (it == index.end())
                throw ValidationError("product edge to undeclared state " + pair_name(t));
            out.weight[is->second].emplace_back(it->second, w);
        }
    }
    for (const auto& [s, w] : p.weight_check) {
        auto is = index.find(s);
        if (is == index.end()) throw ValidationError("product row for undeclared state " + pair_name(s));
        if (w < 0) throw ValidationError("negative product weight at " + pair_name(s));
        out.weight_check[is->second] = w;
    }
    return out;
}

} // namespace prodcheck
