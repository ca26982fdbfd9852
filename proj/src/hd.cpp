/*
 * Copyright 2026 The hdkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hdkit/hd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "hdkit/errors.hpp"

namespace hdkit {

const char*
method_name(HdMethod m)
{
    switch (m) {
    case HdMethod::two_token: return "two_token";
    case HdMethod::one_token_safety_reach: return "one_token_safety_reach";
    case HdMethod::oracle: return "oracle";
    }
    return "?";
}

nlohmann::ordered_json
verdict_to_json(const HdVerdict& v)
{
    nlohmann::ordered_json j;
    j["verdict"] = v.is_hd ? "hd" : "not-hd";
    j["method"] = method_name(v.method);
    j["states"] = v.states;
    j["transitions"] = v.transitions;
    if (v.game) j["game_vertices"] = v.game->product.game.num_vertices();
    return j;
}

HdVerdict
decide_hd(const ParityAutomaton& a)
{
    auto r = std::make_shared<TokenGameResult>(wins_gk(a, TokenConfig{a.initial(), {a.initial(), a.initial()}}));
    HdVerdict v;
    v.is_hd = r->winner == Player::eve;
    v.method = HdMethod::two_token;
    v.states = a.num_states();
    v.transitions = a.num_transitions();
    v.game = std::move(r);
    return v;
}

HdVerdict
decide_hd_oracle(const ParityAutomaton& a)
{
    HdVerdict v;
    v.is_hd = decide_hd_reference(a).is_hd;
    v.method = HdMethod::oracle;
    v.states = a.num_states();
    v.transitions = a.num_transitions();
    return v;
}

ParityAutomaton
prune_everywhere(const ParityAutomaton& a)
{
    const auto q0 = a.initial();
    auto r = wins_gk(a, TokenConfig{q0, {q0, q0, q0}});
    if (r.winner != Player::eve) throw PreconditionError("Eve does not win the 2-token game");
    const auto& p = r.product;
    const auto& g = p.game;
    std::vector<bool> keep(a.num_transitions(), false), seen(g.num_vertices(), false);
    std::vector<std::uint32_t> stack{r.start};
    seen[r.start] = true;
    auto push = [&](std::uint32_t w) {
        if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
        }
    };
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        const auto& info = p.info[v];
        if (info.kind == 1) {
            for (auto e : g.out(v)) push(g.to(e));
        } else if (info.kind == 2) {
            auto w = g.to(r.solution.eve.choice[v]);
            keep[p.info[w].eve_t] = true;
            push(w);
        } else {
            // Adam's third token repeats Eve's transition
            HDKIT_ASSERT(info.p[2] == info.q, "mirrored token left Eve's token");
            auto mine = a.out(info.q, info.letter);
            auto idx = static_cast<std::size_t>(std::find(mine.begin(), mine.end(), info.eve_t) - mine.begin());
            const auto inner = a.out(info.p[0], info.letter).size() * a.out(info.p[1], info.letter).size();
            auto edges = g.out(v);
            for (std::size_t i = 0; i < edges.size(); i++) {
                if (i / inner == idx) push(g.to(edges[i]));
            }
        }
    }
    auto b = restrict_transitions(a, keep);
    for (TransId t = 0; t < b.automaton.num_transitions(); t++) {
        const auto& x = b.automaton.transition(t);
        const auto& y = a.transition(b.old_trans[t]);
        HDKIT_ASSERT(x.letter == y.letter && x.priority == y.priority && b.old_state[x.from] == y.from &&
                         b.old_state[x.to] == y.to,
                     "pruned automaton is not a subautomaton");
    }
    HDKIT_ASSERT(wins_everywhere(b.automaton, 2), "Eve does not win the 2-token game everywhere after pruning");
    HDKIT_ASSERT(simulation_equivalent(a, b.automaton), "pruning broke simulation equivalence");
    return b.automaton;
}

SafetyReachKind
safety_reach_kind(const ParityAutomaton& a)
{
    if (a.index_low() != 1 || a.index_high() != 2)
        throw PreconditionError("safety and reachability automata have index [1,2]");
    auto fits = [&](unsigned sink_prio) {
        std::vector<bool> sink(a.num_states(), true);
        for (auto& t : a.transitions()) {
            if (t.to != t.from || t.priority != sink_prio) sink[t.from] = false;
        }
        if (std::count(sink.begin(), sink.end(), true) > 1) return false;
        // the priority of the single step into the sink is irrelevant
        for (auto& t : a.transitions()) {
            if (!sink[t.from] && !sink[t.to] && t.priority == sink_prio) return false;
        }
        return true;
    };
    if (fits(1)) return SafetyReachKind::safety;
    if (fits(2)) return SafetyReachKind::reachability;
    throw PreconditionError("automaton is neither a safety nor a reachability automaton");
}

namespace {

struct PairWins
{
    TokenProduct product;
    ParitySolution solution;

    bool operator()(StateId q, StateId p) const { return solution.eve_wins(product.find(q, {p}, 0)); }
};

PairWins
g1_all_pairs(const ParityAutomaton& a)
{
    std::vector<TokenConfig> starts;
    for (StateId q = 0; q < a.num_states(); q++) {
        for (StateId p = 0; p < a.num_states(); p++) starts.push_back({q, {p}});
    }
    PairWins w;
    w.product = build_token_product(a, {&a}, starts, {});
    w.solution = solve_parity(w.product.game);
    return w;
}

} // namespace

std::vector<TransId>
safety_reach_choice(const ParityAutomaton& a)
{
    const auto kind = safety_reach_kind(a);
    const auto n = a.num_states(), letters = a.num_letters();
    auto win = g1_all_pairs(a);
    // on a letter, every candidate is language-maximal among the successors and HD itself
    std::vector<std::vector<TransId>> cand(n * letters);
    for (StateId x = 0; x < n; x++) {
        if (!win(x, x)) continue;
        for (LetterId l = 0; l < letters; l++) {
            auto row = a.out(x, l);
            for (auto t : row) {
                auto y = a.transition(t).to;
                if (!win(y, y)) continue;
                bool top = std::all_of(row.begin(), row.end(), [&](TransId u) { return win(y, a.transition(u).to); });
                if (top) cand[x * letters + l].push_back(t);
            }
        }
    }
    // reachability: from universal states Eve must head for the sink
    std::vector<std::uint32_t> rank(n, RANK_INF);
    if (kind == SafetyReachKind::reachability) {
        for (StateId x = 0; x < n; x++) {
            bool sink = true;
            for (LetterId l = 0; l < letters; l++) {
                for (auto t : a.out(x, l)) sink = sink && a.transition(t).to == x && a.transition(t).priority == 2;
            }
            if (sink) rank[x] = 0;
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (StateId x = 0; x < n; x++) {
                std::uint32_t worst = 0;
                for (LetterId l = 0; l < letters && worst != RANK_INF; l++) {
                    std::uint32_t best = RANK_INF;
                    for (auto t : cand[x * letters + l]) best = std::min(best, rank[a.transition(t).to]);
                    worst = std::max(worst, best);
                }
                if (worst != RANK_INF && worst + 1 < rank[x]) {
                    rank[x] = worst + 1;
                    changed = true;
                }
            }
        }
    }
    std::vector<TransId> choice(n * letters, NONE);
    for (std::size_t i = 0; i < cand.size(); i++) {
        for (auto t : cand[i]) {
            auto c = choice[i];
            if (c == NONE || rank[a.transition(t).to] < rank[a.transition(c).to]) choice[i] = t;
        }
    }
    return choice;
}

HdVerdict
decide_hd_safety_reach(const ParityAutomaton& a)
{
    safety_reach_kind(a);
    auto g1 = std::make_shared<TokenGameResult>(wins_gk(a, TokenConfig{a.initial(), {a.initial()}}));
    HdVerdict v;
    v.is_hd = g1->winner == Player::eve;
    v.method = HdMethod::one_token_safety_reach;
    v.states = a.num_states();
    v.transitions = a.num_transitions();
    v.game = g1;
    if (!v.is_hd) return v;
    auto choice = safety_reach_choice(a);
    const auto letters = a.num_letters();
    std::vector<bool> keep(a.num_transitions(), false), seen(a.num_states(), false);
    std::vector<StateId> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (LetterId l = 0; l < letters; l++) {
            auto t = choice[x * letters + l];
            HDKIT_ASSERT(t != NONE, "no language-maximal HD successor");
            keep[t] = true;
            auto y = a.transition(t).to;
            if (!seen[y]) {
                seen[y] = true;
                stack.push_back(y);
            }
        }
    }
    auto d = restrict_transitions(a, keep).automaton;
    HDKIT_ASSERT(d.is_deterministic(), "pruned automaton is not deterministic");
    HDKIT_ASSERT(!lasso_difference(a, a.initial(), d, d.initial(), 4), "pruned automaton changed the language");
    v.pruned = std::move(d);
    return v;
}

const char*
tristate_name(Tristate t)
{
    switch (t) {
    case Tristate::no: return "false";
    case Tristate::yes: return "true";
    case Tristate::unknown: return "unknown";
    }
    return "?";
}

Tristate
is_semantically_deterministic(const ParityAutomaton& a, std::size_t bound)
{
    std::map<std::pair<StateId, StateId>, Tristate> memo;
    auto equivalent = [&](StateId x, StateId y) {
        auto key = std::minmax(x, y);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Tristate r;
        if (simulates(a, x, a, y).winner == Player::eve && simulates(a, y, a, x).winner == Player::eve) {
            r = Tristate::yes;
        } else if (lasso_difference(a, x, a, y, bound)) {
            r = Tristate::no;
        } else {
            r = Tristate::unknown;
        }
        memo.emplace(key, r);
        return r;
    };
    Tristate result = Tristate::yes;
    for (StateId q = 0; q < a.num_states(); q++) {
        for (LetterId l = 0; l < a.num_letters(); l++) {
            auto row = a.out(q, l);
            for (std::size_t i = 0; i < row.size(); i++) {
                for (std::size_t j = i + 1; j < row.size(); j++) {
                    auto x = a.transition(row[i]).to, y = a.transition(row[j]).to;
                    if (x == y) continue;
                    auto r = equivalent(x, y);
                    if (r == Tristate::no) return r;
                    if (r == Tristate::unknown) result = r;
                }
            }
        }
    }
    return result;
}

LetterSplit
split_from_names(const ParityAutomaton& d)
{
    LetterSplit s;
    for (auto& name : d.letter_names()) {
        auto k = name.find('/');
        if (k == std::string::npos || name.find('/', k + 1) != std::string::npos)
            throw PreconditionError("letter '" + name + "' is not of the form in/out");
        s.emplace_back(name.substr(0, k), name.substr(k + 1));
    }
    return s;
}

LetterSplit
split_from_json(const ParityAutomaton& d, const nlohmann::json& j)
{
    if (!j.is_object()) throw ParseError("letter split must be a JSON object");
    LetterSplit s;
    for (auto& name : d.letter_names()) {
        auto it = j.find(name);
        if (it == j.end()) throw PreconditionError("letter split omits '" + name + "'");
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_string() || !(*it)[1].is_string())
            throw ParseError("letter split entries are [input, output] pairs");
        s.emplace_back((*it)[0].get<std::string>(), (*it)[1].get<std::string>());
    }
    if (j.size() != d.num_letters()) throw PreconditionError("letter split names letters outside the alphabet");
    return s;
}

ParityAutomaton
input_projection(const ParityAutomaton& d, const LetterSplit& split)
{
    if (!d.is_deterministic()) throw PreconditionError("the specification automaton must be deterministic");
    if (split.size() != d.num_letters()) throw PreconditionError("letter split must cover the alphabet");
    std::vector<std::string> ins, outs;
    std::map<std::pair<std::string, std::string>, LetterId> pairs;
    for (LetterId l = 0; l < split.size(); l++) {
        auto& [i, o] = split[l];
        if (std::find(ins.begin(), ins.end(), i) == ins.end()) ins.push_back(i);
        if (std::find(outs.begin(), outs.end(), o) == outs.end()) outs.push_back(o);
        if (!pairs.emplace(split[l], l).second) throw PreconditionError("two letters share an input-output pair");
    }
    if (pairs.size() != ins.size() * outs.size())
        throw PreconditionError("alphabet is not the full input-output product");
    AutomatonParts p;
    p.states = d.state_names();
    p.alphabet = ins;
    p.initial = d.initial();
    p.index_low = d.index_low();
    p.index_high = d.index_high();
    std::set<std::tuple<StateId, LetterId, unsigned, StateId>> seen;
    for (auto& t : d.transitions()) {
        auto i = static_cast<LetterId>(std::find(ins.begin(), ins.end(), split[t.letter].first) - ins.begin());
        if (seen.emplace(t.from, i, t.priority, t.to).second) p.transitions.push_back({0, t.from, i, t.priority, t.to});
    }
    return ParityAutomaton(std::move(p));
}

bool
ge_realisable(const ParityAutomaton& d, const LetterSplit& split)
{
    return decide_hd(input_projection(d, split)).is_hd;
}

} // namespace hdkit
