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

#include "hdkit/strategy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "hdkit/errors.hpp"
#include "hdkit/hd.hpp"
#include "hdkit/normalize.hpp"
#include "hdkit/oracle.hpp"
#include "hdkit/token_games.hpp"

namespace hdkit {

namespace {

// Builds a machine by exploring (memory, state) pairs reachable from
// (init, q0). step returns Eve's transition and the next memory, both
// identified by a printable memory name.
template <class Mem, class Name, class Step>
StrategyMachine
explore(const ParityAutomaton& a, const Mem& init, Name name, Step step)
{
    StrategyMachine s;
    s.states = a.num_states();
    s.letters = a.num_letters();
    std::map<std::string, std::uint32_t> ids;
    std::vector<Mem> mems;
    auto intern = [&](const Mem& m) {
        auto key = name(m);
        auto [it, fresh] = ids.emplace(key, static_cast<std::uint32_t>(mems.size()));
        if (fresh) {
            mems.push_back(m);
            s.memory.push_back(key);
        }
        return it->second;
    };
    s.init = intern(init);
    struct Row { std::uint32_t m; StateId q; LetterId l; TransId t; std::uint32_t next; };
    std::vector<Row> rows;
    std::set<std::pair<std::uint32_t, StateId>> seen{{s.init, a.initial()}};
    std::vector<std::pair<std::uint32_t, StateId>> work{{s.init, a.initial()}};
    while (!work.empty()) {
        auto [m, q] = work.back();
        work.pop_back();
        for (LetterId l = 0; l < s.letters; l++) {
            auto [t, m2] = step(Mem(mems[m]), q, l);
            HDKIT_ASSERT(t != NONE && a.transition(t).from == q && a.transition(t).letter == l,
                         "strategy picked an illegal transition");
            auto id = intern(m2);
            rows.push_back({m, q, l, t, id});
            std::pair<std::uint32_t, StateId> next{id, a.transition(t).to};
            if (seen.insert(next).second) work.push_back(next);
        }
    }
    s.step.assign(s.memory.size() * s.states * s.letters, {});
    for (auto& r : rows) s.at(r.m, r.q, r.l) = {r.t, r.next};
    return s;
}

std::uint32_t
position_in(std::span<const TransId> row, TransId t)
{
    auto it = std::find(row.begin(), row.end(), t);
    HDKIT_ASSERT(it != row.end(), "transition not in its row");
    return static_cast<std::uint32_t>(it - row.begin());
}

// Eve's token choice at round-start vertex v1 on letter l, and the V3 vertex it leads to.
std::pair<TransId, std::uint32_t>
eve_move(const TokenProduct& p, const ParitySolution& sol, std::uint32_t v1, LetterId l)
{
    auto v2 = p.after_letter(v1, l);
    auto e = sol.eve.choice[v2];
    HDKIT_ASSERT(e != NONE, "no Eve move in the token game");
    auto v3 = p.game.to(e);
    return {p.info[v3].eve_t, v3};
}

// Diagonal 1-token winners x vs x on b, for the first n states.
std::vector<bool>
self_wins(const ParityAutomaton& b, std::size_t n)
{
    std::vector<TokenConfig> starts;
    for (StateId x = 0; x < n; x++) starts.push_back({x, {x}});
    auto product = build_token_product(b, {&b}, starts, {});
    auto sol = solve_parity(product.game);
    std::vector<bool> w(n);
    for (StateId x = 0; x < n; x++) w[x] = sol.eve_wins(product.find(x, {x}, 0));
    return w;
}

struct G1All
{
    TokenProduct product;
    ParitySolution solution;
};

G1All
g1_all_branches(const ParityAutomaton& eve_side, const ParityAutomaton& of, const std::vector<TokenConfig>& starts)
{
    G1All g;
    ProductOptions o;
    o.all_branches = true;
    g.product = build_token_product(eve_side, {&of}, starts, o);
    g.solution = solve_parity(g.product.game);
    return g;
}

} // namespace

nlohmann::ordered_json
strategy_to_json(const ParityAutomaton& a, const StrategyMachine& s)
{
    nlohmann::ordered_json j;
    j["memory"] = s.memory;
    j["init"] = s.memory.at(s.init);
    auto steps = nlohmann::ordered_json::array();
    for (std::uint32_t m = 0; m < s.memory.size(); m++) {
        for (StateId q = 0; q < s.states; q++) {
            for (LetterId l = 0; l < s.letters; l++) {
                const auto& x = s.at(m, q, l);
                if (x.t == NONE) continue;
                steps.push_back({{"m", s.memory[m]},
                                 {"q", a.state_name(q)},
                                 {"a", a.letter_name(l)},
                                 {"t", x.t},
                                 {"m2", s.memory[x.next]}});
            }
        }
    }
    j["step"] = std::move(steps);
    return j;
}

StrategyMachine
strategy_from_json(const ParityAutomaton& a, const nlohmann::json& j)
{
    auto fail = [](const std::string& m) { throw ParseError("strategy: " + m); };
    if (!j.is_object()) fail("expected an object");
    for (auto& [k, v] : j.items()) {
        if (k != "memory" && k != "init" && k != "step") fail("unknown field '" + k + "'");
    }
    if (!j.contains("memory") || !j["memory"].is_array() || j["memory"].empty()) fail("memory must be a nonempty array");
    StrategyMachine s;
    s.states = a.num_states();
    s.letters = a.num_letters();
    std::map<std::string, std::uint32_t> ids;
    for (auto& m : j["memory"]) {
        if (!m.is_string()) fail("memory elements must be strings");
        auto name = m.get<std::string>();
        if (!ids.emplace(name, static_cast<std::uint32_t>(s.memory.size())).second) fail("duplicate memory '" + name + "'");
        s.memory.push_back(name);
    }
    auto mem = [&](const nlohmann::json& x) {
        if (!x.is_string() || !ids.count(x.get<std::string>())) fail("unknown memory element");
        return ids.at(x.get<std::string>());
    };
    if (!j.contains("init")) fail("missing init");
    s.init = mem(j["init"]);
    s.step.assign(s.memory.size() * s.states * s.letters, {});
    if (!j.contains("step") || !j["step"].is_array()) fail("step must be an array");
    for (auto& r : j["step"]) {
        if (!r.is_object()) fail("step entries must be objects");
        for (auto& [k, v] : r.items()) {
            if (k != "m" && k != "q" && k != "a" && k != "t" && k != "m2") fail("unknown step field '" + k + "'");
        }
        for (auto k : {"m", "q", "a", "t", "m2"}) {
            if (!r.contains(k)) fail(std::string("step entry misses '") + k + "'");
        }
        auto m = mem(r["m"]), m2 = mem(r["m2"]);
        if (!r["q"].is_string() || !r["a"].is_string()) fail("q and a must be names");
        auto q = a.find_state(r["q"].get<std::string>());
        auto l = a.find_letter(r["a"].get<std::string>());
        if (!q || !l) fail("unknown state or letter");
        if (!r["t"].is_number_unsigned()) fail("t must be a transition id");
        auto t = r["t"].get<std::uint64_t>();
        if (t >= a.num_transitions() || a.transition(static_cast<TransId>(t)).from != *q ||
            a.transition(static_cast<TransId>(t)).letter != *l)
            fail("transition " + std::to_string(t) + " does not leave the state on the letter");
        auto& slot = s.at(m, *q, *l);
        if (slot.t != NONE) fail("duplicate step entry");
        slot = {static_cast<TransId>(t), m2};
    }
    return s;
}

StrategyMachine
extract_safety_reach(const ParityAutomaton& a)
{
    if (!decide_hd_safety_reach(a).is_hd) throw PreconditionError("the automaton is not HD");
    auto choice = safety_reach_choice(a);
    const auto letters = a.num_letters();
    return explore(a, std::string("0"), [](const std::string& m) { return m; },
                   [&](const std::string& m, StateId q, LetterId l) {
                       return std::pair{choice[q * letters + l], m};
                   });
}

StrategyMachine
extract_cobuchi(const ParityAutomaton& input)
{
    if (input.index_low() != 1 || input.index_high() != 2) throw PreconditionError("coBuchi extraction needs index [1,2]");
    if (!wins_everywhere(input, 1)) throw PreconditionError("Eve does not win the 1-token game from everywhere");
    const auto a = cobuchi_normalise(input);
    const auto n = a.num_states(), letters = a.num_letters();
    const auto as = approximate(a, Approximation::safe);
    const StateId sink = static_cast<StateId>(n);
    const auto safe_det = self_wins(as, n);
    const auto sigma = safety_reach_choice(as);
    const auto cr = coreachability(a);
    const auto g1 = g1_all_branches(a, a, weakly_coreachable_tuples(a, 1));

    struct Mem
    {
        StateId r;
        std::uint32_t branch;
        std::vector<std::uint32_t> level;  // per state, NONE if not active
    };
    auto active = [&](StateId q) {
        std::vector<StateId> act;
        for (auto s : cr.class_members(q)) {
            if (safe_det[s]) act.push_back(s);
        }
        HDKIT_ASSERT(!act.empty(), "no active state: safe coverage fails");
        return act;
    };
    auto best = [&](const std::vector<std::uint32_t>& level, const std::vector<StateId>& act) {
        StateId r = act[0];
        for (auto s : act) {
            if (level[s] > level[r]) r = s;
        }
        return r;
    };
    Mem init{NONE, 0, std::vector<std::uint32_t>(n, NONE)};
    auto act0 = active(a.initial());
    for (auto s : act0) init.level[s] = 0;
    init.r = best(init.level, act0);

    auto name = [&](const Mem& m) {
        std::string x = a.state_name(m.r) + "|" + std::to_string(m.branch) + "|";
        bool first = true;
        for (StateId s = 0; s < n; s++) {
            if (m.level[s] == NONE) continue;
            x += (first ? "" : ",") + a.state_name(s) + ":" + std::to_string(m.level[s]);
            first = false;
        }
        return x;
    };
    auto step = [&](const Mem& m, StateId q, LetterId l) {
        auto v1 = g1.product.find(q, {m.r}, m.branch);
        HDKIT_ASSERT(v1 != NONE && g1.solution.eve_wins(v1), "tracked pair outside Eve's winning region");
        auto [te, v3] = eve_move(g1.product, g1.solution, v1, l);
        const auto q2 = a.transition(te).to;
        Mem next;
        next.level.assign(n, NONE);
        std::vector<std::uint32_t> cand(n, NONE);
        for (StateId s = 0; s < n; s++) {
            if (m.level[s] == NONE) continue;
            auto y = as.transition(sigma[s * letters + l]).to;
            if (y == sink) continue;
            cand[y] = cand[y] == NONE ? m.level[s] + 1 : std::max(cand[y], m.level[s] + 1);
        }
        auto act = active(q2);
        std::vector<std::uint32_t> raw(n, NONE);
        for (auto s : act) raw[s] = cand[s] == NONE ? 0 : cand[s];
        std::vector<std::uint32_t> values;
        for (auto s : act) values.push_back(raw[s]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (auto s : act) {
            next.level[s] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), raw[s]) - values.begin());
        }
        auto tr = sigma[m.r * letters + l];
        if (as.transition(tr).to != sink) {
            auto target = g1.product.game.to(g1.product.game.out(v3)[position_in(a.out(m.r, l), tr)]);
            next.r = a.transition(tr).to;
            next.branch = g1.product.info[target].branch;
        } else {
            next.r = best(next.level, act);
            next.branch = m.branch;
        }
        return std::pair{te, next};
    };
    return explore(a, init, name, step);
}

StrategyMachine
extract_buchi(const ParityAutomaton& a)
{
    if (a.index_low() != 0 || a.index_high() > 1) throw PreconditionError("Buchi extraction needs index [0,1]");
    if (!wins_everywhere(a, 1)) throw PreconditionError("Eve does not win the 1-token game from everywhere");
    auto cov = coverage(a, CoverageKind::reach);
    if (!cov.holds) throw PreconditionError("the automaton lacks reach covering");
    const auto letters = a.num_letters();
    const auto above = approximate(a, Approximation::above0);
    const StateId top = static_cast<StateId>(a.num_states());
    const auto sigma = safety_reach_choice(above);
    const auto g1 = g1_all_branches(above, above, weakly_coreachable_tuples(a, 1));

    using Mem = std::pair<StateId, std::uint32_t>;  // memory token, branch
    auto reset = [&](StateId q, std::uint32_t branch) {
        auto p = cov.self_witness[q];
        HDKIT_ASSERT(p != NONE, "no reach-deterministic witness");
        auto v = g1.product.find(q, {p}, branch);
        HDKIT_ASSERT(v != NONE && g1.solution.eve_wins(v), "reset target outside Eve's winning region");
        return Mem{p, branch};
    };
    auto name = [&](const Mem& m) { return above.state_name(m.first) + "|" + std::to_string(m.second); };
    auto step = [&](const Mem& m, StateId q, LetterId l) {
        auto v1 = g1.product.find(q, {m.first}, m.second);
        HDKIT_ASSERT(v1 != NONE && g1.solution.eve_wins(v1), "memory pair outside Eve's winning region");
        auto [te, v3] = eve_move(g1.product, g1.solution, v1, l);
        if (above.transition(te).to == top) {
            HDKIT_ASSERT(a.transition(te).priority == 0, "sink move is not a priority-0 transition");
            return std::pair{te, reset(a.transition(te).to, m.second)};
        }
        auto tp = sigma[m.first * letters + l];
        HDKIT_ASSERT(tp != NONE, "memory token is not reach-deterministic");
        auto target = g1.product.game.to(g1.product.game.out(v3)[position_in(above.out(m.first, l), tp)]);
        return std::pair{te, Mem{above.transition(tp).to, g1.product.info[target].branch}};
    };
    return explore(a, reset(a.initial(), 0), name, step);
}

PlayResult
simulate_play(const ParityAutomaton& a, const StrategyMachine& s, const Lasso& w)
{
    if (w.cycle.empty()) throw PreconditionError("lasso cycle must be nonempty");
    if (s.states != a.num_states() || s.letters != a.num_letters())
        throw PreconditionError("strategy does not match the automaton");
    const auto u = w.prefix.size(), len = u + w.cycle.size();
    PlayResult r;
    std::map<std::tuple<std::uint32_t, StateId, std::size_t>, std::size_t> seen;
    std::uint32_t m = s.init;
    StateId q = a.initial();
    for (std::size_t i = 0;; i = i + 1 < len ? i + 1 : u) {
        if (i >= u) {
            auto [it, fresh] = seen.emplace(std::tuple{m, q, i}, r.priorities.size());
            if (!fresh) {
                r.cycle_start = it->second;
                break;
            }
        }
        auto l = i < u ? w.prefix[i] : w.cycle[i - u];
        const auto& x = s.at(m, q, l);
        if (x.t == NONE) throw PreconditionError("strategy undefined at a reached configuration");
        r.priorities.push_back(a.transition(x.t).priority);
        q = a.transition(x.t).to;
        m = x.next;
    }
    r.cycle_min = *std::min_element(r.priorities.begin() + static_cast<std::ptrdiff_t>(r.cycle_start), r.priorities.end());
    r.accepted = r.cycle_min % 2 == 0;
    r.in_language = lasso_member(a, w);
    r.violates = r.in_language && !r.accepted;
    return r;
}

VerifyResult
verify_strategy(const ParityAutomaton& a, const StrategyMachine& s, std::size_t bound)
{
    VerifyResult v;
    if (s.states != a.num_states() || s.letters != a.num_letters()) {
        v.reason = "strategy does not match the automaton";
        return v;
    }
    ParityAutomaton d;
    try {
        d = determinise_buchi(parity_to_buchi(a));
    } catch (const ResourceLimit&) {
        v.exact = false;
        for (auto& w : enumerate_lassos(a.num_letters(), bound)) {
            PlayResult r;
            try {
                r = simulate_play(a, s, w);
            } catch (const PreconditionError& e) {
                v.reason = e.what();
                v.witness = w;
                return v;
            }
            if (r.violates) {
                v.reason = "the run rejects a word of the language";
                v.witness = w;
                return v;
            }
        }
        v.winning = true;
        v.reason = "bounded-only";
        return v;
    }
    const auto letters = a.num_letters();
    Digraph g;
    std::vector<unsigned> first, second;
    std::vector<LetterId> letter_of;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::array<std::uint32_t, 3>> node;
    auto vertex = [&](std::uint32_t m, StateId q, StateId x) {
        std::uint64_t key = (static_cast<std::uint64_t>(m) * a.num_states() + q) * d.num_states() + x;
        auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(node.size()));
        if (fresh) node.push_back({m, q, x});
        return it->second;
    };
    vertex(s.init, a.initial(), d.initial());
    for (std::size_t i = 0; i < node.size(); i++) {
        auto [m, q, x] = node[i];
        for (LetterId l = 0; l < letters; l++) {
            const auto& st = s.at(m, q, l);
            if (st.t == NONE || a.transition(st.t).from != q || a.transition(st.t).letter != l) {
                v.reason = "strategy undefined or illegal at a reached configuration";
                return v;
            }
            const auto& dt = d.transition(d.out(x, l)[0]);
            auto j = vertex(st.next, a.transition(st.t).to, dt.to);
            g.add_edge(static_cast<std::uint32_t>(i), j);
            first.push_back(dt.priority);
            second.push_back(a.transition(st.t).priority);
            letter_of.push_back(l);
        }
    }
    g.n = static_cast<std::uint32_t>(node.size());
    std::vector<std::uint32_t> stem, cycle;
    if (find_even_odd_cycle(g, first, second, {0}, &stem, &cycle)) {
        Lasso w;
        for (auto e : stem) w.prefix.push_back(letter_of[e]);
        for (auto e : cycle) w.cycle.push_back(letter_of[e]);
        v.witness = w;
        v.reason = "the run rejects a word of the language";
        return v;
    }
    v.winning = true;
    return v;
}

} // namespace hdkit
