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

#include "hdkit/normalize.hpp"

#include <algorithm>
#include <map>

#include "hdkit/errors.hpp"
#include "hdkit/token_games.hpp"

namespace hdkit {

namespace {

std::vector<bool>
in_high_scc(const ParityAutomaton& a, unsigned threshold)
{
    std::vector<bool> inside(a.num_transitions(), false);
    for (auto& comp : scc_above(a, threshold)) {
        for (auto t : comp) inside[t] = true;
    }
    return inside;
}

std::vector<unsigned>
priorities_of(const ParityAutomaton& a)
{
    std::vector<unsigned> p;
    p.reserve(a.num_transitions());
    for (auto& t : a.transitions()) p.push_back(t.priority);
    return p;
}

// Relabels every transition of priority >= 2 outside the 2-SCCs to 1.
bool
demote_bridges(const ParityAutomaton& a, std::vector<unsigned>& prio)
{
    auto inside = in_high_scc(a, 2);
    bool changed = false;
    for (auto& t : a.transitions()) {
        if (t.priority >= 2 && !inside[t.id]) {
            prio[t.id] = 1;
            changed = true;
        }
    }
    return changed;
}

struct StepResult
{
    ParityAutomaton automaton;
    std::vector<StateId> old_state;  // new state -> state of the step's input
    std::size_t removed = 0;
    std::size_t relabelled = 0;
};

StepResult
apply(const ParityAutomaton& a, const std::vector<bool>& keep, const std::vector<unsigned>& prio)
{
    StepResult s;
    std::size_t relabelled = 0;
    for (TransId t = 0; t < a.num_transitions(); t++) {
        if (keep[t] && prio[t] != a.transition(t).priority) relabelled++;
    }
    auto r = restrict_transitions(with_priorities(a, prio), keep);
    s.removed = a.num_transitions() - r.automaton.num_transitions();
    s.relabelled = relabelled;
    s.automaton = std::move(r.automaton);
    s.old_state = std::move(r.old_state);
    return s;
}

void
check_invariants(const ParityAutomaton& input, const ParityAutomaton& now, unsigned k, const std::string& step)
{
    HDKIT_ASSERT(simulation_equivalent(input, now), step + " broke simulation equivalence");
    HDKIT_ASSERT(wins_everywhere(now, k), step + " broke the token game from everywhere");
}

// Winner table of a 1- or 2-token game on one automaton from the given pairs (q, p), Adam's tokens all at p.
std::vector<bool>
pair_wins(const ParityAutomaton& a, const std::vector<std::pair<StateId, StateId>>& pairs, unsigned k)
{
    std::vector<TokenConfig> starts;
    for (auto [q, p] : pairs) starts.push_back(TokenConfig{q, std::vector<StateId>(k, p)});
    std::vector<bool> out(pairs.size(), false);
    if (starts.empty()) return out;
    std::vector<const ParityAutomaton*> adam(k, &a);
    auto product = build_token_product(a, adam, starts, {});
    auto sol = solve_parity(product.game);
    for (std::size_t i = 0; i < pairs.size(); i++) {
        out[i] = sol.eve_wins(product.find(starts[i].eve, starts[i].adam, 0));
    }
    return out;
}

} // namespace

nlohmann::ordered_json
report_to_json(const NormalisationReport& r)
{
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (auto& s : r.steps) {
        steps.push_back({{"step", s.name}, {"removed", s.removed}, {"relabelled", s.relabelled}});
    }
    return {{"iterations", r.iterations},
            {"steps", steps},
            {"invariants_checked", {{"I1", r.i1}, {"I2", r.i2}}},
            {"input", {{"states", r.input.num_states()}, {"transitions", r.input.num_transitions()}}},
            {"output", {{"states", r.output.num_states()}, {"transitions", r.output.num_transitions()}}}};
}

ParityAutomaton
cobuchi_normalise(const ParityAutomaton& a)
{
    if (a.index_low() != 1 || a.index_high() != 2) throw PreconditionError("coBuchi normalisation needs index [1,2]");
    auto prio = priorities_of(a);
    if (!demote_bridges(a, prio)) return a;
    return with_priorities(a, prio);
}

bool
is_priority_normalised(const ParityAutomaton& a)
{
    auto inside = in_high_scc(a, 2);
    for (auto& t : a.transitions()) {
        if (t.priority >= 2 && !inside[t.id]) return false;
    }
    return true;
}

ParityAutomaton
two_priority_reduce(const ParityAutomaton& a)
{
    if (a.index_low() != 1) throw PreconditionError("2-priority reduction needs least priority 1");
    ParityAutomaton cur = a;
    for (;;) {
        auto prio = priorities_of(cur);
        bool changed = demote_bridges(cur, prio);
        auto step1 = changed ? with_priorities(cur, prio) : cur;
        for (auto& comp : scc_above(step1, 2)) {
            unsigned low = ~0u;
            for (auto t : comp) low = std::min(low, prio[t]);
            if (low <= 2) continue;
            for (auto t : comp) prio[t] -= 2;
            changed = true;
        }
        if (!changed) return cur;
        cur = with_priorities(cur, prio);
    }
}

bool
is_two_priority_reduced(const ParityAutomaton& a)
{
    if (!is_priority_normalised(a)) return false;
    for (auto& comp : scc_above(a, 2)) {
        bool has2 = false;
        for (auto t : comp) has2 = has2 || a.transition(t).priority == 2;
        if (!has2) return false;
    }
    return true;
}

NormalisationReport
rank_reduce_buchi(const ParityAutomaton& a, NormaliseOptions options)
{
    if (a.index_low() != 0 || a.index_high() > 1) throw PreconditionError("rank reduction needs a Buchi automaton");
    if (!wins_everywhere(a, 1)) throw PreconditionError("Eve does not win the 1-token game from everywhere");
    NormalisationReport rep;
    rep.input = a;
    ParityAutomaton cur = trim_unreachable(a).automaton;
    const std::size_t bound = std::max<std::size_t>(1, a.num_transitions());
    for (;;) {
        auto g = build_g1_buchi(cur);
        auto ranks = compute_ranks(g.game);
        auto opt = buchi_opt(g, ranks);
        std::vector<bool> keep(cur.num_transitions(), true);
        auto prio = priorities_of(cur);
        std::size_t removed = 0, relabelled = 0;
        for (auto& t : cur.transitions()) {
            if (t.priority != 1) continue;
            if (opt[t.from] < opt[t.to]) {
                keep[t.id] = false;
                removed++;
            } else if (opt[t.from] > opt[t.to]) {
                prio[t.id] = 0;
                relabelled++;
            }
        }
        if (removed == 0 && relabelled == 0) {
            for (StateId q = 0; q < cur.num_states(); q++) {
                HDKIT_ASSERT(opt[q] == 0, "rank reduction stopped with a positive optimal rank");
            }
            break;
        }
        auto s = apply(cur, keep, prio);
        rep.steps.push_back({"rank-reduction", s.removed, s.relabelled});
        rep.iterations++;
        HDKIT_ASSERT(rep.iterations <= bound, "rank reduction exceeded its iteration bound");
        cur = std::move(s.automaton);
        if (options.check_each_step) check_invariants(a, cur, 1, "rank-reduction");
    }
    check_invariants(a, cur, 1, "rank-reduction");
    rep.i1 = rep.i2 = true;
    HDKIT_ASSERT(coverage(cur, CoverageKind::reach).holds, "rank-reduced automaton lacks reach covering");
    rep.output = std::move(cur);
    return rep;
}

NormalisationReport
normalise_0K(const ParityAutomaton& a, NormaliseOptions options)
{
    if (a.index_low() != 0) throw PreconditionError("normalisation needs least priority 0");
    if (!wins_everywhere(a, 2)) throw PreconditionError("Eve does not win the 2-token game from everywhere");
    NormalisationReport rep;
    rep.input = a;
    ParityAutomaton cur = trim_unreachable(a).automaton;
    const std::size_t bound = std::max<std::size_t>(1, (a.index_high() + 1) * a.num_transitions());
    std::size_t changes = 0;
    auto record = [&](const std::string& name, StepResult& s) {
        rep.steps.push_back({name, s.removed, s.relabelled});
        changes++;
        HDKIT_ASSERT(changes <= bound, "normalisation exceeded its iteration bound");
        cur = std::move(s.automaton);
        if (options.check_each_step) check_invariants(a, cur, 2, name);
    };
    for (;;) {
        bool changed = false;
        StateRankInfo info;
        for (;;) {
            info = state_rank_info(cur);
            std::vector<bool> keep(cur.num_transitions(), true);
            auto prio = priorities_of(cur);
            bool step = false;
            for (auto& t : cur.transitions()) {
                if (t.priority == 0) continue;
                if (info.opt[t.from] < info.opt[t.to]) {
                    keep[t.id] = false;
                    step = true;
                } else if (info.opt[t.from] > info.opt[t.to]) {
                    prio[t.id] = 0;
                    step = true;
                }
            }
            if (!step) break;
            auto s = apply(cur, keep, prio);
            record("rank-reduction", s);
            changed = true;
        }
        for (StateId q = 0; q < cur.num_states(); q++) {
            HDKIT_ASSERT(info.opt[q] == 0, "rank reduction stopped with a positive optimal rank");
        }

        // Right flags stay attached to the states of the automaton they were computed on.
        std::vector<bool> right = info.right;
        std::vector<bool> keep(cur.num_transitions(), true);
        bool cut = false;
        for (auto& t : cur.transitions()) {
            bool drop = right[t.from] ? (!right[t.to] && t.priority >= 1) : t.priority == 1;
            if (drop) {
                keep[t.id] = false;
                cut = true;
            }
        }
        if (cut) {
            auto s = apply(cur, keep, priorities_of(cur));
            std::vector<bool> moved(s.automaton.num_states());
            for (StateId q = 0; q < s.automaton.num_states(); q++) moved[q] = right[s.old_state[q]];
            right = std::move(moved);
            record("branch-separation", s);
            changed = true;
        }

        auto prio = priorities_of(cur);
        bool lowered = false;
        for (auto& t : cur.transitions()) {
            if (!right[t.from] && t.priority >= 2) {
                prio[t.id] -= 2;
                lowered = true;
            }
        }
        if (lowered) {
            auto s = apply(cur, std::vector<bool>(cur.num_transitions(), true), prio);
            record("priority-modification", s);
            changed = true;
        }
        if (!changed) break;
        rep.iterations++;
    }
    check_invariants(a, cur, 2, "normalisation");
    rep.i1 = rep.i2 = true;

    auto info = state_rank_info(cur);
    for (StateId q = 0; q < cur.num_states(); q++) {
        HDKIT_ASSERT(info.opt[q] == 0 && info.right[q], "a state is not right after normalisation");
    }
    auto ends = end_scc_witnesses(cur);
    std::vector<std::pair<StateId, StateId>> pairs;
    for (StateId q = 0; q < cur.num_states(); q++) {
        HDKIT_ASSERT(ends[q] != NONE, "no end-SCC witness");
        pairs.push_back({q, ends[q]});
    }
    auto above = approximate(cur, Approximation::above0);
    for (bool w : pair_wins(above, pairs, 2)) HDKIT_ASSERT(w, "end-SCC witness does not win G2 on A>0");
    HDKIT_ASSERT(coverage(cur, CoverageKind::zero_reach).holds, "normalised automaton lacks 0-reach covering");
    rep.output = std::move(cur);
    return rep;
}

const char*
coverage_name(CoverageKind k)
{
    switch (k) {
    case CoverageKind::safe: return "safe";
    case CoverageKind::one_safe: return "one_safe";
    case CoverageKind::reach: return "reach";
    case CoverageKind::zero_reach: return "zero_reach";
    }
    return "?";
}

Coverage
coverage(const ParityAutomaton& a, CoverageKind kind)
{
    Approximation approx = Approximation::safe;
    unsigned k = 1;
    bool eve_is_witness = true;  // safe-style: the witness p carries Eve's token
    switch (kind) {
    case CoverageKind::safe:
        if (a.index_low() < 1) throw PreconditionError("safe coverage needs least priority 1");
        break;
    case CoverageKind::one_safe:
        if (a.index_low() < 1) throw PreconditionError("1-safe coverage needs least priority 1");
        approx = Approximation::above1;
        k = 2;
        break;
    case CoverageKind::reach:
        if (a.index_low() != 0 || a.index_high() > 1) throw PreconditionError("reach covering needs index [0,1]");
        approx = Approximation::above0;
        eve_is_witness = false;
        break;
    case CoverageKind::zero_reach:
        if (a.index_low() != 0) throw PreconditionError("0-reach covering needs least priority 0");
        approx = Approximation::above0;
        k = 2;
        eve_is_witness = false;
        break;
    }
    auto cr = coreachability(a);
    auto b = approximate(a, approx);
    const auto n = a.num_states();

    std::vector<std::pair<StateId, StateId>> pairs;  // (eve, adam)
    std::map<std::pair<StateId, StateId>, std::size_t> slot;
    for (StateId q = 0; q < n; q++) {
        if (cr.class_of(q) == NONE) continue;
        for (auto p : cr.class_members(q)) {
            auto e = eve_is_witness ? std::pair{p, q} : std::pair{q, p};
            if (slot.emplace(e, pairs.size()).second) pairs.push_back(e);
            if (slot.emplace(std::pair{p, p}, pairs.size()).second) pairs.push_back({p, p});
        }
    }
    auto wins = pair_wins(b, pairs, k);
    auto won = [&](StateId e, StateId d) { return wins[slot.at({e, d})]; };

    Coverage c;
    c.holds = true;
    c.witness.assign(n, NONE);
    c.self_witness.assign(n, NONE);
    for (StateId q = 0; q < n; q++) {
        if (cr.class_of(q) == NONE) continue;
        for (auto p : cr.class_members(q)) {
            bool ok = eve_is_witness ? won(p, q) : won(q, p);
            if (!ok) continue;
            if (c.witness[q] == NONE) c.witness[q] = p;
            if (c.self_witness[q] == NONE && won(p, p)) c.self_witness[q] = p;
        }
        if (c.witness[q] == NONE) c.holds = false;
    }
    return c;
}

std::vector<StateId>
end_scc_witnesses(const ParityAutomaton& a)
{
    auto info = state_rank_info(a);
    const auto n = static_cast<std::uint32_t>(a.num_states());
    Digraph g;
    g.n = n;
    for (StateId q = 0; q < n; q++) {
        if (info.opt[q] != 0 || !info.right[q]) continue;
        g.add_edge(q, info.witness[q][0]);
        g.add_edge(q, info.witness[q][1]);
    }
    std::uint32_t count = 0;
    auto comp = scc(g, {}, count);
    std::vector<bool> has_exit(count, false);
    for (std::size_t e = 0; e < g.from.size(); e++) {
        if (comp[g.from[e]] != comp[g.to[e]]) has_exit[comp[g.from[e]]] = true;
    }
    std::vector<StateId> out(n, NONE);
    for (StateId q = 0; q < n; q++) {
        if (info.opt[q] != 0 || !info.right[q]) continue;
        auto seen = reachable(g, {q}, {});
        for (StateId p = 0; p < n; p++) {
            if (seen[p] && !has_exit[comp[p]]) {
                out[q] = p;
                break;
            }
        }
    }
    return out;
}

} // namespace hdkit
