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

#include "hdkit/automaton.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "hdkit/errors.hpp"
#include "hdkit/graph.hpp"

namespace hdkit {

ParityAutomaton::ParityAutomaton(AutomatonParts parts)
  : states_(std::move(parts.states)),
    alphabet_(std::move(parts.alphabet)),
    initial_(parts.initial),
    low_(parts.index_low),
    high_(parts.index_high),
    transitions_(std::move(parts.transitions))
{
    if (states_.empty()) throw ParseError("automaton has no states");
    if (alphabet_.empty()) throw ParseError("automaton has an empty alphabet");
    if (std::set<std::string>(states_.begin(), states_.end()).size() != states_.size())
        throw ParseError("duplicate state name");
    if (std::set<std::string>(alphabet_.begin(), alphabet_.end()).size() != alphabet_.size())
        throw ParseError("duplicate letter");
    if (initial_ >= states_.size()) throw ParseError("initial state out of range");
    if (low_ > high_) throw ParseError("parity index [i,j] needs i <= j");
    const auto n = states_.size(), l = alphabet_.size();
    std::vector<std::uint32_t> count(n * l, 0);
    for (std::size_t i = 0; i < transitions_.size(); i++) {
        auto& t = transitions_[i];
        t.id = static_cast<TransId>(i);
        if (t.from >= n || t.to >= n) throw ParseError("transition endpoint out of range");
        if (t.letter >= l) throw ParseError("transition letter out of range");
        if (t.priority < low_ || t.priority > high_)
            throw ParseError("priority " + std::to_string(t.priority) + " outside the declared index");
        count[t.from * l + t.letter]++;
    }
    for (std::size_t q = 0; q < n; q++) {
        for (std::size_t a = 0; a < l; a++) {
            if (count[q * l + a] == 0)
                throw ParseError("incomplete: state " + states_[q] + " has no transition on " + alphabet_[a]);
        }
    }
    offset_.assign(n * l + 1, 0);
    for (std::size_t r = 0; r < n * l; r++) offset_[r + 1] = offset_[r] + count[r];
    by_row_.resize(transitions_.size());
    std::vector<std::uint32_t> pos(offset_.begin(), offset_.end() - 1);
    for (auto& t : transitions_) by_row_[pos[t.from * l + t.letter]++] = t.id;
}

ParityAutomaton
ParityAutomaton::from_parts(AutomatonParts parts, bool with_sink)
{
    if (!with_sink) return ParityAutomaton(std::move(parts));
    const auto n = parts.states.size(), l = parts.alphabet.size();
    std::vector<bool> seen(n * l, false);
    for (auto& t : parts.transitions) {
        if (t.from < n && t.letter < l) seen[t.from * l + t.letter] = true;
    }
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return ParityAutomaton(std::move(parts));
    unsigned odd = parts.index_low % 2 == 1 ? parts.index_low : parts.index_low + 1;
    if (odd > parts.index_high) parts.index_high = odd;
    auto sink = static_cast<StateId>(n);
    parts.states.push_back(fresh_name(parts.states, "sink"));
    for (std::size_t q = 0; q < n; q++) {
        for (std::size_t a = 0; a < l; a++) {
            if (!seen[q * l + a])
                parts.transitions.push_back({0, static_cast<StateId>(q), static_cast<LetterId>(a), odd, sink});
        }
    }
    for (std::size_t a = 0; a < l; a++) parts.transitions.push_back({0, sink, static_cast<LetterId>(a), odd, sink});
    return ParityAutomaton(std::move(parts));
}

std::span<const TransId>
ParityAutomaton::out(StateId q, LetterId a) const
{
    auto r = q * alphabet_.size() + a;
    return {by_row_.data() + offset_[r], by_row_.data() + offset_[r + 1]};
}

std::optional<StateId>
ParityAutomaton::find_state(std::string_view name) const
{
    for (std::size_t q = 0; q < states_.size(); q++) {
        if (states_[q] == name) return static_cast<StateId>(q);
    }
    return std::nullopt;
}

std::optional<LetterId>
ParityAutomaton::find_letter(std::string_view name) const
{
    for (std::size_t a = 0; a < alphabet_.size(); a++) {
        if (alphabet_[a] == name) return static_cast<LetterId>(a);
    }
    return std::nullopt;
}

bool
ParityAutomaton::is_deterministic() const
{
    for (std::size_t r = 0; r + 1 < offset_.size(); r++) {
        if (offset_[r + 1] - offset_[r] != 1) return false;
    }
    return true;
}

unsigned
ParityAutomaton::min_priority() const
{
    unsigned m = high_;
    for (auto& t : transitions_) m = std::min(m, t.priority);
    return m;
}

unsigned
ParityAutomaton::max_priority() const
{
    unsigned m = low_;
    for (auto& t : transitions_) m = std::max(m, t.priority);
    return m;
}

AutomatonParts
ParityAutomaton::parts() const
{
    return {states_, alphabet_, initial_, low_, high_, transitions_};
}

bool
ParityAutomaton::operator==(const ParityAutomaton& o) const
{
    return states_ == o.states_ && alphabet_ == o.alphabet_ && initial_ == o.initial_ && low_ == o.low_ &&
           high_ == o.high_ && transitions_ == o.transitions_;
}

std::string
fresh_name(const std::vector<std::string>& names, const std::string& base)
{
    std::string s = base;
    while (std::find(names.begin(), names.end(), s) != names.end()) s += "'";
    return s;
}

ParityAutomaton
with_priorities(const ParityAutomaton& a, const std::vector<unsigned>& priority)
{
    auto p = a.parts();
    for (auto& t : p.transitions) t.priority = priority[t.id];
    return ParityAutomaton(std::move(p));
}

ParityAutomaton
shift_priorities(const ParityAutomaton& a, int delta)
{
    auto p = a.parts();
    if (static_cast<int>(p.index_low) + delta < 0) throw PreconditionError("priority shift below zero");
    p.index_low = static_cast<unsigned>(static_cast<int>(p.index_low) + delta);
    p.index_high = static_cast<unsigned>(static_cast<int>(p.index_high) + delta);
    for (auto& t : p.transitions) t.priority = static_cast<unsigned>(static_cast<int>(t.priority) + delta);
    return ParityAutomaton(std::move(p));
}

Restriction
restrict_transitions(const ParityAutomaton& a, const std::vector<bool>& keep)
{
    const auto n = a.num_states();
    std::vector<bool> seen(n, false);
    std::vector<StateId> todo{a.initial()};
    seen[a.initial()] = true;
    while (!todo.empty()) {
        auto q = todo.back();
        todo.pop_back();
        for (LetterId x = 0; x < a.num_letters(); x++) {
            for (auto t : a.out(q, x)) {
                auto to = a.transition(t).to;
                if (keep[t] && !seen[to]) {
                    seen[to] = true;
                    todo.push_back(to);
                }
            }
        }
    }
    Restriction r;
    r.new_state.assign(n, NONE);
    AutomatonParts p;
    p.alphabet = a.letter_names();
    p.index_low = a.index_low();
    p.index_high = a.index_high();
    for (StateId q = 0; q < n; q++) {
        if (!seen[q]) continue;
        r.new_state[q] = static_cast<StateId>(r.old_state.size());
        r.old_state.push_back(q);
        p.states.push_back(a.state_name(q));
    }
    p.initial = r.new_state[a.initial()];
    for (auto& t : a.transitions()) {
        if (!keep[t.id] || !seen[t.from]) continue;
        p.transitions.push_back({0, r.new_state[t.from], t.letter, t.priority, r.new_state[t.to]});
        r.old_trans.push_back(t.id);
    }
    try {
        r.automaton = ParityAutomaton(std::move(p));
    } catch (const ParseError& e) {
        throw InternalError(std::string("restriction broke an automaton invariant: ") + e.what());
    }
    return r;
}

Restriction
trim_unreachable(const ParityAutomaton& a)
{
    return restrict_transitions(a, std::vector<bool>(a.num_transitions(), true));
}

ParityAutomaton
with_initial(const ParityAutomaton& a, StateId q)
{
    auto p = a.parts();
    p.initial = q;
    return ParityAutomaton(std::move(p));
}

std::vector<bool>
reachable_states(const ParityAutomaton& a)
{
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateId> todo{a.initial()};
    seen[a.initial()] = true;
    while (!todo.empty()) {
        auto q = todo.back();
        todo.pop_back();
        for (LetterId x = 0; x < a.num_letters(); x++) {
            for (auto t : a.out(q, x)) {
                auto to = a.transition(t).to;
                if (!seen[to]) {
                    seen[to] = true;
                    todo.push_back(to);
                }
            }
        }
    }
    return seen;
}

std::vector<std::vector<TransId>>
scc_above(const ParityAutomaton& a, unsigned threshold)
{
    Digraph g;
    g.n = static_cast<std::uint32_t>(a.num_states());
    std::vector<bool> keep;
    for (auto& t : a.transitions()) {
        g.add_edge(t.from, t.to);
        keep.push_back(t.priority >= threshold);
    }
    std::uint32_t count;
    auto comp = scc(g, keep, count);
    std::vector<std::vector<TransId>> by_comp(count);
    for (auto& t : a.transitions()) {
        if (keep[t.id] && comp[t.from] == comp[t.to]) by_comp[comp[t.from]].push_back(t.id);
    }
    std::vector<std::vector<TransId>> result;
    for (auto& c : by_comp) {
        if (!c.empty()) result.push_back(std::move(c));
    }
    std::sort(result.begin(), result.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return result;
}

CoreachabilityRelation::CoreachabilityRelation(std::size_t n, std::vector<std::uint8_t> pairs)
  : n_(n), pairs_(std::move(pairs)), class_(n, NONE)
{
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> member(n, false);
    for (std::size_t p = 0; p < n; p++) {
        for (std::size_t q = 0; q < n; q++) {
            if (!pairs_[p * n + q]) continue;
            member[p] = member[q] = true;
            auto x = find(static_cast<std::uint32_t>(p)), y = find(static_cast<std::uint32_t>(q));
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    }
    std::vector<std::uint32_t> id_of_root(n, NONE);
    for (std::size_t q = 0; q < n; q++) {
        if (!member[q]) continue;
        auto r = find(static_cast<std::uint32_t>(q));
        if (id_of_root[r] == NONE) {
            id_of_root[r] = static_cast<std::uint32_t>(classes_.size());
            classes_.emplace_back();
        }
        class_[q] = id_of_root[r];
        classes_[class_[q]].push_back(static_cast<StateId>(q));
    }
}

std::vector<std::pair<StateId, StateId>>
CoreachabilityRelation::pair_list() const
{
    std::vector<std::pair<StateId, StateId>> out;
    for (std::size_t p = 0; p < n_; p++) {
        for (std::size_t q = 0; q < n_; q++) {
            if (pairs_[p * n_ + q]) out.emplace_back(static_cast<StateId>(p), static_cast<StateId>(q));
        }
    }
    return out;
}

CoreachabilityRelation
coreachability(const ParityAutomaton& a)
{
    const auto n = a.num_states();
    std::vector<std::uint8_t> pairs(n * n, 0);
    std::deque<std::pair<StateId, StateId>> queue;
    pairs[a.initial() * n + a.initial()] = 1;
    queue.emplace_back(a.initial(), a.initial());
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        for (LetterId x = 0; x < a.num_letters(); x++) {
            for (auto s : a.out(p, x)) {
                for (auto t : a.out(q, x)) {
                    auto p2 = a.transition(s).to, q2 = a.transition(t).to;
                    if (pairs[p2 * n + q2]) continue;
                    pairs[p2 * n + q2] = 1;
                    queue.emplace_back(p2, q2);
                }
            }
        }
    }
    return CoreachabilityRelation(n, std::move(pairs));
}

ParityAutomaton
approximate(const ParityAutomaton& a, Approximation kind)
{
    switch (kind) {
    case Approximation::safe:
    case Approximation::above1:
        if (a.index_low() != 1) throw PreconditionError("approximation needs an index starting at 1");
        break;
    case Approximation::above0:
        if (a.index_low() != 0) throw PreconditionError("approximation needs an index starting at 0");
        break;
    }
    auto p = a.parts();
    auto sink = static_cast<StateId>(p.states.size());
    unsigned sink_priority = 0;
    switch (kind) {
    case Approximation::safe:
        sink_priority = 1;
        p.states.push_back(fresh_name(p.states, "sink"));
        p.index_low = 1;
        p.index_high = 2;
        for (auto& t : p.transitions) {
            if (t.priority >= 2) t.priority = 2;
            else t.to = sink;
        }
        break;
    case Approximation::above1:
        sink_priority = 3;
        p.states.push_back(fresh_name(p.states, "sink"));
        p.index_low = 2;
        p.index_high = std::max(p.index_high, 3u);
        for (auto& t : p.transitions) {
            if (t.priority == 1) {
                t.priority = 3;
                t.to = sink;
            }
        }
        break;
    case Approximation::above0:
        sink_priority = 2;
        p.states.push_back(fresh_name(p.states, "top"));
        p.index_low = 1;
        p.index_high = std::max(p.index_high, 2u);
        for (auto& t : p.transitions) {
            if (t.priority == 0) {
                t.priority = 2;
                t.to = sink;
            }
        }
        break;
    }
    for (LetterId x = 0; x < p.alphabet.size(); x++) p.transitions.push_back({0, sink, x, sink_priority, sink});
    return ParityAutomaton(std::move(p));
}

bool
lasso_member_from(const ParityAutomaton& a, StateId q, const Lasso& w)
{
    if (w.cycle.empty()) throw PreconditionError("lasso cycle must be nonempty");
    std::vector<bool> cur(a.num_states(), false);
    cur[q] = true;
    for (auto x : w.prefix) {
        std::vector<bool> next(a.num_states(), false);
        for (StateId s = 0; s < a.num_states(); s++) {
            if (!cur[s]) continue;
            for (auto t : a.out(s, x)) next[a.transition(t).to] = true;
        }
        cur = std::move(next);
    }
    const auto len = static_cast<std::uint32_t>(w.cycle.size());
    Digraph g;
    g.n = static_cast<std::uint32_t>(a.num_states()) * len;
    std::vector<unsigned> label;
    for (StateId s = 0; s < a.num_states(); s++) {
        for (std::uint32_t i = 0; i < len; i++) {
            for (auto t : a.out(s, w.cycle[i])) {
                g.add_edge(s * len + i, a.transition(t).to * len + (i + 1) % len);
                label.push_back(a.transition(t).priority);
            }
        }
    }
    std::vector<std::uint32_t> sources;
    for (StateId s = 0; s < a.num_states(); s++) {
        if (cur[s]) sources.push_back(s * len);
    }
    return has_cycle_with_min_parity(g, label, sources, 0);
}

bool
lasso_member(const ParityAutomaton& a, const Lasso& w)
{
    return lasso_member_from(a, a.initial(), w);
}

namespace {

void
all_words(std::size_t letters, std::size_t len, std::vector<std::vector<LetterId>>& out)
{
    std::vector<LetterId> w(len, 0);
    while (true) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0) {
            if (++w[i - 1] < letters) break;
            w[i - 1] = 0;
            i--;
        }
        if (i == 0) return;
    }
}

} // namespace

std::vector<Lasso>
enumerate_lassos(std::size_t letters, std::size_t bound)
{
    std::vector<std::vector<LetterId>> prefixes, cycles;
    for (std::size_t len = 0; len <= bound; len++) all_words(letters, len, prefixes);
    for (std::size_t len = 1; len <= bound; len++) all_words(letters, len, cycles);
    std::vector<Lasso> out;
    out.reserve(prefixes.size() * cycles.size());
    for (auto& u : prefixes) {
        for (auto& v : cycles) out.push_back({u, v});
    }
    return out;
}

std::optional<Lasso>
lasso_difference(const ParityAutomaton& a, StateId p, const ParityAutomaton& b, StateId q, std::size_t bound)
{
    if (!same_alphabet(a, b)) throw PreconditionError("alphabets differ");
    for (auto& w : enumerate_lassos(a.num_letters(), bound)) {
        if (lasso_member_from(a, p, w) != lasso_member_from(b, q, w)) return w;
    }
    return std::nullopt;
}

bool
same_alphabet(const ParityAutomaton& a, const ParityAutomaton& b)
{
    return a.letter_names() == b.letter_names();
}

} // namespace hdkit
