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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdkit/graph.hpp"

namespace hdkit {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;
using TransId = std::uint32_t;

struct Transition
{
    TransId id = 0;
    StateId from = 0;
    LetterId letter = 0;
    unsigned priority = 0;
    StateId to = 0;

    bool operator==(const Transition&) const = default;
};

/** The ultimately periodic word prefix . cycle^omega. */
struct Lasso
{
    std::vector<LetterId> prefix;
    std::vector<LetterId> cycle;

    bool operator==(const Lasso&) const = default;
};

/** Raw, unvalidated pieces of an automaton. */
struct AutomatonParts
{
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    StateId initial = 0;
    unsigned index_low = 0;
    unsigned index_high = 0;
    std::vector<Transition> transitions;
};

/**
 * A complete nondeterministic parity automaton with transition priorities,
 * read under the min-even convention. Immutable after construction.
 * Transition ids are dense and follow the order the transitions were given.
 */
class ParityAutomaton
{
  public:
    ParityAutomaton() = default;

    /** Validates all invariants; throws ParseError on violation. */
    explicit ParityAutomaton(AutomatonParts parts);

    /**
     * Like the constructor, but when the automaton is incomplete and
     * with_sink is set, a fresh rejecting sink is added first.
     */
    static ParityAutomaton from_parts(AutomatonParts parts, bool with_sink);

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_letters() const { return alphabet_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    StateId initial() const { return initial_; }
    unsigned index_low() const { return low_; }
    unsigned index_high() const { return high_; }

    const std::vector<Transition>& transitions() const { return transitions_; }
    const Transition& transition(TransId t) const { return transitions_[t]; }
    std::span<const TransId> out(StateId q, LetterId a) const;

    const std::string& state_name(StateId q) const { return states_[q]; }
    const std::string& letter_name(LetterId a) const { return alphabet_[a]; }
    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& letter_names() const { return alphabet_; }
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<LetterId> find_letter(std::string_view name) const;

    bool is_deterministic() const;
    unsigned min_priority() const;
    unsigned max_priority() const;

    AutomatonParts parts() const;

    bool operator==(const ParityAutomaton& o) const;

  private:
    std::vector<std::string> states_;
    std::vector<std::string> alphabet_;
    StateId initial_ = 0;
    unsigned low_ = 0;
    unsigned high_ = 0;
    std::vector<Transition> transitions_;
    std::vector<std::uint32_t> offset_;  // (q * |letters| + a) -> start in by_row_
    std::vector<TransId> by_row_;
};

/** A name not already used in names, derived from base. */
std::string fresh_name(const std::vector<std::string>& names, const std::string& base);

/** Same automaton with priorities replaced (one per transition). */
ParityAutomaton with_priorities(const ParityAutomaton& a, const std::vector<unsigned>& priority);

/** Adds delta to every priority and to the index; delta must keep them >= 0. */
ParityAutomaton shift_priorities(const ParityAutomaton& a, int delta);

struct Restriction
{
    ParityAutomaton automaton;
    std::vector<StateId> old_state;  // new state -> old state
    std::vector<TransId> old_trans;  // new transition -> old transition
    std::vector<StateId> new_state;  // old state -> new state or NONE
};

/**
 * Keeps the transitions flagged in keep, then drops states unreachable from
 * the initial state. Throws InternalError if this leaves a reachable state
 * without a transition on some letter.
 */
Restriction restrict_transitions(const ParityAutomaton& a, const std::vector<bool>& keep);

/** Drops unreachable states. */
Restriction trim_unreachable(const ParityAutomaton& a);

/** The same automaton started at another state. */
ParityAutomaton with_initial(const ParityAutomaton& a, StateId q);

std::vector<bool> reachable_states(const ParityAutomaton& a);

/**
 * Maximal strongly connected components of the graph of transitions with
 * priority >= threshold, each reported as its set of transitions. Components
 * without internal transitions are omitted.
 */
std::vector<std::vector<TransId>> scc_above(const ParityAutomaton& a, unsigned threshold);

class CoreachabilityRelation
{
  public:
    CoreachabilityRelation() = default;
    CoreachabilityRelation(std::size_t n, std::vector<std::uint8_t> pairs);

    std::size_t num_states() const { return n_; }
    bool coreachable(StateId p, StateId q) const { return pairs_[p * n_ + q] != 0; }
    /** Class id of q, or NONE if q is unreachable. */
    std::uint32_t class_of(StateId q) const { return class_[q]; }
    bool weakly_coreachable(StateId p, StateId q) const
    {
        return class_[p] != NONE && class_[p] == class_[q];
    }
    const std::vector<std::vector<StateId>>& classes() const { return classes_; }
    const std::vector<StateId>& class_members(StateId q) const { return classes_[class_[q]]; }
    std::vector<std::pair<StateId, StateId>> pair_list() const;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> pairs_;
    std::vector<std::uint32_t> class_;
    std::vector<std::vector<StateId>> classes_;
};

/**
 * Coreachable pairs (reached from the initial state on a common word) and
 * their transitive closure. Only reachable states belong to a class.
 */
CoreachabilityRelation coreachability(const ParityAutomaton& a);

enum class Approximation { safe, above1, above0 };

/**
 * The approximations with a fresh sink appended as the last state:
 * safe    priorities >= 2 become 2, priority 1 goes to a rejecting sink (1);
 * above1  priorities >= 2 kept, priority 1 goes to a rejecting sink (3);
 * above0  priorities >= 1 kept, priority 0 goes to an accepting sink (2).
 */
ParityAutomaton approximate(const ParityAutomaton& a, Approximation kind);

bool lasso_member(const ParityAutomaton& a, const Lasso& w);
bool lasso_member_from(const ParityAutomaton& a, StateId q, const Lasso& w);

/** All lassos with |prefix| <= bound and 1 <= |cycle| <= bound. */
std::vector<Lasso> enumerate_lassos(std::size_t letters, std::size_t bound);

/** First enumerated lasso on which (a,p) and (b,q) disagree, if any. */
std::optional<Lasso> lasso_difference(const ParityAutomaton& a, StateId p,
                                      const ParityAutomaton& b, StateId q, std::size_t bound);

bool same_alphabet(const ParityAutomaton& a, const ParityAutomaton& b);

} // namespace hdkit
