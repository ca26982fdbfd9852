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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdkit/automaton.hpp"

namespace hdkit {

/**
 * A finite-memory strategy for Eve in the HD game. The step table is
 * indexed by (memory, state, letter); t == NONE marks an undefined entry.
 */
struct StrategyMachine
{
    struct Step
    {
        TransId t = NONE;
        std::uint32_t next = NONE;
    };

    std::vector<std::string> memory;
    std::uint32_t init = 0;
    std::size_t states = 0;
    std::size_t letters = 0;
    std::vector<Step> step;

    const Step& at(std::uint32_t m, StateId q, LetterId a) const { return step[(m * states + q) * letters + a]; }
    Step& at(std::uint32_t m, StateId q, LetterId a) { return step[(m * states + q) * letters + a]; }
};

nlohmann::ordered_json strategy_to_json(const ParityAutomaton& a, const StrategyMachine& s);
/** ParseError on unknown names, unknown fields or illegal transitions. */
StrategyMachine strategy_from_json(const ParityAutomaton& a, const nlohmann::json& j);

/** Memoryless; needs a safety or reachability automaton that is HD. */
StrategyMachine extract_safety_reach(const ParityAutomaton& a);

/**
 * Tracks a safe-deterministic state and plays the 1-token strategy against
 * it. When the tracked state dies, resets to the active state with the
 * longest surviving run (ties by state id). Needs [1,2] and Eve winning the
 * 1-token game from everywhere; the automaton is priority-normalised
 * internally, which keeps transition ids.
 */
StrategyMachine extract_cobuchi(const ParityAutomaton& a);

/**
 * Memory token in the reach-deterministic part of A_>0, 1-token strategy
 * against it on A_>0, and a reset after each priority-0 move. Needs [0,1],
 * Eve winning the 1-token game from everywhere and reach covering.
 */
StrategyMachine extract_buchi(const ParityAutomaton& a);

struct PlayResult
{
    std::vector<unsigned> priorities;  // of the run up to the repeated configuration
    std::size_t cycle_start = 0;       // index in priorities where the repeating part starts
    unsigned cycle_min = 0;
    bool accepted = false;
    bool in_language = false;
    bool violates = false;
};

/** PreconditionError if the machine is undefined at a reached configuration. */
PlayResult simulate_play(const ParityAutomaton& a, const StrategyMachine& s, const Lasso& w);

struct VerifyResult
{
    bool winning = false;
    bool exact = true;               // false: only lassos up to the bound were simulated
    std::optional<Lasso> witness;    // a word in the language on which the run rejects
    std::string reason;
};

/**
 * Exact check against the determinised language: no reachable cycle of
 * (memory, state, deterministic state) is accepted by the determinisation
 * while the strategy's run rejects. Falls back to simulating every lasso up
 * to the bound when determinisation hits its guard.
 */
VerifyResult verify_strategy(const ParityAutomaton& a, const StrategyMachine& s, std::size_t bound = 4);

} // namespace hdkit
