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

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "hdkit/automaton.hpp"
#include "hdkit/oracle.hpp"
#include "hdkit/token_games.hpp"

namespace hdkit {

enum class HdMethod { two_token, one_token_safety_reach, oracle };

const char* method_name(HdMethod m);

struct HdVerdict
{
    bool is_hd = false;
    HdMethod method = HdMethod::two_token;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::shared_ptr<const TokenGameResult> game;  // the solved G2 (or G1) product
    std::optional<ParityAutomaton> pruned;
};

nlohmann::ordered_json verdict_to_json(const HdVerdict& v);

/** Eve wins G2(q0; q0, q0). */
HdVerdict decide_hd(const ParityAutomaton& a);

HdVerdict decide_hd_oracle(const ParityAutomaton& a);

/**
 * The subautomaton of transitions Eve's token takes in some play of the
 * 2-token strategy derived from G3 with Adam's third token copying hers.
 * All postconditions are checked; failures raise InternalError.
 */
ParityAutomaton prune_everywhere(const ParityAutomaton& a);

enum class SafetyReachKind { safety, reachability };

/** Shape check; PreconditionError if a is neither kind. */
SafetyReachKind safety_reach_kind(const ParityAutomaton& a);

/** On HD, the result carries the deterministic subautomaton in pruned. */
HdVerdict decide_hd_safety_reach(const ParityAutomaton& a);

/** For each state and letter the chosen transition, or NONE if no strategy exists. */
std::vector<TransId> safety_reach_choice(const ParityAutomaton& a);

enum class Tristate { no, yes, unknown };

const char* tristate_name(Tristate t);

/**
 * Whether all successors on a letter are language-equivalent. Mutual
 * simulation proves equivalence; a lasso with |u|,|v| <= bound refutes it.
 */
Tristate is_semantically_deterministic(const ParityAutomaton& a, std::size_t bound = 4);

/** Split a letter named "in/out" at the slash. */
LetterSplit split_from_names(const ParityAutomaton& d);
/** {"letter": ["in", "out"], ...} */
LetterSplit split_from_json(const ParityAutomaton& d, const nlohmann::json& j);

/** The automaton over inputs obtained by forgetting outputs. */
ParityAutomaton input_projection(const ParityAutomaton& d, const LetterSplit& split);

bool ge_realisable(const ParityAutomaton& d, const LetterSplit& split);

} // namespace hdkit
