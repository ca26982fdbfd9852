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

#include <string>
#include <vector>

#include <json.hpp>

#include "hdkit/automaton.hpp"

namespace hdkit {

struct NormalisationStep
{
    std::string name;
    std::size_t removed = 0;
    std::size_t relabelled = 0;
};

struct NormalisationReport
{
    ParityAutomaton input;
    ParityAutomaton output;
    std::size_t iterations = 0;
    std::vector<NormalisationStep> steps;
    bool i1 = false;  // output simulation-equivalent to input
    bool i2 = false;  // Eve wins the token game from everywhere on output
};

nlohmann::ordered_json report_to_json(const NormalisationReport& r);

/** Priority-2 transitions outside every 2-SCC become 1. Index [1,2]. */
ParityAutomaton cobuchi_normalise(const ParityAutomaton& a);

/** Whether every 2-transition lies in the priority-2 graph's SCCs. */
bool is_priority_normalised(const ParityAutomaton& a);

/** Iterated relabelling until 2-priority reduced. Index starts at 1. */
ParityAutomaton two_priority_reduce(const ParityAutomaton& a);

bool is_two_priority_reduced(const ParityAutomaton& a);

struct NormaliseOptions
{
    bool check_each_step = true;  // re-check I1 and I2 after every subprocedure
};

/** Büchi rank-reduction; needs wins_everywhere(a, 1). */
NormalisationReport rank_reduce_buchi(const ParityAutomaton& a, NormaliseOptions options = {});

/** [0,K] normalisation; needs wins_everywhere(a, 2). */
NormalisationReport normalise_0K(const ParityAutomaton& a, NormaliseOptions options = {});

enum class CoverageKind { safe, one_safe, reach, zero_reach };

const char* coverage_name(CoverageKind k);

struct Coverage
{
    bool holds = false;
    std::vector<StateId> witness;       // NONE where no witness exists or q is unreachable
    std::vector<StateId> self_witness;  // also wins the game against itself
};

/**
 * safe:       G1(p; q) in A_safe
 * one_safe:   G2(p; q, q) in A_>1
 * reach:      G1(q; p) in A_>0
 * zero_reach: G2(q; p, p) in A_>0
 * with p ranging over the weak coreachability class of q. Unreachable
 * states are ignored.
 */
Coverage coverage(const ParityAutomaton& a, CoverageKind kind);

/**
 * For 0-reach covering after normalisation: from the rank-0 right-branch
 * witnesses (p1, p2) of every state, a state p of an end SCC of the
 * witness graph reachable from q. NONE for states without such witnesses.
 */
std::vector<StateId> end_scc_witnesses(const ParityAutomaton& a);

} // namespace hdkit
