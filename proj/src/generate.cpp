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

#include "hdkit/generate.hpp"

#include <set>
#include <tuple>

#include "hdkit/errors.hpp"

namespace hdkit {

std::uint64_t
draw_below(std::mt19937_64& rng, std::uint64_t n)
{
    HDKIT_ASSERT(n > 0, "empty draw range");
    const std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

bool
draw_chance(std::mt19937_64& rng, double p)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

ParityAutomaton
random_automaton(std::mt19937_64& rng, const GenSpec& spec)
{
    if (spec.states == 0 || spec.letters == 0 || spec.letters > 26)
        throw PreconditionError("need at least one state and 1..26 letters");
    if (spec.index_low > spec.index_high) throw PreconditionError("empty priority index");
    if (!(spec.density > 0 && spec.density <= 1)) throw PreconditionError("density must lie in (0,1]");
    AutomatonParts p;
    for (unsigned q = 0; q < spec.states; q++) p.states.push_back("q" + std::to_string(q));
    for (unsigned a = 0; a < spec.letters; a++) p.alphabet.push_back(std::string(1, static_cast<char>('a' + a)));
    p.initial = 0;
    p.index_low = spec.index_low;
    p.index_high = spec.index_high;
    const auto span = spec.index_high - spec.index_low + 1;
    auto priority = [&] { return spec.index_low + static_cast<unsigned>(draw_below(rng, span)); };
    std::set<std::tuple<StateId, LetterId, unsigned, StateId>> seen;
    for (StateId q = 0; q < spec.states; q++) {
        for (LetterId a = 0; a < spec.letters; a++) {
            auto to = static_cast<StateId>(draw_below(rng, spec.states));
            auto c = priority();
            seen.emplace(q, a, c, to);
            p.transitions.push_back({0, q, a, c, to});
            for (StateId r = 0; r < spec.states; r++) {
                if (!draw_chance(rng, spec.density)) continue;
                auto c2 = priority();
                if (!seen.emplace(q, a, c2, r).second) continue;
                p.transitions.push_back({0, q, a, c2, r});
            }
        }
    }
    return ParityAutomaton(std::move(p));
}

std::vector<ParityAutomaton>
generate(const GenSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::vector<ParityAutomaton> out;
    for (unsigned i = 0; i < spec.count; i++) out.push_back(random_automaton(rng, spec));
    return out;
}

} // namespace hdkit
