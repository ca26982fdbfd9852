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
#include <vector>

namespace hdkit {

inline constexpr std::uint32_t NONE = 0xffffffffu;

/** Directed multigraph in compressed adjacency form; edge i runs from[i] -> to[i]. */
struct Digraph
{
    std::uint32_t n = 0;
    std::vector<std::uint32_t> from;
    std::vector<std::uint32_t> to;

    std::uint32_t add_edge(std::uint32_t u, std::uint32_t v)
    {
        from.push_back(u);
        to.push_back(v);
        return static_cast<std::uint32_t>(from.size() - 1);
    }
};

struct Csr
{
    std::vector<std::uint32_t> offset;  // n + 1 entries
    std::vector<std::uint32_t> edge;    // edge ids grouped by source
};

Csr out_csr(const Digraph& g);
Csr in_csr(const Digraph& g);

/**
 * Strongly connected components restricted to edges flagged in keep (all if
 * keep is empty). Components are numbered in reverse topological order.
 */
std::vector<std::uint32_t> scc(const Digraph& g, const std::vector<bool>& keep, std::uint32_t& count);

/** Vertices reachable from sources through edges flagged in keep (all if empty). */
std::vector<bool> reachable(const Digraph& g, const std::vector<std::uint32_t>& sources,
                            const std::vector<bool>& keep);

/**
 * Whether some cycle reachable from sources has least label of the given
 * parity. Edges not flagged in keep are ignored (none if keep is empty).
 */
bool has_cycle_with_min_parity(const Digraph& g, const std::vector<unsigned>& label,
                               const std::vector<std::uint32_t>& sources, unsigned parity,
                               const std::vector<bool>& keep = {});

/**
 * Searches a reachable cycle whose least first label is even and whose least
 * second label is odd. On success returns the edges of a closed walk and
 * sets stem to a path from a source to its start.
 */
bool find_even_odd_cycle(const Digraph& g, const std::vector<unsigned>& first,
                         const std::vector<unsigned>& second,
                         const std::vector<std::uint32_t>& sources,
                         std::vector<std::uint32_t>* stem, std::vector<std::uint32_t>* cycle);

} // namespace hdkit
