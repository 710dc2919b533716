/*
 * Copyright 2026 the rsg authors
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

#include "rsg/generate.hpp"

#include <algorithm>
#include <random>

namespace rsg {

Game random_game(const RandomGameParams& params)
{
    if (params.vertices < 1 || params.max_order < 1)
        throw Error(ErrorKind::InvalidArgument,
                    "random_game needs at least one vertex and max_order >= 1");
    if (params.players < 0 || params.players > 2)
        throw Error(ErrorKind::InvalidArgument, "players must be 0, 1 or 2");

    std::mt19937_64 rng(params.seed);
    auto next = [&rng](std::uint64_t n) -> std::uint64_t {
        return n == 0 ? 0 : rng() % n;
    };

    const std::uint32_t n = params.vertices;
    GameBuilder builder;
    std::vector<Owner> owners;
    for (std::uint32_t v = 0; v < n; ++v) {
        Owner owner = Owner::Switch;
        if (params.players == 1)
            owner = next(2) == 0 ? Owner::Reach : Owner::Switch;
        else if (params.players == 2) {
            const std::uint64_t pick = next(3);
            owner = pick == 0   ? Owner::Reach
                    : pick == 1 ? Owner::Safety
                                : Owner::Switch;
        }
        owners.push_back(owner);
        builder.add_vertex("v" + std::to_string(v), owner);
    }

    for (std::uint32_t v = 0; v < n; ++v) {
        if (owners[v] == Owner::Switch) {
            const std::uint64_t len = 1 + next(params.max_order);
            std::vector<VertexId> order;
            for (std::uint64_t i = 0; i < len; ++i)
                order.push_back(static_cast<VertexId>(next(n)));
            builder.set_order(v, std::move(order));
        } else {
            const std::uint64_t max_succ = std::min<std::uint64_t>(params.max_order, n);
            const std::uint64_t count = next(max_succ + 1);
            // distinct successors via a seeded Fisher-Yates prefix
            std::vector<VertexId> pool(n);
            for (std::uint32_t i = 0; i < n; ++i)
                pool[i] = i;
            for (std::uint64_t i = 0; i < count; ++i) {
                const std::uint64_t j = i + next(n - i);
                std::swap(pool[i], pool[j]);
            }
            builder.set_successors(
                v, std::vector<VertexId>(pool.begin(),
                                         pool.begin() + static_cast<long>(count)));
        }
    }

    builder.set_start(static_cast<VertexId>(next(n)));
    builder.set_target(static_cast<VertexId>(next(n)));
    return builder.build();
}

} // namespace rsg
