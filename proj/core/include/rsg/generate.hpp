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

#pragma once

#include <cstdint>

#include "rsg/game.hpp"

namespace rsg {

struct RandomGameParams
{
    std::uint32_t vertices = 4;
    int players = 0; // 0, 1 or 2
    std::uint32_t max_order = 2;
    std::uint64_t seed = 0;
};

/**
 * Seeded random game generator for test corpora. The same parameters
 * always produce the same game: sampling uses mt19937_64 with plain modulo
 * reduction, so the output does not depend on the standard library's
 * distribution implementations.
 *
 * players=0 emits only switch vertices; players=1 mixes reach and switch;
 * players=2 mixes all three owners. Switch orders have 1..max_order
 * entries (repetition allowed); player vertices get 0..min(max_order, n)
 * distinct successors.
 */
Game random_game(const RandomGameParams& params);

} // namespace rsg
