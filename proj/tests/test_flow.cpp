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

#include "doctest.h"

#include <chrono>
#include <random>

#include "rsg/flow.hpp"
#include "rsg/generate.hpp"

using namespace rsg;

namespace {

Game minimal_game()
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {t});
    b.set_start(s).set_target(t);
    return b.build();
}

/// s(Switch, <a,t>), a(Switch, <s>), t.
Game loop_game()
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a, t});
    b.set_order(a, {s});
    b.set_start(s).set_target(t);
    return b.build();
}

} // namespace

TEST_CASE("switch position flows form a non-increasing staircase")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng() % 5;
        const FlowCount t = FlowCount(rng() % 50);
        FlowCount sum = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const FlowCount f = switch_position_flow(t, k, j);
            sum += f;
            if (j > 0) {
                const FlowCount prev = switch_position_flow(t, k, j - 1);
                REQUIRE(prev >= f);
                REQUIRE(prev - f <= 1);
            }
        }
        REQUIRE(sum == t);
    }
}

TEST_CASE("balance of the single-edge unit flow")
{
    const Game g = minimal_game();
    ControlledSwitchingFlow flow(g);
    flow.set_throughput(0, 1);
    CHECK(balance(g, flow, 0) == 1);
    CHECK(balance(g, flow, 1) == -1);
}

TEST_CASE("the all-zero flow balances everywhere")
{
    const Game g = loop_game();
    const ControlledSwitchingFlow flow(g);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        CHECK(balance(g, flow, v) == 0);
}

TEST_CASE("throughput 3 over a two-position order splits 2/1")
{
    const Game g = loop_game();
    ControlledSwitchingFlow flow(g);
    flow.set_throughput(static_cast<std::size_t>(g.switch_slot(0)), 3); // s
    flow.set_throughput(static_cast<std::size_t>(g.switch_slot(1)), 2); // a

    CHECK(switch_position_flow(3, 2, 0) == 2);
    CHECK(switch_position_flow(3, 2, 1) == 1);

    // s emits 3 (a:2, t:1) and receives 2 back from a
    CHECK(balance(g, flow, 0) == 1);
    CHECK(balance(g, flow, 1) == 0);
    CHECK(balance(g, flow, 2) == -1);
    CHECK(check_flow(g, flow).empty());
}

TEST_CASE("check_flow accepts the unit certificate and rejects a doubled one")
{
    const Game g = minimal_game();
    ControlledSwitchingFlow flow(g);
    flow.set_throughput(0, 1);
    CHECK(check_flow(g, flow).empty());

    flow.set_throughput(0, 2);
    const auto violations = check_flow(g, flow);
    REQUIRE(violations.size() == 2);
    bool saw_target = false;
    for (const auto& violation : violations) {
        if (violation.vertex == g.target()) {
            saw_target = true;
            CHECK(violation.got == -2);
            CHECK(violation.want == -1);
            CHECK(violation.message == "balance(t) = -2, expected -1");
        }
    }
    CHECK(saw_target);
}

TEST_CASE("check_flow flags negative counts")
{
    const Game g = minimal_game();
    ControlledSwitchingFlow flow(g);
    flow.set_throughput(0, -1);
    const auto violations = check_flow(g, flow);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == FlowViolation::Kind::NegativeCount);
}

TEST_CASE("check_flow rejects mismatched shapes")
{
    const Game g = minimal_game();
    const ControlledSwitchingFlow other(loop_game());
    const auto violations = check_flow(g, other);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == FlowViolation::Kind::ShapeMismatch);
    CHECK_THROWS_AS(balance(g, other, 0), Error);
}

TEST_CASE("start == target admits only the empty certificate")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    b.set_order(s, {s});
    b.set_start(s).set_target(s);
    const Game g = b.build();

    ControlledSwitchingFlow flow(g);
    CHECK(check_flow(g, flow).empty());
    flow.set_throughput(0, 1);
    const auto violations = check_flow(g, flow);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == FlowViolation::Kind::NonzeroOnTrivial);
}

TEST_CASE("play_to_flow counts edge traversals")
{
    SUBCASE("single step")
    {
        const Game g = minimal_game();
        const Play play = run_zero_player(g);
        const ControlledSwitchingFlow flow = play_to_flow(g, play);
        CHECK(flow.throughput(0) == 1);
        CHECK(check_flow(g, flow).empty());
    }
    SUBCASE("walk s, a, s, t")
    {
        const Game g = loop_game();
        const Play play = run_zero_player(g);
        REQUIRE(play.states.size() == 4);
        const ControlledSwitchingFlow flow = play_to_flow(g, play);
        CHECK(flow.throughput(static_cast<std::size_t>(g.switch_slot(0))) == 2);
        CHECK(flow.throughput(static_cast<std::size_t>(g.switch_slot(1))) == 1);
        CHECK(check_flow(g, flow).empty());
        CHECK(flow.total() == 3);
    }
}

TEST_CASE("play_to_flow rejects losing and repeating plays")
{
    const Game g = loop_game();
    Play losing = run_zero_player(g);
    losing.outcome = PlayOutcome::DeadEnd;
    CHECK_THROWS_AS(play_to_flow(g, losing), Error);

    Play repeating = run_zero_player(g);
    repeating.states.push_back(repeating.states[0]);
    repeating.states.push_back(repeating.states[1]);
    CHECK_THROWS_AS(play_to_flow(g, repeating), Error);
}

TEST_CASE("run_marginal replays the unit certificates")
{
    SUBCASE("switch start")
    {
        const Game g = minimal_game();
        ControlledSwitchingFlow flow(g);
        flow.set_throughput(0, 1);
        const Play play = run_marginal(g, flow);
        CHECK(play.outcome == PlayOutcome::ReachedTarget);
        CHECK(play.transitions() == 1);
    }
    SUBCASE("reach start")
    {
        GameBuilder b;
        const VertexId s = b.add_vertex("s", Owner::Reach);
        const VertexId t = b.add_vertex("t", Owner::Reach);
        b.set_successors(s, {t});
        b.set_start(s).set_target(t);
        const Game g = b.build();
        ControlledSwitchingFlow flow(g);
        flow.set_reach(s, 0, 1);
        const Play play = run_marginal(g, flow);
        CHECK(play.outcome == PlayOutcome::ReachedTarget);
        CHECK(play.transitions() == 1);
        CHECK(play.states.back().vertex == t);
    }
}

TEST_CASE("run_marginal refuses games with safety vertices")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Safety);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_successors(s, {t});
    b.set_start(s).set_target(t);
    const Game g = b.build();
    CHECK_THROWS_AS(run_marginal(g, ControlledSwitchingFlow(g)), Error);
}

TEST_CASE("extracted zero-player certificates replay at exact length")
{
    // a deterministic walk is the unique (hence shortest) play, so the
    // marginal replay must consume the whole flow
    int winning_walks = 0;
    for (std::uint64_t seed = 0; seed < 400 && winning_walks < 60; ++seed) {
        const Game g = random_game({5, 0, 3, seed});
        if (!validate(g).empty())
            continue;
        const Play walk = run_zero_player(g);
        if (walk.outcome != PlayOutcome::ReachedTarget)
            continue;
        ++winning_walks;
        const ControlledSwitchingFlow flow = play_to_flow(g, walk);
        REQUIRE(check_flow(g, flow).empty());
        const Play replay = run_marginal(g, flow);
        REQUIRE(replay.outcome == PlayOutcome::ReachedTarget);
        REQUIRE(FlowCount(replay.transitions()) == flow.total());
    }
    CHECK(winning_walks >= 20);
}

TEST_CASE("a valid flow with a spare circulation still replays to target")
{
    // reach(s,t) = reach(s,a) = 1, T(a) = 1: balanced, but the replay takes
    // the direct edge and leaves the circulation budget unused
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Reach);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    const VertexId a = b.add_vertex("a", Owner::Switch);
    b.set_successors(s, {t, a});
    b.set_order(a, {s});
    b.set_start(s).set_target(t);
    const Game g = b.build();

    ControlledSwitchingFlow flow(g);
    flow.set_reach(s, 0, 1);
    flow.set_reach(s, 1, 1);
    flow.set_throughput(0, 1);
    REQUIRE(check_flow(g, flow).empty());

    const Play play = run_marginal(g, flow);
    CHECK(play.outcome == PlayOutcome::ReachedTarget);
    CHECK(play.transitions() == 1);
    CHECK(FlowCount(play.transitions()) < flow.total());
}

TEST_CASE("flow counts may exceed any fixed-width integer")
{
    const Game g = minimal_game();
    ControlledSwitchingFlow flow(g);
    const FlowCount huge = FlowCount("123456789012345678901234567890");
    flow.set_throughput(0, huge);
    CHECK(balance(g, flow, 0) == huge);
    CHECK(balance(g, flow, 1) == -huge);
}

TEST_CASE("check_flow stays fast on a large chain")
{
    // smoke check for the polynomial-time contract, not a proof
    GameBuilder b;
    const std::uint32_t n = 20000;
    for (std::uint32_t i = 0; i < n; ++i)
        b.add_vertex("c" + std::to_string(i), Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        b.set_order(i, {i + 1});
    b.set_order(n - 1, {t});
    b.set_start(0).set_target(t);
    const Game g = b.build();

    ControlledSwitchingFlow flow(g);
    for (std::size_t slot = 0; slot < g.num_switch_vertices(); ++slot)
        flow.set_throughput(slot, 1);

    const auto begin = std::chrono::steady_clock::now();
    CHECK(check_flow(g, flow).empty());
    const auto elapsed = std::chrono::steady_clock::now() - begin;
    CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() <
          2000);
}
