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

#include "rsg/oneplayer.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace rsg {

namespace {

void require_one_player(const Game& game)
{
    if (!game.is_one_player())
        throw Error(ErrorKind::NotOnePlayer, "game has safety vertices");
}

} // namespace

OnePlayerVerdict solve_one_player(const Game& game,
                                  std::optional<std::uint64_t> state_limit)
{
    require_one_player(game);

    OnePlayerVerdict verdict;

    std::vector<GameState> states;
    std::vector<std::uint32_t> parent;
    std::unordered_map<GameState, std::uint32_t, GameStateHash> index;

    const GameState init = game.initial_state();
    states.push_back(init);
    parent.push_back(UINT32_MAX);
    index.emplace(init, 0);

    std::uint32_t goal = UINT32_MAX;
    if (init.vertex == game.target())
        goal = 0;

    for (std::size_t head = 0; head < states.size() && goal == UINT32_MAX;
         ++head) {
        const GameState current = states[head]; // copy: the vector grows
        if (is_terminal(game, current) != Terminal::Live)
            continue;

        std::vector<GameState> next;
        if (game.owner(current.vertex) == Owner::Switch) {
            next.push_back(successor(game, current));
        } else {
            for (VertexId choice : game.out(current.vertex))
                next.push_back(step_with_choice(game, current, choice));
        }

        for (GameState& state : next) {
            auto [it, fresh] =
                index.emplace(state, static_cast<std::uint32_t>(states.size()));
            if (!fresh)
                continue;
            if (state_limit && states.size() >= *state_limit)
                throw Error(ErrorKind::StateLimitExceeded,
                            "state limit exceeded after " +
                                std::to_string(states.size()) + " states");
            const bool hit = state.vertex == game.target();
            states.push_back(std::move(state));
            parent.push_back(static_cast<std::uint32_t>(head));
            if (hit) {
                goal = static_cast<std::uint32_t>(states.size() - 1);
                break;
            }
        }
    }

    verdict.explored_states = states.size();
    if (goal == UINT32_MAX) {
        verdict.winner = Player::Safety;
        return verdict;
    }

    Play witness;
    witness.outcome = PlayOutcome::ReachedTarget;
    for (std::uint32_t i = goal; i != UINT32_MAX; i = parent[i])
        witness.states.push_back(states[i]);
    std::reverse(witness.states.begin(), witness.states.end());

    verdict.winner = Player::Reachability;
    verdict.certificate = play_to_flow(game, witness);
    verdict.witness_play = std::move(witness);
    return verdict;
}

namespace {

bool graph_reachable(const Game& game, VertexId from, VertexId to)
{
    std::vector<bool> seen(game.num_vertices(), false);
    std::vector<VertexId> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        const VertexId v = queue.back();
        queue.pop_back();
        if (v == to)
            return true;
        for (VertexId u : game.out(v)) {
            if (!seen[u]) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    return false;
}

/**
 * Backtracking enumeration of count vectors with exact total flow.
 * Between assignments the per-variable domains are narrowed to bounds
 * consistency against every vertex balance equation plus the global sum
 * constraint; each variable's contribution to a balance is monotone in its
 * value (switch throughputs contribute their staircase positions), so the
 * bounds invert by binary search. Propagation only removes values that
 * cannot extend to a certificate, so the first certificate found is still
 * the lexicographically least one of minimal total flow.
 */
class FlowEnumerator
{
public:
    explicit FlowEnumerator(const Game& game) : game_(game)
    {
        const std::size_t n = game.num_vertices();
        delta_.assign(n, 0);
        delta_[game.start()] += 1;
        delta_[game.target()] -= 1;

        for (VertexId v = 0; v < n; ++v) {
            if (game.owner(v) == Owner::Reach) {
                const auto& succ = game.out(v);
                for (std::size_t j = 0; j < succ.size(); ++j)
                    vars_.push_back(make_reach_var(v, j));
            } else if (game.owner(v) == Owner::Switch) {
                vars_.push_back(make_switch_var(v));
            }
        }

        terms_.resize(n);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const Var& var = vars_[i];
            if (var.position >= 0) {
                const VertexId head =
                    game.out(var.tail)[static_cast<std::size_t>(var.position)];
                if (head != var.tail) { // self-loop edges cancel out
                    terms_[var.tail].push_back({i, Term::Linear, +1, {}, 0});
                    terms_[head].push_back({i, Term::Linear, -1, {}, 0});
                }
            } else {
                const auto& order = game.out(var.tail);
                // one monotone term per distinct target: the net effect of
                // the throughput on that vertex's balance
                std::vector<VertexId> targets;
                for (VertexId u : order)
                    if (std::find(targets.begin(), targets.end(), u) ==
                        targets.end())
                        targets.push_back(u);
                bool tail_has_term = false;
                for (VertexId u : targets) {
                    Term term;
                    term.var = i;
                    term.kind = u == var.tail ? Term::SwitchNet : Term::SwitchIn;
                    term.k = order.size();
                    term.prefix.assign(order.size() + 1, 0);
                    for (std::size_t j = 0; j < order.size(); ++j)
                        term.prefix[j + 1] =
                            term.prefix[j] + (order[j] == u ? 1 : 0);
                    terms_[u].push_back(term);
                    if (u == var.tail)
                        tail_has_term = true;
                }
                if (!tail_has_term)
                    terms_[var.tail].push_back({i, Term::Linear, +1, {}, 0});
            }
        }
    }

    std::optional<ControlledSwitchingFlow> find(std::uint64_t cap)
    {
        for (std::uint64_t total = 0; total <= cap; ++total) {
            std::vector<Domain> domains(vars_.size(),
                                        Domain{0, static_cast<std::int64_t>(total)});
            if (!propagate(domains, static_cast<std::int64_t>(total)))
                continue;
            if (dfs(domains, static_cast<std::int64_t>(total)))
                return build_flow(domains);
        }
        return std::nullopt;
    }

private:
    struct Var
    {
        VertexId tail;
        int position; // successor position, or -1 for a switch throughput
    };

    struct Domain
    {
        std::int64_t lo, hi;
    };

    /**
     * One variable's monotone contribution to one vertex balance.
     * Linear: coeff * value. SwitchIn: minus the flow the throughput pushes
     * into this vertex (nonincreasing). SwitchNet: throughput minus the
     * self-loop flow (nondecreasing). prefix[r] counts order positions
     * below r that hit the vertex.
     */
    struct Term
    {
        std::size_t var = 0;
        enum Kind { Linear, SwitchIn, SwitchNet } kind = Linear;
        int coeff = 0;
        std::vector<std::int64_t> prefix;
        std::size_t k = 0;

        std::int64_t into(std::int64_t value) const
        {
            return (value / static_cast<std::int64_t>(k)) * prefix[k] +
                   prefix[static_cast<std::size_t>(value %
                                                   static_cast<std::int64_t>(k))];
        }
        std::int64_t eval(std::int64_t value) const
        {
            switch (kind) {
            case Linear: return coeff * value;
            case SwitchIn: return -into(value);
            case SwitchNet: return value - into(value);
            }
            return 0;
        }
        bool nondecreasing() const { return kind != SwitchIn && !(kind == Linear && coeff < 0); }
        std::int64_t min_on(const Domain& d) const
        {
            return nondecreasing() ? eval(d.lo) : eval(d.hi);
        }
        std::int64_t max_on(const Domain& d) const
        {
            return nondecreasing() ? eval(d.hi) : eval(d.lo);
        }
    };

    static Var make_reach_var(VertexId v, std::size_t position)
    {
        return Var{v, static_cast<int>(position)};
    }
    static Var make_switch_var(VertexId v) { return Var{v, -1}; }

    /// Largest value in [lo,hi] with eval <= bound (nondecreasing terms),
    /// handled generically through the term's monotonicity.
    static std::int64_t last_leq(const Term& term, std::int64_t lo,
                                 std::int64_t hi, std::int64_t bound)
    {
        // precondition: term.eval(lo) <= bound for nondecreasing terms
        std::int64_t left = lo, right = hi;
        while (left < right) {
            const std::int64_t mid = left + (right - left + 1) / 2;
            if (term.eval(mid) <= bound)
                left = mid;
            else
                right = mid - 1;
        }
        return left;
    }
    static std::int64_t first_geq(const Term& term, std::int64_t lo,
                                  std::int64_t hi, std::int64_t bound)
    {
        std::int64_t left = lo, right = hi;
        while (left < right) {
            const std::int64_t mid = left + (right - left) / 2;
            if (term.eval(mid) >= bound)
                right = mid;
            else
                left = mid + 1;
        }
        return left;
    }

    /// Bounds-consistency fixpoint over all balances and the sum
    /// constraint; returns false when some domain empties.
    bool propagate(std::vector<Domain>& domains, std::int64_t total) const
    {
        bool changed = true;
        while (changed) {
            changed = false;

            // global sum constraint: sum of all values == total
            std::int64_t sum_lo = 0, sum_hi = 0;
            for (const Domain& d : domains) {
                sum_lo += d.lo;
                sum_hi += d.hi;
            }
            if (sum_lo > total || sum_hi < total)
                return false;
            for (Domain& d : domains) {
                const std::int64_t others_lo = sum_lo - d.lo;
                const std::int64_t others_hi = sum_hi - d.hi;
                const std::int64_t new_hi = std::min(d.hi, total - others_lo);
                const std::int64_t new_lo = std::max(d.lo, total - others_hi);
                if (new_lo > new_hi)
                    return false;
                if (new_lo != d.lo || new_hi != d.hi) {
                    sum_lo += new_lo - d.lo;
                    sum_hi += new_hi - d.hi;
                    d.lo = new_lo;
                    d.hi = new_hi;
                    changed = true;
                }
            }

            // every vertex balance must hit delta exactly
            for (VertexId v = 0; v < game_.num_vertices(); ++v) {
                const auto& terms = terms_[v];
                if (terms.empty()) {
                    if (delta_[v] != 0)
                        return false;
                    continue;
                }
                std::int64_t bal_lo = 0, bal_hi = 0;
                for (const Term& term : terms) {
                    bal_lo += term.min_on(domains[term.var]);
                    bal_hi += term.max_on(domains[term.var]);
                }
                if (bal_lo > delta_[v] || bal_hi < delta_[v])
                    return false;
                for (const Term& term : terms) {
                    Domain& d = domains[term.var];
                    const std::int64_t t_lo = term.min_on(d);
                    const std::int64_t t_hi = term.max_on(d);
                    // the term value must stay within these bounds for the
                    // other terms to be able to absorb the difference;
                    // bal_hi >= delta guarantees a value reaching need_lo
                    // exists, and symmetrically for need_hi
                    const std::int64_t need_lo = delta_[v] - (bal_hi - t_hi);
                    const std::int64_t need_hi = delta_[v] - (bal_lo - t_lo);
                    std::int64_t new_lo = d.lo, new_hi = d.hi;
                    if (term.nondecreasing()) {
                        if (term.eval(d.lo) < need_lo)
                            new_lo = first_geq(term, d.lo, d.hi, need_lo);
                        if (term.eval(d.hi) > need_hi)
                            new_hi = last_leq(term, d.lo, d.hi, need_hi);
                    } else {
                        // nonincreasing: large values give small terms
                        if (term.eval(d.hi) < need_lo)
                            new_hi = last_geq_nonincr(term, d.lo, d.hi, need_lo);
                        if (term.eval(d.lo) > need_hi)
                            new_lo = first_leq_nonincr(term, d.lo, d.hi, need_hi);
                    }
                    if (new_lo > new_hi)
                        return false;
                    if (new_lo != d.lo || new_hi != d.hi) {
                        const Domain tightened{new_lo, new_hi};
                        bal_lo += term.min_on(tightened) - t_lo;
                        bal_hi += term.max_on(tightened) - t_hi;
                        d = tightened;
                        changed = true;
                        if (bal_lo > delta_[v] || bal_hi < delta_[v])
                            return false;
                    }
                }
            }
        }
        return true;
    }

    static std::int64_t last_geq_nonincr(const Term& term, std::int64_t lo,
                                         std::int64_t hi, std::int64_t bound)
    {
        std::int64_t left = lo, right = hi;
        while (left < right) {
            const std::int64_t mid = left + (right - left + 1) / 2;
            if (term.eval(mid) >= bound)
                left = mid;
            else
                right = mid - 1;
        }
        return left;
    }
    static std::int64_t first_leq_nonincr(const Term& term, std::int64_t lo,
                                          std::int64_t hi, std::int64_t bound)
    {
        std::int64_t left = lo, right = hi;
        while (left < right) {
            const std::int64_t mid = left + (right - left) / 2;
            if (term.eval(mid) <= bound)
                right = mid;
            else
                left = mid + 1;
        }
        return left;
    }

    bool leaf_ok(const std::vector<Domain>& domains, std::int64_t total) const
    {
        std::int64_t sum = 0;
        for (const Domain& d : domains)
            sum += d.lo;
        if (sum != total)
            return false;
        for (VertexId v = 0; v < game_.num_vertices(); ++v) {
            std::int64_t bal = 0;
            for (const Term& term : terms_[v])
                bal += term.eval(domains[term.var].lo);
            if (bal != delta_[v])
                return false;
        }
        return true;
    }

    bool dfs(std::vector<Domain>& domains, std::int64_t total) const
    {
        std::size_t branch_var = vars_.size();
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (domains[i].lo != domains[i].hi) {
                branch_var = i;
                break;
            }
        }
        if (branch_var == vars_.size())
            return leaf_ok(domains, total);

        const Domain saved = domains[branch_var];
        for (std::int64_t value = saved.lo; value <= saved.hi; ++value) {
            std::vector<Domain> next = domains;
            next[branch_var] = Domain{value, value};
            if (propagate(next, total) && dfs(next, total)) {
                domains = std::move(next);
                return true;
            }
        }
        return false;
    }

    ControlledSwitchingFlow build_flow(const std::vector<Domain>& domains) const
    {
        ControlledSwitchingFlow flow(game_);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const Var& var = vars_[i];
            if (var.position >= 0)
                flow.set_reach(var.tail,
                               static_cast<std::size_t>(var.position),
                               FlowCount(domains[i].lo));
            else
                flow.set_throughput(
                    static_cast<std::size_t>(game_.switch_slot(var.tail)),
                    FlowCount(domains[i].lo));
        }
        return flow;
    }

    const Game& game_;
    std::vector<Var> vars_;
    std::vector<std::vector<Term>> terms_;
    std::vector<std::int64_t> delta_;
};

} // namespace

std::optional<ControlledSwitchingFlow> search_flow(const Game& game,
                                                   std::uint64_t total_flow_cap)
{
    require_one_player(game);
    if (total_flow_cap > (1ULL << 31))
        throw Error(ErrorKind::InvalidArgument,
                    "search_flow cap too large for exhaustive enumeration");

    if (game.start() == game.target())
        return ControlledSwitchingFlow(game); // the empty certificate

    if (!graph_reachable(game, game.start(), game.target()))
        return std::nullopt;

    FlowEnumerator enumerator(game);
    std::optional<ControlledSwitchingFlow> found =
        enumerator.find(total_flow_cap);
    assert(!found || check_flow(game, *found).empty());
    return found;
}

} // namespace rsg
