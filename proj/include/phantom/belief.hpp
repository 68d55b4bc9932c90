#pragma once

#include <array>
#include <map>
#include <set>

#include "phantom/game_state.hpp"
#include "phantom/rdu.hpp"
#include "phantom/rng.hpp"
#include "phantom/upp.hpp"

namespace phantom::belief {

// Inputs of the enemy-resource estimation, derived once per game from the
// config and the map (distances mirrored from our own base placement).
struct EconParams {
    int worker_cost = 1;
    int harvest_ticks = 16;
    int move_ticks = 8;
    int carry = 1;
    int base_cost = 10;
    int barracks_cost = 5;
    double avg_resource_distance = 1.0; // travel cells between harvest spot and base
    std::array<int, 3> unit_costs{2, 3, 2};
    int starting_workers = 1;
};

EconParams econ_from(const game::GameConfig& config, const game::GameMap& map, int player);

// Opponent model: per-type counts of enemy military we see now (obs) and saw
// before (past, excluding destroyed and currently visible), destruction
// ledgers in resource cost, and the observations feeding the resource
// estimate.
struct BeliefState {
    std::array<int, 3> obs{};
    std::array<int, 3> past{};
    int destroyed_enemy_cost = 0;
    int destroyed_own_cost = 0;
    bool seen_enemy_base = false;
    bool seen_enemy_barracks = false;
    bool seen_enemy_military = false;
    int observed_enemy_bases = 0; // distinct base ids ever seen
    int observed_enemy_workers = 0;
    long game_tick = 0;

    // Bookkeeping by entity id.
    std::map<int, game::EntityKind> seen_units;
    std::set<int> visible_now;
    std::set<int> destroyed_units;
};

// (1 + 2*obs[t] + past[t]) / total; always strictly positive, sums to 1.
double type_probability(const BeliefState& b, upp::MilitaryType t);

// Folds one fog-of-war snapshot into the belief: visible enemies become obs,
// units that left vision move to past, destroyed units feed the cost ledgers.
BeliefState update(const BeliefState& b, const game::PlayerView& view,
                   const game::GameConfig& config);

// max(0, gathered - spent): gathered from the worker/carry/round-trip model,
// spent from the destruction ledger, observed units, and inferred buildings.
double estimate_enemy_resources(const BeliefState& b, const EconParams& e);

// Starts from obs + past and buys hypothetical units with the estimated
// unexplained resources, each draw following type_probability.
upp::EnemyComposition sample_enemy_composition(const BeliefState& b, const EconParams& e,
                                               Rng& rng);

// Optimistic once we destroyed clearly more value than we lost (margin of
// twice the cheapest unit), pessimistic in the mirrored case, else neutral.
rdu::DeformationKind select_phi(const BeliefState& b, int cheapest_unit_cost);

} // namespace phantom::belief
