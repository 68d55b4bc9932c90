#include "phantom/belief.hpp"

#include <algorithm>
#include <cmath>

namespace phantom::belief {

namespace {

int military_index(game::EntityKind k) {
    switch (k) {
    case game::EntityKind::Light: return 0;
    case game::EntityKind::Heavy: return 1;
    case game::EntityKind::Ranged: return 2;
    default: return -1;
    }
}

} // namespace

EconParams econ_from(const game::GameConfig& config, const game::GameMap& map, int player) {
    EconParams e;
    const game::UnitStats& w = config.unit(game::UnitType::Worker);
    e.worker_cost = w.cost;
    e.harvest_ticks = w.harvest_ticks;
    e.move_ticks = w.move_ticks;
    e.carry = w.carry;
    e.base_cost = config.building(game::BuildingType::Base).cost;
    e.barracks_cost = config.building(game::BuildingType::Barracks).cost;
    e.unit_costs = {config.unit(game::UnitType::Light).cost,
                    config.unit(game::UnitType::Heavy).cost,
                    config.unit(game::UnitType::Ranged).cost};
    e.starting_workers = std::max<std::size_t>(
        1, map.starts[static_cast<std::size_t>(player)].workers.size());

    // Mean travel distance to the nearest resource cells, mirrored onto the
    // opponent. A worker harvests from an adjacent cell, hence the -1.
    game::Pos base = map.starts[static_cast<std::size_t>(player)].base;
    std::vector<int> dists;
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x)
            if (map.at({x, y}) == game::Cell::Resource && map.resource_at({x, y}) > 0)
                dists.push_back(game::cheb(base, {x, y}));
    if (dists.empty()) {
        e.avg_resource_distance = 1.0;
    } else {
        std::sort(dists.begin(), dists.end());
        std::size_t take = std::min<std::size_t>(4, dists.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < take; ++i)
            sum += std::max(0, dists[i] - 1);
        e.avg_resource_distance = std::max(0.5, sum / static_cast<double>(take));
    }
    return e;
}

double type_probability(const BeliefState& b, upp::MilitaryType t) {
    double total = 0.0;
    double mine = 0.0;
    for (int u = 0; u < 3; ++u) {
        double w = 1.0 + 2.0 * b.obs[static_cast<std::size_t>(u)] +
                   b.past[static_cast<std::size_t>(u)];
        total += w;
        if (u == static_cast<int>(t))
            mine = w;
    }
    return mine / total;
}

BeliefState update(const BeliefState& b, const game::PlayerView& view,
                   const game::GameConfig& config) {
    BeliefState out = b;
    out.game_tick = view.tick;

    // Destroyed units leave obs/past for the cost ledger.
    for (const game::LossEvent& l : view.enemy_losses) {
        if (out.destroyed_units.count(l.entity_id))
            continue;
        out.destroyed_units.insert(l.entity_id);
        out.destroyed_enemy_cost += config.entity_cost(l.kind);
        out.seen_units.emplace(l.entity_id, l.kind); // killed sight-unseen still counts
        if (game::is_military(l.kind))
            out.seen_enemy_military = true;
        out.visible_now.erase(l.entity_id);
    }
    for (const game::LossEvent& l : view.own_losses)
        out.destroyed_own_cost += config.entity_cost(l.kind);

    out.visible_now.clear();
    for (const game::ViewEntity& e : view.enemy) {
        out.visible_now.insert(e.id);
        bool first_sight = out.seen_units.emplace(e.id, e.kind).second;
        if (e.kind == game::EntityKind::Base && first_sight)
            ++out.observed_enemy_bases;
        if (e.kind == game::EntityKind::Base)
            out.seen_enemy_base = true;
        if (e.kind == game::EntityKind::Barracks)
            out.seen_enemy_barracks = true;
        if (game::is_military(e.kind))
            out.seen_enemy_military = true;
    }

    // Recount obs/past from the ledgers; cheap and impossible to drift.
    out.obs = {0, 0, 0};
    out.past = {0, 0, 0};
    int live_workers = 0;
    for (const auto& [id, kind] : out.seen_units) {
        if (out.destroyed_units.count(id))
            continue;
        if (kind == game::EntityKind::Worker) {
            ++live_workers;
            continue;
        }
        int mi = military_index(kind);
        if (mi < 0)
            continue;
        if (out.visible_now.count(id))
            ++out.obs[static_cast<std::size_t>(mi)];
        else
            ++out.past[static_cast<std::size_t>(mi)];
    }
    out.observed_enemy_workers = live_workers;
    return out;
}

double estimate_enemy_resources(const BeliefState& b, const EconParams& e) {
    double round_trip = e.harvest_ticks + 2.0 * e.avg_resource_distance * e.move_ticks;
    int workers = std::max(b.observed_enemy_workers, e.starting_workers);
    double gathered =
        workers * e.carry * static_cast<double>(b.game_tick) / std::max(1.0, round_trip);

    double spent = b.destroyed_enemy_cost;
    for (int t = 0; t < 3; ++t)
        spent += (b.obs[static_cast<std::size_t>(t)] + b.past[static_cast<std::size_t>(t)]) *
                 e.unit_costs[static_cast<std::size_t>(t)];
    if (b.seen_enemy_barracks || b.seen_enemy_military)
        spent += e.barracks_cost;
    if (b.observed_enemy_bases > 1)
        spent += e.base_cost;
    return std::max(0.0, gathered - spent);
}

upp::EnemyComposition sample_enemy_composition(const BeliefState& b, const EconParams& e,
                                               Rng& rng) {
    upp::EnemyComposition comp;
    for (int t = 0; t < 3; ++t)
        comp.s[static_cast<std::size_t>(t)] = std::min(
            upp::kEnemyCap, b.obs[static_cast<std::size_t>(t)] + b.past[static_cast<std::size_t>(t)]);

    double budget = estimate_enemy_resources(b, e);
    int min_cost = std::min({e.unit_costs[0], e.unit_costs[1], e.unit_costs[2]});
    double p[3];
    for (int t = 0; t < 3; ++t)
        p[t] = type_probability(b, static_cast<upp::MilitaryType>(t));
    while (budget >= min_cost) {
        double roll = rng.next_double();
        int t = roll < p[0] ? 0 : (roll < p[0] + p[1] ? 1 : 2);
        budget -= e.unit_costs[static_cast<std::size_t>(t)];
        comp.s[static_cast<std::size_t>(t)] =
            std::min(upp::kEnemyCap, comp.s[static_cast<std::size_t>(t)] + 1);
    }
    return comp;
}

rdu::DeformationKind select_phi(const BeliefState& b, int cheapest_unit_cost) {
    int margin = 2 * cheapest_unit_cost;
    if (b.destroyed_enemy_cost > b.destroyed_own_cost + margin)
        return rdu::DeformationKind::optimistic();
    if (b.destroyed_own_cost > b.destroyed_enemy_cost + margin)
        return rdu::DeformationKind::pessimistic();
    return rdu::DeformationKind::neutral();
}

} // namespace phantom::belief
