#include "phantom/game_state.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace phantom::game {

namespace {

// Clockwise Chebyshev neighborhood, fixed scan order for spawns and builds.
constexpr int kNeighbors[8][2] = {{0, -1}, {1, -1}, {1, 0},  {1, 1},
                                  {0, 1},  {-1, 1}, {-1, 0}, {-1, -1}};

UnitType unit_type_of(EntityKind k) { return static_cast<UnitType>(static_cast<int>(k)); }

int action_duration(const Action& a, const Entity& e, const GameConfig& cfg) {
    switch (a.type) {
    case ActionType::Move:
        return cfg.units[static_cast<std::size_t>(unit_type_of(e.kind))].move_ticks;
    case ActionType::Attack:
        return cfg.units[static_cast<std::size_t>(unit_type_of(e.kind))].attack_ticks;
    case ActionType::Harvest:
        return cfg.unit(UnitType::Worker).harvest_ticks;
    case ActionType::Deposit:
        return 1;
    case ActionType::Train:
        if (is_building(a.produce))
            return 0;
        return cfg.units[static_cast<std::size_t>(unit_type_of(a.produce))].train_ticks;
    case ActionType::Build:
        return a.produce == EntityKind::Base ? cfg.building(BuildingType::Base).build_ticks
                                             : cfg.building(BuildingType::Barracks).build_ticks;
    default:
        return 0;
    }
}

struct Occupancy {
    int width = 0;
    std::vector<int> cell; // entity id or -1

    void build(const GameState& s) {
        width = s.map.width;
        cell.assign(s.map.cells.size(), -1);
        for (const Entity& e : s.entities)
            cell[s.map.index(e.pos)] = e.id;
    }
    int at(const GameState& s, Pos p) const { return cell[s.map.index(p)]; }
    void clear_pos(const GameState& s, Pos p) { cell[s.map.index(p)] = -1; }
    void set_pos(const GameState& s, Pos p, int id) { cell[s.map.index(p)] = id; }
};

bool cell_free_for_entity(const GameState& s, const Occupancy& occ, Pos p) {
    if (!s.map.in_bounds(p))
        return false;
    if (s.map.at(p) == Cell::Wall)
        return false;
    if (s.map.at(p) == Cell::Resource && s.map.resource_at(p) > 0)
        return false;
    if (s.reserved[s.map.index(p)] >= 0)
        return false;
    return occ.at(s, p) < 0;
}

} // namespace

const Entity* GameState::find(int id) const {
    auto it = std::lower_bound(entities.begin(), entities.end(), id,
                               [](const Entity& e, int v) { return e.id < v; });
    return it != entities.end() && it->id == id ? &*it : nullptr;
}

Entity* GameState::find(int id) {
    auto it = std::lower_bound(entities.begin(), entities.end(), id,
                               [](const Entity& e, int v) { return e.id < v; });
    return it != entities.end() && it->id == id ? &*it : nullptr;
}

int GameState::count_entities(int player) const {
    int n = 0;
    for (const Entity& e : entities)
        if (e.player == player)
            ++n;
    return n;
}

GameState init_state(const GameMap& map, const GameConfig& config) {
    GameState s;
    s.map = map;
    s.reserved.assign(map.cells.size(), -1);
    for (int player = 0; player < 2; ++player) {
        const GameMap::Start& start = map.starts[static_cast<std::size_t>(player)];
        Entity base;
        base.id = s.next_entity_id++;
        base.player = player;
        base.kind = EntityKind::Base;
        base.pos = start.base;
        base.hp = config.building(BuildingType::Base).hp;
        s.entities.push_back(base);
        for (Pos wp : start.workers) {
            Entity w;
            w.id = s.next_entity_id++;
            w.player = player;
            w.kind = EntityKind::Worker;
            w.pos = wp;
            w.hp = config.unit(UnitType::Worker).hp;
            s.entities.push_back(w);
        }
        s.players[static_cast<std::size_t>(player)].resources = 0;
    }
    std::sort(s.entities.begin(), s.entities.end(),
              [](const Entity& a, const Entity& b) { return a.id < b.id; });
    return s;
}

namespace {

void accept_orders(GameState& s, const ActionSet& actions, int player, const GameConfig& cfg,
                   Occupancy& occ, StepEvents& events) {
    PlayerState& ps = s.players[static_cast<std::size_t>(player)];
    ProductionAudit audit;
    audit.tick = s.tick;
    audit.player = player;
    audit.idle_barracks_before = 0;
    for (const Entity& e : s.entities)
        if (e.player == player && e.kind == EntityKind::Barracks && e.idle())
            ++audit.idle_barracks_before;
    bool audit_open = false;

    auto reject = [&](const Action& a, const char* why) {
        events.rejected.push_back("tick " + std::to_string(s.tick) + " p" +
                                  std::to_string(player + 1) + " entity " +
                                  std::to_string(a.entity_id) + ": " + why);
    };

    for (const Action& a : actions) {
        Entity* e = s.find(a.entity_id);
        if (!e || e->player != player) {
            reject(a, "not a living own entity");
            continue;
        }
        if (!e->idle()) {
            reject(a, "entity busy");
            continue;
        }
        switch (a.type) {
        case ActionType::Idle:
            continue;
        case ActionType::Move: {
            if (is_building(e->kind)) {
                reject(a, "buildings cannot move");
                continue;
            }
            Pos t = step_to(e->pos, a.dir);
            if (!s.map.in_bounds(t) || s.map.at(t) == Cell::Wall ||
                (s.map.at(t) == Cell::Resource && s.map.resource_at(t) > 0) ||
                s.reserved[s.map.index(t)] >= 0) {
                reject(a, "move target blocked");
                continue;
            }
            break;
        }
        case ActionType::Attack: {
            if (is_building(e->kind)) {
                reject(a, "buildings cannot attack");
                continue;
            }
            const Entity* target = s.find(a.target_id);
            if (!target || target->player == player) {
                reject(a, "attack needs a living enemy target");
                continue;
            }
            break;
        }
        case ActionType::Harvest: {
            if (e->kind != EntityKind::Worker) {
                reject(a, "only workers harvest");
                continue;
            }
            if (e->cargo > 0) {
                reject(a, "cargo already full");
                continue;
            }
            if (!s.map.in_bounds(a.cell) || s.map.at(a.cell) != Cell::Resource ||
                s.map.resource_at(a.cell) <= 0 || cheb(e->pos, a.cell) > 1) {
                reject(a, "no adjacent resource there");
                continue;
            }
            break;
        }
        case ActionType::Deposit: {
            if (e->kind != EntityKind::Worker || e->cargo <= 0) {
                reject(a, "nothing to deposit");
                continue;
            }
            bool adjacent_base = false;
            for (const Entity& other : s.entities)
                if (other.player == player && other.kind == EntityKind::Base &&
                    cheb(other.pos, e->pos) <= 1)
                    adjacent_base = true;
            if (!adjacent_base) {
                reject(a, "no adjacent own base");
                continue;
            }
            break;
        }
        case ActionType::Train: {
            bool ok = (e->kind == EntityKind::Base && a.produce == EntityKind::Worker) ||
                      (e->kind == EntityKind::Barracks && is_military(a.produce));
            if (!ok) {
                reject(a, "building cannot train that");
                continue;
            }
            int cost = cfg.entity_cost(a.produce);
            if (ps.resources < cost) {
                reject(a, "cannot afford training");
                continue;
            }
            if (e->kind == EntityKind::Barracks) {
                if (!audit_open) {
                    audit.stock_before = ps.resources;
                    audit_open = true;
                }
                audit.trained.push_back(a.produce);
                audit.total_cost += cost;
            }
            ps.resources -= cost;
            ps.cumulative_spent += cost;
            break;
        }
        case ActionType::Build: {
            if (e->kind != EntityKind::Worker) {
                reject(a, "only workers build");
                continue;
            }
            if (!is_building(a.produce)) {
                reject(a, "build needs a building kind");
                continue;
            }
            if (!s.map.in_bounds(a.cell) || cheb(e->pos, a.cell) > 1 ||
                !cell_free_for_entity(s, occ, a.cell)) {
                reject(a, "build site unavailable");
                continue;
            }
            int cost = cfg.entity_cost(a.produce);
            if (ps.resources < cost) {
                reject(a, "cannot afford building");
                continue;
            }
            ps.resources -= cost;
            ps.cumulative_spent += cost;
            s.reserved[s.map.index(a.cell)] = e->id;
            break;
        }
        }
        e->action = a.type;
        e->remaining = action_duration(a, *e, cfg);
        e->dir = a.dir;
        e->target_id = a.target_id;
        e->cell = a.cell;
        e->produce = a.produce;
    }
    if (audit_open)
        events.production.push_back(std::move(audit));
}

void resolve_moves(GameState& s, Occupancy& occ, const std::vector<int>& completed_ids) {
    struct Mover {
        int id;
        Pos from;
        Pos to;
        bool moving = true;
    };
    std::vector<Mover> movers;
    for (int id : completed_ids) {
        Entity* e = s.find(id);
        if (!e || e->action != ActionType::Move)
            continue;
        Pos t = step_to(e->pos, e->dir);
        bool statically_ok = s.map.in_bounds(t) && s.map.at(t) != Cell::Wall &&
                             !(s.map.at(t) == Cell::Resource && s.map.resource_at(t) > 0) &&
                             s.reserved[s.map.index(t)] < 0;
        movers.push_back({id, e->pos, t, statically_ok});
    }
    // Cancellation fixpoint: contested targets cancel every contender; a
    // target occupied by anything that will not vacate cancels the mover.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < movers.size(); ++i) {
            if (!movers[i].moving)
                continue;
            for (std::size_t j = 0; j < movers.size(); ++j) {
                if (i == j)
                    continue;
                if (movers[j].moving && movers[j].to == movers[i].to) {
                    movers[i].moving = false;
                    movers[j].moving = false;
                    changed = true;
                }
            }
            if (!movers[i].moving)
                continue;
            int occupant = occ.at(s, movers[i].to);
            if (occupant >= 0 && occupant != movers[i].id) {
                bool vacating = false;
                for (const Mover& m : movers)
                    if (m.id == occupant && m.moving)
                        vacating = true;
                if (!vacating) {
                    movers[i].moving = false;
                    changed = true;
                }
            }
        }
    }
    for (const Mover& m : movers)
        if (m.moving)
            occ.clear_pos(s, m.from);
    for (const Mover& m : movers) {
        Entity* e = s.find(m.id);
        if (m.moving) {
            e->pos = m.to;
            occ.set_pos(s, m.to, m.id);
        }
        e->action = ActionType::Idle;
        e->remaining = 0;
    }
}

void try_spawns(GameState& s, Occupancy& occ, const GameConfig& cfg) {
    std::vector<Entity> born;
    for (Entity& e : s.entities) {
        if (!e.awaiting_spawn)
            continue;
        for (const auto& d : kNeighbors) {
            Pos p{e.pos.x + d[0], e.pos.y + d[1]};
            if (!cell_free_for_entity(s, occ, p))
                continue;
            Entity unit;
            unit.id = s.next_entity_id++;
            unit.player = e.player;
            unit.kind = e.produce;
            unit.pos = p;
            unit.hp = cfg.entity_hp(e.produce);
            born.push_back(unit);
            occ.set_pos(s, p, unit.id);
            e.awaiting_spawn = false;
            e.action = ActionType::Idle;
            e.remaining = 0;
            break;
        }
    }
    for (Entity& b : born)
        s.entities.push_back(std::move(b));
    // ids grow monotonically, so appending keeps the sort order
}

std::array<std::vector<bool>, 2> sight_masks(const GameState& s, const GameConfig& cfg) {
    std::array<std::vector<bool>, 2> mask;
    for (int p = 0; p < 2; ++p)
        mask[static_cast<std::size_t>(p)].assign(s.map.cells.size(), false);
    for (const Entity& e : s.entities) {
        int r = cfg.entity_sight(e.kind);
        auto& m = mask[static_cast<std::size_t>(e.player)];
        for (int y = std::max(0, e.pos.y - r); y <= std::min(s.map.height - 1, e.pos.y + r); ++y)
            for (int x = std::max(0, e.pos.x - r); x <= std::min(s.map.width - 1, e.pos.x + r);
                 ++x)
                m[s.map.index({x, y})] = true;
    }
    return mask;
}

} // namespace

StepEvents step(GameState& s, const ActionSet& p1_actions, const ActionSet& p2_actions,
                const GameConfig& cfg) {
    StepEvents events;
    Occupancy occ;
    occ.build(s);

    accept_orders(s, p1_actions, 0, cfg, occ, events);
    accept_orders(s, p2_actions, 1, cfg, occ, events);

    // Progress every running action.
    std::vector<int> completed;
    for (Entity& e : s.entities) {
        if (e.action == ActionType::Idle || e.awaiting_spawn)
            continue;
        if (--e.remaining <= 0)
            completed.push_back(e.id);
    }

    resolve_moves(s, occ, completed);

    std::vector<std::pair<int, int>> damage; // entity id -> accumulated damage
    auto add_damage = [&damage](int id, int dmg) {
        for (auto& [eid, total] : damage)
            if (eid == id) {
                total += dmg;
                return;
            }
        damage.emplace_back(id, dmg);
    };

    for (int id : completed) {
        Entity* e = s.find(id);
        if (!e)
            continue;
        switch (e->action) {
        case ActionType::Harvest: {
            std::size_t ci = s.map.index(e->cell);
            if (s.map.cells[ci] == Cell::Resource && s.map.resource_amount[ci] > 0) {
                int take = std::min(cfg.unit(UnitType::Worker).carry, s.map.resource_amount[ci]);
                s.map.resource_amount[ci] -= take;
                e->cargo += take;
                if (s.map.resource_amount[ci] == 0)
                    s.map.cells[ci] = Cell::Empty;
            }
            e->action = ActionType::Idle;
            break;
        }
        case ActionType::Deposit: {
            bool adjacent_base = false;
            for (const Entity& other : s.entities)
                if (other.player == e->player && other.kind == EntityKind::Base &&
                    cheb(other.pos, e->pos) <= 1)
                    adjacent_base = true;
            if (adjacent_base) {
                s.players[static_cast<std::size_t>(e->player)].resources += e->cargo;
                s.players[static_cast<std::size_t>(e->player)].cumulative_gathered += e->cargo;
                e->cargo = 0;
            }
            e->action = ActionType::Idle;
            break;
        }
        case ActionType::Train:
            e->awaiting_spawn = true; // spawn attempt below, may wait for space
            break;
        case ActionType::Build: {
            std::size_t ci = s.map.index(e->cell);
            if (s.reserved[ci] == e->id) {
                s.reserved[ci] = -1;
                Entity b;
                b.id = s.next_entity_id++;
                b.player = e->player;
                b.kind = e->produce;
                b.pos = e->cell;
                b.hp = cfg.entity_hp(e->produce);
                occ.set_pos(s, b.pos, b.id);
                s.entities.push_back(std::move(b));
            }
            e = nullptr; // entities vector may have reallocated
            Entity* w = s.find(id);
            w->action = ActionType::Idle;
            break;
        }
        case ActionType::Attack: {
            const Entity* target = s.find(e->target_id);
            int range = cfg.units[static_cast<std::size_t>(unit_type_of(e->kind))].attack_range;
            int dmg = cfg.units[static_cast<std::size_t>(unit_type_of(e->kind))].damage;
            if (target && target->player != e->player && cheb(e->pos, target->pos) <= range)
                add_damage(target->id, dmg);
            e->action = ActionType::Idle;
            break;
        }
        default:
            break;
        }
    }

    try_spawns(s, occ, cfg);

    // Simultaneous damage application; both sides of a duel can die.
    if (!damage.empty()) {
        auto masks = sight_masks(s, cfg);
        std::vector<int> dead;
        for (const auto& [id, dmg] : damage) {
            Entity* e = s.find(id);
            if (!e)
                continue;
            e->hp -= dmg;
            if (e->hp <= 0)
                dead.push_back(id);
        }
        std::sort(dead.begin(), dead.end());
        for (int id : dead) {
            const Entity* e = s.find(id);
            LossEvent loss;
            loss.entity_id = id;
            loss.owner = e->player;
            loss.kind = e->kind;
            loss.pos = e->pos;
            loss.visible_to[static_cast<std::size_t>(e->player)] = true;
            int enemy = 1 - e->player;
            loss.visible_to[static_cast<std::size_t>(enemy)] =
                masks[static_cast<std::size_t>(enemy)][s.map.index(e->pos)];
            events.losses.push_back(loss);
        }
        for (int id : dead) {
            // A dying builder abandons its reservation.
            for (std::size_t ci = 0; ci < s.reserved.size(); ++ci)
                if (s.reserved[ci] == id)
                    s.reserved[ci] = -1;
            auto it = std::lower_bound(s.entities.begin(), s.entities.end(), id,
                                       [](const Entity& e2, int v) { return e2.id < v; });
            if (it != s.entities.end() && it->id == id)
                s.entities.erase(it);
        }
    }

    ++s.tick;
    return events;
}

bool cell_visible(const GameState& s, int player, Pos p, const GameConfig& cfg) {
    for (const Entity& e : s.entities)
        if (e.player == player && cheb(e.pos, p) <= cfg.entity_sight(e.kind))
            return true;
    return false;
}

PlayerView player_view(const GameState& s, int player, const GameConfig& cfg) {
    PlayerView v;
    v.player = player;
    v.tick = s.tick;
    v.resources = s.players[static_cast<std::size_t>(player)].resources;
    v.map = &s.map;
    for (const Entity& e : s.entities) {
        ViewEntity ve{e.id, e.player, e.kind, e.pos, e.hp, e.cargo, e.idle()};
        if (e.player == player)
            v.own.push_back(ve);
        else if (cell_visible(s, player, e.pos, cfg))
            v.enemy.push_back(ve);
    }
    return v;
}

std::uint64_t state_digest(const GameState& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(s.tick));
    for (const PlayerState& p : s.players) {
        mix(static_cast<std::uint64_t>(p.resources));
        mix(static_cast<std::uint64_t>(p.cumulative_spent));
        mix(static_cast<std::uint64_t>(p.cumulative_gathered));
    }
    for (const Entity& e : s.entities) {
        mix(static_cast<std::uint64_t>(e.id));
        mix(static_cast<std::uint64_t>(e.player));
        mix(static_cast<std::uint64_t>(static_cast<int>(e.kind)));
        mix(static_cast<std::uint64_t>(e.pos.x));
        mix(static_cast<std::uint64_t>(e.pos.y));
        mix(static_cast<std::uint64_t>(e.hp));
        mix(static_cast<std::uint64_t>(e.cargo));
        mix(static_cast<std::uint64_t>(static_cast<int>(e.action)));
        mix(static_cast<std::uint64_t>(e.remaining));
        mix(static_cast<std::uint64_t>(e.awaiting_spawn ? 1 : 0));
    }
    for (int a : s.map.resource_amount)
        mix(static_cast<std::uint64_t>(a));
    for (int r : s.reserved)
        mix(static_cast<std::uint64_t>(r));
    return h;
}

} // namespace phantom::game
