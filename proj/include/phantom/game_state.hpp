#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "phantom/game_config.hpp"
#include "phantom/game_map.hpp"

namespace phantom::game {

enum class ActionType : int { Idle = 0, Move, Attack, Harvest, Deposit, Train, Build };

enum class Dir : int { North = 0, East = 1, South = 2, West = 3 };

inline Pos step_to(Pos p, Dir d) {
    switch (d) {
    case Dir::North: return {p.x, p.y - 1};
    case Dir::East: return {p.x + 1, p.y};
    case Dir::South: return {p.x, p.y + 1};
    default: return {p.x - 1, p.y};
    }
}

struct Action {
    int entity_id = -1;
    ActionType type = ActionType::Idle;
    Dir dir = Dir::North;                    // Move
    int target_id = -1;                      // Attack
    Pos cell{-1, -1};                        // Harvest source / Build site
    EntityKind produce = EntityKind::Worker; // Train unit / Build building

    static Action move(int id, Dir d) { return {id, ActionType::Move, d, -1, {-1, -1}, {}}; }
    static Action attack(int id, int target) {
        return {id, ActionType::Attack, Dir::North, target, {-1, -1}, {}};
    }
    static Action harvest(int id, Pos cell) {
        return {id, ActionType::Harvest, Dir::North, -1, cell, {}};
    }
    static Action deposit(int id) { return {id, ActionType::Deposit, Dir::North, -1, {-1, -1}, {}}; }
    static Action train(int id, EntityKind kind) {
        return {id, ActionType::Train, Dir::North, -1, {-1, -1}, kind};
    }
    static Action build(int id, EntityKind kind, Pos cell) {
        return {id, ActionType::Build, Dir::North, -1, cell, kind};
    }
};

using ActionSet = std::vector<Action>;

struct Entity {
    int id = -1;
    int player = 0;
    EntityKind kind = EntityKind::Worker;
    Pos pos;
    int hp = 1;
    int cargo = 0;

    ActionType action = ActionType::Idle;
    int remaining = 0;
    bool awaiting_spawn = false; // training finished, waiting for a free cell
    Dir dir = Dir::North;
    int target_id = -1;
    Pos cell{-1, -1};
    EntityKind produce = EntityKind::Worker;

    bool idle() const { return action == ActionType::Idle && !awaiting_spawn; }
};

struct PlayerState {
    int resources = 0;
    long cumulative_spent = 0;    // every resource ever deducted
    long cumulative_gathered = 0; // every resource ever deposited
};

struct GameState {
    long tick = 0;
    GameMap map; // resource_amount holds current amounts
    std::array<PlayerState, 2> players;
    std::vector<Entity> entities; // kept sorted by id
    std::vector<int> reserved;    // per-cell builder entity id, -1 when free
    int next_entity_id = 0;

    const Entity* find(int id) const;
    Entity* find(int id);
    int count_entities(int player) const;
};

GameState init_state(const GameMap& map, const GameConfig& config);

struct LossEvent {
    int entity_id = -1;
    int owner = 0;
    EntityKind kind = EntityKind::Worker;
    Pos pos;
    std::array<bool, 2> visible_to{false, false};
};

// Barracks production accepted this tick for one player, with the state the
// feasibility functions are checked against.
struct ProductionAudit {
    long tick = 0;
    int player = 0;
    int stock_before = 0;
    int idle_barracks_before = 0;
    std::vector<EntityKind> trained;
    int total_cost = 0;
};

struct StepEvents {
    std::vector<LossEvent> losses;
    std::vector<ProductionAudit> production;
    std::vector<std::string> rejected; // malformed or unaffordable orders, logged
};

// Advances the world exactly one tick. Deterministic: simultaneous intent
// collection, move conflicts cancel every contender, attacks resolve together
// so mutual kills are possible, deaths are removed after resolution.
StepEvents step(GameState& state, const ActionSet& p1_actions, const ActionSet& p2_actions,
                const GameConfig& config);

struct ViewEntity {
    int id = -1;
    int player = 0;
    EntityKind kind = EntityKind::Worker;
    Pos pos;
    int hp = 0;
    int cargo = 0;
    bool idle = true;
};

// Fog-of-war snapshot for one player: own entities in full detail, enemy
// entities only within the union of own sight ranges (Chebyshev).
struct PlayerView {
    int player = 0;
    long tick = 0;
    int resources = 0;
    std::vector<ViewEntity> own;
    std::vector<ViewEntity> enemy;
    const GameMap* map = nullptr;
    std::vector<LossEvent> own_losses;   // always complete
    std::vector<LossEvent> enemy_losses; // only kills this player saw
};

PlayerView player_view(const GameState& state, int player, const GameConfig& config);

bool cell_visible(const GameState& state, int player, Pos p, const GameConfig& config);

// Stable FNV-1a digest of the full state, for traces and determinism checks.
std::uint64_t state_digest(const GameState& state);

} // namespace phantom::game
