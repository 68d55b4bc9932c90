#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "phantom/rng.hpp"

namespace phantom::game {

enum class UnitType : int { Worker = 0, Light = 1, Heavy = 2, Ranged = 3 };
enum class BuildingType : int { Base = 0, Barracks = 1 };

enum class EntityKind : int { Worker = 0, Light = 1, Heavy = 2, Ranged = 3, Base = 4, Barracks = 5 };

inline bool is_building(EntityKind k) {
    return k == EntityKind::Base || k == EntityKind::Barracks;
}
inline bool is_military(EntityKind k) {
    return k == EntityKind::Light || k == EntityKind::Heavy || k == EntityKind::Ranged;
}

const char* kind_name(EntityKind k);
EntityKind kind_from_name(const std::string& name);

struct UnitStats {
    int cost = 1;
    int hp = 1;
    int damage = 1;
    int attack_range = 1;
    int move_ticks = 8;
    int attack_ticks = 4;
    int train_ticks = 50;
    int sight_range = 3;
    // Worker only; zero for military types.
    int harvest_ticks = 0;
    int carry = 0;
};

struct BuildingStats {
    int cost = 10;
    int hp = 10;
    int build_ticks = 100;
    int sight_range = 4;
};

struct ChaosRange {
    int min = 0;
    int max = 0;
};

// All mutable game attributes plus the per-attribute randomization ranges
// used in chaotic mode. The shipped reference file configs/default_config.json
// is the versioned source of the default values.
struct GameConfig {
    std::array<UnitStats, 4> units;
    std::array<BuildingStats, 2> buildings;
    long max_game_ticks = 3000;
    std::map<std::string, ChaosRange> chaos;

    const UnitStats& unit(UnitType t) const { return units[static_cast<std::size_t>(t)]; }
    UnitStats& unit(UnitType t) { return units[static_cast<std::size_t>(t)]; }
    const BuildingStats& building(BuildingType t) const {
        return buildings[static_cast<std::size_t>(t)];
    }
    BuildingStats& building(BuildingType t) { return buildings[static_cast<std::size_t>(t)]; }

    int entity_cost(EntityKind k) const;
    int entity_hp(EntityKind k) const;
    int entity_sight(EntityKind k) const;

    void validate() const; // throws std::invalid_argument

    static GameConfig defaults();
};

// Fresh config with every attribute drawn uniformly from its chaos range.
// Worker carry capacity uses a fair coin between 1 and 2 whenever its range
// spans both values. Attributes without a chaos entry keep the base value.
GameConfig randomize_config(const GameConfig& base, Rng& rng);

// Stable 64-bit digest over every gameplay attribute (chaos ranges excluded),
// used for chaos-pairing checks and report reproducibility.
std::uint64_t config_digest(const GameConfig& config);

std::string config_to_json_text(const GameConfig& config);
GameConfig config_from_json_text(const std::string& text);
GameConfig load_config(const std::string& path);
void save_config(const GameConfig& config, const std::string& path);

} // namespace phantom::game
