#include "phantom/game_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace phantom::game {

namespace {

constexpr const char* kUnitNames[4] = {"worker", "light", "heavy", "ranged"};
constexpr const char* kBuildingNames[2] = {"base", "barracks"};

struct UnitAttr {
    const char* name;
    int UnitStats::* field;
    bool worker_only = false;
};

// Canonical attribute order: randomization, digests and serialization all
// walk this table so results never depend on map iteration order.
constexpr UnitAttr kUnitAttrs[] = {
    {"cost", &UnitStats::cost},
    {"hp", &UnitStats::hp},
    {"damage", &UnitStats::damage},
    {"attack_range", &UnitStats::attack_range},
    {"move_ticks", &UnitStats::move_ticks},
    {"attack_ticks", &UnitStats::attack_ticks},
    {"train_ticks", &UnitStats::train_ticks},
    {"sight_range", &UnitStats::sight_range},
    {"harvest_ticks", &UnitStats::harvest_ticks, true},
    {"carry", &UnitStats::carry, true},
};

struct BuildingAttr {
    const char* name;
    int BuildingStats::* field;
};

constexpr BuildingAttr kBuildingAttrs[] = {
    {"cost", &BuildingStats::cost},
    {"hp", &BuildingStats::hp},
    {"build_ticks", &BuildingStats::build_ticks},
    {"sight_range", &BuildingStats::sight_range},
};

std::uint64_t fnv_step(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

const char* kind_name(EntityKind k) {
    switch (k) {
    case EntityKind::Worker: return "worker";
    case EntityKind::Light: return "light";
    case EntityKind::Heavy: return "heavy";
    case EntityKind::Ranged: return "ranged";
    case EntityKind::Base: return "base";
    default: return "barracks";
    }
}

EntityKind kind_from_name(const std::string& name) {
    for (int i = 0; i < 4; ++i)
        if (name == kUnitNames[i])
            return static_cast<EntityKind>(i);
    if (name == "base")
        return EntityKind::Base;
    if (name == "barracks")
        return EntityKind::Barracks;
    throw std::invalid_argument("unknown entity kind: " + name);
}

int GameConfig::entity_cost(EntityKind k) const {
    if (is_building(k))
        return buildings[static_cast<std::size_t>(k) - 4].cost;
    return units[static_cast<std::size_t>(k)].cost;
}

int GameConfig::entity_hp(EntityKind k) const {
    if (is_building(k))
        return buildings[static_cast<std::size_t>(k) - 4].hp;
    return units[static_cast<std::size_t>(k)].hp;
}

int GameConfig::entity_sight(EntityKind k) const {
    if (is_building(k))
        return buildings[static_cast<std::size_t>(k) - 4].sight_range;
    return units[static_cast<std::size_t>(k)].sight_range;
}

void GameConfig::validate() const {
    for (int u = 0; u < 4; ++u) {
        const UnitStats& s = units[static_cast<std::size_t>(u)];
        bool worker = u == 0;
        for (const UnitAttr& a : kUnitAttrs) {
            if (a.worker_only && !worker)
                continue;
            if (s.*a.field <= 0)
                throw std::invalid_argument(std::string(kUnitNames[u]) + "." + a.name +
                                            " must be positive");
        }
        if (worker) {
            if (s.carry != 1 && s.carry != 2)
                throw std::invalid_argument("worker.carry must be 1 or 2");
        } else if (u == 3) {
            if (s.attack_range <= 1)
                throw std::invalid_argument("ranged.attack_range must exceed 1");
        } else if (s.attack_range != 1) {
            throw std::invalid_argument("melee attack_range must be 1");
        }
    }
    if (units[0].attack_range != 1)
        throw std::invalid_argument("worker.attack_range must be 1");
    for (int b = 0; b < 2; ++b)
        for (const BuildingAttr& a : kBuildingAttrs)
            if (buildings[static_cast<std::size_t>(b)].*a.field <= 0)
                throw std::invalid_argument(std::string(kBuildingNames[b]) + "." + a.name +
                                            " must be positive");
    if (max_game_ticks <= 0)
        throw std::invalid_argument("max_game_ticks must be positive");
    for (const auto& [name, range] : chaos)
        if (range.min > range.max || range.min <= 0)
            throw std::invalid_argument("bad chaos range for " + name);
}

GameConfig GameConfig::defaults() {
    GameConfig c;
    c.units[0] = {1, 1, 1, 1, 8, 4, 40, 4, 16, 1};    // worker
    c.units[1] = {2, 4, 2, 1, 6, 4, 60, 3, 0, 0};     // light
    c.units[2] = {3, 10, 4, 1, 14, 4, 100, 3, 0, 0};  // heavy
    c.units[3] = {2, 2, 2, 3, 10, 6, 80, 5, 0, 0};    // ranged
    c.buildings[0] = {10, 12, 200, 5};                // base
    c.buildings[1] = {5, 6, 100, 3};                  // barracks
    c.max_game_ticks = 3000;
    c.chaos = {
        {"worker.cost", {1, 2}},      {"worker.hp", {1, 2}},
        {"worker.damage", {1, 2}},    {"worker.move_ticks", {6, 12}},
        {"worker.attack_ticks", {3, 6}}, {"worker.train_ticks", {30, 60}},
        {"worker.sight_range", {3, 5}},  {"worker.harvest_ticks", {10, 24}},
        {"worker.carry", {1, 2}},
        {"light.cost", {1, 3}},       {"light.hp", {3, 6}},
        {"light.damage", {1, 3}},     {"light.move_ticks", {5, 9}},
        {"light.attack_ticks", {3, 6}},  {"light.train_ticks", {40, 90}},
        {"light.sight_range", {2, 4}},
        {"heavy.cost", {2, 4}},       {"heavy.hp", {7, 13}},
        {"heavy.damage", {3, 5}},     {"heavy.move_ticks", {10, 18}},
        {"heavy.attack_ticks", {3, 6}},  {"heavy.train_ticks", {70, 130}},
        {"heavy.sight_range", {2, 4}},
        {"ranged.cost", {1, 3}},      {"ranged.hp", {1, 3}},
        {"ranged.damage", {1, 3}},    {"ranged.attack_range", {2, 4}},
        {"ranged.move_ticks", {8, 14}},  {"ranged.attack_ticks", {4, 8}},
        {"ranged.train_ticks", {60, 110}}, {"ranged.sight_range", {4, 6}},
        {"base.cost", {8, 14}},       {"base.hp", {8, 16}},
        {"base.build_ticks", {150, 250}}, {"base.sight_range", {4, 6}},
        {"barracks.cost", {4, 8}},    {"barracks.hp", {4, 9}},
        {"barracks.build_ticks", {70, 130}}, {"barracks.sight_range", {2, 4}},
    };
    return c;
}

GameConfig randomize_config(const GameConfig& base, Rng& rng) {
    GameConfig out = base;
    for (int u = 0; u < 4; ++u) {
        for (const UnitAttr& a : kUnitAttrs) {
            if (a.worker_only && u != 0)
                continue;
            auto it = base.chaos.find(std::string(kUnitNames[u]) + "." + a.name);
            if (it == base.chaos.end())
                continue;
            out.units[static_cast<std::size_t>(u)].*a.field =
                rng.next_int(it->second.min, it->second.max);
        }
    }
    for (int b = 0; b < 2; ++b) {
        for (const BuildingAttr& a : kBuildingAttrs) {
            auto it = base.chaos.find(std::string(kBuildingNames[b]) + "." + a.name);
            if (it == base.chaos.end())
                continue;
            out.buildings[static_cast<std::size_t>(b)].*a.field =
                rng.next_int(it->second.min, it->second.max);
        }
    }
    out.validate();
    return out;
}

std::uint64_t config_digest(const GameConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (int u = 0; u < 4; ++u)
        for (const UnitAttr& a : kUnitAttrs)
            h = fnv_step(h, static_cast<std::uint64_t>(
                                config.units[static_cast<std::size_t>(u)].*a.field));
    for (int b = 0; b < 2; ++b)
        for (const BuildingAttr& a : kBuildingAttrs)
            h = fnv_step(h, static_cast<std::uint64_t>(
                                config.buildings[static_cast<std::size_t>(b)].*a.field));
    h = fnv_step(h, static_cast<std::uint64_t>(config.max_game_ticks));
    return h;
}

std::string config_to_json_text(const GameConfig& config) {
    nlohmann::json j;
    j["schema"] = 1;
    j["max_game_ticks"] = config.max_game_ticks;
    for (int u = 0; u < 4; ++u) {
        nlohmann::json& node = j["units"][kUnitNames[u]];
        for (const UnitAttr& a : kUnitAttrs) {
            if (a.worker_only && u != 0)
                continue;
            node[a.name] = config.units[static_cast<std::size_t>(u)].*a.field;
        }
    }
    for (int b = 0; b < 2; ++b) {
        nlohmann::json& node = j["buildings"][kBuildingNames[b]];
        for (const BuildingAttr& a : kBuildingAttrs)
            node[a.name] = config.buildings[static_cast<std::size_t>(b)].*a.field;
    }
    for (const auto& [name, range] : config.chaos)
        j["chaos"][name] = {range.min, range.max};
    return j.dump(2) + "\n";
}

GameConfig config_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    GameConfig c;
    c.max_game_ticks = j.at("max_game_ticks").get<long>();
    for (int u = 0; u < 4; ++u) {
        const nlohmann::json& node = j.at("units").at(kUnitNames[u]);
        for (const UnitAttr& a : kUnitAttrs) {
            if (a.worker_only && u != 0)
                continue;
            c.units[static_cast<std::size_t>(u)].*a.field = node.at(a.name).get<int>();
        }
        if (u != 0) {
            c.units[static_cast<std::size_t>(u)].harvest_ticks = 0;
            c.units[static_cast<std::size_t>(u)].carry = 0;
        }
    }
    for (int b = 0; b < 2; ++b) {
        const nlohmann::json& node = j.at("buildings").at(kBuildingNames[b]);
        for (const BuildingAttr& a : kBuildingAttrs)
            c.buildings[static_cast<std::size_t>(b)].*a.field = node.at(a.name).get<int>();
    }
    if (j.contains("chaos"))
        for (const auto& [name, range] : j.at("chaos").items())
            c.chaos[name] = {range.at(0).get<int>(), range.at(1).get<int>()};
    c.validate();
    return c;
}

GameConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

void save_config(const GameConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write config file: " + path);
    out << config_to_json_text(config);
}

} // namespace phantom::game
