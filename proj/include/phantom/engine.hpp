#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phantom/game_state.hpp"
#include "phantom/rng.hpp"

namespace phantom::game {

enum class Winner : int { Player1 = 0, Player2 = 1, Draw = 2 };

struct Outcome {
    Winner winner = Winner::Draw;
    long ticks_played = 0;
    double score1 = 0.5;
    double score2 = 0.5;
};

// Latency and decision bookkeeping a bot exposes after a game.
struct BotAudit {
    std::vector<double> decide_ms;          // one entry per production solve
    std::vector<ProductionAudit> plans;     // f1-f3 snapshot per issued plan
    std::vector<std::string> phi_log;       // "tick enemy_cost own_cost kind"
};

struct GameRecord {
    Outcome outcome;
    std::vector<ProductionAudit> production; // engine-side audit, both players
    std::array<BotAudit, 2> bots;
    std::string error; // non-empty when a bot threw; that bot lost
};

class BotPolicy {
public:
    virtual ~BotPolicy() = default;
    virtual std::string name() const = 0;
    virtual void on_game_start(const GameMap& map, const GameConfig& config, int player) {}
    virtual ActionSet act(const PlayerView& view, const GameConfig& config, Rng& rng) = 0;
    virtual void fill_audit(BotAudit& audit) const {}
};

struct RunOptions {
    std::string trace_path; // empty = no trace
    std::uint64_t seed = 1;
};

// Plays one full game: view -> bot decisions -> step, until one side has no
// entities left or the tick cap is reached. Identical inputs and seed give
// identical outcomes and traces. A bot exception forfeits the game.
GameRecord run_game(BotPolicy& bot1, BotPolicy& bot2, const GameMap& map,
                    const GameConfig& config, const RunOptions& options);

} // namespace phantom::game
