#include "phantom/engine.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace phantom::game {

namespace {

nlohmann::json action_json(const Action& a) {
    switch (a.type) {
    case ActionType::Move:
        return {"m", a.entity_id, static_cast<int>(a.dir)};
    case ActionType::Attack:
        return {"a", a.entity_id, a.target_id};
    case ActionType::Harvest:
        return {"h", a.entity_id, a.cell.x, a.cell.y};
    case ActionType::Deposit:
        return {"d", a.entity_id};
    case ActionType::Train:
        return {"t", a.entity_id, kind_name(a.produce)};
    case ActionType::Build:
        return {"b", a.entity_id, kind_name(a.produce), a.cell.x, a.cell.y};
    default:
        return {"i", a.entity_id};
    }
}

nlohmann::json losses_json(const std::vector<LossEvent>& losses) {
    nlohmann::json arr = nlohmann::json::array();
    for (const LossEvent& l : losses)
        arr.push_back({l.entity_id, l.owner, kind_name(l.kind), l.pos.x, l.pos.y});
    return arr;
}

char hex_digit(std::uint64_t v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10); }

std::string hex64(std::uint64_t v) {
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4)
        out[static_cast<std::size_t>(i)] = hex_digit(v & 0xf);
    return out;
}

} // namespace

GameRecord run_game(BotPolicy& bot1, BotPolicy& bot2, const GameMap& map,
                    const GameConfig& config, const RunOptions& options) {
    config.validate();
    GameRecord record;
    GameState state = init_state(map, config);
    Rng rng1(Rng::mix(options.seed, 1));
    Rng rng2(Rng::mix(options.seed, 2));
    bot1.on_game_start(map, config, 0);
    bot2.on_game_start(map, config, 1);

    std::ofstream trace;
    bool tracing = !options.trace_path.empty();
    if (tracing) {
        trace.open(options.trace_path, std::ios::trunc);
        if (!trace)
            throw std::runtime_error("cannot write trace file: " + options.trace_path);
        nlohmann::json header;
        header["map"] = map.name;
        header["seed"] = options.seed;
        header["config_digest"] = hex64(config_digest(config));
        header["bots"] = {bot1.name(), bot2.name()};
        trace << header.dump() << "\n";
    }

    StepEvents last;
    auto fill_views = [&](PlayerView& v1, PlayerView& v2) {
        v1 = player_view(state, 0, config);
        v2 = player_view(state, 1, config);
        for (const LossEvent& l : last.losses) {
            PlayerView& owner_view = l.owner == 0 ? v1 : v2;
            PlayerView& enemy_view = l.owner == 0 ? v2 : v1;
            owner_view.own_losses.push_back(l);
            if (l.visible_to[static_cast<std::size_t>(1 - l.owner)])
                enemy_view.enemy_losses.push_back(l);
        }
    };

    auto finish = [&](Winner w) {
        record.outcome.winner = w;
        record.outcome.ticks_played = state.tick;
        record.outcome.score1 = w == Winner::Player1 ? 1.0 : (w == Winner::Draw ? 0.5 : 0.0);
        record.outcome.score2 = 1.0 - record.outcome.score1;
        bot1.fill_audit(record.bots[0]);
        bot2.fill_audit(record.bots[1]);
    };

    while (true) {
        int alive1 = state.count_entities(0);
        int alive2 = state.count_entities(1);
        if (alive1 == 0 && alive2 == 0) {
            finish(Winner::Draw);
            break;
        }
        if (alive2 == 0) {
            finish(Winner::Player1);
            break;
        }
        if (alive1 == 0) {
            finish(Winner::Player2);
            break;
        }
        if (state.tick >= config.max_game_ticks) {
            finish(Winner::Draw);
            break;
        }

        PlayerView v1, v2;
        fill_views(v1, v2);
        ActionSet a1, a2;
        try {
            a1 = bot1.act(v1, config, rng1);
        } catch (const std::exception& e) {
            record.error = std::string(bot1.name()) + " threw: " + e.what();
            finish(Winner::Player2);
            break;
        }
        try {
            a2 = bot2.act(v2, config, rng2);
        } catch (const std::exception& e) {
            record.error = std::string(bot2.name()) + " threw: " + e.what();
            finish(Winner::Player1);
            break;
        }

        last = step(state, a1, a2, config);
        for (const ProductionAudit& pa : last.production)
            record.production.push_back(pa);

        if (tracing) {
            nlohmann::json line;
            line["tick"] = state.tick;
            line["digest"] = hex64(state_digest(state));
            nlohmann::json ja1 = nlohmann::json::array(), ja2 = nlohmann::json::array();
            for (const Action& a : a1)
                ja1.push_back(action_json(a));
            for (const Action& a : a2)
                ja2.push_back(action_json(a));
            line["a1"] = ja1;
            line["a2"] = ja2;
            line["deaths"] = losses_json(last.losses);
            trace << line.dump() << "\n";
        }
    }

    if (tracing) {
        nlohmann::json footer;
        footer["winner"] = record.outcome.winner == Winner::Draw
                               ? "draw"
                               : (record.outcome.winner == Winner::Player1 ? "p1" : "p2");
        footer["ticks"] = record.outcome.ticks_played;
        trace << footer.dump() << "\n";
    }
    return record;
}

} // namespace phantom::game
