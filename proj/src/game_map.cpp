#include "phantom/game_map.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phantom::game {

GameMap GameMap::parse(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    GameMap m;
    m.name = name;
    std::string header;
    if (!std::getline(in, header))
        throw std::invalid_argument("map: missing header line");
    {
        std::istringstream hs(header);
        if (!(hs >> m.width >> m.height))
            throw std::invalid_argument("map: header must be 'width height'");
    }
    if (m.width < 1 || m.height < 1 || m.width > 64 || m.height > 64)
        throw std::invalid_argument("map: dimensions must be within 1..64");
    m.cells.assign(static_cast<std::size_t>(m.width * m.height), Cell::Empty);
    m.resource_amount.assign(m.cells.size(), 0);
    bool base_seen[2] = {false, false};
    for (int y = 0; y < m.height; ++y) {
        std::string row;
        if (!std::getline(in, row))
            throw std::invalid_argument("map: missing row " + std::to_string(y));
        if (static_cast<int>(row.size()) < m.width)
            throw std::invalid_argument("map: row " + std::to_string(y) + " too short");
        for (int x = 0; x < m.width; ++x) {
            char ch = row[static_cast<std::size_t>(x)];
            Pos p{x, y};
            std::size_t i = m.index(p);
            switch (ch) {
            case '.':
                break;
            case '#':
                m.cells[i] = Cell::Wall;
                break;
            case 'A':
            case 'B': {
                int player = ch == 'A' ? 0 : 1;
                if (base_seen[player])
                    throw std::invalid_argument("map: duplicate base for player");
                base_seen[player] = true;
                m.starts[static_cast<std::size_t>(player)].base = p;
                break;
            }
            case 'a':
            case 'b': {
                int player = ch == 'a' ? 0 : 1;
                m.starts[static_cast<std::size_t>(player)].workers.push_back(p);
                break;
            }
            default:
                if (ch >= '1' && ch <= '9') {
                    m.cells[i] = Cell::Resource;
                    m.resource_amount[i] = (ch - '0') * 5;
                } else {
                    throw std::invalid_argument(std::string("map: bad character '") + ch + "'");
                }
            }
        }
    }
    if (!base_seen[0] || !base_seen[1])
        throw std::invalid_argument("map: both players need a base");
    if (m.starts[0].base == m.starts[1].base)
        throw std::invalid_argument("map: start positions must be distinct");
    return m;
}

GameMap GameMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open map file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string name = path;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos)
        name = name.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos)
        name = name.substr(0, dot);
    return parse(ss.str(), name);
}

} // namespace phantom::game
