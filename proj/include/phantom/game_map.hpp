#pragma once

#include <array>
#include <string>
#include <vector>

namespace phantom::game {

struct Pos {
    int x = 0;
    int y = 0;

    bool operator==(const Pos&) const = default;
};

inline int cheb(Pos a, Pos b) {
    int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

enum class Cell : char { Empty = 0, Wall = 1, Resource = 2 };

// Text format: first line "width height", then height rows of width chars.
//   '.' empty   '#' wall   '1'-'9' resource cell holding digit*5
//   'A' player-1 base  'a' player-1 worker  'B' player-2 base  'b' player-2 worker
struct GameMap {
    int width = 0;
    int height = 0;
    std::vector<Cell> cells;           // row-major
    std::vector<int> resource_amount;  // parallel to cells

    struct Start {
        Pos base;
        std::vector<Pos> workers;
    };
    std::array<Start, 2> starts;
    std::string name;

    bool in_bounds(Pos p) const { return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height; }
    std::size_t index(Pos p) const {
        return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(p.x);
    }
    Cell at(Pos p) const { return cells[index(p)]; }
    int resource_at(Pos p) const { return resource_amount[index(p)]; }
    int surface() const { return width * height; }

    static GameMap parse(const std::string& text, const std::string& name = "");
    static GameMap load(const std::string& path);
};

} // namespace phantom::game
