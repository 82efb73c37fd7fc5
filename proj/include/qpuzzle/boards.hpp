// Factories for the standard board families.
#pragma once

#include "qpuzzle/board.hpp"

#include <string>
#include <vector>

namespace qpuzzle::boards {

/// Sites of the square board: 0 top-left, 1 top-right, 2 bottom-left,
/// 3 bottom-right. Edges U, D, L, R; optional diagonals X (0-3) and Y (1-2).
inline BoardSpec square_geometry(bool diagonals = false) {
    BoardSpec b;
    b.sites = 4;
    b.edges = {{0, 1, "U"}, {2, 3, "D"}, {0, 2, "L"}, {1, 3, "R"}};
    if (diagonals) {
        b.edges.push_back({0, 3, "X"});
        b.edges.push_back({1, 2, "Y"});
    }
    b.layout = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    return b;
}

/// Basis order of the two-green two-blue square puzzle used by its reference
/// matrices: gg/bb (solved), bb/gg, gb/gb, bg/bg, gb/bg, bg/gb.
inline std::vector<std::vector<int>> square_two_color_order() {
    return {{0, 0, 1, 1}, {1, 1, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}};
}

/// Two greens (id 0) and two blues (id 1) on the square board.
inline BoardSpec square_two_color(Statistics green, Statistics blue, bool diagonals = false) {
    BoardSpec b = square_geometry(diagonals);
    b.colors = {{0, 2, green, "g"}, {1, 2, blue, "b"}};
    b.basis_order = square_two_color_order();
    return b;
}

inline BoardSpec square_fermion() { return square_two_color(Statistics::fermion, Statistics::fermion); }
inline BoardSpec square_boson() { return square_two_color(Statistics::boson, Statistics::boson); }

/// Square board with arbitrary color counts (lexicographic basis). Counts
/// {3,1}, {2,2}, {2,1,1}, {1,1,1,1} give dimensions 4, 6, 12 and 24.
inline BoardSpec square_colors(const std::vector<int>& counts, Statistics stats = Statistics::boson) {
    static const char* names[] = {"g", "b", "r", "y", "w", "k"};
    BoardSpec b = square_geometry();
    for (std::size_t i = 0; i < counts.size(); ++i)
        b.colors.push_back({static_cast<int>(i), counts[i], stats, i < 6 ? names[i] : ""});
    b.validate();
    return b;
}

/// The square family used by the dimension study, ordered by dimension.
inline std::vector<BoardSpec> square_family() {
    return {square_colors({3, 1}), square_colors({2, 2}), square_colors({2, 1, 1}), square_colors({1, 1, 1, 1})};
}

/// n sites in a row, nearest-neighbor edges labeled "0".."n-2", one green at
/// site 0 and n-1 blues. Basis state i has the green at site i.
inline BoardSpec line(int n, Statistics stats = Statistics::boson) {
    if (n < 1) throw InvalidArgument("line board needs at least one site");
    BoardSpec b;
    b.sites = n;
    for (int i = 0; i + 1 < n; ++i) b.edges.push_back({i, i + 1, std::to_string(i)});
    b.colors.push_back({0, 1, stats, "g"});
    if (n > 1) b.colors.push_back({1, n - 1, stats, "b"});
    for (int i = 0; i < n; ++i) b.layout.push_back({static_cast<double>(i), 0.0});
    b.validate();
    return b;
}

/// Two rows of three sites (0 1 2 / 3 4 5) with the seven grid edges.
inline BoardSpec grid_2x3(const std::vector<int>& counts, Statistics stats = Statistics::fermion) {
    static const char* names[] = {"g", "b", "r", "y", "w", "k"};
    BoardSpec b;
    b.sites = 6;
    b.edges = {{0, 1, "U1"}, {1, 2, "U2"}, {3, 4, "D1"}, {4, 5, "D2"}, {0, 3, "V0"}, {1, 4, "V1"}, {2, 5, "V2"}};
    for (std::size_t i = 0; i < counts.size(); ++i)
        b.colors.push_back({static_cast<int>(i), counts[i], stats, i < 6 ? names[i] : ""});
    b.layout = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
    b.validate();
    return b;
}

}  // namespace qpuzzle::boards
