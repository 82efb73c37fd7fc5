// Board geometry, particle colorings and the board-spec JSON format.
#pragma once

#include "qpuzzle/core.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qpuzzle {

enum class Statistics { fermion, boson, vacuum };

inline std::string to_string(Statistics s) {
    switch (s) {
        case Statistics::fermion: return "fermion";
        case Statistics::boson: return "boson";
        case Statistics::vacuum: return "vacuum";
    }
    return "boson";
}

inline Statistics statistics_from_string(const std::string& s) {
    if (s == "fermion") return Statistics::fermion;
    if (s == "boson") return Statistics::boson;
    if (s == "vacuum") return Statistics::vacuum;
    throw InvalidArgument("unknown statistics '" + s + "'");
}

/// Exchanging two identical particles of this species picks up -1.
inline bool antisymmetric(Statistics s) { return s == Statistics::fermion; }

struct ColorSpec {
    int id = 0;
    int count = 0;
    Statistics statistics = Statistics::boson;
    std::string name;  // display only

    char glyph() const {
        if (!name.empty()) return name.front();
        return static_cast<char>('0' + id % 10);
    }
};

/// An allowed SWAP location between two distinct sites.
struct Edge {
    int a = 0;
    int b = 0;
    std::string label;

    bool touches(int s) const { return a == s || b == s; }
    bool same_sites(int x, int y) const { return (a == x && b == y) || (a == y && b == x); }
};

struct BoardSpec {
    int sites = 0;
    std::vector<Edge> edges;
    std::vector<ColorSpec> colors;
    std::vector<std::array<double, 2>> layout;
    /// Fixed basis ordering (list of color words); empty means lexicographic.
    std::vector<std::vector<int>> basis_order;

    int color_count(int id) const {
        for (const auto& c : colors)
            if (c.id == id) return c.count;
        return 0;
    }

    const ColorSpec& color(int id) const {
        for (const auto& c : colors)
            if (c.id == id) return c;
        throw InvalidArgument("unknown color id " + std::to_string(id));
    }

    bool has_color(int id) const {
        return std::any_of(colors.begin(), colors.end(), [&](const ColorSpec& c) { return c.id == id; });
    }

    std::string edge_label(std::size_t i) const {
        const Edge& e = edges.at(i);
        if (!e.label.empty()) return e.label;
        return std::to_string(e.a) + "-" + std::to_string(e.b);
    }

    std::optional<std::size_t> find_edge(const std::string& label) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edge_label(i) == label) return i;
        return std::nullopt;
    }

    std::optional<std::size_t> find_edge(int x, int y) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].same_sites(x, y)) return i;
        return std::nullopt;
    }

    /// Sorted color ids, one entry per particle.
    std::vector<int> sorted_word() const {
        std::vector<int> w;
        for (const auto& c : colors) w.insert(w.end(), static_cast<std::size_t>(c.count), c.id);
        std::sort(w.begin(), w.end());
        return w;
    }

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const {
        if (sites <= 0) throw InvalidArgument("board must have at least one site");
        if (colors.empty()) throw InvalidArgument("board must have at least one color");
        std::set<int> ids;
        long total = 0;
        for (const auto& c : colors) {
            if (c.count <= 0) throw InvalidArgument("color counts must be positive");
            if (!ids.insert(c.id).second) throw InvalidArgument("duplicate color id " + std::to_string(c.id));
            total += c.count;
        }
        if (total != sites)
            throw InvalidArgument("color counts sum to " + std::to_string(total) + " but board has " +
                                  std::to_string(sites) + " sites");
        std::set<std::string> labels;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            if (e.a == e.b) throw InvalidArgument("edge endpoints must be distinct");
            if (e.a < 0 || e.b < 0 || e.a >= sites || e.b >= sites)
                throw InvalidArgument("edge endpoint out of range");
            if (!labels.insert(edge_label(i)).second) throw InvalidArgument("duplicate edge label " + edge_label(i));
        }
        if (!layout.empty() && static_cast<int>(layout.size()) != sites)
            throw InvalidArgument("layout must give one coordinate per site");
        if (!basis_order.empty()) {
            const auto ref = sorted_word();
            std::set<std::vector<int>> seen;
            for (const auto& w : basis_order) {
                auto s = w;
                std::sort(s.begin(), s.end());
                if (s != ref) throw InvalidArgument("basis word does not match the coloring");
                if (!seen.insert(w).second) throw InvalidArgument("duplicate basis word");
            }
        }
    }

    /// True iff the SWAP edge graph connects every pair of sites.
    bool connected() const {
        if (sites <= 1) return true;
        std::vector<int> parent(static_cast<std::size_t>(sites));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        int components = sites;
        for (const auto& e : edges) {
            int ra = find(e.a), rb = find(e.b);
            if (ra != rb) {
                parent[static_cast<std::size_t>(ra)] = rb;
                --components;
            }
        }
        return components == 1;
    }
};

inline void to_json(nlohmann::ordered_json& j, const BoardSpec& b) {
    j = nlohmann::ordered_json::object();
    j["sites"] = b.sites;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : b.edges) {
        auto row = nlohmann::ordered_json::array({e.a, e.b});
        if (!e.label.empty()) row.push_back(e.label);
        edges.push_back(row);
    }
    j["edges"] = edges;
    auto colors = nlohmann::ordered_json::array();
    for (const auto& c : b.colors) {
        nlohmann::ordered_json cj;
        cj["id"] = c.id;
        cj["count"] = c.count;
        cj["statistics"] = to_string(c.statistics);
        if (!c.name.empty()) cj["name"] = c.name;
        colors.push_back(cj);
    }
    j["colors"] = colors;
    if (!b.layout.empty()) {
        auto layout = nlohmann::ordered_json::array();
        for (const auto& p : b.layout) layout.push_back({p[0], p[1]});
        j["layout"] = layout;
    }
    if (!b.basis_order.empty()) j["basis"] = b.basis_order;
}

template <class Json>
BoardSpec board_from_json(const Json& j) {
    BoardSpec b;
    try {
        b.sites = j.at("sites").template get<int>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3)
                throw InvalidArgument("edges entries must be [i, j] or [i, j, label]");
            Edge edge{e[0].template get<int>(), e[1].template get<int>(), {}};
            if (e.size() == 3) edge.label = e[2].template get<std::string>();
            b.edges.push_back(edge);
        }
        for (const auto& c : j.at("colors")) {
            ColorSpec cs;
            cs.id = c.at("id").template get<int>();
            cs.count = c.at("count").template get<int>();
            cs.statistics = statistics_from_string(c.value("statistics", std::string("boson")));
            cs.name = c.value("name", std::string());
            b.colors.push_back(cs);
        }
        if (j.contains("layout"))
            for (const auto& p : j.at("layout"))
                b.layout.push_back({p.at(0).template get<double>(), p.at(1).template get<double>()});
        if (j.contains("basis"))
            for (const auto& w : j.at("basis")) b.basis_order.push_back(w.template get<std::vector<int>>());
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed board spec: ") + ex.what());
    }
    b.validate();
    return b;
}

inline BoardSpec parse_board(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("board spec is not valid JSON: ") + ex.what());
    }
    return board_from_json(j);
}

inline BoardSpec load_board(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open board file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_board(ss.str());
}

}  // namespace qpuzzle
