// First-quantized reference model of board states.
//
// Each basis state is expanded into labeled-particle product terms, one per
// assignment of particle labels to the sites of each color. Fermionic colors
// carry the parity of the label permutation; bosons and vacuum carry +1.
// Particles are perfectly localized, so two product terms overlap iff every
// site holds the same labeled particle. Cost grows as prod_i n_i!, which is
// why this lives beside the matrix path and certifies it rather than
// replacing it.
#pragma once

#include "qpuzzle/board.hpp"
#include "qpuzzle/core.hpp"
#include "qpuzzle/puzzle_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace qpuzzle::oracle {

inline constexpr int kMaxColorCount = 6;

/// Site -> (color, label) encoded as color * 64 + label.
using ProductTerm = std::vector<int>;

struct Expansion {
    std::map<ProductTerm, int> terms;  // coefficient +-1 before normalization
    double norm = 1.0;
};

namespace detail {

inline int permutation_parity(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    int parity = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) parity = -parity;
    }
    return parity;
}

inline void check_member(const BasisState& s, const BoardSpec& board) {
    if (static_cast<int>(s.word.size()) != board.sites) throw InvalidArgument("basis word has wrong length");
    auto w = s.word;
    std::sort(w.begin(), w.end());
    if (w != board.sorted_word()) throw InvalidArgument("basis word does not match the board coloring");
}

}  // namespace detail

/// (Anti)symmetrized first-quantized expansion of a board state.
inline Expansion expand(const BasisState& s, const BoardSpec& board) {
    detail::check_member(s, board);
    for (const auto& c : board.colors)
        if (c.count > kMaxColorCount)
            throw InvalidArgument("oracle refuses colors with more than 6 identical particles");

    struct ColorSites {
        int id;
        bool odd;
        std::vector<int> sites;
    };
    std::vector<ColorSites> groups;
    for (const auto& c : board.colors) {
        ColorSites g{c.id, antisymmetric(c.statistics), {}};
        for (int site = 0; site < board.sites; ++site)
            if (s.word[static_cast<std::size_t>(site)] == c.id) g.sites.push_back(site);
        groups.push_back(std::move(g));
    }

    Expansion ex;
    ProductTerm term(static_cast<std::size_t>(board.sites), -1);
    // Odometer over one label permutation per color.
    std::vector<std::vector<int>> perms;
    for (const auto& g : groups) {
        std::vector<int> p(g.sites.size());
        std::iota(p.begin(), p.end(), 0);
        perms.push_back(p);
    }
    while (true) {
        int sign = 1;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            const auto& g = groups[gi];
            for (std::size_t k = 0; k < g.sites.size(); ++k)
                term[static_cast<std::size_t>(g.sites[k])] = g.id * 64 + perms[gi][k];
            if (g.odd) sign *= detail::permutation_parity(perms[gi]);
        }
        ex.terms[term] += sign;
        std::size_t gi = 0;
        for (; gi < perms.size(); ++gi) {
            if (std::next_permutation(perms[gi].begin(), perms[gi].end())) break;
        }
        if (gi == perms.size()) break;
    }
    double sq = 0;
    for (const auto& [k, v] : ex.terms) sq += static_cast<double>(v) * v;
    ex.norm = std::sqrt(sq);
    return ex;
}

inline Complex overlap(const Expansion& a, const Expansion& b) {
    double acc = 0;
    const auto& small = a.terms.size() <= b.terms.size() ? a.terms : b.terms;
    const auto& large = a.terms.size() <= b.terms.size() ? b.terms : a.terms;
    for (const auto& [k, v] : small) {
        auto it = large.find(k);
        if (it != large.end()) acc += static_cast<double>(v) * it->second;
    }
    return {acc / (a.norm * b.norm), 0.0};
}

/// <a|b> computed term by term in the first-quantized expansion.
inline Complex oracle_overlap(const BasisState& a, const BasisState& b, const BoardSpec& board) {
    return overlap(expand(a, board), expand(b, board));
}

struct SwapResult {
    BasisState state;
    int phase = 1;
};

/// Exchange of the contents of two sites, assembled from per-color two-mode
/// swaps: each species sees |n_s n_t> -> |n_t n_s>, with -1 only when both
/// modes are occupied by fermions. Vacuum and bosons never contribute a sign.
inline SwapResult oracle_swap_sign(const BasisState& s, std::pair<int, int> edge, const BoardSpec& board) {
    detail::check_member(s, board);
    const auto [x, y] = edge;
    if (!board.find_edge(x, y)) throw InvalidArgument("edge is not part of the board");
    SwapResult r{s, 1};
    for (const auto& c : board.colors) {
        const bool nx = s.word[static_cast<std::size_t>(x)] == c.id;
        const bool ny = s.word[static_cast<std::size_t>(y)] == c.id;
        int local_phase = 1;  // two-mode SWAP matrix entry for |nx ny> -> |ny nx>
        if (nx && ny && antisymmetric(c.statistics)) local_phase = -1;
        r.phase *= local_phase;
    }
    std::swap(r.state.word[static_cast<std::size_t>(x)], r.state.word[static_cast<std::size_t>(y)]);
    return r;
}

/// <b| T_xy |a> where T_xy transports the labeled particles sitting at x and
/// y into each other's site and the result is compared term by term with
/// the canonical (site-ordered) expansion of b. This keeps the sign that
/// arises when a particle is carried past an identical one in the site
/// ordering, so it agrees with oracle_swap_sign only up to a basis-sign
/// convention, and only for boards of a single exchange statistics.
inline Complex oracle_transport_overlap(const BasisState& a, const BasisState& b, std::pair<int, int> edge,
                                        const BoardSpec& board) {
    Expansion ea = expand(a, board);
    Expansion moved;
    moved.norm = ea.norm;
    for (const auto& [key, v] : ea.terms) {
        ProductTerm k = key;
        std::swap(k[static_cast<std::size_t>(edge.first)], k[static_cast<std::size_t>(edge.second)]);
        moved.terms[k] += v;
    }
    return overlap(expand(b, board), moved);
}

}  // namespace qpuzzle::oracle
