// Distinguishable colorings of a board: the qudit computational basis.
#pragma once

#include "qpuzzle/board.hpp"
#include "qpuzzle/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace qpuzzle {

using BigInt = boost::multiprecision::cpp_int;

/// N! / (n_1! n_2! ... n_m!), exact.
inline BigInt qudit_dimension(int sites, const std::vector<int>& counts) {
    if (sites < 0) throw InvalidArgument("site count must be nonnegative");
    long total = 0;
    for (int c : counts) {
        if (c < 0) throw InvalidArgument("color counts must be nonnegative");
        total += c;
    }
    if (total != sites)
        throw InvalidArgument("color counts sum to " + std::to_string(total) + ", expected " + std::to_string(sites));
    // Product of binomials C(n_1, n_1) C(n_1+n_2, n_2) ..., each step exact.
    BigInt result = 1;
    long placed = 0;
    for (int c : counts) {
        for (int k = 1; k <= c; ++k) {
            result *= (placed + k);
            result /= k;
        }
        placed += c;
    }
    return result;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    return qudit_dimension(n, {k, n - k});
}

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

struct BasisState {
    std::vector<int> word;  // color id per site

    friend bool operator==(const BasisState&, const BasisState&) = default;
    friend auto operator<=>(const BasisState&, const BasisState&) = default;
};

class PuzzleSpace {
public:
    /// Largest basis the engine will enumerate.
    static constexpr std::size_t kMaxDim = 2'000'000;

    const BoardSpec& board() const { return board_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisState>& basis() const { return basis_; }
    const BasisState& state(std::size_t i) const { return basis_.at(i); }

    std::optional<std::size_t> index_of(const std::vector<int>& word) const {
        auto it = index_.find(word);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t require_index(const std::vector<int>& word) const {
        auto i = index_of(word);
        if (!i) throw InvalidArgument("word is not a basis state of this puzzle");
        return *i;
    }

    /// Compact text rendering of a basis state, rows split by '/' when a
    /// grid layout is available (e.g. "gg/bb").
    std::string render(std::size_t i) const {
        const auto& w = basis_.at(i).word;
        std::string out;
        if (board_.layout.size() == w.size()) {
            std::vector<std::size_t> order(w.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (board_.layout[a][1] != board_.layout[b][1]) return board_.layout[a][1] < board_.layout[b][1];
                return board_.layout[a][0] < board_.layout[b][0];
            });
            double row = board_.layout[order[0]][1];
            for (std::size_t s : order) {
                if (board_.layout[s][1] != row) {
                    out += '/';
                    row = board_.layout[s][1];
                }
                out += board_.color(w[s]).glyph();
            }
            return out;
        }
        for (int c : w) out += board_.color(c).glyph();
        return out;
    }

    friend PuzzleSpace enumerate_basis(const BoardSpec& board);

private:
    BoardSpec board_;
    std::vector<BasisState> basis_;
    std::map<std::vector<int>, std::size_t> index_;
};

/// Every distinct coloring exactly once. Order is the board's fixed
/// basis_order when given, otherwise lexicographic in color ids.
inline PuzzleSpace enumerate_basis(const BoardSpec& board) {
    board.validate();
    std::vector<int> counts;
    for (const auto& c : board.colors) counts.push_back(c.count);
    const BigInt d = qudit_dimension(board.sites, counts);
    if (d > BigInt(PuzzleSpace::kMaxDim)) throw InvalidArgument("qudit dimension too large to enumerate");

    PuzzleSpace space;
    space.board_ = board;
    if (!board.basis_order.empty()) {
        if (BigInt(board.basis_order.size()) != d)
            throw InvalidArgument("fixed basis order does not list every coloring");
        for (const auto& w : board.basis_order) space.basis_.push_back({w});
    } else {
        std::vector<int> w = board.sorted_word();
        do {
            space.basis_.push_back({w});
        } while (std::next_permutation(w.begin(), w.end()));
    }
    for (std::size_t i = 0; i < space.basis_.size(); ++i) space.index_.emplace(space.basis_[i].word, i);
    return space;
}

}  // namespace qpuzzle
