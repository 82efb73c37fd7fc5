// Move unitaries: statistics-aware SWAPs, fractional and square-root SWAPs,
// phase gates, and the cube's permutations.
#pragma once

#include "qpuzzle/board.hpp"
#include "qpuzzle/core.hpp"
#include "qpuzzle/phase.hpp"
#include "qpuzzle/puzzle_space.hpp"

#include "json.hpp"

#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qpuzzle {

enum class Structure { signed_permutation, root_mixture, diagonal_phase, dense };

inline std::string to_string(Structure s) {
    switch (s) {
        case Structure::signed_permutation: return "signed_permutation";
        case Structure::root_mixture: return "root_mixture";
        case Structure::diagonal_phase: return "diagonal_phase";
        case Structure::dense: return "dense";
    }
    return "dense";
}

inline Structure structure_from_string(const std::string& s) {
    if (s == "signed_permutation") return Structure::signed_permutation;
    if (s == "root_mixture") return Structure::root_mixture;
    if (s == "diagonal_phase") return Structure::diagonal_phase;
    if (s == "dense") return Structure::dense;
    throw InvalidArgument("unknown operator structure '" + s + "'");
}

/// Signed permutation: basis i maps to sign[i] * |target[i]>.
struct SignedPermutation {
    std::vector<int> target;
    std::vector<double> sign;

    std::size_t size() const { return target.size(); }

    Matrix to_matrix() const {
        const auto d = static_cast<Eigen::Index>(target.size());
        Matrix m = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < target.size(); ++i)
            m(target[i], static_cast<Eigen::Index>(i)) = sign[i];
        return m;
    }
};

class MoveOperator {
public:
    MoveOperator() = default;

    /// Dense operator; structure is inferred as dense or diagonal_phase.
    MoveOperator(std::string label, Matrix matrix, int move_cost = 1)
        : label_(std::move(label)), matrix_(std::move(matrix)), move_cost_(move_cost) {
        structure_ = matrix_.isDiagonal(0.0) ? Structure::diagonal_phase : Structure::dense;
    }

    static MoveOperator signed_permutation(std::string label, SignedPermutation p, int move_cost = 1) {
        MoveOperator op;
        op.label_ = std::move(label);
        op.matrix_ = p.to_matrix();
        op.structure_ = Structure::signed_permutation;
        op.perm_ = std::move(p);
        op.move_cost_ = move_cost;
        return op;
    }

    /// cos(theta) I + i sin(theta) S.
    static MoveOperator root_mixture(std::string label, SignedPermutation p, double theta, int move_cost = 1) {
        MoveOperator op;
        op.label_ = std::move(label);
        op.structure_ = Structure::root_mixture;
        op.cos_ = std::cos(theta);
        op.sin_ = std::sin(theta);
        const auto d = static_cast<Eigen::Index>(p.size());
        op.matrix_ = Matrix::Identity(d, d) * op.cos_ + kI * op.sin_ * p.to_matrix();
        op.perm_ = std::move(p);
        op.theta_ = theta;
        op.move_cost_ = move_cost;
        return op;
    }

    const std::string& label() const { return label_; }
    const Matrix& matrix() const { return matrix_; }
    Structure structure() const { return structure_; }
    int move_cost() const { return move_cost_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    /// Underlying signed permutation for signed_permutation and root_mixture.
    const std::optional<SignedPermutation>& permutation() const { return perm_; }
    double theta() const { return theta_; }

    MoveOperator with_label(std::string label) const {
        MoveOperator op = *this;
        op.label_ = std::move(label);
        return op;
    }

    MoveOperator with_cost(int cost) const {
        if (cost < 0) throw InvalidArgument("move cost must be nonnegative");
        MoveOperator op = *this;
        op.move_cost_ = cost;
        return op;
    }

    /// out = M in, using the O(d) path when the structure allows it.
    /// out must not alias in.
    void apply(const Vector& in, Vector& out) const {
        if (in.size() != matrix_.cols()) throw InvalidArgument("operator dimension mismatch");
        out.resize(in.size());
        switch (structure_) {
            case Structure::signed_permutation: {
                const auto& p = *perm_;
                for (std::size_t i = 0; i < p.size(); ++i)
                    out[p.target[i]] = p.sign[i] * in[static_cast<Eigen::Index>(i)];
                return;
            }
            case Structure::root_mixture: {
                const auto& p = *perm_;
                const Complex is{0.0, sin_};
                for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<Eigen::Index>(i)] = cos_ * in[static_cast<Eigen::Index>(i)];
                for (std::size_t i = 0; i < p.size(); ++i)
                    out[p.target[i]] += is * (p.sign[i] * in[static_cast<Eigen::Index>(i)]);
                return;
            }
            case Structure::diagonal_phase:
                out = matrix_.diagonal().cwiseProduct(in);
                return;
            case Structure::dense:
                out.noalias() = matrix_ * in;
                return;
        }
    }

    Vector apply(const Vector& in) const {
        Vector out(in.size());
        apply(in, out);
        return out;
    }

private:
    std::string label_;
    Matrix matrix_;
    Structure structure_ = Structure::dense;
    std::optional<SignedPermutation> perm_;
    double theta_ = 0.0;
    double cos_ = 1.0;
    double sin_ = 0.0;
    int move_cost_ = 1;
};

inline double unitarity_error(const Matrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Matrix& m, double tolerance = tol::unitary) { return unitarity_error(m) <= tolerance; }

struct GateSet {
    std::vector<MoveOperator> generators;

    GateSet() = default;
    explicit GateSet(std::vector<MoveOperator> gens) : generators(std::move(gens)) { validate(); }

    std::size_t size() const { return generators.size(); }
    std::size_t dim() const { return generators.empty() ? 0 : generators.front().dim(); }

    void validate() const {
        if (generators.empty()) throw InvalidArgument("gate set must be nonempty");
        for (const auto& g : generators)
            if (g.dim() != generators.front().dim()) throw InvalidArgument("gate set generators differ in dimension");
    }

    const MoveOperator* find(const std::string& label) const {
        for (const auto& g : generators)
            if (g.label() == label) return &g;
        return nullptr;
    }

    GateSet operator+(const GateSet& other) const {
        GateSet out = *this;
        out.generators.insert(out.generators.end(), other.generators.begin(), other.generators.end());
        out.validate();
        return out;
    }
};

namespace detail {

inline SignedPermutation swap_permutation(const PuzzleSpace& space, const Edge& e) {
    const BoardSpec& board = space.board();
    SignedPermutation p;
    p.target.resize(space.dim());
    p.sign.resize(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
        std::vector<int> w = space.state(i).word;
        const int ca = w[static_cast<std::size_t>(e.a)];
        const int cb = w[static_cast<std::size_t>(e.b)];
        std::swap(w[static_cast<std::size_t>(e.a)], w[static_cast<std::size_t>(e.b)]);
        p.target[i] = static_cast<int>(space.require_index(w));
        p.sign[i] = (ca == cb && antisymmetric(board.color(ca).statistics)) ? -1.0 : 1.0;
    }
    return p;
}

inline std::size_t require_edge(const PuzzleSpace& space, const std::string& label) {
    auto idx = space.board().find_edge(label);
    if (!idx) throw InvalidArgument("no edge labeled '" + label + "' on this board");
    return *idx;
}

}  // namespace detail

/// Statistics-aware SWAP on one edge, labeled "S_<edge>".
inline MoveOperator build_swap(const PuzzleSpace& space, std::size_t edge_index) {
    const auto& board = space.board();
    if (edge_index >= board.edges.size()) throw InvalidArgument("edge index out of range");
    return MoveOperator::signed_permutation("S_" + board.edge_label(edge_index),
                                            detail::swap_permutation(space, board.edges[edge_index]));
}

inline MoveOperator build_swap(const PuzzleSpace& space, const std::string& edge_label) {
    return build_swap(space, detail::require_edge(space, edge_label));
}

inline MoveOperator build_swap(const PuzzleSpace& space, std::pair<int, int> sites) {
    auto idx = space.board().find_edge(sites.first, sites.second);
    if (!idx) throw InvalidArgument("sites are not joined by a board edge");
    return build_swap(space, *idx);
}

/// exp(i theta S) = cos(theta) I + i sin(theta) S, labeled "F_<edge>".
inline MoveOperator build_fractional_swap(const PuzzleSpace& space, std::size_t edge_index, double theta) {
    const auto& board = space.board();
    if (edge_index >= board.edges.size()) throw InvalidArgument("edge index out of range");
    return MoveOperator::root_mixture("F_" + board.edge_label(edge_index),
                                      detail::swap_permutation(space, board.edges[edge_index]), theta);
}

inline MoveOperator build_fractional_swap(const PuzzleSpace& space, const std::string& edge_label, double theta) {
    return build_fractional_swap(space, detail::require_edge(space, edge_label), theta);
}

/// Square-root SWAP (I + iS)/sqrt(2), labeled "H_<edge>".
inline MoveOperator build_root_swap(const PuzzleSpace& space, std::size_t edge_index) {
    return build_fractional_swap(space, edge_index, kPi / 4).with_label("H_" + space.board().edge_label(edge_index));
}

inline MoveOperator build_root_swap(const PuzzleSpace& space, const std::string& edge_label) {
    return build_root_swap(space, detail::require_edge(space, edge_label));
}

/// diag(1, ..., -1, ..., 1) with the -1 at target; labeled "P<target+1>".
inline MoveOperator build_phase_gate(std::size_t dim, std::size_t target) {
    if (target >= dim) throw InvalidArgument("phase gate target out of range");
    Matrix m = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(target)) = -1.0;
    return MoveOperator("P" + std::to_string(target + 1), std::move(m));
}

inline MoveOperator build_phase_gate(const PuzzleSpace& space, std::size_t target) {
    return build_phase_gate(space.dim(), target);
}

inline GateSet swap_set(const PuzzleSpace& space) {
    GateSet g;
    for (std::size_t e = 0; e < space.board().edges.size(); ++e) g.generators.push_back(build_swap(space, e));
    g.validate();
    return g;
}

inline GateSet root_set(const PuzzleSpace& space) {
    GateSet g;
    for (std::size_t e = 0; e < space.board().edges.size(); ++e) g.generators.push_back(build_root_swap(space, e));
    g.validate();
    return g;
}

/// Swaps first (edge order), then roots: the combined solver's action set.
inline GateSet combined_set(const PuzzleSpace& space) { return swap_set(space) + root_set(space); }

// ---------------------------------------------------------------------------
// Cube family

/// Board for the 2x2x1 cube: three distinguishable cubies in a line (the
/// fourth cubie is fixed by the orientation quotient). U exchanges the first
/// two, R the last two. The basis order is the table order of the cube
/// states: solved, U, R, UR, RU, URU (moves listed in application order).
inline BoardSpec cube_board() {
    BoardSpec b;
    b.sites = 3;
    b.edges = {{0, 1, "U"}, {1, 2, "R"}};
    b.colors = {{0, 1, Statistics::boson, "A"}, {1, 1, Statistics::boson, "B"}, {2, 1, Statistics::boson, "C"}};
    b.layout = {{0, 0}, {0, 1}, {0, 2}};
    b.basis_order = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    return b;
}

struct CubeFamily {
    PuzzleSpace space;
    MoveOperator p_u, p_r, q_u, q_r;

    GateSet permutations() const { return GateSet({p_u, p_r}); }
    GateSet roots() const { return GateSet({q_u, q_r}); }
    GateSet all() const { return GateSet({p_u, p_r, q_u, q_r}); }
};

/// P_U, P_R from the cube state table and Q_k = (I + i P_k)/sqrt(2).
inline CubeFamily build_cube_family() {
    PuzzleSpace space = enumerate_basis(cube_board());
    // P|i> = |table[i]>
    const SignedPermutation pu{{1, 0, 4, 5, 2, 3}, std::vector<double>(6, 1.0)};
    const SignedPermutation pr{{2, 3, 0, 1, 5, 4}, std::vector<double>(6, 1.0)};
    return CubeFamily{space,
                      MoveOperator::signed_permutation("P_U", pu),
                      MoveOperator::signed_permutation("P_R", pr),
                      MoveOperator::root_mixture("Q_U", pu, kPi / 4),
                      MoveOperator::root_mixture("Q_R", pr, kPi / 4)};
}

// ---------------------------------------------------------------------------
// Group closure

/// Breadth-first closure of <gens>, deduplicated up to global phase.
/// Returns the number of distinct elements, or nullopt once it exceeds cap.
inline std::optional<std::size_t> operator_closure_size(const GateSet& gens, std::size_t cap) {
    gens.validate();
    if (cap < 1) throw InvalidArgument("closure cap must be at least 1");
    const auto d = static_cast<Eigen::Index>(gens.dim());
    std::unordered_set<std::uint64_t> seen;
    std::deque<Matrix> frontier;
    Matrix id = Matrix::Identity(d, d);
    seen.insert(phase_hash(id));
    frontier.push_back(id);
    while (!frontier.empty()) {
        Matrix cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : gens.generators) {
            Matrix next = g.matrix() * cur;
            if (seen.insert(phase_hash(next)).second) {
                if (seen.size() > cap) return std::nullopt;
                frontier.push_back(std::move(next));
            }
        }
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// JSON fixtures: {label, dim, structure, entries: [[row, col, re, im], ...]}

inline nlohmann::ordered_json operator_to_json(const MoveOperator& op) {
    nlohmann::ordered_json j;
    j["label"] = op.label();
    j["dim"] = op.dim();
    j["structure"] = to_string(op.structure());
    auto entries = nlohmann::ordered_json::array();
    const Matrix& m = op.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Complex z = m(r, c);
            if (z == Complex{0.0, 0.0}) continue;
            entries.push_back({r, c, z.real() + 0.0, z.imag() + 0.0});
        }
    j["entries"] = entries;
    return j;
}

/// Canonical text form: one line of compact JSON plus a newline.
inline std::string operator_fixture_text(const MoveOperator& op) { return operator_to_json(op).dump() + "\n"; }

template <class Json>
MoveOperator operator_from_json(const Json& j) {
    try {
        const auto d = j.at("dim").template get<Eigen::Index>();
        Matrix m = Matrix::Zero(d, d);
        for (const auto& e : j.at("entries")) {
            const auto r = e.at(0).template get<Eigen::Index>();
            const auto c = e.at(1).template get<Eigen::Index>();
            if (r < 0 || c < 0 || r >= d || c >= d) throw InvalidArgument("operator entry out of range");
            m(r, c) = Complex(e.at(2).template get<double>(), e.at(3).template get<double>());
        }
        MoveOperator op(j.at("label").template get<std::string>(), std::move(m));
        return op;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed operator JSON: ") + ex.what());
    }
}

}  // namespace qpuzzle
