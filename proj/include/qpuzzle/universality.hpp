// Numerical universality test: the generated group must be infinite and
// the generators' adjoint action must have only scalar commutant.
#pragma once

#include "qpuzzle/board.hpp"
#include "qpuzzle/core.hpp"
#include "qpuzzle/operators.hpp"
#include "qpuzzle/phase.hpp"
#include "qpuzzle/puzzle_space.hpp"

#include "json.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace qpuzzle {

struct SuProjection {
    MoveOperator op;
    Complex phase;  // op = phase * original
};

/// Rescales by the principal d-th root so that det = 1.
inline SuProjection project_to_su(const MoveOperator& op) {
    if (!is_unitary(op.matrix(), 1e-10)) throw InvalidArgument("project_to_su requires a unitary operator");
    const Complex det = op.matrix().determinant();
    const double d = static_cast<double>(op.dim());
    const Complex phase = std::polar(1.0, -std::arg(det) / d);
    return {MoveOperator(op.label(), op.matrix() * phase, op.move_cost()), phase};
}

inline GateSet project_to_su(const GateSet& gens) {
    GateSet out;
    for (const auto& g : gens.generators) out.generators.push_back(project_to_su(g).op);
    out.validate();
    return out;
}

/// min over phases of ||U - e^{i phi} I||_F for unitary U.
inline double scalar_distance(const Matrix& u) {
    const double d = static_cast<double>(u.rows());
    return std::sqrt(std::max(0.0, 2.0 * d - 2.0 * std::abs(u.trace())));
}

inline Matrix matrix_power(const Matrix& u, std::uint64_t k) {
    Matrix result = Matrix::Identity(u.rows(), u.cols());
    Matrix base = u;
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

struct InfiniteOptions {
    double delta = 0.3;                   // closeness to a scalar, Frobenius
    double epsilon = 1e-6;                // commutator norm threshold
    std::size_t max_elements = 20000;     // group elements enumerated
    std::uint64_t max_power = 5000;       // powers tried per element
};

enum class Verdict { yes, no, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "true";
        case Verdict::no: return "false";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct InfinitenessWitness {
    std::string word1, word2;  // e.g. "(H_U H_R)^52"
    double dist1 = 0, dist2 = 0, comm_norm = 0;
    Matrix w1, w2;
};

struct InfiniteResult {
    Verdict infinite = Verdict::inconclusive;
    std::optional<InfinitenessWitness> witness;
    std::optional<std::size_t> closure_size;  // set when the group is finite
    std::size_t elements_searched = 0;
};

/// Re-checks a witness from its matrices alone.
inline bool verify_witness(const InfinitenessWitness& w, const InfiniteOptions& opt) {
    const double d1 = scalar_distance(w.w1), d2 = scalar_distance(w.w2);
    const double c = (w.w1 * w.w2 - w.w2 * w.w1).norm();
    return d1 < opt.delta && d2 < opt.delta && d1 > 0 && d2 > 0 && c > opt.epsilon;
}

/// Breadth-first enumeration of group elements (up to phase). If the
/// enumeration closes, the group is finite. Meanwhile each element's powers
/// are screened for near-scalar elements that are not scalar; two such
/// elements that fail to commute make the group infinite.
inline InfiniteResult check_infinite(const GateSet& gens, const InfiniteOptions& opt = {}) {
    gens.validate();
    const auto d = static_cast<Eigen::Index>(gens.dim());
    InfiniteResult res;

    struct Candidate {
        std::string word;
        double dist;
        Matrix m;
    };
    std::vector<Candidate> candidates;

    struct Node {
        Matrix m;
        std::string word;
    };
    std::deque<Node> frontier;
    std::unordered_set<std::uint64_t> seen;
    Matrix id = Matrix::Identity(d, d);
    seen.insert(phase_hash(id));
    frontier.push_back({id, ""});

    auto screen = [&](const Matrix& u, const std::string& word) -> bool {
        Eigen::ComplexEigenSolver<Matrix> es(u, false);
        const Eigen::VectorXd angles = es.eigenvalues().array().arg().matrix();
        for (std::uint64_t k = 1; k <= opt.max_power; ++k) {
            Complex tr = 0;
            for (Eigen::Index i = 0; i < angles.size(); ++i) tr += std::polar(1.0, static_cast<double>(k) * angles[i]);
            const double dist = std::sqrt(std::max(0.0, 2.0 * static_cast<double>(d) - 2.0 * std::abs(tr)));
            if (dist <= 1e-6) return false;  // a power is scalar: this element has finite order
            if (dist < opt.delta) {
                Matrix uk = matrix_power(u, k);
                const double exact = scalar_distance(uk);
                if (!(exact < opt.delta && exact > 1e-6)) continue;
                const std::string name = "(" + word + ")^" + std::to_string(k);
                for (const auto& c : candidates) {
                    const double comm = (uk * c.m - c.m * uk).norm();
                    if (comm > opt.epsilon) {
                        InfinitenessWitness w{c.word, name, c.dist, exact, comm, c.m, uk};
                        if (verify_witness(w, opt)) {
                            res.witness = w;
                            return true;
                        }
                    }
                }
                candidates.push_back({name, exact, std::move(uk)});
                return false;
            }
        }
        return false;
    };

    while (!frontier.empty()) {
        Node cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : gens.generators) {
            Matrix next = g.matrix() * cur.m;
            if (!seen.insert(phase_hash(next)).second) continue;
            ++res.elements_searched;
            std::string word = cur.word.empty() ? g.label() : g.label() + " " + cur.word;
            if (screen(next, word)) {
                res.infinite = Verdict::yes;
                return res;
            }
            if (seen.size() > opt.max_elements) {
                res.infinite = Verdict::inconclusive;
                return res;
            }
            frontier.push_back({std::move(next), std::move(word)});
        }
    }
    res.infinite = Verdict::no;
    res.closure_size = seen.size();
    return res;
}

struct Commutant {
    std::size_t dim = 0;
    std::vector<Matrix> basis;  // orthonormal in the Frobenius inner product
};

/// Largest dimension accepted by adjoint_commutant_dim (the SVD is on a
/// (k d^2) x d^2 matrix).
inline constexpr std::size_t kMaxCommutantDim = 32;

/// Null space of X -> (U_i X U_i^dag - X) stacked over generators. A
/// singular value counts as zero below 1e-8 times the largest one.
inline Commutant adjoint_commutant(const GateSet& gens, double rel_cut = 1e-8) {
    gens.validate();
    const auto d = static_cast<Eigen::Index>(gens.dim());
    if (gens.dim() > kMaxCommutantDim) throw InvalidArgument("commutant computation limited to dimension 32");
    const Eigen::Index n = d * d;
    Matrix a(static_cast<Eigen::Index>(gens.size()) * n, n);
    const Matrix id = Matrix::Identity(d, d);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const Matrix& u = gens.generators[k].matrix();
        // vec(U X - X U) = (I (x) U - U^T (x) I) vec(X), column-major vec.
        Matrix block = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) block.block(i * d, j * d, d, d) -= u(j, i) * id;
        for (Eigen::Index j = 0; j < d; ++j) block.block(j * d, j * d, d, d) += u;
        a.block(static_cast<Eigen::Index>(k) * n, 0, n, n) = block;
    }
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd s = svd.singularValues();
    const double smax = s.size() ? s[0] : 0.0;
    Commutant c;
    const Matrix& v = svd.matrixV();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double sk = k < s.size() ? s[k] : 0.0;
        if (smax == 0.0 || sk < rel_cut * smax) {
            Matrix x(d, d);
            for (Eigen::Index col = 0; col < d; ++col) x.col(col) = v.col(k).segment(col * d, d);
            c.basis.push_back(std::move(x));
        }
    }
    c.dim = c.basis.size();
    return c;
}

inline std::size_t adjoint_commutant_dim(const GateSet& gens) { return adjoint_commutant(gens).dim; }

/// Residual of projecting x onto span(basis) (orthonormal basis), relative
/// to ||x||.
inline double commutant_residual(const Commutant& c, const Matrix& x) {
    Matrix r = x;
    for (const auto& b : c.basis) {
        const Complex coeff = (b.adjoint() * x).trace();
        r -= coeff * b;
    }
    return r.norm() / std::max(x.norm(), 1e-300);
}

struct UniversalityReport {
    InfiniteResult infinite;
    std::size_t commutant_dim = 0;
    bool universal = false;
    bool inconclusive = false;
    std::vector<std::string> labels;
    std::vector<Complex> su_phases;
};

/// universal = infinite and only scalars commute with every generator. A
/// nontrivial commutant settles the answer on its own; otherwise an
/// unresolved infiniteness search makes the whole report inconclusive.
inline UniversalityReport check_universal(const GateSet& gens, const InfiniteOptions& opt = {}) {
    UniversalityReport rep;
    GateSet su;
    for (const auto& g : gens.generators) {
        auto p = project_to_su(g);
        rep.labels.push_back(g.label());
        rep.su_phases.push_back(p.phase);
        su.generators.push_back(std::move(p.op));
    }
    su.validate();
    rep.commutant_dim = adjoint_commutant_dim(su);
    rep.infinite = check_infinite(su, opt);
    if (rep.commutant_dim != 1) {
        rep.universal = false;
    } else if (rep.infinite.infinite == Verdict::inconclusive) {
        rep.inconclusive = true;
    } else {
        rep.universal = rep.infinite.infinite == Verdict::yes;
    }
    return rep;
}

inline nlohmann::ordered_json report_to_json(const UniversalityReport& r) {
    nlohmann::ordered_json j;
    const Verdict v = r.infinite.infinite;
    if (v == Verdict::inconclusive)
        j["infinite"] = nullptr;
    else
        j["infinite"] = v == Verdict::yes;
    j["inconclusive"] = r.inconclusive || v == Verdict::inconclusive;
    if (r.infinite.witness) {
        const auto& w = *r.infinite.witness;
        j["witness"] = {{"word1", w.word1}, {"word2", w.word2}, {"dist1", w.dist1}, {"dist2", w.dist2},
                        {"comm_norm", w.comm_norm}};
    } else {
        j["witness"] = nullptr;
    }
    if (r.infinite.closure_size) j["closure_size"] = *r.infinite.closure_size;
    j["commutant_dim"] = r.commutant_dim;
    j["universal"] = r.universal;
    auto gens = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.labels.size(); ++i)
        gens.push_back({{"label", r.labels[i]}, {"phase", {r.su_phases[i].real(), r.su_phases[i].imag()}}});
    j["generators_su_projected"] = gens;
    return j;
}

/// Matrices commuting with all four square-root swaps of the fermionic
/// two-green two-blue square puzzle.
inline Matrix commutant_family_2x2(Complex a, Complex b, Complex c) {
    Matrix k(6, 6);
    k << a, b, -c, -c, c, c,  //
        b, a, -c, -c, c, c,   //
        -c, -c, a, b, c, c,   //
        -c, -c, b, a, c, c,   //
        c, c, c, c, a, b,     //
        c, c, c, c, b, a;
    return k;
}

struct ColorPermutation {
    std::vector<int> mapping;  // mapping[color id index] = new color id
    Matrix matrix;
};

/// Basis permutations induced by relabeling colors that share count and
/// statistics, kept when they commute with every square-root swap of the
/// board. The identity relabeling is excluded.
inline std::vector<ColorPermutation> color_permutation_commutants(const BoardSpec& board, double tolerance = 1e-12) {
    const PuzzleSpace space = enumerate_basis(board);
    const GateSet roots = root_set(space);
    std::vector<int> ids;
    for (const auto& c : board.colors) ids.push_back(c.id);
    std::vector<int> perm(ids.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<ColorPermutation> out;
    do {
        bool identity = true, compatible = true;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const auto& from = board.colors[i];
            const auto& to = board.colors[static_cast<std::size_t>(perm[i])];
            identity = identity && perm[i] == static_cast<int>(i);
            compatible = compatible && from.count == to.count && from.statistics == to.statistics;
        }
        if (identity || !compatible) continue;
        std::map<int, int> relabel;
        for (std::size_t i = 0; i < perm.size(); ++i) relabel[ids[i]] = ids[static_cast<std::size_t>(perm[i])];
        const auto d = static_cast<Eigen::Index>(space.dim());
        Matrix m = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < space.dim(); ++i) {
            std::vector<int> w = space.state(i).word;
            for (int& x : w) x = relabel[x];
            m(static_cast<Eigen::Index>(space.require_index(w)), static_cast<Eigen::Index>(i)) = 1.0;
        }
        bool commutes = true;
        for (const auto& g : roots.generators)
            commutes = commutes && (m * g.matrix() - g.matrix() * m).cwiseAbs().maxCoeff() <= tolerance;
        if (commutes) {
            std::vector<int> mapping;
            for (std::size_t i = 0; i < perm.size(); ++i) mapping.push_back(ids[static_cast<std::size_t>(perm[i])]);
            out.push_back({mapping, std::move(m)});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace qpuzzle
