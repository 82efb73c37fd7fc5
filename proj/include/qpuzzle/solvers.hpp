// Scrambles, expected-cost solvers and the Monte Carlo benchmark.
//
// A plan is a fixed move word followed by one measurement, repeated until
// the referee reports success. Its expected total is (M + 1) / P.
#pragma once

#include "qpuzzle/core.hpp"
#include "qpuzzle/operators.hpp"
#include "qpuzzle/phase.hpp"
#include "qpuzzle/puzzle_space.hpp"
#include "qpuzzle/rng.hpp"
#include "qpuzzle/simulator.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qpuzzle {

struct SolverPlan {
    std::vector<std::string> word;
    std::uint64_t M = 0;
    double P = 1.0;
    double expected_cost = 1.0;

    std::string word_string() const {
        std::string s;
        for (std::size_t i = 0; i < word.size(); ++i) s += (i ? " " : "") + word[i];
        return s;
    }
};

inline nlohmann::ordered_json plan_to_json(const SolverPlan& p) {
    nlohmann::ordered_json j;
    j["word"] = p.word;
    j["M"] = p.M;
    j["P"] = p.P;
    j["expected_cost"] = p.expected_cost;
    return j;
}

/// Applies a word (labels looked up in gates) to a state.
inline QuditState apply_word(const QuditState& s, const std::vector<std::string>& word, const GateSet& gates) {
    QuditState cur = s;
    for (const auto& label : word) {
        const MoveOperator* op = gates.find(label);
        if (!op) throw InvalidArgument("unknown move '" + label + "'");
        cur = cur.evolved(*op);
    }
    return cur;
}

namespace detail {

/// A candidate improves on the incumbent only if strictly cheaper beyond
/// floating-point noise; this makes the first plan found win ties.
inline bool improves(double cost, double best) { return cost < best * (1.0 - 1e-12); }

inline SolverPlan empty_plan(const QuditState& s, std::size_t solved) {
    SolverPlan p;
    p.P = success_probability(s, solved);
    p.expected_cost = p.P > 0 ? 1.0 / p.P : std::numeric_limits<double>::infinity();
    return p;
}

/// Forward adjacency of the generators' support: j is reachable from i in one
/// move when some generator has a nonzero (j, i) entry.
inline std::vector<std::vector<int>> support_graph(const GateSet& gates) {
    const std::size_t d = gates.dim();
    std::vector<std::vector<int>> rev(d);  // rev[j] = sources i with i -> j
    for (const auto& g : gates.generators) {
        const Matrix& m = g.matrix();
        for (Eigen::Index i = 0; i < m.cols(); ++i)
            for (Eigen::Index j = 0; j < m.rows(); ++j)
                if (j != i && std::abs(m(j, i)) > 0.0) rev[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
    }
    for (auto& r : rev) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }
    return rev;
}

/// Number of moves needed for amplitude to flow from each basis state to
/// target (BFS on the reversed support graph); -1 if never.
inline std::vector<int> distances_to(const GateSet& gates, std::size_t target) {
    const auto rev = support_graph(gates);
    std::vector<int> dist(gates.dim(), -1);
    std::deque<int> q;
    dist[target] = 0;
    q.push_back(static_cast<int>(target));
    while (!q.empty()) {
        const int j = q.front();
        q.pop_front();
        for (int i : rev[static_cast<std::size_t>(j)])
            if (dist[static_cast<std::size_t>(i)] < 0) {
                dist[static_cast<std::size_t>(i)] = dist[static_cast<std::size_t>(j)] + 1;
                q.push_back(i);
            }
    }
    return dist;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scrambles

struct ScrambleSpec {
    std::string length_distribution = "uniform";  // "uniform" or "fixed"
    std::int64_t len_min = 200;
    std::int64_t len_max = 500;
    GateSet generators;
    std::uint64_t seed = 0;
};

struct Scramble {
    QuditState state;
    std::int64_t length = 0;
    std::uint64_t seed = 0;
};

/// Random word from the generators applied to the solved basis state. The
/// length is drawn first, then each letter uniformly with replacement.
inline Scramble scramble(const ScrambleSpec& spec, const PuzzleSpace& space, std::size_t solved_index = 0) {
    spec.generators.validate();
    if (spec.generators.dim() != space.dim()) throw InvalidArgument("scramble generators do not match the puzzle");
    if (spec.len_min < 0 || spec.len_max < spec.len_min) throw InvalidArgument("invalid scramble length range");
    Rng rng(spec.seed);
    std::int64_t len;
    if (spec.length_distribution == "uniform")
        len = rng.uniform_int(spec.len_min, spec.len_max);
    else if (spec.length_distribution == "fixed")
        len = spec.len_min;
    else
        throw InvalidArgument("unknown scramble length distribution '" + spec.length_distribution + "'");
    const auto n = static_cast<std::int64_t>(spec.generators.size());
    QuditState s = QuditState::basis(space.dim(), solved_index);
    for (std::int64_t k = 0; k < len; ++k)
        s = s.evolved(spec.generators.generators[static_cast<std::size_t>(rng.uniform_int(0, n - 1))]);
    return {s, len, spec.seed};
}

// ---------------------------------------------------------------------------
// Classical solver

enum class ClassicalStrategy {
    optimal,            // min over basis states of (l(i) + 1) / p_i
    largest_amplitude,  // carry the most probable basis state home
};

inline std::string to_string(ClassicalStrategy s) {
    return s == ClassicalStrategy::optimal ? "optimal" : "largest_amplitude";
}

inline ClassicalStrategy classical_strategy_from_string(const std::string& s) {
    if (s == "optimal") return ClassicalStrategy::optimal;
    if (s == "largest_amplitude" || s == "largest-amplitude") return ClassicalStrategy::largest_amplitude;
    throw InvalidArgument("unknown classical strategy '" + s + "'");
}

/// Shortest words carrying each basis state to the solved state under a set
/// of signed permutations. Words are lexicographically smallest in generator
/// order among the shortest.
class ClassicalTable {
public:
    ClassicalTable(const GateSet& swaps, std::size_t solved_index) : solved_(solved_index) {
        swaps.validate();
        const std::size_t d = swaps.dim();
        for (const auto& g : swaps.generators) {
            if (!g.permutation() || g.structure() != Structure::signed_permutation)
                throw InvalidArgument("classical solver requires signed-permutation moves");
            perms_.push_back(g.permutation()->target);
            labels_.push_back(g.label());
            costs_.push_back(g.move_cost());
        }
        // Unit costs keep BFS exact; weighted moves would need Dijkstra.
        for (int c : costs_)
            if (c != 1) throw InvalidArgument("classical solver requires unit move costs");
        dist_.assign(d, -1);
        std::vector<std::vector<int>> pre(d);
        for (const auto& p : perms_)
            for (std::size_t i = 0; i < d; ++i) pre[static_cast<std::size_t>(p[i])].push_back(static_cast<int>(i));
        std::deque<std::size_t> q{solved_};
        dist_[solved_] = 0;
        while (!q.empty()) {
            const std::size_t j = q.front();
            q.pop_front();
            for (int i : pre[j])
                if (dist_[static_cast<std::size_t>(i)] < 0) {
                    dist_[static_cast<std::size_t>(i)] = dist_[j] + 1;
                    q.push_back(static_cast<std::size_t>(i));
                }
        }
    }

    std::size_t solved_index() const { return solved_; }
    int distance(std::size_t i) const { return dist_.at(i); }
    const std::vector<int>& distances() const { return dist_; }

    int diameter() const {
        int m = 0;
        for (int x : dist_) m = std::max(m, x);
        return m;
    }

    /// Generator indices of the word carrying basis state i home.
    std::vector<std::size_t> word_indices(std::size_t i) const {
        if (dist_.at(i) < 0) throw InvalidArgument("basis state cannot reach the solved state");
        std::vector<std::size_t> w;
        while (i != solved_) {
            for (std::size_t g = 0; g < perms_.size(); ++g) {
                const auto j = static_cast<std::size_t>(perms_[g][i]);
                if (dist_[j] == dist_[i] - 1) {
                    w.push_back(g);
                    i = j;
                    break;
                }
            }
        }
        return w;
    }

    std::vector<std::string> word(std::size_t i) const {
        std::vector<std::string> w;
        for (std::size_t g : word_indices(i)) w.push_back(labels_[g]);
        return w;
    }

private:
    std::size_t solved_;
    std::vector<std::vector<int>> perms_;
    std::vector<std::string> labels_;
    std::vector<int> costs_;
    std::vector<int> dist_;
};

inline SolverPlan solve_classical(const QuditState& s, const ClassicalTable& table,
                                  ClassicalStrategy strategy = ClassicalStrategy::optimal) {
    const std::size_t d = s.dim();
    if (table.distances().size() != d) throw InvalidArgument("classical table does not match the state");
    std::optional<std::size_t> pick;
    double best = std::numeric_limits<double>::infinity();
    double best_p = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double p = s.probability(i);
        if (p <= 0.0) continue;
        if (table.distance(i) < 0) throw InvalidArgument("state has amplitude on a basis state that cannot be solved");
        const double cost = (table.distance(i) + 1.0) / p;
        if (strategy == ClassicalStrategy::optimal) {
            // Ties: fewer moves, then the lexicographically smaller word.
            if (!pick || detail::improves(cost, best) ||
                (!detail::improves(best, cost) &&
                 (table.distance(i) < table.distance(*pick) ||
                  (table.distance(i) == table.distance(*pick) && table.word_indices(i) < table.word_indices(*pick))))) {
                pick = i;
                best = cost;
            }
        } else {
            const bool larger = !pick || p > best_p * (1.0 + 1e-12);
            const bool tie = pick && !larger && p >= best_p * (1.0 - 1e-12);
            if (larger || (tie && (table.distance(i) < table.distance(*pick) ||
                                   (table.distance(i) == table.distance(*pick) && table.word_indices(i) < table.word_indices(*pick))))) {
                pick = i;
                best_p = p;
                best = cost;
            }
        }
    }
    if (!pick) throw InvalidArgument("state has no nonzero amplitude");
    SolverPlan plan;
    plan.word = table.word(*pick);
    plan.M = plan.word.size();
    plan.P = s.probability(*pick);
    plan.expected_cost = (static_cast<double>(plan.M) + 1.0) / plan.P;
    return plan;
}

inline SolverPlan solve_classical(const QuditState& s, const PuzzleSpace& space, const GateSet& swaps,
                                  ClassicalStrategy strategy = ClassicalStrategy::optimal,
                                  std::size_t solved_index = 0) {
    if (swaps.dim() != space.dim()) throw InvalidArgument("swap set does not match the puzzle");
    return solve_classical(s, ClassicalTable(swaps, solved_index), strategy);
}

// ---------------------------------------------------------------------------
// Optimal word search

struct SearchOptions {
    /// Light-cone bound: after r more moves only basis states within r moves
    /// of solved can contribute, so P <= (their probability mass).
    bool cone_pruning = true;
    std::uint64_t node_budget = 10'000'000;
    /// Known achievable cost (e.g. from a sub-solver); the search only looks
    /// for strictly cheaper words, returning this plan otherwise.
    std::optional<SolverPlan> incumbent;
    /// Optional hard cap on word length, for exhaustive reference searches.
    std::optional<std::uint64_t> max_length;
    std::size_t solved_index = 0;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t last_length = 0;  // last word length fully searched
};

/// Word over gates minimizing (M + 1) / P, found by iterative deepening on
/// the word cost M. Any word of cost M has expected cost at least M + 1, so
/// deepening stops once M + 1 reaches the incumbent; with the cone bound
/// every pruned subtree provably contains nothing better. States are
/// deduplicated up to global phase per iteration, keeping the cheapest
/// prefix that reached them.
inline SolverPlan search_optimal(const QuditState& s, const GateSet& gates, const SearchOptions& opt = {},
                                 SearchStats* stats = nullptr) {
    gates.validate();
    const std::size_t d = s.dim();
    if (gates.dim() != d) throw InvalidArgument("generator dimension does not match the state");
    for (const auto& g : gates.generators)
        if (g.move_cost() <= 0) throw InvalidArgument("search requires positive move costs");
    const std::size_t solved = opt.solved_index;
    if (solved >= d) throw InvalidArgument("solved index out of range");

    SolverPlan best = detail::empty_plan(s, solved);
    if (opt.incumbent && detail::improves(opt.incumbent->expected_cost, best.expected_cost)) best = *opt.incumbent;

    const std::vector<int> dist = detail::distances_to(gates, solved);
    int max_dist = 0;
    for (int x : dist) max_dist = std::max(max_dist, x);

    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    st = {};

    // cone[k][r]: probability mass within r moves of solved, for the state
    // at stack depth k.
    std::vector<Vector> states;
    std::vector<std::vector<double>> cone;
    std::vector<std::size_t> word_idx;
    std::unordered_map<std::uint64_t, std::uint64_t> seen;

    auto cone_masses = [&](const Vector& v, std::vector<double>& out) {
        out.assign(static_cast<std::size_t>(max_dist) + 1, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            if (dist[i] >= 0) out[static_cast<std::size_t>(dist[i])] += std::norm(v[static_cast<Eigen::Index>(i)]);
        for (std::size_t r = 1; r < out.size(); ++r) out[r] += out[r - 1];
    };

    auto cone_bound = [&](const std::vector<double>& c, std::uint64_t remaining) {
        const std::size_t r = std::min<std::uint64_t>(remaining, static_cast<std::uint64_t>(max_dist));
        return std::min(1.0, c[r]);
    };

    for (std::uint64_t L = 1;; ++L) {
        if (static_cast<double>(L) + 1.0 >= best.expected_cost) break;
        if (opt.max_length && L > *opt.max_length) break;
        seen.clear();
        states.assign(1, s.amps());
        cone.assign(1, {});
        cone_masses(states[0], cone[0]);
        word_idx.clear();

        // Depth-first, generators in declared order (lexicographic words).
        std::function<void(std::uint64_t)> dfs = [&](std::uint64_t cost) {
            const std::size_t k = states.size() - 1;
            if (cost == L) {
                const double p = std::norm(states[k][static_cast<Eigen::Index>(solved)]);
                if (p > 0.0) {
                    const double c = (static_cast<double>(L) + 1.0) / p;
                    if (detail::improves(c, best.expected_cost)) {
                        best.word.clear();
                        for (std::size_t w : word_idx) best.word.push_back(gates.generators[w].label());
                        best.M = L;
                        best.P = p;
                        best.expected_cost = c;
                    }
                }
                return;
            }
            for (std::size_t gi = 0; gi < gates.size(); ++gi) {
                const MoveOperator& g = gates.generators[gi];
                const std::uint64_t next_cost = cost + static_cast<std::uint64_t>(g.move_cost());
                if (next_cost > L) continue;
                if (++st.nodes > opt.node_budget)
                    throw BudgetExceeded("search exceeded " + std::to_string(opt.node_budget) + " nodes");
                Vector next;
                g.apply(states[k], next);
                if (opt.cone_pruning) {
                    std::vector<double> c;
                    cone_masses(next, c);
                    const double bound = cone_bound(c, L - next_cost);
                    if (bound <= 0.0 || !detail::improves((static_cast<double>(L) + 1.0) / bound, best.expected_cost))
                        continue;
                    cone.push_back(std::move(c));
                } else {
                    cone.push_back({});
                }
                const std::uint64_t h = phase_hash(next);
                auto it = seen.find(h);
                if (it != seen.end() && it->second <= next_cost) {
                    cone.pop_back();
                    continue;
                }
                seen[h] = next_cost;
                states.push_back(std::move(next));
                word_idx.push_back(gi);
                dfs(next_cost);
                states.pop_back();
                cone.pop_back();
                word_idx.pop_back();
            }
        };
        dfs(0);
        st.last_length = L;
    }
    return best;
}

inline SolverPlan solve_quantum(const QuditState& s, const GateSet& roots, const SearchOptions& opt = {},
                                SearchStats* stats = nullptr) {
    return search_optimal(s, roots, opt, stats);
}

/// Optimal search over swaps and roots together. The classical and quantum
/// plans, when supplied, seed the incumbent: both are valid combined plans,
/// which also makes dominance exact rather than up to rounding.
inline SolverPlan solve_combined(const QuditState& s, const GateSet& all_moves,
                                 const std::vector<SolverPlan>& sub_plans = {}, SearchOptions opt = {},
                                 SearchStats* stats = nullptr) {
    for (const auto& p : sub_plans)
        if (!opt.incumbent || detail::improves(p.expected_cost, opt.incumbent->expected_cost)) opt.incumbent = p;
    return search_optimal(s, all_moves, opt, stats);
}

/// Reference optimum over all words of length <= max_len by breadth-first
/// enumeration (deduplicated up to phase). Exponential; for tests.
inline SolverPlan exhaustive_optimal(const QuditState& s, const GateSet& gates, std::uint64_t max_len,
                                     std::size_t solved_index = 0) {
    SolverPlan best = detail::empty_plan(s, solved_index);
    struct Node {
        Vector v;
        std::vector<std::size_t> word;
    };
    std::vector<Node> level{{s.amps(), {}}};
    std::unordered_set<std::uint64_t> seen{phase_hash(s.amps())};
    for (std::uint64_t L = 1; L <= max_len; ++L) {
        std::vector<Node> next;
        for (const auto& n : level)
            for (std::size_t gi = 0; gi < gates.size(); ++gi) {
                Node c{gates.generators[gi].apply(n.v), n.word};
                c.word.push_back(gi);
                const double p = std::norm(c.v[static_cast<Eigen::Index>(solved_index)]);
                if (p > 0.0 && detail::improves((L + 1.0) / p, best.expected_cost)) {
                    best.word.clear();
                    for (std::size_t w : c.word) best.word.push_back(gates.generators[w].label());
                    best.M = L;
                    best.P = p;
                    best.expected_cost = (L + 1.0) / p;
                }
                if (seen.insert(phase_hash(c.v)).second) next.push_back(std::move(c));
            }
        level = std::move(next);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Benchmark

struct SolverConfig {
    ClassicalStrategy classical = ClassicalStrategy::largest_amplitude;
    SearchOptions search;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct BenchmarkRecord {
    std::uint64_t seed = 0;
    std::int64_t scramble_len = 0;
    SolverPlan classical, quantum, combined;
    double classical_optimal_cost = 0.0;  // exhaustive classical reference
    std::string error;                    // nonempty when a solver failed
    bool ok() const { return error.empty(); }
};

struct BenchmarkReport {
    ClassicalStrategy classical_strategy = ClassicalStrategy::largest_amplitude;
    std::vector<BenchmarkRecord> records;

    std::size_t ok_count() const {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](auto& r) { return r.ok(); }));
    }

    double mean(const std::function<double(const BenchmarkRecord&)>& f) const {
        double acc = 0;
        std::size_t n = 0;
        for (const auto& r : records)
            if (r.ok()) {
                acc += f(r);
                ++n;
            }
        return n ? acc / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
    }

    double mean_classical() const { return mean([](auto& r) { return r.classical.expected_cost; }); }
    double mean_quantum() const { return mean([](auto& r) { return r.quantum.expected_cost; }); }
    double mean_combined() const { return mean([](auto& r) { return r.combined.expected_cost; }); }
    double mean_classical_optimal() const { return mean([](auto& r) { return r.classical_optimal_cost; }); }

    /// Records where the combined plan costs more than either sub-solver.
    std::size_t dominance_violations() const {
        std::size_t v = 0;
        for (const auto& r : records)
            if (r.ok() && (r.combined.expected_cost > r.classical.expected_cost ||
                           r.combined.expected_cost > r.quantum.expected_cost ||
                           r.combined.expected_cost > r.classical_optimal_cost))
                ++v;
        return v;
    }
};

/// Runs all three solvers on one scramble.
inline BenchmarkRecord solve_record(const Scramble& sc, const ClassicalTable& table, const GateSet& roots,
                                    const GateSet& all_moves, const SolverConfig& cfg) {
    BenchmarkRecord r;
    r.seed = sc.seed;
    r.scramble_len = sc.length;
    try {
        SolverPlan opt = solve_classical(sc.state, table, ClassicalStrategy::optimal);
        r.classical_optimal_cost = opt.expected_cost;
        r.classical = cfg.classical == ClassicalStrategy::optimal ? opt
                                                                  : solve_classical(sc.state, table, cfg.classical);
        SearchOptions so = cfg.search;
        so.solved_index = table.solved_index();
        r.quantum = solve_quantum(sc.state, roots, so);
        r.combined = solve_combined(sc.state, all_moves, {opt, r.classical, r.quantum}, so);
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

/// Runs fn(i) for i in [0, n) across worker threads. Each index is
/// independent, so results do not depend on scheduling.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

/// Record i uses scramble seed derive_seed(spec.seed, i). The scramble
/// generator set is spec.generators (square-root moves by default).
inline BenchmarkReport run_benchmark(const PuzzleSpace& space, const SolverConfig& cfg, const ScrambleSpec& spec,
                                     std::size_t trials, std::size_t solved_index = 0) {
    if (trials < 1) throw InvalidArgument("trials must be at least 1");
    const GateSet swaps = swap_set(space);
    const GateSet roots = root_set(space);
    const GateSet all = swaps + roots;
    const ClassicalTable table(swaps, solved_index);
    BenchmarkReport rep;
    rep.classical_strategy = cfg.classical;
    rep.records.resize(trials);
    parallel_for(trials, cfg.workers, [&](std::size_t i) {
        ScrambleSpec s = spec;
        s.seed = Rng::derive_seed(spec.seed, i);
        rep.records[i] = solve_record(scramble(s, space, solved_index), table, roots, all, cfg);
    });
    return rep;
}

inline std::string benchmark_csv(const BenchmarkReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "seed,scramble_len,classical_cost,quantum_cost,combined_cost,classical_word,quantum_word,combined_word\n";
    for (const auto& r : rep.records) {
        out << r.seed << ',' << r.scramble_len << ',';
        if (!r.ok()) {
            out << "nan,nan,nan,,,\n";
            continue;
        }
        out << r.classical.expected_cost << ',' << r.quantum.expected_cost << ',' << r.combined.expected_cost << ','
            << r.classical.word_string() << ',' << r.quantum.word_string() << ',' << r.combined.word_string() << '\n';
    }
    return out.str();
}

/// Empirical CDF of a cost column sampled at 101 evenly spaced quantiles:
/// [[cost, fraction <= cost], ...].
inline nlohmann::ordered_json cdf_samples(std::vector<double> v) {
    auto out = nlohmann::ordered_json::array();
    if (v.empty()) return out;
    std::sort(v.begin(), v.end());
    for (int q = 0; q <= 100; ++q) {
        const std::size_t idx = std::min(v.size() - 1, static_cast<std::size_t>(q * (v.size() - 1) / 100.0 + 0.5));
        const double x = v[idx];
        const auto le = std::upper_bound(v.begin(), v.end(), x) - v.begin();
        out.push_back({x, static_cast<double>(le) / static_cast<double>(v.size())});
    }
    return out;
}

inline nlohmann::ordered_json benchmark_summary(const BenchmarkReport& rep) {
    nlohmann::ordered_json j;
    j["trials"] = rep.records.size();
    j["ok"] = rep.ok_count();
    j["classical_strategy"] = to_string(rep.classical_strategy);
    j["mean"] = {{"classical", rep.mean_classical()},
                 {"quantum", rep.mean_quantum()},
                 {"combined", rep.mean_combined()},
                 {"classical_optimal", rep.mean_classical_optimal()}};
    j["dominance_violations"] = rep.dominance_violations();
    std::vector<double> c, q, b;
    for (const auto& r : rep.records)
        if (r.ok()) {
            c.push_back(r.classical.expected_cost);
            q.push_back(r.quantum.expected_cost);
            b.push_back(r.combined.expected_cost);
        }
    j["cdf"] = {{"classical", cdf_samples(c)}, {"quantum", cdf_samples(q)}, {"combined", cdf_samples(b)}};
    return j;
}

// ---------------------------------------------------------------------------
// Advantage study

struct AdvantageRow {
    std::string name;
    std::size_t dim = 0;
    bool skipped = false;
    std::string skip_reason;
    double classical = 0, quantum = 0, combined = 0, classical_optimal = 0;
    std::size_t failures = 0;

    static double pct(double x, double ref) { return (x - ref) / ref * 100.0; }
    double quantum_pct() const { return pct(quantum, classical); }
    double combined_pct() const { return pct(combined, classical); }
    double quantum_pct_vs_optimal() const { return pct(quantum, classical_optimal); }
    double combined_pct_vs_optimal() const { return pct(combined, classical_optimal); }
};

struct AdvantageConfig {
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::int64_t len_min = 200;
    std::int64_t len_max = 500;
    std::size_t max_dim = 5000;
    SolverConfig solvers;
};

/// Mean expected cost per solver on each board and the percent difference
/// against the classical solver (negative = better than classical).
inline std::vector<AdvantageRow> advantage_study(const std::vector<std::pair<std::string, BoardSpec>>& family,
                                                 const AdvantageConfig& cfg) {
    std::vector<AdvantageRow> rows;
    for (const auto& [name, board] : family) {
        AdvantageRow row;
        row.name = name;
        if (!board.connected()) throw InvalidArgument("advantage study requires connected boards: " + name);
        std::vector<int> counts;
        for (const auto& c : board.colors) counts.push_back(c.count);
        const BigInt d = qudit_dimension(board.sites, counts);
        if (d > BigInt(cfg.max_dim)) {
            row.skipped = true;
            row.skip_reason = "dimension " + d.str() + " exceeds cap";
            rows.push_back(row);
            continue;
        }
        const PuzzleSpace space = enumerate_basis(board);
        row.dim = space.dim();
        ScrambleSpec spec;
        spec.len_min = cfg.len_min;
        spec.len_max = cfg.len_max;
        spec.generators = root_set(space);
        spec.seed = cfg.seed;
        const BenchmarkReport rep = run_benchmark(space, cfg.solvers, spec, cfg.trials);
        row.classical = rep.mean_classical();
        row.quantum = rep.mean_quantum();
        row.combined = rep.mean_combined();
        row.classical_optimal = rep.mean_classical_optimal();
        row.failures = rep.records.size() - rep.ok_count();
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::ordered_json advantage_to_json(const std::vector<AdvantageRow>& rows) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["board"] = r.name;
        if (r.skipped) {
            j["skipped"] = r.skip_reason;
            out.push_back(j);
            continue;
        }
        j["dim"] = r.dim;
        j["mean"] = {{"classical", r.classical},
                     {"quantum", r.quantum},
                     {"combined", r.combined},
                     {"classical_optimal", r.classical_optimal}};
        j["pct_vs_classical"] = {{"quantum", r.quantum_pct()}, {"combined", r.combined_pct()}};
        j["pct_vs_classical_optimal"] = {{"quantum", r.quantum_pct_vs_optimal()},
                                         {"combined", r.combined_pct_vs_optimal()}};
        j["failures"] = r.failures;
        out.push_back(j);
    }
    return out;
}

}  // namespace qpuzzle
