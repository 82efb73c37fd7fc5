// Live qudit state, move application and the referee measurement game.
#pragma once

#include "qpuzzle/core.hpp"
#include "qpuzzle/operators.hpp"
#include "qpuzzle/phase.hpp"
#include "qpuzzle/puzzle_space.hpp"
#include "qpuzzle/rng.hpp"

#include "json.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qpuzzle {

class QuditState {
public:
    QuditState() = default;

    explicit QuditState(Vector amps) : amps_(std::move(amps)) {
        if (amps_.size() == 0) throw InvalidArgument("state must have positive dimension");
        if (std::abs(amps_.norm() - 1.0) > tol::norm) throw InvalidArgument("state is not normalized");
    }

    static QuditState basis(std::size_t dim, std::size_t index) {
        if (index >= dim) throw InvalidArgument("basis index out of range");
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
        v[static_cast<Eigen::Index>(index)] = 1.0;
        return QuditState(std::move(v));
    }

    /// Normalizes the given amplitudes first.
    static QuditState normalized(Vector amps) {
        const double n = amps.norm();
        if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
        return QuditState(amps / n);
    }

    const Vector& amps() const { return amps_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
    double probability(std::size_t i) const { return std::norm(amps_[static_cast<Eigen::Index>(i)]); }

    /// Number of amplitudes with modulus above the given threshold.
    std::size_t support_size(double threshold = tol::nonzero) const {
        std::size_t n = 0;
        for (Eigen::Index i = 0; i < amps_.size(); ++i) n += std::abs(amps_[i]) > threshold;
        return n;
    }

    bool equal_up_to_phase(const QuditState& other, double tolerance = tol::phase_equal) const {
        return qpuzzle::equal_up_to_phase(amps_, other.amps_, tolerance);
    }

    /// op * state, renormalized. Throws when the norm had drifted past the
    /// alarm threshold, since that means the operator is not unitary.
    QuditState evolved(const MoveOperator& op) const {
        if (op.dim() != dim()) throw InvalidArgument("operator dimension does not match state");
        Vector out;
        op.apply(amps_, out);
        const double n = out.norm();
        if (std::abs(n - 1.0) > tol::drift_alarm)
            throw Error("norm drift " + std::to_string(std::abs(n - 1.0)) + " after move " + op.label());
        QuditState s;
        s.amps_ = out / n;
        return s;
    }

private:
    Vector amps_;
};

inline double success_probability(const QuditState& state, std::size_t solved_index) {
    if (solved_index >= state.dim()) throw InvalidArgument("solved index out of range");
    return state.probability(solved_index);
}

struct RefereeConfig {
    std::size_t solved_index = 0;
    QuditState scramble_state;
    std::uint64_t rng_seed = 0;
};

enum class Status { solving, solved };

inline std::string to_string(Status s) { return s == Status::solved ? "solved" : "solving"; }

struct GameEvent {
    enum class Kind { move, measure };
    std::size_t t = 0;  // event index within the session
    Kind kind = Kind::move;
    std::string label;                  // move events
    std::optional<std::size_t> outcome;  // measure events
    std::uint64_t moves_taken = 0;      // after this event
};

inline nlohmann::ordered_json event_to_json(const GameEvent& e) {
    nlohmann::ordered_json j;
    j["t"] = e.t;
    j["kind"] = e.kind == GameEvent::Kind::move ? "move" : "measure";
    if (e.kind == GameEvent::Kind::move) j["label"] = e.label;
    if (e.outcome) j["outcome"] = *e.outcome;
    j["moves_taken"] = e.moves_taken;
    return j;
}

inline GameEvent event_from_json(const nlohmann::json& j) {
    GameEvent e;
    try {
        e.t = j.at("t").get<std::size_t>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "move") {
            e.kind = GameEvent::Kind::move;
            e.label = j.at("label").get<std::string>();
        } else if (kind == "measure") {
            e.kind = GameEvent::Kind::measure;
            e.outcome = j.at("outcome").get<std::size_t>();
        } else {
            throw InvalidArgument("unknown event kind '" + kind + "'");
        }
        e.moves_taken = j.at("moves_taken").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed log record: ") + ex.what());
    }
    return e;
}

/// One referee game. Single owner; not internally synchronized.
class GameSession {
public:
    GameSession(PuzzleSpace space, RefereeConfig referee)
        : space_(std::move(space)), referee_(std::move(referee)), rng_(referee_.rng_seed) {
        if (referee_.solved_index >= space_.dim()) throw InvalidArgument("solved index out of range");
        if (referee_.scramble_state.dim() != space_.dim())
            throw InvalidArgument("scramble state dimension does not match the puzzle");
        current_ = referee_.scramble_state;
    }

    const PuzzleSpace& space() const { return space_; }
    const RefereeConfig& referee() const { return referee_; }
    const QuditState& current() const { return current_; }
    std::uint64_t moves_taken() const { return moves_taken_; }
    /// Moves applied since the last reset (or the start).
    std::uint64_t moves_since_reset() const { return moves_since_reset_; }
    Status status() const { return status_; }
    const std::vector<GameEvent>& history() const { return history_; }
    std::optional<std::size_t> last_outcome() const { return last_outcome_; }

    double success_probability() const { return qpuzzle::success_probability(current_, referee_.solved_index); }

    void apply_move(const MoveOperator& op) {
        if (status_ == Status::solved) throw InvalidState("puzzle is already solved");
        current_ = current_.evolved(op);
        moves_taken_ += static_cast<std::uint64_t>(op.move_cost());
        moves_since_reset_ += static_cast<std::uint64_t>(op.move_cost());
        history_.push_back({history_.size(), GameEvent::Kind::move, op.label(), std::nullopt, moves_taken_});
    }

    /// Projective check against the solved state. Costs one move.
    std::size_t measure() {
        if (status_ == Status::solved) throw InvalidState("puzzle is already solved");
        return record_outcome(sample_outcome());
    }

    /// Applies a measurement whose outcome is already known (log replay).
    std::size_t measure_with_outcome(std::size_t outcome) {
        if (status_ == Status::solved) throw InvalidState("puzzle is already solved");
        if (outcome >= space_.dim()) throw InvalidArgument("outcome out of range");
        if (current_.probability(outcome) <= 0.0) throw InvalidArgument("outcome has zero probability");
        return record_outcome(outcome);
    }

    std::string log_jsonl() const {
        std::string out;
        for (const auto& e : history_) out += event_to_json(e).dump() + "\n";
        return out;
    }

private:
    std::size_t sample_outcome() {
        const double u = rng_.uniform();
        double acc = 0.0;
        std::size_t last_nonzero = 0;
        for (std::size_t i = 0; i < current_.dim(); ++i) {
            const double p = current_.probability(i);
            if (p > 0.0) last_nonzero = i;
            acc += p;
            if (u < acc) return i;
        }
        return last_nonzero;  // rounding leaves acc slightly below 1
    }

    std::size_t record_outcome(std::size_t outcome) {
        moves_taken_ += 1;
        last_outcome_ = outcome;
        if (outcome == referee_.solved_index) {
            status_ = Status::solved;
            current_ = QuditState::basis(space_.dim(), outcome);
        } else {
            // The outcome-dependent reset maps |outcome> back to the scramble.
            current_ = referee_.scramble_state;
            moves_since_reset_ = 0;
        }
        history_.push_back({history_.size(), GameEvent::Kind::measure, {}, outcome, moves_taken_});
        return outcome;
    }

    PuzzleSpace space_;
    RefereeConfig referee_;
    Rng rng_;
    QuditState current_;
    std::uint64_t moves_taken_ = 0;
    std::uint64_t moves_since_reset_ = 0;
    Status status_ = Status::solving;
    std::optional<std::size_t> last_outcome_;
    std::vector<GameEvent> history_;
};

/// Rebuilds a session from its JSON-lines log. Moves are looked up by label
/// in gates; measurements use the recorded outcomes. Throws if the replayed
/// move counts disagree with the log.
inline GameSession replay_session(const PuzzleSpace& space, const RefereeConfig& referee, const GateSet& gates,
                                  const std::string& jsonl) {
    GameSession s(space, referee);
    std::istringstream in(jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            throw InvalidArgument(std::string("log line is not JSON: ") + ex.what());
        }
        const GameEvent e = event_from_json(j);
        if (e.kind == GameEvent::Kind::move) {
            const MoveOperator* op = gates.find(e.label);
            if (!op) throw InvalidArgument("log references unknown move '" + e.label + "'");
            s.apply_move(*op);
        } else {
            s.measure_with_outcome(*e.outcome);
        }
        if (s.moves_taken() != e.moves_taken) throw InvalidArgument("log move count disagrees with replay");
    }
    return s;
}

}  // namespace qpuzzle
