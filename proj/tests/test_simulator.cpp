#include "qpuzzle/qpuzzle.hpp"

#include <gtest/gtest.h>

using namespace qpuzzle;

namespace {

const PuzzleSpace& fermion_space() {
    static const PuzzleSpace s = enumerate_basis(boards::square_fermion());
    return s;
}

QuditState example_state() {
    Vector v = Vector::Zero(6);
    v[4] = std::sqrt(0.75);
    v[2] = std::sqrt(0.25);
    return QuditState(v);
}

GameSession session_from(const QuditState& start, std::uint64_t seed = 1) {
    return GameSession(fermion_space(), RefereeConfig{0, start, seed});
}

}  // namespace

TEST(State, Validation) {
    EXPECT_THROW(QuditState(Vector::Ones(3)), InvalidArgument);
    EXPECT_THROW(QuditState::basis(3, 3), InvalidArgument);
    EXPECT_THROW(QuditState::normalized(Vector::Zero(2)), InvalidArgument);
    EXPECT_NEAR(QuditState::normalized(Vector::Ones(4)).probability(2), 0.25, 1e-15);
}

TEST(State, SuccessProbability) {
    const auto& s = fermion_space();
    EXPECT_EQ(success_probability(QuditState::basis(6, 3), 0), 0.0);
    EXPECT_NEAR(success_probability(QuditState::basis(6, 0).evolved(build_root_swap(s, "R")), 0), 0.5, 1e-15);
    const QuditState after = example_state().evolved(build_swap(s, "R"));
    EXPECT_NEAR(success_probability(after, 0), 0.75, 1e-15);
}

TEST(Session, RightSwapOnExampleState) {
    GameSession g = session_from(example_state());
    g.apply_move(build_swap(fermion_space(), "R"));
    Vector want = Vector::Zero(6);
    want[0] = std::sqrt(0.75);
    want[2] = -std::sqrt(0.25);
    EXPECT_LE((g.current().amps() - want).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(g.moves_taken(), 1u);
}

TEST(Session, ZeroCostDiagnosticMove) {
    GameSession g = session_from(example_state());
    g.apply_move(MoveOperator("I", Matrix::Identity(6, 6)).with_cost(0));
    EXPECT_EQ(g.moves_taken(), 0u);
    EXPECT_LE((g.current().amps() - example_state().amps()).norm(), 1e-15);
}

TEST(Session, TwoRootsMakeASwap) {
    GameSession g = session_from(QuditState::basis(6, 0));
    const MoveOperator h = build_root_swap(fermion_space(), "R");
    g.apply_move(h);
    g.apply_move(h);
    EXPECT_EQ(g.moves_taken(), 2u);
    EXPECT_LE(std::abs(g.current()[4] - kI), 1e-15);
    EXPECT_EQ(g.current().support_size(), 1u);
}

TEST(Session, MeasureSolvedState) {
    GameSession g = session_from(QuditState::basis(6, 0));
    EXPECT_EQ(g.measure(), 0u);
    EXPECT_EQ(g.status(), Status::solved);
    EXPECT_EQ(g.moves_taken(), 1u);
    EXPECT_THROW(g.measure(), InvalidState);
    EXPECT_THROW(g.apply_move(build_swap(fermion_space(), "U")), InvalidState);
}

TEST(Session, RejectsDimensionMismatch) {
    GameSession g = session_from(QuditState::basis(6, 0));
    EXPECT_THROW(g.apply_move(build_phase_gate(4, 0)), InvalidArgument);
    EXPECT_THROW(GameSession(fermion_space(), RefereeConfig{6, QuditState::basis(6, 0), 0}), InvalidArgument);
    EXPECT_THROW(GameSession(fermion_space(), RefereeConfig{0, QuditState::basis(4, 0), 0}), InvalidArgument);
}

TEST(Session, RejectsNonUnitaryMove) {
    GameSession g = session_from(QuditState::basis(6, 0));
    EXPECT_THROW(g.apply_move(MoveOperator("twice", Matrix::Identity(6, 6) * 2.0)), Error);
}

TEST(Session, MeasurementFrequenciesMatchBornRule) {
    const QuditState target = example_state().evolved(build_swap(fermion_space(), "R"));
    // Use a spread state so that several outcomes have weight.
    Vector v(6);
    v << 0.2, Complex(0, 0.4), -0.3, 0.5, Complex(0.1, 0.1), 0.6;
    const QuditState spread = QuditState::normalized(v);
    for (const QuditState& st : {target, spread}) {
        const int trials = 100000;
        std::vector<int> hits(6, 0);
        for (int t = 0; t < trials; ++t) {
            GameSession g(fermion_space(), RefereeConfig{0, st, Rng::derive_seed(99, static_cast<std::uint64_t>(t))});
            ++hits[g.measure()];
        }
        for (std::size_t i = 0; i < 6; ++i) {
            const double p = st.probability(i);
            const double se = std::sqrt(p * (1 - p) / trials);
            EXPECT_NEAR(hits[i] / double(trials), p, 3 * se + 1e-12) << i;
        }
    }
}

TEST(Session, FailedMeasurementRestoresScramble) {
    const QuditState scr = example_state();
    GameSession g = session_from(scr, 5);
    int failures = 0;
    while (g.status() == Status::solving && failures < 50) {
        g.apply_move(build_swap(fermion_space(), "R"));
        if (g.measure() != 0) {
            ++failures;
            EXPECT_TRUE(g.current().equal_up_to_phase(scr));
            EXPECT_EQ(g.moves_since_reset(), 0u);
        }
    }
    EXPECT_EQ(g.status(), Status::solved);
}

TEST(Session, ResetIsIdempotent) {
    const QuditState scr = QuditState::basis(6, 3);
    GameSession g = session_from(scr);
    EXPECT_EQ(g.measure(), 3u);
    const QuditState first = g.current();
    EXPECT_EQ(g.measure(), 3u);
    EXPECT_TRUE(g.current().equal_up_to_phase(first));
    EXPECT_EQ(g.moves_taken(), 2u);
}

TEST(Session, DeterministicUnderSeed) {
    auto run = [](std::uint64_t seed) {
        GameSession g(fermion_space(), RefereeConfig{0, example_state(), seed});
        std::vector<std::size_t> outcomes;
        for (int k = 0; k < 30 && g.status() == Status::solving; ++k) {
            g.apply_move(build_root_swap(fermion_space(), "L"));
            outcomes.push_back(g.measure());
        }
        return std::pair{outcomes, g.current().amps()};
    };
    const auto a = run(17), b = run(17);
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ((a.second - b.second).norm(), 0.0);
}

TEST(Session, ClassicalMovesNeverSpread) {
    Rng rng(3);
    const GateSet swaps = swap_set(fermion_space());
    for (std::size_t start = 0; start < 6; ++start) {
        QuditState s = QuditState::basis(6, start);
        for (int k = 0; k < 200; ++k) {
            s = s.evolved(swaps.generators[static_cast<std::size_t>(rng.uniform_int(0, 3))]);
            ASSERT_EQ(s.support_size(1e-15), 1u);
        }
    }
}

TEST(Session, NormPreservedOverLongSessions) {
    Rng rng(11);
    const GateSet all = combined_set(fermion_space());
    GameSession g = session_from(QuditState::basis(6, 0));
    for (int k = 0; k < 5000; ++k) {
        g.apply_move(all.generators[static_cast<std::size_t>(rng.uniform_int(0, 7))]);
        ASSERT_NEAR(g.current().amps().norm(), 1.0, 1e-10);
    }
}

TEST(Session, LogFormatAndReplay) {
    const auto& s = fermion_space();
    const GateSet all = combined_set(s);
    const RefereeConfig ref{0, example_state(), 42};
    GameSession g(s, ref);
    Rng rng(8);
    for (int k = 0; k < 40 && g.status() == Status::solving; ++k) {
        g.apply_move(all.generators[static_cast<std::size_t>(rng.uniform_int(0, 7))]);
        if (k % 5 == 4) g.measure();
    }
    const std::string log = g.log_jsonl();
    const auto first = nlohmann::json::parse(log.substr(0, log.find('\n')));
    EXPECT_EQ(first["t"], 0);
    EXPECT_EQ(first["kind"], "move");
    EXPECT_TRUE(first.contains("label"));
    EXPECT_FALSE(first.contains("outcome"));
    EXPECT_EQ(first["moves_taken"], 1);

    const GameSession r = replay_session(s, ref, all, log);
    EXPECT_EQ(r.moves_taken(), g.moves_taken());
    EXPECT_EQ(r.status(), g.status());
    EXPECT_EQ(r.history().size(), g.history().size());
    EXPECT_EQ((r.current().amps() - g.current().amps()).norm(), 0.0);
    EXPECT_EQ(r.log_jsonl(), log);

    EXPECT_THROW(replay_session(s, ref, all, R"({"t":0,"kind":"move","label":"Z","moves_taken":1})"),
                 InvalidArgument);
    EXPECT_THROW(replay_session(s, ref, all, R"({"t":0,"kind":"move","label":"S_U","moves_taken":5})"),
                 InvalidArgument);
}
