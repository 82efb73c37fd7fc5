// Scramble the two-green two-blue square, ask each solver for a plan and play
// the combined plan against the referee until it succeeds.
#include "qpuzzle/qpuzzle.hpp"

#include <iostream>

using namespace qpuzzle;

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
    const PuzzleSpace space = enumerate_basis(boards::square_fermion());
    const GateSet swaps = swap_set(space), roots = root_set(space), all = swaps + roots;

    ScrambleSpec spec;
    spec.generators = roots;
    spec.seed = seed;
    const Scramble sc = scramble(spec, space);
    std::cout << "scramble of " << sc.length << " moves, seed " << seed << "\n";
    for (std::size_t i = 0; i < space.dim(); ++i)
        std::cout << "  " << space.render(i) << "  p = " << sc.state.probability(i) << "\n";

    const ClassicalTable table(swaps, 0);
    const SolverPlan c = solve_classical(sc.state, table);
    const SolverPlan q = solve_quantum(sc.state, roots);
    const SolverPlan b = solve_combined(sc.state, all, {c, q});
    std::cout << "classical [" << c.word_string() << "] expected " << c.expected_cost << "\n"
              << "quantum   [" << q.word_string() << "] expected " << q.expected_cost << "\n"
              << "combined  [" << b.word_string() << "] expected " << b.expected_cost << "\n";

    GameSession game(space, RefereeConfig{0, sc.state, seed});
    while (game.status() == Status::solving) {
        for (const auto& label : b.word) game.apply_move(*all.find(label));
        const std::size_t outcome = game.measure();
        std::cout << "measured " << space.render(outcome) << "\n";
    }
    std::cout << "solved after " << game.moves_taken() << " moves\n";
}
