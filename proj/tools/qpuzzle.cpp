// qpuzzle: command-line front end for the quantum permutation puzzle engine.
#include "qpuzzle/qpuzzle.hpp"
#include "qpuzzle/service.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qpuzzle;

namespace {

int fail(const std::exception& e, const char* type) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", type}}.dump() << "\n";
    return 2;
}

std::vector<int> parse_counts(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InvalidArgument("counts must be a comma separated list of integers");
        }
    }
    return out;
}

GateSet moves_named(const PuzzleSpace& space, const std::string& which) {
    if (which == "roots") return root_set(space);
    if (which == "swaps") return swap_set(space);
    if (which == "all") return combined_set(space);
    throw InvalidArgument("move set must be roots, swaps or all");
}

/// Every operator the matrices command can print for a board.
std::vector<MoveOperator> board_operators(const PuzzleSpace& space) {
    std::vector<MoveOperator> ops;
    for (const auto& g : swap_set(space).generators) ops.push_back(g);
    for (const auto& g : root_set(space).generators) ops.push_back(g);
    return ops;
}

void print_view(const nlohmann::ordered_json& v) {
    std::cout << "status " << v["status"].get<std::string>() << ", moves " << v["moves_taken"] << ", P(solved) "
              << v["success_probability"].get<double>() << "\n";
    for (const auto& b : v["basis"]) {
        const double p = b["probability"].get<double>();
        if (p < 1e-12) continue;
        std::cout << "  |" << b["index"] << "> " << b["render"].get<std::string>() << "  amp " << b["re"].get<double>()
                  << (b["im"].get<double>() < 0 ? " - " : " + ") << std::abs(b["im"].get<double>()) << "i  p " << p
                  << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum permutation puzzles: state spaces, moves, solvers and universality"};
    app.require_subcommand(1);

    std::string board_file;
    std::uint64_t seed = 0;

    // dims
    auto* dims = app.add_subcommand("dims", "Qudit dimension of a board or a color count list");
    int dims_sites = -1;
    std::string dims_counts;
    int dims_square = -1, dims_colors = 2;
    dims->add_option("--board", board_file, "Board spec JSON");
    dims->add_option("--sites", dims_sites, "Number of sites");
    dims->add_option("--counts", dims_counts, "Comma separated color counts");
    dims->add_option("--square", dims_square, "n for an n x n board with equal color counts");
    dims->add_option("--colors", dims_colors, "Number of colors for --square");

    // matrices
    auto* mats = app.add_subcommand("matrices", "Print operators in the fixture JSON format");
    std::string mat_op;
    bool mat_cube = false;
    std::optional<std::size_t> mat_phase;
    mats->add_option("--board", board_file, "Board spec JSON");
    mats->add_option("--op", mat_op, "Only this operator (e.g. S_U, H_R)");
    mats->add_flag("--cube", mat_cube, "Cube family operators");
    mats->add_option("--phase-gate", mat_phase, "Print the phase gate on this basis index");

    // play
    auto* play = app.add_subcommand("play", "Interactive terminal session (reads commands from stdin)");
    std::int64_t len_min = 200, len_max = 500;
    std::optional<std::size_t> start_basis;
    play->add_option("--board", board_file, "Board spec JSON")->required();
    play->add_option("--seed", seed, "Scramble and referee seed");
    play->add_option("--len-min", len_min, "Minimum scramble length");
    play->add_option("--len-max", len_max, "Maximum scramble length");
    play->add_option("--start-basis", start_basis, "Start from this basis state instead of scrambling");

    // solve
    auto* solve = app.add_subcommand("solve", "Scramble once and run the three solvers");
    std::string strategy = "optimal";
    solve->add_option("--board", board_file, "Board spec JSON")->required();
    solve->add_option("--seed", seed, "Scramble seed");
    solve->add_option("--len-min", len_min, "Minimum scramble length");
    solve->add_option("--len-max", len_max, "Maximum scramble length");
    solve->add_option("--start-basis", start_basis, "Solve this basis state instead of a scramble");
    solve->add_option("--classical", strategy, "Classical strategy: optimal or largest_amplitude");

    // bench
    auto* bench = app.add_subcommand("bench", "Monte Carlo solver benchmark");
    std::size_t trials = 2000;
    std::string out_dir;
    unsigned workers = 0;
    std::string bench_strategy = "largest_amplitude";
    bench->add_option("--board", board_file, "Board spec JSON")->required();
    bench->add_option("--trials", trials, "Number of scrambles");
    bench->add_option("--seed", seed, "Base seed");
    bench->add_option("--len-min", len_min, "Minimum scramble length");
    bench->add_option("--len-max", len_max, "Maximum scramble length");
    bench->add_option("--out", out_dir, "Directory for benchmark.csv and summary.json");
    bench->add_option("--workers", workers, "Worker threads (0 = all cores)");
    bench->add_option("--classical", bench_strategy, "Classical strategy: optimal or largest_amplitude");

    // advantage
    auto* adv = app.add_subcommand("advantage", "Solver advantage across a board family");
    std::string family = "square";
    std::size_t adv_trials = 100;
    adv->add_option("--family", family, "square (dims 4, 6, 12, 24) or line (n = 2..5)");
    adv->add_option("--trials", adv_trials, "Scrambles per board");
    adv->add_option("--seed", seed, "Base seed");
    adv->add_option("--classical", bench_strategy, "Classical strategy: optimal or largest_amplitude");

    // universality
    auto* uni = app.add_subcommand("universality", "Numerical universality check of a gate set");
    bool with_phase = false, uni_cube = false;
    std::optional<std::size_t> phase_target;
    std::size_t budget = 20000;
    std::string uni_moves = "roots";
    uni->add_option("--board", board_file, "Board spec JSON");
    uni->add_flag("--with-phase-gate", with_phase, "Add a phase gate on the last basis state");
    uni->add_option("--phase-target", phase_target, "Basis index for the phase gate");
    uni->add_option("--budget", budget, "Group elements to enumerate before giving up");
    uni->add_option("--moves", uni_moves, "roots, swaps or all");
    uni->add_flag("--cube", uni_cube, "Use the cube family (P_U, P_R or Q_U, Q_R)");

    // serve
    auto* serve = app.add_subcommand("serve", "Run the local HTTP session service");
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string board_dir = "boards";
    bool no_hints = false;
    serve->add_option("--port", port, "TCP port");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--board-dir", board_dir, "Directory of board spec files");
    serve->add_flag("--no-hints", no_hints, "Disable solver hints");

    // cube
    auto* cube = app.add_subcommand("cube", "The 2x2x1 cube puzzle");
    bool gods = false;
    cube->add_flag("--gods-number", gods, "Print only the God's number");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dims) {
            BigInt d;
            if (!board_file.empty()) {
                const BoardSpec b = load_board(board_file);
                std::vector<int> counts;
                for (const auto& c : b.colors) counts.push_back(c.count);
                d = qudit_dimension(b.sites, counts);
            } else if (dims_square > 0) {
                const int n2 = dims_square * dims_square;
                if (dims_colors <= 0 || n2 % dims_colors != 0)
                    throw InvalidArgument("n*n sites must split evenly between the colors");
                d = qudit_dimension(n2, std::vector<int>(static_cast<std::size_t>(dims_colors), n2 / dims_colors));
            } else if (dims_sites >= 0) {
                d = qudit_dimension(dims_sites, parse_counts(dims_counts));
            } else {
                throw InvalidArgument("dims needs --board, --square or --sites with --counts");
            }
            std::cout << d << "\n";
            return 0;
        }

        if (*mats) {
            std::vector<MoveOperator> ops;
            if (mat_cube) {
                const CubeFamily f = build_cube_family();
                ops = {f.p_u, f.p_r, f.q_u, f.q_r};
            } else {
                if (board_file.empty()) throw InvalidArgument("matrices needs --board or --cube");
                const PuzzleSpace space = enumerate_basis(load_board(board_file));
                ops = board_operators(space);
                if (mat_phase) ops.push_back(build_phase_gate(space, *mat_phase));
            }
            bool any = false;
            for (const auto& op : ops)
                if (mat_op.empty() || op.label() == mat_op) {
                    std::cout << operator_fixture_text(op);
                    any = true;
                }
            if (!any) throw InvalidArgument("no operator labeled '" + mat_op + "'");
            return 0;
        }

        if (*play) {
            SessionManager mgr(true);
            CreateRequest req;
            req.board = load_board(board_file);
            req.seed = seed;
            req.len_min = len_min;
            req.len_max = len_max;
            req.start_basis = start_basis;
            const std::string id = mgr.create(req);
            std::cout << "commands: <move label> | measure | state | hint [classical|quantum|combined] | log | quit\n";
            print_view(mgr.view(id));
            std::string line;
            while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
                std::istringstream ls(line);
                std::string cmd;
                ls >> cmd;
                if (cmd.empty()) continue;
                try {
                    if (cmd == "quit" || cmd == "exit") break;
                    if (cmd == "state") {
                        print_view(mgr.view(id));
                    } else if (cmd == "measure") {
                        auto v = mgr.measure(id);
                        std::cout << "outcome |" << v["outcome"] << ">\n";
                        print_view(v);
                        if (v["status"] == "solved") break;
                    } else if (cmd == "hint") {
                        std::string which = "combined";
                        ls >> which;
                        std::cout << mgr.hint(id, which).dump() << "\n";
                    } else if (cmd == "log") {
                        std::cout << mgr.log(id);
                    } else {
                        print_view(mgr.move(id, cmd));
                    }
                } catch (const Error& e) {
                    std::cout << "error: " << e.what() << "\n";
                }
            }
            return 0;
        }

        if (*solve) {
            const PuzzleSpace space = enumerate_basis(load_board(board_file));
            Scramble sc;
            if (start_basis) {
                sc = {QuditState::basis(space.dim(), *start_basis), 0, seed};
            } else {
                ScrambleSpec spec;
                spec.generators = root_set(space);
                spec.seed = seed;
                spec.len_min = len_min;
                spec.len_max = len_max;
                sc = scramble(spec, space);
            }
            SolverConfig cfg;
            cfg.classical = classical_strategy_from_string(strategy);
            const GateSet swaps = swap_set(space);
            const BenchmarkRecord r =
                solve_record(sc, ClassicalTable(swaps, 0), root_set(space), combined_set(space), cfg);
            if (!r.ok()) throw Error(r.error);
            nlohmann::ordered_json j;
            j["seed"] = sc.seed;
            j["scramble_len"] = sc.length;
            j["classical"] = plan_to_json(r.classical);
            j["quantum"] = plan_to_json(r.quantum);
            j["combined"] = plan_to_json(r.combined);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*bench) {
            const PuzzleSpace space = enumerate_basis(load_board(board_file));
            ScrambleSpec spec;
            spec.generators = root_set(space);
            spec.seed = seed;
            spec.len_min = len_min;
            spec.len_max = len_max;
            SolverConfig cfg;
            cfg.classical = classical_strategy_from_string(bench_strategy);
            cfg.workers = workers;
            const BenchmarkReport rep = run_benchmark(space, cfg, spec, trials);
            const auto summary = benchmark_summary(rep);
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                std::ofstream(fs::path(out_dir) / "benchmark.csv") << benchmark_csv(rep);
                std::ofstream(fs::path(out_dir) / "summary.json") << summary.dump(2) << "\n";
            }
            nlohmann::ordered_json brief = summary;
            brief.erase("cdf");
            std::cout << brief.dump(2) << "\n";
            return 0;
        }

        if (*adv) {
            std::vector<std::pair<std::string, BoardSpec>> fam;
            if (family == "square") {
                const char* names[] = {"2x2 d=4", "2x2 d=6", "2x2 d=12", "2x2 d=24"};
                auto boards = boards::square_family();
                for (std::size_t i = 0; i < boards.size(); ++i) fam.emplace_back(names[i], boards[i]);
            } else if (family == "line") {
                for (int n = 2; n <= 5; ++n) fam.emplace_back(std::to_string(n) + "x1", boards::line(n));
            } else {
                throw InvalidArgument("family must be square or line");
            }
            AdvantageConfig cfg;
            cfg.trials = adv_trials;
            cfg.seed = seed;
            cfg.solvers.classical = classical_strategy_from_string(bench_strategy);
            std::cout << advantage_to_json(advantage_study(fam, cfg)).dump(2) << "\n";
            return 0;
        }

        if (*uni) {
            GateSet gens;
            if (uni_cube) {
                const CubeFamily f = build_cube_family();
                gens = uni_moves == "swaps" ? f.permutations() : uni_moves == "all" ? f.all() : f.roots();
            } else {
                if (board_file.empty()) throw InvalidArgument("universality needs --board or --cube");
                const PuzzleSpace space = enumerate_basis(load_board(board_file));
                gens = moves_named(space, uni_moves);
                if (with_phase || phase_target)
                    gens.generators.push_back(build_phase_gate(space, phase_target.value_or(space.dim() - 1)));
            }
            InfiniteOptions opt;
            opt.max_elements = budget;
            std::cout << report_to_json(check_universal(gens, opt)).dump(2) << "\n";
            return 0;
        }

        if (*serve) {
            SessionManager mgr(!no_hints);
            httplib::Server server;
            install_routes(server, mgr, board_dir);
            std::cerr << "listening on http://" << host << ":" << port << "\n";
            if (!server.listen(host, port)) throw Error("could not bind " + host + ":" + std::to_string(port));
            return 0;
        }

        if (*cube) {
            const CubeFamily f = build_cube_family();
            const ClassicalTable table(f.permutations(), 0);
            if (gods) {
                std::cout << table.diameter() << "\n";
                return 0;
            }
            std::cout << "state  cubies  distance  word\n";
            for (std::size_t i = 0; i < f.space.dim(); ++i) {
                std::string w;
                for (const auto& m : table.word(i)) w += m + " ";
                std::cout << "|" << i << ">    " << f.space.render(i) << "     " << table.distance(i) << "         "
                          << (w.empty() ? "-" : w) << "\n";
            }
            std::cout << "God's number " << table.diameter() << "\n";
            return 0;
        }
    } catch (const InvalidArgument& e) {
        return fail(e, "invalid_argument");
    } catch (const BudgetExceeded& e) {
        return fail(e, "budget_exceeded");
    } catch (const Error& e) {
        return fail(e, "error");
    } catch (const std::exception& e) {
        return fail(e, "internal");
    }
    return 0;
}
