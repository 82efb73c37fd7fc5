// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
// nonzero if any criterion fails.
#include "qpuzzle/qpuzzle.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qpuzzle;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = QPUZZLE_SOURCE_DIR;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failed;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failed.push_back(what);
        }
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Matrix fixture(const std::string& name) {
    return operator_from_json(nlohmann::json::parse(read_file(kSource / "fixtures" / name))).matrix();
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string fmt(double x, int prec = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, x);
    return buf;
}

// Classical strategy used by the benchmark and the advantage study.
constexpr ClassicalStrategy kStrategy = ClassicalStrategy::largest_amplitude;

void fixtures(Outcome& o) {
    const PuzzleSpace f = enumerate_basis(boards::square_fermion());
    const PuzzleSpace b = enumerate_basis(boards::square_boson());
    for (const std::string k : {"U", "D", "L", "R"}) {
        o.require(max_abs(build_swap(f, k).matrix() - fixture("2x2_fermion_S_" + k + ".json")) == 0.0,
                  "fermionic S_" + k);
        o.require(max_abs(build_swap(b, k).matrix() - fixture("2x2_boson_S_" + k + ".json")) == 0.0,
                  "bosonic S_" + k);
        o.require((fixture("2x2_boson_S_" + k + ".json") - fixture("2x2_fermion_S_" + k + ".json").cwiseAbs()).norm() ==
                      0.0,
                  "bosonic S_" + k + " is the unsigned permutation");
    }
    const CubeFamily c = build_cube_family();
    o.require(max_abs(c.p_u.matrix() - fixture("cube_P_U.json")) == 0.0, "cube P_U");
    o.require(max_abs(c.p_r.matrix() - fixture("cube_P_R.json")) == 0.0, "cube P_R");
    o.detail << "8 square swaps and 2 cube permutations equal the reference matrices exactly";
}

void oracle_consistency(Outcome& o) {
    std::vector<std::pair<std::string, BoardSpec>> bs;
    for (const char* name : {"2x2_gg_bb_fermion.json", "2x2_gg_bb_boson.json", "2x2_mixed_gf_bb.json",
                             "2x2_mixed_gb_bf.json", "2x2_mixed_gb_bf_diag.json", "2x2_fermion_vacuum.json"})
        bs.emplace_back(name, load_board(kSource / "boards" / name));
    std::size_t entries = 0;
    double gram = 0;
    for (const auto& [name, b] : bs) {
        const PuzzleSpace s = enumerate_basis(b);
        std::vector<oracle::Expansion> ex;
        for (std::size_t i = 0; i < s.dim(); ++i) ex.push_back(oracle::expand(s.state(i), b));
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j)
                gram = std::max(gram, std::abs(oracle::overlap(ex[i], ex[j]) - Complex(i == j ? 1.0 : 0.0)));
        for (std::size_t e = 0; e < b.edges.size(); ++e) {
            const Matrix m = build_swap(s, e).matrix();
            Matrix ref = Matrix::Zero(m.rows(), m.cols());
            for (std::size_t i = 0; i < s.dim(); ++i) {
                const auto r = oracle::oracle_swap_sign(s.state(i), {b.edges[e].a, b.edges[e].b}, b);
                ref(static_cast<Eigen::Index>(s.require_index(r.state.word)), static_cast<Eigen::Index>(i)) = r.phase;
            }
            o.require(max_abs(m - ref) == 0.0, name + " " + b.edges[e].label);
            entries += static_cast<std::size_t>(m.size());
        }
    }
    o.require(gram <= 1e-12, "Gram identity");
    o.detail << bs.size() << " boards, " << entries << " swap entries exact, Gram error " << gram;
}

void root_algebra(Outcome& o) {
    const PuzzleSpace s = enumerate_basis(boards::square_fermion());
    const Matrix id = Matrix::Identity(6, 6);
    double worst = 0;
    for (const std::string k : {"U", "D", "L", "R"}) {
        const Matrix h = build_root_swap(s, k).matrix();
        const Matrix h2 = h * h, h4 = h2 * h2;
        worst = std::max({worst, max_abs(h2 - kI * build_swap(s, k).matrix()), max_abs(h4 + id),
                          max_abs(h4 * h4 - id)});
    }
    o.require(worst <= 1e-12, "powers of the roots");
    const Vector v = build_root_swap(s, "U").matrix() * (build_root_swap(s, "R").matrix() * Vector::Unit(6, 0));
    std::vector<Complex> want{std::polar(1 / std::sqrt(2.0), -kPi / 4), Complex(0, 0.5), Complex(-0.5, 0)};
    std::vector<Complex> got;
    for (Eigen::Index i = 0; i < 6; ++i)
        if (std::abs(v[i]) > 1e-12) got.push_back(v[i]);
    double amp = got.size() == want.size() ? 0.0 : 1.0;
    for (const Complex& w : want) {
        double best = 1;
        for (const Complex& g : got) best = std::min(best, std::abs(g - w));
        amp = std::max(amp, best);
    }
    o.require(amp <= 1e-12, "H_U H_R|0> amplitudes");
    o.detail << "max power error " << worst << ", amplitude error " << amp;
}

void referee(Outcome& o) {
    const PuzzleSpace s = enumerate_basis(boards::square_fermion());
    Vector v = Vector::Zero(6);
    v[4] = std::sqrt(0.75);
    v[2] = std::sqrt(0.25);
    const QuditState scr(v);
    const QuditState target = scr.evolved(build_swap(s, "R"));
    const int trials = 100000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        GameSession g(s, RefereeConfig{0, target, Rng::derive_seed(20240, static_cast<std::uint64_t>(t))});
        if (g.measure() == 0) ++hits;
    }
    const double freq = hits / double(trials);
    o.require(freq >= 0.745 && freq <= 0.755, "success frequency");
    // Failed measurements put the session back on the scramble.
    int failures = 0, restored = 0;
    for (int t = 0; t < 2000; ++t) {
        GameSession g(s, RefereeConfig{0, scr, Rng::derive_seed(777, static_cast<std::uint64_t>(t))});
        while (g.status() == Status::solving) {
            g.apply_move(build_swap(s, "R"));
            if (g.measure() != 0) {
                ++failures;
                if (g.current().equal_up_to_phase(scr)) ++restored;
            }
        }
    }
    o.require(failures > 0 && restored == failures, "reset after failure");
    o.detail << "frequency " << fmt(freq, 4) << " over " << trials << ", " << restored << "/" << failures
             << " failures restored";
}

void benchmark(Outcome& o) {
    const PuzzleSpace s = enumerate_basis(boards::square_fermion());
    ScrambleSpec spec;
    spec.generators = root_set(s);
    spec.seed = 2024;
    SolverConfig cfg;
    cfg.classical = kStrategy;
    const BenchmarkReport rep = run_benchmark(s, cfg, spec, 2000);
    const double c = rep.mean_classical(), q = rep.mean_quantum(), b = rep.mean_combined();
    o.require(rep.ok_count() == 2000, "all scrambles solved");
    o.require(std::abs(c - 5.88) <= 0.4, "classical mean");
    o.require(std::abs(q - 5.32) <= 0.4, "quantum mean");
    o.require(std::abs(b - 4.77) <= 0.4, "combined mean");
    o.require(rep.dominance_violations() == 0, "dominance");
    o.require(c > q && q > b, "ordering");
    o.detail << "means classical " << fmt(c) << " quantum " << fmt(q) << " combined " << fmt(b)
             << ", violations " << rep.dominance_violations() << " (exhaustive classical mean "
             << fmt(rep.mean_classical_optimal()) << ")";
}

void advantage(Outcome& o) {
    AdvantageConfig cfg;
    cfg.seed = 7;
    cfg.solvers.classical = kStrategy;
    std::vector<std::pair<std::string, BoardSpec>> lines;
    for (int n = 2; n <= 5; ++n) lines.emplace_back(std::to_string(n) + "x1", boards::line(n));
    cfg.trials = 1350;
    const auto lr = advantage_study(lines, cfg);
    std::ostringstream info;
    for (const auto& r : lr) {
        o.require(r.failures == 0, r.name + " solved");
        o.require(r.combined <= r.classical * (1 + 1e-12), r.name + " combined not worse than classical");
        o.require(r.quantum >= r.classical * (1 - 1e-12), r.name + " quantum not better than classical");
        if (r.name == "2x1") o.require(std::abs(r.combined - r.classical) <= 1e-12, "2x1 combined equals classical");
        o.detail << r.name << " q " << fmt(r.quantum_pct(), 1) << "% c " << fmt(r.combined_pct(), 1) << "%, ";
        info << r.name << " q " << fmt(r.quantum_pct_vs_optimal(), 1) << "% c " << fmt(r.combined_pct_vs_optimal(), 1)
             << "%, ";
    }
    const char* names[] = {"d=4", "d=6", "d=12", "d=24"};
    std::vector<std::pair<std::string, BoardSpec>> squares;
    const auto fam = boards::square_family();
    for (std::size_t i = 0; i < fam.size(); ++i) squares.emplace_back(names[i], fam[i]);
    cfg.trials = 500;
    const auto sr = advantage_study(squares, cfg);
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& r : sr) {
        const double adv = -r.combined_pct();
        o.require(r.failures == 0, r.name + " solved");
        o.require(adv > prev, r.name + " combined advantage increases");
        prev = adv;
        o.detail << r.name << " c " << fmt(r.combined_pct(), 1) << "%, ";
        info << r.name << " c " << fmt(r.combined_pct_vs_optimal(), 1) << "%, ";
    }
    const double d24 = -sr.back().combined_pct();
    o.require(d24 >= 25.0 && d24 <= 55.0, "d=24 combined advantage in [25%, 55%]");
    std::string rest = info.str();
    rest.resize(rest.size() - 2);
    o.detail << "against exhaustive classical: " << rest;
}

void universality(Outcome& o) {
    const PuzzleSpace s = enumerate_basis(boards::square_fermion());
    const UniversalityReport a = check_universal(root_set(s));
    o.require(a.infinite.infinite == Verdict::yes && a.commutant_dim == 3 && !a.universal, "2x2 square roots");
    GateSet p = root_set(s);
    p.generators.push_back(build_phase_gate(s, 5));
    o.require(check_universal(p).universal, "2x2 with P6");
    for (int n = 2; n <= 9; ++n) {
        const PuzzleSpace ls = enumerate_basis(boards::line(n));
        GateSet g = root_set(ls);
        g.generators.push_back(build_phase_gate(ls, static_cast<std::size_t>(n - 1)));
        const UniversalityReport r = check_universal(g);
        o.require(r.universal == (n >= 3) && !r.inconclusive, std::to_string(n) + "x1 with P" + std::to_string(n));
    }
    const std::size_t c33 = color_permutation_commutants(boards::grid_2x3({3, 3})).size();
    const std::size_t c222 = color_permutation_commutants(boards::grid_2x3({2, 2, 2})).size();
    o.require(c33 == 1, "2x3 3+3 color permutations");
    o.require(c222 == 5, "2x3 2+2+2 color permutations");
    o.detail << "2x2 commutant " << a.commutant_dim << ", witness " << a.infinite.witness->word1 << " / "
             << a.infinite.witness->word2 << "; lines 3..9 universal, 2 finite; 2x3 commuting relabelings " << c33
             << " and " << c222;
}

void cube(Outcome& o) {
    const CubeFamily f = build_cube_family();
    const ClassicalTable t(f.permutations(), 0);
    std::size_t reached = 0;
    for (int x : t.distances()) reached += x >= 0;
    o.require(reached == 6, "6 states reached");
    o.require(t.diameter() == 3, "God's number 3");
    const Vector q = f.q_u.matrix() * Vector::Unit(6, 0);
    Vector want = Vector::Zero(6);
    want[0] = 1 / std::sqrt(2.0);
    want[1] = kI / std::sqrt(2.0);
    const double err = (q - want).cwiseAbs().maxCoeff();
    o.require(err <= 1e-12, "Q_U|0>");
    o.detail << reached << " states, eccentricity " << t.diameter() << ", Q_U|0> error " << err;
}

void bosonic_invariant(Outcome& o) {
    const PuzzleSpace s = enumerate_basis(boards::square_boson());
    const GateSet roots = root_set(s);
    const Vector u = Vector::Ones(6) / std::sqrt(6.0);
    double err = 0;
    for (const auto& g : roots.generators) err = std::max(err, max_abs(g.matrix() * u - std::polar(1.0, kPi / 4) * u));
    o.require(err <= 1e-12, "eigenvector");
    const double res = commutant_residual(adjoint_commutant(roots), u * u.adjoint());
    o.require(res <= 1e-8, "projector in commutant");
    o.detail << "eigenvector error " << err << ", commutant residual " << res;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"matrix fixtures", fixtures},
        {"oracle consistency", oracle_consistency},
        {"root swap algebra", root_algebra},
        {"referee statistics", referee},
        {"solver benchmark", benchmark},
        {"advantage study", advantage},
        {"universality verdicts", universality},
        {"cube", cube},
        {"bosonic invariant", bosonic_invariant},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str();
        for (std::size_t i = 0; i < o.failed.size(); ++i) std::cout << (i ? "; " : " | failed: ") << o.failed[i];
        std::cout << " (" << fmt(secs, 2) << " s)" << std::endl;
        failed += !o.pass;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed ? 1 : 0;
}
