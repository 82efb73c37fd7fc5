// Game sessions behind a local HTTP + JSON service.
#pragma once

#include "qpuzzle/board.hpp"
#include "qpuzzle/operators.hpp"
#include "qpuzzle/puzzle_space.hpp"
#include "qpuzzle/simulator.hpp"
#include "qpuzzle/solvers.hpp"

#include "httplib.h"
#include "json.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace qpuzzle {

class NotFound : public Error {
public:
    using Error::Error;
};

/// Hints were requested while the service runs without them.
class Forbidden : public Error {
public:
    using Error::Error;
};

struct CreateRequest {
    BoardSpec board;
    std::optional<std::size_t> start_basis;  // skip scrambling, start here
    std::string scramble_moves = "roots";    // roots | swaps | all
    std::int64_t len_min = 200;
    std::int64_t len_max = 500;
    std::uint64_t seed = 0;                  // scramble and referee seed
};

inline nlohmann::ordered_json view_json(const std::string& id, const GameSession& s, const GateSet& moves) {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["status"] = to_string(s.status());
    j["moves_taken"] = s.moves_taken();
    j["moves_since_reset"] = s.moves_since_reset();
    j["last_outcome"] = s.last_outcome() ? nlohmann::ordered_json(*s.last_outcome()) : nlohmann::ordered_json();
    j["success_probability"] = s.success_probability();
    j["seed"] = s.referee().rng_seed;
    auto basis = nlohmann::ordered_json::array();
    const auto& space = s.space();
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const Complex a = s.current()[i];
        basis.push_back({{"index", i},
                         {"word", space.state(i).word},
                         {"render", space.render(i)},
                         {"re", a.real()},
                         {"im", a.imag()},
                         {"probability", std::norm(a)}});
    }
    j["basis"] = basis;
    auto mv = nlohmann::ordered_json::array();
    for (const auto& g : moves.generators) mv.push_back({{"label", g.label()}, {"cost", g.move_cost()}});
    j["moves"] = mv;
    return j;
}

class SessionManager {
public:
    explicit SessionManager(bool hints_enabled = true) : hints_(hints_enabled) {}

    bool hints_enabled() const { return hints_; }

    std::string create(const CreateRequest& req) {
        auto [session, moves] = build(req);
        auto entry = std::make_shared<Entry>(std::move(session), std::move(moves));
        std::unique_lock lock(map_mutex_);
        const std::string id = "s" + std::to_string(++counter_);
        sessions_.emplace(id, std::move(entry));
        return id;
    }

    nlohmann::ordered_json move(const std::string& id, const std::string& label) {
        auto e = find(id);
        std::unique_lock lock(e->mutex);
        const MoveOperator* op = e->moves.find(label);
        if (!op) throw InvalidArgument("unknown move '" + label + "'");
        e->session->apply_move(*op);
        return touched(*e, id);
    }

    nlohmann::ordered_json measure(const std::string& id) {
        auto e = find(id);
        std::unique_lock lock(e->mutex);
        const std::size_t outcome = e->session->measure();
        auto j = touched(*e, id);
        j["outcome"] = outcome;
        return j;
    }

    /// Restarts the game from the same scramble and seed.
    nlohmann::ordered_json reset(const std::string& id) {
        auto e = find(id);
        std::unique_lock lock(e->mutex);
        e->session = std::make_unique<GameSession>(e->session->space(), e->session->referee());
        return touched(*e, id);
    }

    nlohmann::ordered_json view(const std::string& id) const {
        auto e = find(id);
        std::shared_lock lock(e->mutex);
        return view_json(id, *e->session, e->moves);
    }

    nlohmann::ordered_json hint(const std::string& id, const std::string& solver) const {
        if (!hints_) throw Forbidden("hints are disabled on this server");
        auto e = find(id);
        std::shared_lock lock(e->mutex);
        const QuditState& s = e->session->current();
        const std::size_t solved = e->session->referee().solved_index;
        const GateSet swaps = swap_set(e->session->space());
        const GateSet roots = root_set(e->session->space());
        SearchOptions opt;
        opt.solved_index = solved;
        SolverPlan plan;
        if (solver == "classical") {
            plan = solve_classical(s, ClassicalTable(swaps, solved), ClassicalStrategy::optimal);
        } else if (solver == "quantum") {
            plan = solve_quantum(s, roots, opt);
        } else if (solver == "combined") {
            plan = solve_combined(s, swaps + roots,
                                  {solve_classical(s, ClassicalTable(swaps, solved), ClassicalStrategy::optimal)}, opt);
        } else {
            throw InvalidArgument("solver must be classical, quantum or combined");
        }
        auto j = plan_to_json(plan);
        j["solver"] = solver;
        return j;
    }

    std::string log(const std::string& id) const {
        auto e = find(id);
        std::shared_lock lock(e->mutex);
        return e->session->log_jsonl();
    }

    /// Blocks until the session changes past `version` or the timeout
    /// passes; returns the current version.
    std::uint64_t wait_for_change(const std::string& id, std::uint64_t version, std::chrono::milliseconds timeout) {
        auto e = find(id);
        std::unique_lock lock(e->notify_mutex);
        e->changed.wait_for(lock, timeout, [&] { return e->version.load() != version; });
        return e->version.load();
    }

    std::uint64_t version(const std::string& id) const { return find(id)->version.load(); }

    /// Replays a session's own log into a fresh engine session.
    GameSession replay(const std::string& id) const {
        auto e = find(id);
        std::shared_lock lock(e->mutex);
        return replay_session(e->session->space(), e->session->referee(), e->moves, e->session->log_jsonl());
    }

private:
    struct Entry {
        std::unique_ptr<GameSession> session;
        GateSet moves;
        mutable std::shared_mutex mutex;  // one writer, many readers
        std::mutex notify_mutex;
        std::condition_variable changed;
        std::atomic<std::uint64_t> version{0};

        Entry(std::unique_ptr<GameSession> s, GateSet m) : session(std::move(s)), moves(std::move(m)) {}
    };

    static std::pair<std::unique_ptr<GameSession>, GateSet> build(const CreateRequest& req) {
        PuzzleSpace space = enumerate_basis(req.board);
        GateSet moves = combined_set(space);
        QuditState start;
        if (req.start_basis) {
            start = QuditState::basis(space.dim(), *req.start_basis);
        } else {
            ScrambleSpec spec;
            spec.len_min = req.len_min;
            spec.len_max = req.len_max;
            spec.seed = req.seed;
            if (req.scramble_moves == "roots")
                spec.generators = root_set(space);
            else if (req.scramble_moves == "swaps")
                spec.generators = swap_set(space);
            else if (req.scramble_moves == "all")
                spec.generators = moves;
            else
                throw InvalidArgument("scramble moves must be roots, swaps or all");
            start = scramble(spec, space).state;
        }
        RefereeConfig ref{0, start, req.seed};
        return {std::make_unique<GameSession>(std::move(space), std::move(ref)), std::move(moves)};
    }

    std::shared_ptr<Entry> find(const std::string& id) const {
        std::shared_lock lock(map_mutex_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
        return it->second;
    }

    nlohmann::ordered_json touched(Entry& e, const std::string& id) {
        auto j = view_json(id, *e.session, e.moves);
        {
            std::lock_guard lk(e.notify_mutex);
            ++e.version;
        }
        e.changed.notify_all();
        return j;
    }

    bool hints_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t counter_ = 0;
};

/// Parses a POST /session body. "board" is either an inline board spec or
/// the file name of a board in board_dir.
inline CreateRequest parse_create_request(const std::string& body, const std::filesystem::path& board_dir) {
    nlohmann::json j;
    try {
        j = body.empty() ? nlohmann::json::object() : nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("request body is not JSON: ") + ex.what());
    }
    CreateRequest req;
    if (!j.contains("board")) throw InvalidArgument("request needs a board");
    const auto& b = j.at("board");
    if (b.is_string()) {
        const std::string name = b.get<std::string>();
        if (name.empty() || name.find('/') != std::string::npos || name.find("..") != std::string::npos)
            throw InvalidArgument("board name must be a plain file name");
        req.board = load_board(board_dir / name);
    } else {
        req.board = board_from_json(b);
    }
    try {
        if (j.contains("start_basis")) req.start_basis = j.at("start_basis").get<std::size_t>();
        req.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("scramble")) {
            const auto& s = j.at("scramble");
            req.scramble_moves = s.value("moves", req.scramble_moves);
            if (s.contains("length")) req.len_min = req.len_max = s.at("length").get<std::int64_t>();
            req.len_min = s.value("len_min", req.len_min);
            req.len_max = s.value("len_max", req.len_max);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed session request: ") + ex.what());
    }
    return req;
}

/// Binds the session endpoints onto an httplib server. An event stream ends
/// after sse_idle without changes; clients reconnect.
inline void install_routes(httplib::Server& server, SessionManager& mgr, std::filesystem::path board_dir,
                           std::chrono::milliseconds sse_idle = std::chrono::seconds(60)) {
    auto respond = [](httplib::Response& res, const std::function<std::string()>& fn,
                      const char* type = "application/json") {
        try {
            res.set_content(fn(), type);
        } catch (const NotFound& e) {
            res.status = 404;
            res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
        } catch (const InvalidState& e) {
            res.status = 409;
            res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
        } catch (const Forbidden& e) {
            res.status = 403;
            res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
        } catch (const InvalidArgument& e) {
            res.status = 422;
            res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
        }
    };

    server.Post("/session", [&mgr, board_dir, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] {
            const std::string id = mgr.create(parse_create_request(req.body, board_dir));
            return mgr.view(id).dump();
        });
    });
    server.Post(R"(/session/([^/]+)/move)", [&mgr, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] {
            std::string label;
            try {
                label = nlohmann::json::parse(req.body).at("label").get<std::string>();
            } catch (const nlohmann::json::exception&) {
                throw InvalidArgument("move body must be {\"label\": ...}");
            }
            return mgr.move(req.matches[1], label).dump();
        });
    });
    server.Post(R"(/session/([^/]+)/measure)", [&mgr, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] { return mgr.measure(req.matches[1]).dump(); });
    });
    server.Post(R"(/session/([^/]+)/reset)", [&mgr, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] { return mgr.reset(req.matches[1]).dump(); });
    });
    server.Get(R"(/session/([^/]+))", [&mgr, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] { return mgr.view(req.matches[1]).dump(); });
    });
    server.Get(R"(/session/([^/]+)/hint)", [&mgr, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] {
            const std::string solver = req.has_param("solver") ? req.get_param_value("solver") : "combined";
            return mgr.hint(req.matches[1], solver).dump();
        });
    });
    server.Get(R"(/session/([^/]+)/log)", [&mgr, respond](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] { return mgr.log(req.matches[1]); }, "application/x-ndjson");
    });
    // Server-sent events: one "data:" frame with the view per change.
    server.Get(R"(/session/([^/]+)/events)", [&mgr, respond, sse_idle](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        try {
            (void)mgr.version(id);
        } catch (const NotFound&) {
            respond(res, [&]() -> std::string { throw NotFound("unknown session '" + id + "'"); });
            return;
        }
        auto last = std::make_shared<std::uint64_t>(std::numeric_limits<std::uint64_t>::max());
        res.set_chunked_content_provider("text/event-stream", [&mgr, id, last, sse_idle](std::size_t, httplib::DataSink& sink) {
            try {
                if (*last != std::numeric_limits<std::uint64_t>::max()) {
                    const auto v = mgr.wait_for_change(id, *last, sse_idle);
                    if (v == *last) {
                        sink.done();
                        return true;
                    }
                }
                *last = mgr.version(id);
                const std::string frame = "data: " + mgr.view(id).dump() + "\n\n";
                return sink.write(frame.data(), frame.size());
            } catch (const std::exception&) {
                sink.done();
                return true;
            }
        });
    });
}

}  // namespace qpuzzle
