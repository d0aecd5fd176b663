#include "credo/service.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <limits>

#include <httplib.h>

#include "credo/error.hpp"

namespace credo {

namespace {

constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

HttpResponse error_response(int status, const std::string& code, const std::string& message)
{
    Json body;
    body["error"] = code;
    body["message"] = message;
    return {status, std::move(body)};
}

HttpResponse from_error(const Error& e)
{
    return error_response(e.code() == Errc::not_found ? 404 : 400, std::string(to_string(e.code())), e.what());
}

std::vector<std::string> split_path(const std::string& path)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const auto end = path.find('/', start);
        const auto part = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!part.empty()) parts.push_back(part);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return parts;
}

}  // namespace

int default_port()
{
    if (const char* env = std::getenv("CREDO_PORT")) {
        try {
            const int port = std::stoi(env);
            if (port > 0 && port < 65536) return port;
        } catch (const std::exception&) {
        }
    }
    return 8080;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {}

Service::~Service() = default;

std::shared_ptr<ApiSession> Service::find(const std::string& id)
{
    std::lock_guard lock(state_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse Service::handle(const std::string& method, const std::string& path, const std::string& body)
{
    Json parsed = Json::object();
    if (method == "POST" && !body.empty()) {
        try {
            parsed = Json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            return error_response(400, "parse_error", e.what());
        }
        if (!parsed.is_object()) return error_response(400, "parse_error", "body must be an object");
    }

    const auto parts = split_path(path);
    try {
        if (parts.size() == 1 && parts[0] == "sessions" && method == "POST") return create(parsed);
        if (parts.size() == 1 && parts[0] == "execute" && method == "POST") return execute_request(parsed);
        if (parts.size() == 1 && parts[0] == "scenarios" && method == "GET") {
            Json names = scenario_names();
            return {200, Json{{"scenarios", names}}};
        }
        if (parts.size() >= 2 && parts.size() <= 3 && parts[0] == "session") {
            auto s = find(parts[1]);
            if (!s) return error_response(404, "not_found", "unknown session '" + parts[1] + "'");
            std::lock_guard lock(s->mutex);
            const std::string action = parts.size() == 3 ? parts[2] : "";
            if (action.empty() && method == "GET") return snapshot(*s);
            if (action == "query" && method == "GET") return query(*s);
            if (action == "answer" && method == "POST") return answer(*s, parsed);
            if (action == "step" && method == "POST") return step(*s, parsed);
            if (action == "trace" && method == "GET") return trace(*s);
        }
    } catch (const Error& e) {
        return from_error(e);
    } catch (const nlohmann::json::exception& e) {
        return error_response(400, "parse_error", e.what());
    }
    return error_response(404, "not_found", "no route for " + method + " " + path);
}

HttpResponse Service::create(const Json& body)
{
    const auto mode = body.value("mode", std::string("simulated"));
    if (mode != "simulated" && mode != "interactive") {
        return error_response(400, "parse_error", "mode must be simulated or interactive");
    }
    auto s = std::make_shared<ApiSession>();
    {
        std::lock_guard lock(state_mutex_);
        if (body.contains("distributions")) {
            for (const auto& d : body.at("distributions")) {
                auto dist = distribution_from_json(d);
                auto& list = store_.catalog.distributions;
                auto it = std::find_if(list.begin(), list.end(), [&](const Distribution& x) { return x.id == dist.id; });
                if (it == list.end()) {
                    list.push_back(std::move(dist));
                } else if (!(*it == dist)) {
                    return error_response(400, "invalid_parameter", "distribution '" + dist.id + "' already differs");
                }
            }
        }
        Json request = body;
        request.erase("mode");
        request.erase("distributions");
        request.erase("id");
        request["source"] = mode == "interactive" ? "interactive" : "agent";
        ExecutionContext ctx;
        ctx.catalog = &store_.catalog;
        ctx.log = store_.log;
        auto plan = plan_elicit(request, ctx);

        s->id = body.contains("id") ? body.at("id").get<std::string>() : "s" + std::to_string(next_id_++);
        if (sessions_.count(s->id)) return error_response(400, "invalid_parameter", "session '" + s->id + "' exists");
        s->mode = mode;
        s->request = plan.request;
        s->elicitor = std::make_unique<Elicitor>(plan.initial, plan.proposer, plan.lambda, plan.reference,
                                                 plan.source, plan.params);
        s->slot = store_.traces.size();
        store_.traces.push_back(Json::object());
        sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mutex);
    // Interactive runs proceed on their own up to the first question.
    advance(*s, s->mode == "interactive" ? kUnlimited : 0);
    auto out = snapshot(*s);
    out.status = 201;
    return out;
}

void Service::advance(ApiSession& s, std::size_t limit)
{
    try {
        for (std::size_t n = 0; n < limit && !s.elicitor->done(); ++n) {
            s.elicitor->step();
        }
        if (s.elicitor->done() && !s.result) s.result = to_json(s.elicitor->result());
        s.pending.reset();
    } catch (const QueryPending& q) {
        // Keep the original id and timestamp when the same question comes back.
        if (!s.pending || s.pending->key() != q.query().key()) s.pending = q.query();
    } catch (const Error& e) {
        if (e.code() != Errc::judgment_unavailable) throw;
        s.elicitor->close();
        s.result = to_json(s.elicitor->result());
    }
    persist(s);
}

void Service::persist(ApiSession& s)
{
    std::lock_guard lock(state_mutex_);
    Json entry;
    entry["session_id"] = s.id;
    entry["status"] = s.result ? "closed" : "open";
    entry["steps"] = s.elicitor->trace().size();
    entry["request"] = s.request;
    if (s.result) entry["result"] = *s.result;
    store_.traces[s.slot] = std::move(entry);
    if (!config_.session_file.empty()) save_session(config_.session_file, store_);
}

HttpResponse Service::snapshot(ApiSession& s)
{
    const auto& e = *s.elicitor;
    std::size_t accepted = 0;
    for (const auto& t : e.trace()) accepted += t.accepted ? 1 : 0;
    Json body;
    body["id"] = s.id;
    body["mode"] = s.mode;
    body["status"] = s.pending ? "awaiting-answer" : (s.result ? "done" : "running");
    body["terminated_by"] = to_string(e.terminated_by());
    body["steps"] = e.trace().size();
    body["accepted"] = accepted;
    body["budget"] = e.proposer().budget;
    body["lambda"] = to_json(e.lambda());
    body["reference"] = e.reference().id();
    body["current"] = to_json(e.current());
    body["pending_query"] = s.pending ? to_json(*s.pending) : Json(nullptr);
    body["judgments"] = store_.log->size();
    body["request"] = s.request;
    return {200, std::move(body)};
}

HttpResponse Service::query(ApiSession& s)
{
    Json body;
    if (s.pending) {
        body["status"] = "pending";
        body["query"] = to_json(*s.pending);
    } else {
        body["status"] = "none";
        body["query"] = nullptr;
    }
    return {200, std::move(body)};
}

HttpResponse Service::answer(ApiSession& s, const Json& body)
{
    if (!body.contains("query_id") || !body.at("query_id").is_string() || !body.contains("answer") ||
        !body.at("answer").is_string()) {
        return error_response(400, "parse_error", "body needs string fields query_id and answer");
    }
    const auto answer = answer_from_string(body.at("answer").get<std::string>());
    if (!s.pending || s.pending->id != body.at("query_id").get<std::string>()) {
        auto out = error_response(409, "conflict", "query is not pending");
        out.body["pending_query"] = s.pending ? to_json(*s.pending) : Json(nullptr);
        return out;
    }
    auto q = *s.pending;
    q.answer = answer;
    q.answered_at = utc_timestamp();
    store_.log->record(q);
    s.pending.reset();
    // The answer reaches disk before any verdict that depends on it.
    persist(s);
    advance(s, kUnlimited);
    return snapshot(s);
}

HttpResponse Service::step(ApiSession& s, const Json& body)
{
    if (s.pending) {
        auto out = error_response(409, "conflict", "a judgment query is pending");
        out.body["pending_query"] = to_json(*s.pending);
        return out;
    }
    const std::size_t count = body.value("count", std::size_t{1});
    const auto before = s.elicitor->trace().size();
    advance(s, s.mode == "interactive" ? kUnlimited : count);
    auto out = snapshot(s);
    out.body["stepped"] = s.elicitor->trace().size() - before;
    return out;
}

HttpResponse Service::trace(ApiSession& s)
{
    Json body;
    body["id"] = s.id;
    body["terminated_by"] = to_string(s.elicitor->terminated_by());
    Json entries = Json::array();
    for (const auto& t : s.elicitor->trace()) entries.push_back(to_json(t));
    body["trace"] = std::move(entries);
    body["result"] = s.result ? *s.result : Json(nullptr);
    return {200, std::move(body)};
}

HttpResponse Service::execute_request(const Json& body)
{
    std::lock_guard lock(state_mutex_);
    ExecutionContext ctx;
    ctx.catalog = &store_.catalog;
    ctx.log = store_.log;
    Execution ex;
    try {
        ex = execute(body, ctx);
    } catch (const QueryPending&) {
        return error_response(409, "conflict", "interactive requests need a session");
    }
    Json entry;
    entry["request"] = ex.request;
    entry["result"] = ex.result;
    (ex.request.at("op") == "elicit" ? store_.traces : store_.verdicts).push_back(entry);
    if (!config_.session_file.empty()) save_session(config_.session_file, store_);
    Json out;
    out["request"] = ex.request;
    out["result"] = ex.result;
    out["passed"] = ex.passed;
    return {200, std::move(out)};
}

void Service::restore()
{
    if (config_.session_file.empty() || !std::filesystem::exists(config_.session_file)) return;
    std::vector<Json> open;
    {
        std::lock_guard lock(state_mutex_);
        store_ = load_session(config_.session_file);
        for (std::size_t i = 0; i < store_.traces.size(); ++i) {
            const auto& t = store_.traces[i];
            const auto id = t.value("session_id", std::string());
            if (id.size() > 1 && id[0] == 's') {
                try {
                    next_id_ = std::max(next_id_, std::stoul(id.substr(1)) + 1);
                } catch (const std::exception&) {
                }
            }
            if (t.value("status", std::string()) == "open") {
                Json r = t;
                r["slot"] = i;
                open.push_back(std::move(r));
            }
        }
    }
    for (const auto& t : open) {
        auto s = std::make_shared<ApiSession>();
        {
            std::lock_guard lock(state_mutex_);
            ExecutionContext ctx;
            ctx.catalog = &store_.catalog;
            ctx.log = store_.log;
            auto plan = plan_elicit(t.at("request"), ctx);
            s->id = t.at("session_id").get<std::string>();
            s->mode = plan.request.at("source") == "interactive" ? "interactive" : "simulated";
            s->request = plan.request;
            s->elicitor = std::make_unique<Elicitor>(plan.initial, plan.proposer, plan.lambda, plan.reference,
                                                     plan.source, plan.params);
            s->slot = t.at("slot").get<std::size_t>();
            sessions_[s->id] = s;
        }
        std::lock_guard lock(s->mutex);
        // Recorded answers replay from the log; the run stops again at the
        // first unanswered question.
        const auto steps = t.value("steps", std::size_t{0});
        advance(*s, s->mode == "interactive" ? kUnlimited : steps);
    }
}

int Service::bind(int port)
{
    if (!server_) server_ = std::make_unique<httplib::Server>();
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        const auto out = handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json; charset=utf-8");
    };
    server_->Get(".*", route);
    server_->Post(".*", route);
    if (port == 0) return server_->bind_to_any_port(config_.host);
    return server_->bind_to_port(config_.host, port) ? port : -1;
}

bool Service::listen_after_bind() { return server_ && server_->listen_after_bind(); }

bool Service::listen()
{
    const int port = bind(config_.port);
    if (port < 0) return false;
    return listen_after_bind();
}

void Service::stop()
{
    if (server_) server_->stop();
}

}  // namespace credo
