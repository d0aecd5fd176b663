#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "credo/executor.hpp"

namespace httplib {
class Server;
}

namespace credo {

/// One elicitation run driven over HTTP. Every state transition happens
/// under `mutex`, so concurrent requests for one session are serialized.
struct ApiSession {
    std::string id;
    std::string mode;  // "simulated" or "interactive"
    Json request;      // normalized elicit request
    std::unique_ptr<Elicitor> elicitor;
    std::optional<JudgmentQuery> pending;
    std::optional<Json> result;  // set once the run is over and its frontier is known
    std::size_t slot = 0;        // index into the session file's traces
    std::mutex mutex;
};

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string session_file;  // optional; judgment log and traces are persisted here
};

/// Port from CREDO_PORT, else 8080.
int default_port();

struct HttpResponse {
    int status = 200;
    Json body;
};

/// Routing and session state, independent of the socket layer so that it
/// can be exercised directly.
class Service {
public:
    explicit Service(ServiceConfig config = {});
    ~Service();

    HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

    /// Loads the session file, if any, and recreates open runs up to their
    /// pending query.
    void restore();

    /// Blocks serving on config.host:config.port until stop().
    bool listen();
    void stop();
    /// Binds and returns the port actually chosen (0 picks a free one).
    int bind(int port);
    bool listen_after_bind();

private:
    HttpResponse create(const Json& body);
    HttpResponse snapshot(ApiSession& s);
    HttpResponse query(ApiSession& s);
    HttpResponse answer(ApiSession& s, const Json& body);
    HttpResponse step(ApiSession& s, const Json& body);
    HttpResponse trace(ApiSession& s);
    HttpResponse execute_request(const Json& body);

    /// Advances until a query is pending, the run ends or `limit` steps were
    /// taken; records the outcome in the session file.
    void advance(ApiSession& s, std::size_t limit);
    void persist(ApiSession& s);
    std::shared_ptr<ApiSession> find(const std::string& id);

    ServiceConfig config_;
    std::mutex state_mutex_;  // catalog, log file and the session table
    Session store_;
    std::map<std::string, std::shared_ptr<ApiSession>> sessions_;
    std::size_t next_id_ = 1;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace credo
