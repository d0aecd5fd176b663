// credo: command-line front end for the strength engine.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credo/error.hpp"
#include "credo/executor.hpp"
#include "credo/service.hpp"

namespace {

using credo::Json;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string lambda;
    std::string reference;
    std::string scenario;
    std::string session;
    std::string record;
    std::string agent;
    bool json = false;
    double w1 = -1;
    double w2 = -1;
    std::string transform;
};

int exit_code_for(const credo::Error& e)
{
    using credo::Errc;
    switch (e.code()) {
    case Errc::precondition_violated:
    case Errc::no_solution:
    case Errc::judgment_unavailable:
    case Errc::enumeration_cap_exceeded: return 1;
    default: return 2;
    }
}

std::optional<credo::Answer> ask_terminal(const credo::JudgmentQuery& q)
{
    std::cout << "\n[" << q.id << "] " << q.prompt() << "\n"
              << "  answer 1, 2, = (about the same) or q to stop: " << std::flush;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line == "1") return credo::Answer::first_greater;
        if (line == "2") return credo::Answer::second_greater;
        if (line == "=" || line == "0") return credo::Answer::equal;
        if (line == "q") return std::nullopt;
        std::cout << "  please type 1, 2, = or q: " << std::flush;
    }
    return std::nullopt;
}

class Runner {
public:
    explicit Runner(const Globals& g) : g_(g) {}

    // Adds the global flags that apply to every request.
    Json base(const std::string& op) const
    {
        Json r;
        r["op"] = op;
        if (!g_.scenario.empty()) r["scenario"] = g_.scenario;
        if (!g_.agent.empty()) r["agent"] = g_.agent;
        if (!g_.reference.empty()) r["reference"] = g_.reference;
        if (!g_.lambda.empty()) r["lambda"] = g_.lambda;
        if (g_.seed) r["seed"] = *g_.seed;
        if (g_.w1 >= 0 || g_.w2 >= 0 || !g_.transform.empty()) {
            Json c;
            if (g_.w1 >= 0) c["w1"] = g_.w1;
            if (g_.w2 >= 0) c["w2"] = g_.w2;
            if (!g_.transform.empty()) c["transform"] = g_.transform;
            r["calibration"] = c;
        }
        return r;
    }

    int run(const Json& request, const std::function<std::string(const credo::Execution&)>& render = {})
    {
        credo::Session session = open_session();
        credo::ExecutionContext ctx;
        ctx.catalog = &session.catalog;
        ctx.log = session.log;
        ctx.responder = ask_terminal;
        auto ex = credo::execute(request, ctx);
        if (!g_.record.empty()) {
            Json entry;
            entry["request"] = ex.request;
            entry["result"] = ex.result;
            (ex.request.at("op") == "elicit" ? session.traces : session.verdicts).push_back(std::move(entry));
            credo::save_session(g_.record, session);
        }
        if (g_.json) {
            std::cout << ex.result.dump(2) << "\n";
        } else if (render) {
            std::cout << render(ex);
        } else if (!ex.text.empty()) {
            std::cout << ex.text;
        } else {
            std::cout << ex.result.dump(2) << "\n";
        }
        return ex.passed ? 0 : 1;
    }

    credo::Session open_session() const
    {
        const auto& path = !g_.session.empty() ? g_.session : g_.record;
        if (!path.empty() && std::filesystem::exists(path)) return credo::load_session(path);
        return {};
    }

private:
    const Globals& g_;
};

std::string render_elicit(const credo::Execution& ex)
{
    std::string out = ex.text;
    out += "current: " + ex.result.at("current").dump() + "\n";
    out += "frontier:";
    for (const auto& d : ex.result.at("frontier")) out += " " + d.at("id").get<std::string>();
    return out + "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Strength-based subjective probability engine"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Proposer seed");
    app.add_option("--lambda", g.lambda, "Resolution, e.g. 1/2");
    app.add_option("--reference", g.reference, "Reference set id or spec (urn:K, unknown-urn:K, wheel)");
    app.add_option("--scenario", g.scenario, "Scenario bundle that ids are resolved against");
    app.add_option("--session", g.session, "Session file that ids and judgments are resolved against");
    app.add_option("--record", g.record, "Append the request and its result to this session file");
    app.add_option("--agent", g.agent, "Simulated agent id");
    app.add_option("--w1", g.w1, "Probability discrepancy weight");
    app.add_option("--w2", g.w2, "Ambiguity penalty weight");
    app.add_option("--transform", g.transform, "Score transform: identity, square, sqrt, exp");
    app.add_flag("--json", g.json, "Print the full result as JSON");

    Runner runner(g);
    std::function<int()> action;

    auto* scenario = app.add_subcommand("scenario", "Scenario bundles");
    scenario->require_subcommand(1);
    std::string scenario_name;
    auto* scenario_run = scenario->add_subcommand("run", "Run a bundle and check its expectations");
    scenario_run->add_option("name", scenario_name)->required();
    scenario_run->callback([&] {
        action = [&] {
            auto r = runner.base("scenario");
            Json req;
            req["op"] = "scenario";
            req["name"] = scenario_name;
            if (r.contains("calibration")) req["calibration"] = r["calibration"];
            return runner.run(req);
        };
    });
    auto* scenario_list = scenario->add_subcommand("list", "List built-in bundles");
    scenario_list->callback([&] {
        action = [] {
            for (const auto& n : credo::scenario_names()) std::cout << n << "\n";
            return 0;
        };
    });
    auto* scenario_export = scenario->add_subcommand("export", "Print a bundle in session-file form");
    std::string export_name;
    scenario_export->add_option("name", export_name)->required();
    scenario_export->callback([&] {
        action = [&] {
            credo::Session s;
            s.catalog.add_bundle(credo::build_scenario(export_name));
            std::cout << credo::session_to_json(s).dump(2) << "\n";
            return 0;
        };
    });

    std::string mode;
    std::vector<std::string> fg;
    std::vector<std::string> processes_f;
    std::vector<std::string> processes_g;
    auto* compare = app.add_subcommand("compare", "Internal, external or general strength of F over G");
    compare->add_option("mode", mode)->required()->check(CLI::IsMember({"internal", "external", "general"}));
    compare->add_option("distributions", fg, "F G")->required()->expected(2);
    compare->add_option("--processes-f", processes_f, "Reasoning processes for F (general)");
    compare->add_option("--processes-g", processes_g, "Reasoning processes for G (general)");
    compare->callback([&] {
        action = [&] {
            auto r = runner.base("compare");
            r["mode"] = mode;
            r["f"] = fg[0];
            r["g"] = fg[1];
            if (!processes_f.empty()) r["processes_f"] = processes_f;
            if (!processes_g.empty()) r["processes_g"] = processes_g;
            return runner.run(r);
        };
    });

    std::vector<std::string> processes;
    auto* choose = app.add_subcommand("choose", "Choose between F and G under shared processes");
    choose->add_option("distributions", fg, "F G")->required()->expected(2);
    choose->add_option("--processes", processes, "Reasoning processes");
    choose->callback([&] {
        action = [&] {
            auto r = runner.base("choose");
            r["f"] = fg[0];
            r["g"] = fg[1];
            if (!processes.empty()) r["processes"] = processes;
            return runner.run(r);
        };
    });

    std::vector<std::string> refs;
    auto* compat = app.add_subcommand("compat", "Check two reference sets for compatibility");
    compat->add_option("references", refs, "R0 R1")->required()->expected(2);
    compat->callback([&] {
        action = [&] {
            auto r = runner.base("compat");
            r.erase("reference");
            r.erase("lambda");
            r.erase("seed");
            r["r0"] = refs[0];
            r["r1"] = refs[1];
            return runner.run(r);
        };
    });

    std::vector<std::string> fgh;
    double tolerance = 1e-6;
    auto* alpha = app.add_subcommand("alpha", "Alpha measure of G between F and H");
    alpha->add_option("distributions", fgh, "F G H")->required()->expected(3);
    alpha->add_option("--processes", processes, "Reasoning processes (default: all built-in)");
    alpha->add_option("--tolerance", tolerance, "Bisection tolerance");
    alpha->callback([&] {
        action = [&] {
            auto r = runner.base("alpha");
            r["f"] = fgh[0];
            r["g"] = fgh[1];
            r["h"] = fgh[2];
            if (!processes.empty()) r["processes"] = processes;
            r["tolerance"] = tolerance;
            return runner.run(r);
        };
    });

    std::vector<std::string> sweep_refs;
    std::vector<std::string> sweep_lambdas;
    std::string comparison = "external";
    auto* sweep = app.add_subcommand("sweep", "Verdicts over reference sets and resolutions");
    sweep->add_option("distributions", fg, "F G")->required()->expected(2);
    sweep->add_option("--references", sweep_refs, "Reference sets (default: --reference or wheel)");
    sweep->add_option("--lambdas", sweep_lambdas, "Resolutions (default: twentieths)");
    sweep->add_option("--comparison", comparison)->check(CLI::IsMember({"internal", "external"}));
    sweep->callback([&] {
        action = [&] {
            auto r = runner.base("sweep");
            r.erase("lambda");
            r.erase("seed");
            r["comparison"] = comparison;
            r["f"] = fg[0];
            r["g"] = fg[1];
            if (!sweep_refs.empty()) r["references"] = sweep_refs;
            if (!sweep_lambdas.empty()) r["lambdas"] = sweep_lambdas;
            return runner.run(r);
        };
    });

    std::string initial;
    std::optional<std::size_t> budget;
    bool simulated = false;
    bool serve = false;
    std::string host = "127.0.0.1";
    int port = credo::default_port();
    auto* elicit = app.add_subcommand("elicit", "Elicit a distribution, at the terminal or over HTTP");
    elicit->add_option("--initial", initial, "Initial distribution id");
    elicit->add_option("--budget", budget, "Candidate budget");
    elicit->add_flag("--simulated", simulated, "Let the simulated agent answer instead of the terminal");
    elicit->add_flag("--serve", serve, "Serve the session API instead of prompting");
    elicit->add_option("--host", host, "Address to bind with --serve");
    elicit->add_option("--port", port, "Port for --serve (default CREDO_PORT or 8080)");
    elicit->callback([&] {
        action = [&] {
            if (serve) {
                credo::ServiceConfig config;
                config.host = host;
                config.port = port;
                config.session_file = !g.record.empty() ? g.record : g.session;
                credo::Service service(config);
                service.restore();
                std::cerr << "serving on http://" << host << ":" << port << std::endl;
                return service.listen() ? 0 : 2;
            }
            auto r = runner.base("elicit");
            r["source"] = simulated ? "agent" : "interactive";
            if (!simulated) r.erase("agent");
            if (!initial.empty()) r["initial"] = initial;
            if (budget) r["budget"] = *budget;
            return runner.run(r, render_elicit);
        };
    });

    std::string session_file;
    auto* session = app.add_subcommand("session", "Inspect or replay a session file");
    session->require_subcommand(1);
    auto* show = session->add_subcommand("show", "Summarize a session file");
    show->add_option("file", session_file)->required();
    show->callback([&] {
        action = [&] {
            const auto s = credo::load_session(session_file);
            std::cout << "version " << credo::kSessionVersion << "\n"
                      << s.catalog.bundles.size() << " scenario bundles, " << s.catalog.distributions.size()
                      << " loose distributions, " << s.catalog.agents.size() << " agents\n"
                      << s.log->size() << " judgments, " << s.verdicts.size() << " verdicts, " << s.traces.size()
                      << " traces\n";
            for (const auto& q : s.log->entries()) {
                std::cout << "  " << q.id << " " << (q.answer ? credo::to_string(*q.answer) : "-") << "  "
                          << q.prompt() << "\n";
            }
            for (std::size_t i = 0; i < s.verdicts.size(); ++i) {
                std::cout << "  verdict " << i << ": " << s.verdicts[i].at("request").dump() << "\n";
            }
            for (std::size_t i = 0; i < s.traces.size(); ++i) {
                std::cout << "  trace " << i << ": " << s.traces[i].value("request", Json::object()).dump() << "\n";
            }
            return 0;
        };
    });
    auto* replay = session->add_subcommand("replay", "Re-execute every recorded request");
    replay->add_option("file", session_file)->required();
    replay->callback([&] {
        action = [&] {
            const auto report = credo::replay_session(credo::load_session(session_file));
            std::cout << report.text;
            return report.mismatches == 0 ? 0 : 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const credo::QueryPending& q) {
        std::cerr << "error: unanswered judgment query " << q.query().id << "\n";
        return 1;
    } catch (const credo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
