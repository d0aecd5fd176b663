#include "credo/executor.hpp"

#include <sstream>

#include "credo/compatibility.hpp"
#include "credo/error.hpp"
#include "credo/strength.hpp"

namespace credo {

namespace {

std::string text_field(const Json& in, const char* key, const std::string& fallback = {})
{
    if (!in.contains(key) || in.at(key).is_null()) return fallback;
    if (!in.at(key).is_string()) throw Error(Errc::parse_error, std::string("field '") + key + "' must be a string");
    return in.at(key).get<std::string>();
}

std::string required(const Json& in, const char* key)
{
    auto s = text_field(in, key);
    if (s.empty()) throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
    return s;
}

Fraction lambda_field(const Json& in, const Fraction& fallback = Fraction(1, 2))
{
    return in.contains("lambda") ? fraction_from_json(in.at("lambda")) : fallback;
}

std::vector<ReasoningProcess> processes_field(const Json& in, const char* key)
{
    if (!in.contains(key)) return {direct_evaluation()};
    std::vector<ReasoningProcess> out;
    for (const auto& p : in.at(key)) out.push_back(process_from_json(p));
    if (out.empty()) throw Error(Errc::invalid_parameter, std::string("'") + key + "' must not be empty");
    return out;
}

Json processes_json(const std::vector<ReasoningProcess>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(to_json(p));
    return a;
}

FamilyParams params_field(const Json& in)
{
    return in.contains("params") ? family_params_from_json(in.at("params")) : FamilyParams{};
}

struct Common {
    std::string scenario;
    SourcePtr source;
};

// Scenario context and judgment source, shared by every op except
// scenario runs.
Common resolve_common(const Json& in, Json& out, ExecutionContext& ctx)
{
    Common c;
    c.scenario = text_field(in, "scenario");
    if (!c.scenario.empty()) ctx.catalog->bundle(c.scenario);
    out["scenario"] = c.scenario;

    const auto source = text_field(in, "source", "agent");
    out["source"] = source;
    if (source == "agent") {
        auto spec = ctx.catalog->agent(text_field(in, "agent"), c.scenario);
        if (in.contains("calibration")) spec.calibration = calibration_from_json(in.at("calibration"));
        out["agent"] = spec.id;
        out["calibration"] = to_json(spec.calibration);
        c.source = spec.make();
    } else if (source == "interactive") {
        if (ctx.replay) {
            c.source = replay_source(kInteractiveSourceId, ctx.log);
        } else {
            c.source = std::make_shared<InteractiveSource>(kInteractiveSourceId, ctx.log, ctx.responder);
        }
    } else {
        throw Error(Errc::parse_error, "source must be 'agent' or 'interactive'");
    }
    return c;
}

Execution run_scenario_op(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    const auto name = required(in, "name");
    const auto& bundle = ctx.catalog->bundle(name);
    ex.request["op"] = "scenario";
    ex.request["name"] = name;
    RunOptions opts;
    if (in.contains("calibration")) {
        opts.calibration = calibration_from_json(in.at("calibration"));
        ex.request["calibration"] = to_json(*opts.calibration);
    }
    const auto report = run_scenario(bundle, opts);
    ex.result = to_json(report);
    ex.passed = report.passed();
    ex.text = format_report(report);
    return ex;
}

Execution run_compare(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    auto& out = ex.request;
    out["op"] = "compare";
    const auto mode = text_field(in, "mode", "internal");
    out["mode"] = mode;
    const auto c = resolve_common(in, out, ctx);
    const auto& f = ctx.catalog->distribution(required(in, "f"), c.scenario);
    const auto& g = ctx.catalog->distribution(required(in, "g"), c.scenario);
    const auto r = ctx.catalog->reference_set(text_field(in, "reference", "wheel"), c.scenario);
    const auto lambda = lambda_field(in);
    const auto params = params_field(in);
    out["f"] = f.id;
    out["g"] = g.id;
    out["reference"] = r.id();
    out["lambda"] = to_json(lambda);
    out["params"] = to_json(params);

    StrengthVerdict v;
    if (mode == "internal") {
        v = internally_stronger(f, g, lambda, r, *c.source, params);
    } else if (mode == "external") {
        v = externally_stronger(f, g, lambda, r, *c.source, params);
    } else if (mode == "general") {
        const auto mf = processes_field(in, "processes_f");
        const auto mg = processes_field(in, "processes_g");
        out["processes_f"] = processes_json(mf);
        out["processes_g"] = processes_json(mg);
        v = externally_stronger_general(f, g, lambda, r, mf, mg, *c.source, params);
    } else {
        throw Error(Errc::parse_error, "compare mode must be internal, external or general");
    }
    ex.result = to_json(v);
    return ex;
}

Execution run_choose(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    auto& out = ex.request;
    out["op"] = "choose";
    const auto c = resolve_common(in, out, ctx);
    const auto& f = ctx.catalog->distribution(required(in, "f"), c.scenario);
    const auto& g = ctx.catalog->distribution(required(in, "g"), c.scenario);
    const auto r = ctx.catalog->reference_set(text_field(in, "reference", "wheel"), c.scenario);
    const auto lambda = lambda_field(in);
    const auto params = params_field(in);
    const auto m = processes_field(in, "processes");
    out["f"] = f.id;
    out["g"] = g.id;
    out["reference"] = r.id();
    out["lambda"] = to_json(lambda);
    out["processes"] = processes_json(m);
    out["params"] = to_json(params);
    ex.result = to_json(choose_distribution(f, g, lambda, r, m, *c.source, params));
    return ex;
}

Execution run_even(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    auto& out = ex.request;
    out["op"] = "even";
    const auto c = resolve_common(in, out, ctx);
    const auto& f = ctx.catalog->distribution(required(in, "f"), c.scenario);
    const auto r = ctx.catalog->reference_set(text_field(in, "reference", "wheel"), c.scenario);
    const auto lambda = lambda_field(in);
    const auto params = params_field(in);
    const auto process = in.contains("process") ? process_from_json(in.at("process")) : direct_evaluation();
    out["f"] = f.id;
    out["reference"] = r.id();
    out["lambda"] = to_json(lambda);
    out["process"] = to_json(process);
    out["params"] = to_json(params);
    ex.result = to_json(even_similarity(f, lambda, r, *c.source, params, process));
    return ex;
}

Execution run_alpha(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    auto& out = ex.request;
    out["op"] = "alpha";
    const auto c = resolve_common(in, out, ctx);
    const auto& f = ctx.catalog->distribution(required(in, "f"), c.scenario);
    const auto& g = ctx.catalog->distribution(required(in, "g"), c.scenario);
    const auto& h = ctx.catalog->distribution(required(in, "h"), c.scenario);
    const auto r = ctx.catalog->reference_set(text_field(in, "reference", "wheel"), c.scenario);
    const auto lambda = lambda_field(in);
    AlphaOptions opts;
    if (in.contains("processes")) opts.processes = processes_field(in, "processes");
    if (in.contains("tolerance")) opts.tolerance = real_from_json(in.at("tolerance"));
    auto index = [&](const char* key) -> std::optional<std::size_t> {
        if (!in.contains(key) || in.at(key).is_null()) return std::nullopt;
        return in.at(key).get<std::size_t>();
    };
    opts.rep_f = index("rep_f");
    opts.rep_g = index("rep_g");
    opts.rep_h = index("rep_h");
    opts.params = params_field(in);
    out["f"] = f.id;
    out["g"] = g.id;
    out["h"] = h.id;
    out["reference"] = r.id();
    out["lambda"] = to_json(lambda);
    out["processes"] = processes_json(opts.processes);
    out["tolerance"] = opts.tolerance;
    if (opts.rep_f) out["rep_f"] = *opts.rep_f;
    if (opts.rep_g) out["rep_g"] = *opts.rep_g;
    if (opts.rep_h) out["rep_h"] = *opts.rep_h;
    out["params"] = to_json(opts.params);
    ex.result = to_json(alpha_measure(f, g, h, lambda, r, *c.source, opts));
    return ex;
}

Execution run_compat(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    auto& out = ex.request;
    out["op"] = "compat";
    const auto c = resolve_common(in, out, ctx);
    const auto r0 = ctx.catalog->reference_set(required(in, "r0"), c.scenario);
    const auto r1 = ctx.catalog->reference_set(required(in, "r1"), c.scenario);
    out["r0"] = r0.id();
    out["r1"] = r1.id();
    ex.result = to_json(check_compatibility(r0, r1, *c.source, default_battery(r0, r1)));
    return ex;
}

Execution run_sweep(const Json& in, ExecutionContext& ctx)
{
    Execution ex;
    auto& out = ex.request;
    out["op"] = "sweep";
    const auto comparison = text_field(in, "comparison", "external");
    if (comparison != "internal" && comparison != "external") {
        throw Error(Errc::parse_error, "sweep comparison must be internal or external");
    }
    out["comparison"] = comparison;
    const auto c = resolve_common(in, out, ctx);
    const auto& f = ctx.catalog->distribution(required(in, "f"), c.scenario);
    const auto& g = ctx.catalog->distribution(required(in, "g"), c.scenario);
    std::vector<ReferenceSet> refs;
    Json ref_ids = Json::array();
    if (in.contains("references")) {
        for (const auto& id : in.at("references")) refs.push_back(ctx.catalog->reference_set(id.get<std::string>(), c.scenario));
    } else {
        refs.push_back(ctx.catalog->reference_set(text_field(in, "reference", "wheel"), c.scenario));
    }
    for (const auto& r : refs) ref_ids.push_back(r.id());
    std::vector<Fraction> grid;
    if (in.contains("lambdas")) {
        for (const auto& l : in.at("lambdas")) grid.push_back(fraction_from_json(l));
    } else {
        grid = twentieths_grid();
    }
    const auto params = params_field(in);
    out["f"] = f.id;
    out["g"] = g.id;
    out["references"] = std::move(ref_ids);
    Json lambdas = Json::array();
    for (const auto& l : grid) lambdas.push_back(to_json(l));
    out["lambdas"] = std::move(lambdas);
    out["params"] = to_json(params);
    const auto kind = comparison == "internal" ? Comparison::internal : Comparison::external;
    ex.result = to_json(sensitivity_sweep(f, g, refs, grid, *c.source, kind, params));
    return ex;
}

Execution run_elicit(const Json& in, ExecutionContext& ctx)
{
    auto plan = plan_elicit(in, ctx);
    Execution ex;
    ex.request = plan.request;
    const auto result = elicit(plan.initial, plan.proposer, plan.lambda, plan.reference, plan.source, plan.params);
    ex.result = to_json(result);
    std::size_t accepted = 0;
    for (const auto& t : result.trace) accepted += t.accepted ? 1 : 0;
    std::ostringstream text;
    text << "terminated by " << to_string(result.terminated_by) << " after " << result.trace.size()
         << " candidates, " << accepted << " accepted\n";
    ex.text = text.str();
    return ex;
}

}  // namespace

ElicitPlan plan_elicit(const Json& in, ExecutionContext& ctx)
{
    ElicitPlan plan;
    auto& out = plan.request;
    out["op"] = "elicit";
    const auto scenario = text_field(in, "scenario");
    std::optional<ElicitationSetup> setup;
    if (!scenario.empty()) setup = ctx.catalog->bundle(scenario).elicitation;

    // Fields left out fall back to the scenario's elicitation setup.
    Json merged = in;
    if (setup) {
        if (!merged.contains("initial")) merged["initial"] = setup->initial;
        if (!merged.contains("reference")) merged["reference"] = setup->reference;
        if (!merged.contains("lambda")) merged["lambda"] = to_json(setup->lambda);
        if (!merged.contains("agent") && !setup->agent.empty()) merged["agent"] = setup->agent;
    }
    const auto c = resolve_common(merged, out, ctx);
    plan.source = c.source;
    plan.initial = ctx.catalog->distribution(required(merged, "initial"), scenario);
    plan.reference = ctx.catalog->reference_set(text_field(merged, "reference", "wheel"), scenario);
    plan.lambda = lambda_field(merged);
    if (merged.contains("proposer")) {
        plan.proposer = proposer_from_json(merged.at("proposer"));
    } else if (setup) {
        plan.proposer = setup->proposer;
    }
    if (merged.contains("seed")) plan.proposer.seed = merged.at("seed").get<std::uint64_t>();
    if (merged.contains("budget")) plan.proposer.budget = merged.at("budget").get<std::size_t>();
    plan.params = params_field(merged);

    out["initial"] = plan.initial.id;
    out["reference"] = plan.reference.id();
    out["lambda"] = to_json(plan.lambda);
    out["proposer"] = to_json(plan.proposer);
    out["params"] = to_json(plan.params);
    return plan;
}

Execution execute(const Json& request, ExecutionContext& ctx)
{
    if (!ctx.catalog) throw Error(Errc::invalid_parameter, "execution context has no catalog");
    if (!request.is_object()) throw Error(Errc::parse_error, "request must be an object");
    const auto op = required(request, "op");
    try {
        if (op == "scenario") return run_scenario_op(request, ctx);
        if (op == "compare") return run_compare(request, ctx);
        if (op == "choose") return run_choose(request, ctx);
        if (op == "even") return run_even(request, ctx);
        if (op == "alpha") return run_alpha(request, ctx);
        if (op == "compat") return run_compat(request, ctx);
        if (op == "sweep") return run_sweep(request, ctx);
        if (op == "elicit") return run_elicit(request, ctx);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
    throw Error(Errc::parse_error, "unknown op '" + op + "'");
}

ReplayReport replay_session(const Session& session)
{
    ReplayReport report;
    Catalog catalog = session.catalog;
    ExecutionContext ctx;
    ctx.catalog = &catalog;
    ctx.log = session.log;
    ctx.replay = true;

    std::ostringstream text;
    auto run = [&](const char* kind, const std::vector<Json>& entries) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& entry = entries[i];
            const auto op = entry.value("request", Json::object()).value("op", std::string("?"));
            text << kind << " " << i << " " << op;
            if (entry.value("status", std::string("closed")) == "open") {
                ++report.skipped;
                text << " open, skipped\n";
                continue;
            }
            ++report.entries;
            try {
                const auto ex = execute(entry.at("request"), ctx);
                const bool match = entry.contains("result") && ex.result.dump() == entry.at("result").dump();
                if (!match) ++report.mismatches;
                text << (match ? " match\n" : " MISMATCH\n") << ex.result.dump(2) << "\n";
            } catch (const std::exception& e) {
                ++report.mismatches;
                text << " ERROR " << e.what() << "\n";
            }
        }
    };
    run("verdict", session.verdicts);
    run("trace", session.traces);
    text << report.entries << " replayed, " << report.mismatches << " mismatched, " << report.skipped << " skipped\n";
    report.text = text.str();
    return report;
}

}  // namespace credo
