#include "credo/session.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "credo/error.hpp"

namespace credo {

namespace {

template <typename T, typename Id>
const T* find_by(const std::vector<T>& items, const std::string& id, Id get_id)
{
    for (const auto& item : items) {
        if (get_id(item) == id) return &item;
    }
    return nullptr;
}

const std::string& dist_id(const Distribution& d) { return d.id; }
const std::string& agent_id(const AgentSpec& a) { return a.id; }
const std::string& ref_id(const ReferenceSet& r) { return r.id(); }

template <typename C>
Json array_of(const C& items)
{
    Json a = Json::array();
    for (const auto& item : items) a.push_back(to_json(item));
    return a;
}

}  // namespace

const ScenarioBundle& Catalog::add_bundle(ScenarioBundle bundle)
{
    if (const auto* b = find_bundle(bundle.id)) return *b;
    bundles.push_back(std::move(bundle));
    return bundles.back();
}

const ScenarioBundle& Catalog::bundle(const std::string& name)
{
    if (const auto* b = find_bundle(name)) return *b;
    return add_bundle(build_scenario(name));
}

const ScenarioBundle* Catalog::find_bundle(const std::string& name) const
{
    for (const auto& b : bundles) {
        if (b.id == name) return &b;
    }
    return nullptr;
}

const Distribution& Catalog::distribution(const std::string& id, const std::string& scenario) const
{
    if (const auto* b = scenario.empty() ? nullptr : find_bundle(scenario)) {
        if (const auto* d = find_by(b->distributions, id, dist_id)) return *d;
    }
    if (const auto* d = find_by(distributions, id, dist_id)) return *d;
    for (const auto& b : bundles) {
        if (const auto* d = find_by(b.distributions, id, dist_id)) return *d;
    }
    throw Error(Errc::not_found, "unknown distribution '" + id + "'");
}

ReferenceSet Catalog::reference_set(const std::string& id, const std::string& scenario) const
{
    if (const auto* b = scenario.empty() ? nullptr : find_bundle(scenario)) {
        if (const auto* r = find_by(b->reference_sets, id, ref_id)) return *r;
    }
    if (const auto* r = find_by(reference_sets, id, ref_id)) return *r;
    for (const auto& b : bundles) {
        if (const auto* r = find_by(b.reference_sets, id, ref_id)) return *r;
    }
    // Built-in sets are recorded by id ("urn-10"), so ids parse like specs.
    auto spec = id;
    if (const auto dash = spec.rfind('-'); spec.find(':') == std::string::npos && dash != std::string::npos) {
        if (spec.compare(0, 3, "urn") == 0 || spec.compare(0, 11, "unknown-urn") == 0) spec[dash] = ':';
    }
    try {
        return parse_reference_spec(spec);
    } catch (const Error&) {
        throw Error(Errc::not_found, "unknown reference set '" + id + "'");
    }
}

const AgentSpec& Catalog::agent(const std::string& id, const std::string& scenario) const
{
    const auto* b = scenario.empty() ? nullptr : find_bundle(scenario);
    if (id.empty()) {
        if (b && !b->agents.empty()) return b->agents.front();
        if (!agents.empty()) return agents.front();
        for (const auto& other : bundles) {
            if (!other.agents.empty()) return other.agents.front();
        }
        throw Error(Errc::not_found, "no agent available");
    }
    if (b) {
        if (const auto* a = find_by(b->agents, id, agent_id)) return *a;
    }
    if (const auto* a = find_by(agents, id, agent_id)) return *a;
    for (const auto& other : bundles) {
        if (const auto* a = find_by(other.agents, id, agent_id)) return *a;
    }
    throw Error(Errc::not_found, "unknown agent '" + id + "'");
}

Json session_to_json(const Session& s)
{
    Json j;
    j["version"] = kSessionVersion;
    j["spaces"] = array_of(s.catalog.spaces);
    j["reference_sets"] = array_of(s.catalog.reference_sets);
    j["distributions"] = array_of(s.catalog.distributions);
    j["agents"] = array_of(s.catalog.agents);
    j["scenario_bundles"] = array_of(s.catalog.bundles);
    j["judgment_log"] = array_of(s.log->entries());
    j["traces"] = s.traces;
    j["verdicts"] = s.verdicts;
    return j;
}

Session session_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("version") || !j.at("version").is_number_integer()) {
        throw Error(Errc::parse_error, "session file has no integer version");
    }
    if (j.begin().key() != "version") throw Error(Errc::parse_error, "version must be the first field");
    const int version = j.at("version").get<int>();
    if (version != kSessionVersion) {
        throw Error(Errc::unsupported_version, "session version " + std::to_string(version) + " is not supported");
    }
    Session s;
    auto each = [&](const char* key, auto&& f) {
        if (!j.contains(key)) return;
        for (const auto& item : j.at(key)) f(item);
    };
    each("spaces", [&](const Json& x) { s.catalog.spaces.push_back(space_from_json(x)); });
    each("reference_sets", [&](const Json& x) { s.catalog.reference_sets.push_back(reference_set_from_json(x)); });
    each("distributions", [&](const Json& x) { s.catalog.distributions.push_back(distribution_from_json(x)); });
    each("agents", [&](const Json& x) { s.catalog.agents.push_back(agent_from_json(x)); });
    each("scenario_bundles", [&](const Json& x) { s.catalog.add_bundle(bundle_from_json(x)); });
    each("judgment_log", [&](const Json& x) { s.log->record(query_from_json(x)); });
    each("traces", [&](const Json& x) { s.traces.push_back(x); });
    each("verdicts", [&](const Json& x) { s.verdicts.push_back(x); });
    return s;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(Errc::not_found, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, path + ": " + e.what());
    }
}

Session load_session(const std::string& path)
{
    try {
        return session_from_json(read_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, path + ": " + e.what());
    }
}

void save_session(const std::string& path, const Session& s)
{
    const auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(Errc::invalid_parameter, "cannot write '" + tmp + "'");
        out << session_to_json(s).dump(2) << "\n";
        out.flush();
        if (!out) throw Error(Errc::invalid_parameter, "write to '" + tmp + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace credo
