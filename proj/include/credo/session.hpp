#pragma once

#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "credo/interactive.hpp"
#include "credo/scenario.hpp"
#include "credo/serialize.hpp"

namespace credo {

inline constexpr int kSessionVersion = 1;

/// Everything a request may refer to by id. Lookups with a scenario name
/// search that bundle first, then the loose items.
struct Catalog {
    std::vector<OutcomeSpace> spaces;
    std::vector<ReferenceSet> reference_sets;
    std::vector<Distribution> distributions;
    std::vector<AgentSpec> agents;
    std::deque<ScenarioBundle> bundles;  // stable addresses

    /// Adds a bundle unless one with the same id is present.
    const ScenarioBundle& add_bundle(ScenarioBundle bundle);
    /// Loads a built-in bundle on first use.
    const ScenarioBundle& bundle(const std::string& name);
    [[nodiscard]] const ScenarioBundle* find_bundle(const std::string& name) const;

    [[nodiscard]] const Distribution& distribution(const std::string& id, const std::string& scenario = {}) const;
    /// Catalog ids first, then "urn:K" / "unknown-urn:K" / "wheel" specs.
    [[nodiscard]] ReferenceSet reference_set(const std::string& id, const std::string& scenario = {}) const;
    /// Empty id: the scenario's first agent, else the first loose agent.
    [[nodiscard]] const AgentSpec& agent(const std::string& id, const std::string& scenario = {}) const;
};

/// On-disk session: catalog, the append-only judgment log and every
/// recorded request with its result.
struct Session {
    Catalog catalog;
    std::shared_ptr<JudgmentLog> log = std::make_shared<JudgmentLog>();
    std::vector<Json> traces;    // {"request", "result"} of elicit runs
    std::vector<Json> verdicts;  // {"request", "result"} of everything else
};

Json session_to_json(const Session& s);
/// Throws unsupported_version for files from another format version.
Session session_from_json(const Json& j);

/// Throws not_found when the file does not exist, parse_error when it is
/// not valid.
Session load_session(const std::string& path);
/// Writes to a sibling temp file, flushes, then renames over `path`.
void save_session(const std::string& path, const Session& s);

Json read_json_file(const std::string& path);

}  // namespace credo
