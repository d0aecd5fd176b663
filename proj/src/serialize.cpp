#include "credo/serialize.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>

#include "credo/error.hpp"

namespace credo {

namespace {

template <typename E>
E enum_from(const std::string& text, std::initializer_list<E> values, const char* what)
{
    for (E v : values) {
        if (to_string(v) == text) return v;
    }
    throw Error(Errc::parse_error, std::string("unknown ") + what + " '" + text + "'");
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string str(const Json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_string()) throw Error(Errc::parse_error, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::string str_or(const Json& j, const char* key, const std::string& fallback)
{
    return j.contains(key) ? str(j, key) : fallback;
}

double num(const Json& j, const char* key) { return real_from_json(field(j, key)); }

double num_or(const Json& j, const char* key, double fallback)
{
    return j.contains(key) ? real_from_json(j.at(key)) : fallback;
}

std::vector<std::string> strings(const Json& j, const char* key)
{
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
    return out;
}

Json fractions_to_json(const std::vector<Fraction>& v)
{
    Json a = Json::array();
    for (const auto& f : v) a.push_back(to_json(f));
    return a;
}

std::vector<Fraction> fractions_from(const Json& j, const char* key)
{
    std::vector<Fraction> out;
    if (!j.contains(key)) return out;
    for (const auto& f : j.at(key)) out.push_back(fraction_from_json(f));
    return out;
}

Json optional_score(const std::optional<double>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

Json to_json(const Fraction& f) { return format_fraction(f); }

Fraction fraction_from_json(const Json& j)
{
    if (j.is_string()) return parse_fraction(j.get<std::string>());
    if (j.is_number_integer()) return Fraction(j.get<std::int64_t>());
    throw Error(Errc::parse_error, "fraction must be a string such as \"1/4\"");
}

Json real_to_json(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) throw Error(Errc::invalid_parameter, "cannot serialize NaN");
    return x;
}

double real_from_json(const Json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw Error(Errc::parse_error, "expected a number, \"inf\" or \"-inf\"");
}

// ---- events -----------------------------------------------------------

Json to_json(const EventExpr& e)
{
    using K = EventExpr::Kind;
    Json j;
    switch (e.kind()) {
    case K::never: j["kind"] = "never"; break;
    case K::always: j["kind"] = "always"; break;
    case K::atom:
        j["kind"] = "atom";
        j["space"] = e.space();
        j["label"] = e.label();
        break;
    case K::interval:
        j["kind"] = "interval";
        j["space"] = e.space();
        j["lo"] = real_to_json(e.lo());
        j["hi"] = real_to_json(e.hi());
        break;
    case K::scaling:
        j["kind"] = "scaling";
        j["coefficient"] = to_json(e.coefficient());
        j["tag"] = e.tag();
        break;
    case K::any_of:
    case K::all_of: {
        j["kind"] = e.kind() == K::any_of ? "any_of" : "all_of";
        Json c = Json::array();
        for (const auto& ch : e.children()) c.push_back(to_json(ch));
        j["children"] = std::move(c);
        break;
    }
    case K::complement:
        j["kind"] = "complement";
        j["child"] = to_json(e.children().front());
        break;
    }
    return j;
}

EventExpr event_from_json(const Json& j)
{
    const auto kind = str(j, "kind");
    if (kind == "never") return EventExpr::never();
    if (kind == "always") return EventExpr::always();
    if (kind == "atom") return EventExpr::atom(str(j, "space"), str(j, "label"));
    if (kind == "interval") return EventExpr::interval(str(j, "space"), num(j, "lo"), num(j, "hi"));
    if (kind == "scaling") return EventExpr::scaling(fraction_from_json(field(j, "coefficient")), str(j, "tag"));
    if (kind == "any_of" || kind == "all_of") {
        std::vector<EventExpr> children;
        for (const auto& c : field(j, "children")) children.push_back(event_from_json(c));
        return kind == "any_of" ? EventExpr::any_of(std::move(children)) : EventExpr::all_of(std::move(children));
    }
    if (kind == "complement") return EventExpr::complement(event_from_json(field(j, "child")));
    throw Error(Errc::parse_error, "unknown event kind '" + kind + "'");
}

// ---- spaces, reference sets, laws ---------------------------------------

Json to_json(const OutcomeSpace& s)
{
    Json j;
    j["id"] = s.id;
    j["kind"] = to_string(s.kind);
    if (s.is_discrete()) j["labels"] = s.labels;
    if (!s.unit.empty()) j["unit"] = s.unit;
    j["provenance"] = to_string(s.provenance);
    return j;
}

OutcomeSpace space_from_json(const Json& j)
{
    OutcomeSpace s;
    s.id = str(j, "id");
    s.kind = enum_from(str(j, "kind"), {SpaceKind::discrete, SpaceKind::continuous_unit, SpaceKind::continuous_line},
                       "space kind");
    s.labels = strings(j, "labels");
    s.unit = str_or(j, "unit", "");
    s.provenance = enum_from(str_or(j, "provenance", "subjective"), {Provenance::physical, Provenance::subjective},
                             "provenance");
    if (s.is_discrete() && s.labels.empty()) throw Error(Errc::parse_error, "discrete space '" + s.id + "' has no labels");
    return s;
}

Json to_json(const ReferenceSet& r)
{
    Json j;
    j["id"] = r.id();
    j["kind"] = r.is_discrete() ? "discrete" : "continuous";
    if (r.is_discrete()) j["k"] = r.k();
    j["ambiguity"] = r.ambiguity();
    return j;
}

ReferenceSet reference_set_from_json(const Json& j)
{
    const auto kind = str(j, "kind");
    const double amb = num_or(j, "ambiguity", 0.0);
    if (kind == "discrete") return ReferenceSet::discrete(str(j, "id"), field(j, "k").get<int>(), amb);
    if (kind == "continuous") return ReferenceSet::continuous(str(j, "id"), amb);
    throw Error(Errc::parse_error, "unknown reference set kind '" + kind + "'");
}

Json to_json(const Law& law)
{
    Json j;
    if (const auto* pmf = std::get_if<DiscretePMF>(&law)) {
        j["type"] = "pmf";
        j["labels"] = pmf->labels();
        j["masses"] = fractions_to_json(pmf->masses());
        return j;
    }
    const auto& df = std::get<ContinuousDF>(law);
    j["type"] = "df";
    if (df.family()) {
        j["family"] = df.family()->name;
        j["a"] = df.family()->a;
        j["b"] = df.family()->b;
    } else {
        Json knots = Json::array();
        for (double k : df.knots()) knots.push_back(real_to_json(k));
        j["knots"] = std::move(knots);
        j["cdf"] = df.cdf_values();
    }
    if (!df.unit().empty()) j["unit"] = df.unit();
    return j;
}

Law law_from_json(const Json& j)
{
    const auto type = str(j, "type");
    if (type == "pmf") return DiscretePMF(strings(j, "labels"), fractions_from(j, "masses"));
    if (type != "df") throw Error(Errc::parse_error, "unknown law type '" + type + "'");
    const auto unit = str_or(j, "unit", "");
    if (j.contains("family")) {
        const auto name = str(j, "family");
        if (name == "normal") return ContinuousDF::normal(num(j, "a"), num(j, "b"), unit);
        if (name == "uniform") return ContinuousDF::uniform(num(j, "a"), num(j, "b"), unit);
        throw Error(Errc::parse_error, "unknown named family '" + name + "'");
    }
    std::vector<double> knots;
    for (const auto& k : field(j, "knots")) knots.push_back(real_from_json(k));
    return ContinuousDF(std::move(knots), field(j, "cdf").get<std::vector<double>>(), unit);
}

Json to_json(const Distribution& d)
{
    Json j;
    j["id"] = d.id;
    j["space"] = d.space;
    j["class"] = d.event_class;
    j["law"] = to_json(d.law);
    if (d.approximates) j["approximates"] = to_json(*d.approximates);
    return j;
}

Distribution distribution_from_json(const Json& j)
{
    Distribution d;
    d.id = str(j, "id");
    d.space = str(j, "space");
    d.event_class = str_or(j, "class", "subjective");
    d.law = law_from_json(field(j, "law"));
    if (j.contains("approximates")) {
        d.approximates = std::make_shared<const Distribution>(distribution_from_json(j.at("approximates")));
    }
    return d;
}

// ---- agents and processes ------------------------------------------------

Json to_json(const AgentCalibration& c)
{
    Json j;
    j["w1"] = c.w1;
    j["w2"] = c.w2;
    j["transform"] = to_string(c.transform);
    j["default_ambiguity"] = c.default_ambiguity;
    return j;
}

AgentCalibration calibration_from_json(const Json& j)
{
    AgentCalibration c;
    c.w1 = num_or(j, "w1", c.w1);
    c.w2 = num_or(j, "w2", c.w2);
    if (j.contains("transform")) c.transform = score_transform_from_string(str(j, "transform"));
    c.default_ambiguity = num_or(j, "default_ambiguity", c.default_ambiguity);
    return c;
}

Json to_json(const AgentSpec& a)
{
    Json j;
    j["id"] = a.id;
    Json beliefs = Json::object();
    for (const auto& [space, b] : a.beliefs) {
        Json e;
        if (b.latent) e["latent"] = to_json(*b.latent);
        e["ambiguity"] = b.ambiguity;
        beliefs[space] = std::move(e);
    }
    j["beliefs"] = std::move(beliefs);
    j["calibration"] = to_json(a.calibration);
    return j;
}

AgentSpec agent_from_json(const Json& j)
{
    AgentSpec a;
    a.id = str(j, "id");
    if (j.contains("beliefs")) {
        for (const auto& [space, e] : j.at("beliefs").items()) {
            SpaceBelief b;
            if (e.contains("latent")) b.latent = law_from_json(e.at("latent"));
            b.ambiguity = num_or(e, "ambiguity", 0.0);
            a.beliefs[space] = std::move(b);
        }
    }
    if (j.contains("calibration")) a.calibration = calibration_from_json(j.at("calibration"));
    return a;
}

Json to_json(const ReasoningProcess& p)
{
    Json j;
    j["kind"] = to_string(p.kind);
    j["name"] = p.name;
    Json amb = Json::object();
    for (const auto& [cls, v] : p.ambiguity) amb[cls] = v;
    j["ambiguity"] = std::move(amb);
    return j;
}

ReasoningProcess process_from_json(const Json& j)
{
    if (j.is_string()) return process_by_name(j.get<std::string>());
    const auto kind = enum_from(str(j, "kind"),
                                {ProcessKind::direct_evaluation, ProcessKind::bayesian, ProcessKind::fiducial,
                                 ProcessKind::custom},
                                "process kind");
    std::map<std::string, double> amb;
    if (j.contains("ambiguity")) {
        for (const auto& [cls, v] : j.at("ambiguity").items()) amb[cls] = v.get<double>();
    }
    if (kind == ProcessKind::custom) return custom_process(str(j, "name"), std::move(amb));
    return ReasoningProcess{kind, str(j, "name"), std::move(amb)};
}

Json to_json(const FamilyParams& p)
{
    Json j;
    j["m_intervals"] = p.m_intervals;
    j["q_grid"] = p.q_grid;
    j["cap"] = p.cap;
    return j;
}

FamilyParams family_params_from_json(const Json& j)
{
    FamilyParams p;
    if (j.contains("m_intervals")) p.m_intervals = j.at("m_intervals").get<int>();
    if (j.contains("q_grid")) p.q_grid = j.at("q_grid").get<int>();
    if (j.contains("cap")) p.cap = j.at("cap").get<int>();
    return p;
}

Json to_json(const Proposer& p)
{
    Json j;
    j["kind"] = to_string(p.kind);
    j["steps"] = fractions_to_json(p.steps);
    j["budget"] = p.budget;
    j["seed"] = p.seed;
    if (!p.candidates.empty()) {
        Json c = Json::array();
        for (const auto& d : p.candidates) c.push_back(to_json(d));
        j["candidates"] = std::move(c);
    }
    return j;
}

Proposer proposer_from_json(const Json& j)
{
    Proposer p;
    if (j.contains("kind")) p.kind = proposer_kind_from_string(str(j, "kind"));
    if (j.contains("steps")) p.steps = fractions_from(j, "steps");
    if (j.contains("budget")) p.budget = j.at("budget").get<std::size_t>();
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("candidates")) {
        for (const auto& d : j.at("candidates")) p.candidates.push_back(distribution_from_json(d));
    }
    return p;
}

// ---- scenario bundles -----------------------------------------------------

Json to_json(const Expectation& e)
{
    Json j;
    j["kind"] = e.kind;
    j["label"] = e.label;
    j["subjects"] = e.subjects;
    if (!e.reference.empty()) j["reference"] = e.reference;
    if (!e.lambdas.empty()) j["lambdas"] = fractions_to_json(e.lambdas);
    if (!e.processes_f.empty()) j["processes_f"] = e.processes_f;
    if (!e.processes_g.empty()) j["processes_g"] = e.processes_g;
    if (!e.agent.empty()) j["agent"] = e.agent;
    j["expected"] = e.expected;
    if (e.bound) j["bound"] = *e.bound;
    return j;
}

Expectation expectation_from_json(const Json& j)
{
    Expectation e;
    e.kind = str(j, "kind");
    e.label = str_or(j, "label", e.kind);
    e.subjects = strings(j, "subjects");
    e.reference = str_or(j, "reference", "");
    e.lambdas = fractions_from(j, "lambdas");
    e.processes_f = strings(j, "processes_f");
    e.processes_g = strings(j, "processes_g");
    e.agent = str_or(j, "agent", "");
    e.expected = str_or(j, "expected", "any");
    if (j.contains("bound")) e.bound = real_from_json(j.at("bound"));
    return e;
}

Json to_json(const ScenarioBundle& b)
{
    Json j;
    j["id"] = b.id;
    j["description"] = b.description;
    Json spaces = Json::array();
    for (const auto& s : b.spaces) spaces.push_back(to_json(s));
    j["spaces"] = std::move(spaces);
    Json refs = Json::array();
    for (const auto& r : b.reference_sets) refs.push_back(to_json(r));
    j["reference_sets"] = std::move(refs);
    Json dists = Json::array();
    for (const auto& d : b.distributions) dists.push_back(to_json(d));
    j["distributions"] = std::move(dists);
    Json agents = Json::array();
    for (const auto& a : b.agents) agents.push_back(to_json(a));
    j["agents"] = std::move(agents);
    if (b.elicitation) {
        const auto& el = *b.elicitation;
        Json e;
        e["initial"] = el.initial;
        e["target"] = el.target;
        e["reference"] = el.reference;
        e["lambda"] = to_json(el.lambda);
        e["proposer"] = to_json(el.proposer);
        e["agent"] = el.agent;
        j["elicitation"] = std::move(e);
    }
    Json ex = Json::array();
    for (const auto& e : b.expectations) ex.push_back(to_json(e));
    j["expectations"] = std::move(ex);
    return j;
}

ScenarioBundle bundle_from_json(const Json& j)
{
    ScenarioBundle b;
    b.id = str(j, "id");
    b.description = str_or(j, "description", "");
    if (j.contains("spaces")) for (const auto& s : j.at("spaces")) b.spaces.push_back(space_from_json(s));
    if (j.contains("reference_sets")) {
        for (const auto& r : j.at("reference_sets")) b.reference_sets.push_back(reference_set_from_json(r));
    }
    if (j.contains("distributions")) {
        for (const auto& d : j.at("distributions")) b.distributions.push_back(distribution_from_json(d));
    }
    if (j.contains("agents")) for (const auto& a : j.at("agents")) b.agents.push_back(agent_from_json(a));
    if (j.contains("elicitation")) {
        const auto& e = j.at("elicitation");
        ElicitationSetup el;
        el.initial = str(e, "initial");
        el.target = str_or(e, "target", "");
        el.reference = str(e, "reference");
        if (e.contains("lambda")) el.lambda = fraction_from_json(e.at("lambda"));
        if (e.contains("proposer")) el.proposer = proposer_from_json(e.at("proposer"));
        el.agent = str_or(e, "agent", "");
        b.elicitation = std::move(el);
    }
    if (j.contains("expectations")) {
        for (const auto& e : j.at("expectations")) b.expectations.push_back(expectation_from_json(e));
    }
    b.validate();
    return b;
}

// ---- judgments ------------------------------------------------------------

Json to_json(const JudgmentQuery& q)
{
    Json j;
    j["id"] = q.id;
    j["shared"] = to_json(q.shared);
    j["first"] = to_json(q.first);
    j["second"] = to_json(q.second);
    j["shared_first"] = q.shared_first;
    j["prompt"] = q.prompt();
    j["answer"] = q.answer ? Json(to_string(*q.answer)) : Json(nullptr);
    j["asked_at"] = q.asked_at;
    j["answered_at"] = q.answered_at;
    return j;
}

JudgmentQuery query_from_json(const Json& j)
{
    JudgmentQuery q;
    q.id = str_or(j, "id", "");
    q.shared = event_from_json(field(j, "shared"));
    q.first = event_from_json(field(j, "first"));
    q.second = event_from_json(field(j, "second"));
    q.shared_first = j.value("shared_first", false);
    if (j.contains("answer") && !j.at("answer").is_null()) q.answer = answer_from_string(str(j, "answer"));
    q.asked_at = str_or(j, "asked_at", "");
    q.answered_at = str_or(j, "answered_at", "");
    return q;
}

// ---- results ---------------------------------------------------------------

Json to_json(const SimilarityValue& v)
{
    Json j;
    j["source"] = v.source_id;
    j["a"] = to_json(v.a);
    j["b"] = to_json(v.b);
    j["score"] = optional_score(v.score);
    if (v.floor) j["floor"] = true;
    return j;
}

Json to_json(const SideExtremum& s)
{
    Json j;
    j["process"] = s.process;
    j["evaluated"] = s.evaluated;
    j["witness"] = s.witness ? to_json(*s.witness) : Json(nullptr);
    j["index"] = s.index ? Json(*s.index) : Json(nullptr);
    j["value"] = to_json(s.value);
    return j;
}

Json to_json(const StrengthVerdict& v)
{
    Json j;
    j["relation"] = to_string(v.relation);
    j["kind"] = to_string(v.kind);
    j["lambda"] = to_json(v.lambda);
    j["reference"] = v.reference_id;
    j["f"] = v.f_id;
    j["g"] = v.g_id;
    j["low_f"] = to_json(v.low_f);
    j["opposing"] = to_json(v.opposing);
    if (v.reverse_low) j["reverse_low"] = to_json(*v.reverse_low);
    if (v.reverse_high) j["reverse_high"] = to_json(*v.reverse_high);
    return j;
}

Json to_json(const ChoiceResult& c)
{
    Json j;
    j["choice"] = to_string(c.choice);
    j["verdict"] = to_json(c.verdict);
    return j;
}

Json to_json(const EvenSimilarity& e)
{
    Json j;
    j["even"] = e.even;
    j["low"] = to_json(e.low);
    j["high"] = to_json(e.high);
    return j;
}

Json to_json(const AlphaResult& a)
{
    Json j;
    j["status"] = to_string(a.status);
    j["alpha"] = a.alpha;
    j["alpha_exact"] = to_json(a.alpha_exact);
    j["tolerance"] = a.tolerance;
    j["process_f"] = a.process_f;
    j["process_g"] = a.process_g;
    j["process_h"] = a.process_h;
    j["rep_f"] = to_json(a.rep_f);
    j["rep_g"] = to_json(a.rep_g);
    j["rep_h"] = to_json(a.rep_h);
    j["target"] = to_json(a.target);
    j["at_zero"] = to_json(a.at_zero);
    j["at_one"] = to_json(a.at_one);
    Json h = Json::array();
    for (const auto& s : a.history) {
        Json step;
        step["lo"] = to_json(s.lo);
        step["hi"] = to_json(s.hi);
        step["mid"] = to_json(s.mid);
        step["mixture_vs_target"] = to_string(s.mixture_vs_target);
        h.push_back(std::move(step));
    }
    j["history"] = std::move(h);
    return j;
}

Json to_json(const CompatibilityResult& c)
{
    Json j;
    j["status"] = to_string(c.status);
    j["grid"] = fractions_to_json(c.grid);
    j["checks"] = c.checks;
    if (c.witness) {
        Json w;
        w["e0"] = to_json(c.witness->e0);
        w["e1"] = to_json(c.witness->e1);
        w["lambda"] = to_json(c.witness->lambda);
        w["under_r0"] = to_string(c.witness->under_r0);
        w["under_r1"] = to_string(c.witness->under_r1);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const TraceEntry& t)
{
    Json j;
    j["index"] = t.index;
    j["candidate"] = to_json(t.candidate);
    j["accepted"] = t.accepted;
    j["verdict"] = to_json(t.verdict);
    return j;
}

Json to_json(const ElicitationResult& r)
{
    Json j;
    j["terminated_by"] = to_string(r.terminated_by);
    j["seed"] = r.seed;
    j["current"] = to_json(r.current);
    Json f = Json::array();
    for (const auto& d : r.frontier) f.push_back(to_json(d));
    j["frontier"] = std::move(f);
    Json t = Json::array();
    for (const auto& e : r.trace) t.push_back(to_json(e));
    j["trace"] = std::move(t);
    return j;
}

Json to_json(const SweepTable& t)
{
    Json j;
    j["modal"] = to_string(t.modal);
    j["stability"] = t.stability;
    Json cells = Json::array();
    for (const auto& c : t.cells) {
        Json cell;
        cell["reference"] = c.reference_id;
        cell["lambda"] = to_json(c.lambda);
        cell["verdict"] = c.verdict ? to_json(*c.verdict) : Json(nullptr);
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j;
}

Json to_json(const ScenarioReport& r)
{
    Json j;
    j["scenario"] = r.scenario;
    j["passed"] = r.passed();
    Json outcomes = Json::array();
    for (const auto& o : r.outcomes) {
        Json e;
        e["label"] = o.label;
        e["kind"] = o.kind;
        e["expected"] = o.expected;
        e["observed"] = o.observed;
        e["passed"] = o.passed;
        e["details"] = o.details;
        outcomes.push_back(std::move(e));
    }
    j["outcomes"] = std::move(outcomes);
    return j;
}

}  // namespace credo
