// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures. Every expected value is recomputed here from first principles
// rather than taken from the library.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "credo/compatibility.hpp"
#include "credo/error.hpp"
#include "credo/executor.hpp"
#include "credo/normal_mean.hpp"
#include "credo/probability.hpp"
#include "credo/scenario.hpp"
#include "credo/serialize.hpp"
#include "credo/session.hpp"
#include "credo/strength.hpp"

using namespace credo;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

// -- discrete families -------------------------------------------------------

using Member = std::tuple<std::vector<std::size_t>, long, Fraction>;

std::multiset<Member> brute_force(const std::vector<Fraction>& masses, const Fraction& lambda)
{
    std::multiset<Member> out;
    const std::size_t n = masses.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> t;
        Fraction sum(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                t.push_back(i);
                sum += masses[i];
            }
        }
        if (sum == lambda) out.emplace(t, -1, Fraction(0));
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            if (sum < lambda && lambda < sum + masses[j]) out.emplace(t, static_cast<long>(j), (lambda - sum) / masses[j]);
        }
    }
    return out;
}

DiscretePMF labelled(const std::vector<Fraction>& masses)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < masses.size(); ++i) labels.push_back("x" + std::to_string(i));
    return DiscretePMF(labels, masses);
}

void discrete_families(Check& c)
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<std::size_t> size(2, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t atoms = size(rng);
        std::uniform_int_distribution<int> cut(0, 64);
        std::vector<int> cuts{0, 64};
        for (std::size_t i = 0; i + 1 < atoms; ++i) cuts.push_back(cut(rng));
        std::sort(cuts.begin(), cuts.end());
        std::vector<Fraction> masses;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) masses.emplace_back(cuts[i + 1] - cuts[i], 64);

        for (int k = 1; k < 8; ++k) {
            const Fraction lambda(k, 8);
            const auto fam = event_family_discrete(labelled(masses), "x", lambda);
            std::multiset<Member> got;
            for (const auto& a : fam.atoms) {
                auto t = a.whole;
                std::sort(t.begin(), t.end());
                got.emplace(t, a.fractional ? static_cast<long>(*a.fractional) : -1L,
                            a.fractional ? a.coefficient : Fraction(0));
                if (a.fractional) {
                    c.require(a.coefficient > Fraction(0) && a.coefficient < Fraction(1),
                              "fractional coefficient outside (0,1)");
                }
            }
            std::ostringstream where;
            where << "trial " << trial << " lambda " << k << "/8 differs from brute force";
            c.require(got == brute_force(masses, lambda), where.str());
        }
    }
}

void bernoulli_half(Check& c)
{
    const auto fam = event_family_discrete(DiscretePMF({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)}), "urn",
                                           Fraction(1, 2));
    c.require(fam.size() == 2, "expected 2 members, got " + std::to_string(fam.size()));
    const std::set<EventExpr> members(fam.members.begin(), fam.members.end());
    c.require(members.count(EventExpr::atom("urn", "red")) && members.count(EventExpr::atom("urn", "black")),
              "members are not {red} and {black}");
}

// -- strength ------------------------------------------------------------------

void ellsberg(Check& c)
{
    const auto b = build_scenario("ellsberg-two-urn");
    const auto& known = b.distribution("known-urn-df");
    const auto& unknown = b.distribution("unknown-urn-df");
    const auto wheel = build_continuous_reference_set();
    auto spec = b.agent("");
    const auto averse = spec.make();
    c.require(spec.calibration.w2 > 0, "default calibration is not ambiguity averse");
    spec.calibration.w2 = 0.0;
    const auto neutral = spec.make();
    for (int k = 1; k < 20; ++k) {
        const Fraction l(k, 20);
        const auto v = externally_stronger(known, unknown, l, wheel, *averse);
        c.require(v.relation == Relation::stronger, "averse agent not stronger at " + format_fraction(l));
        // Scores by hand: known side 1 - 0, unknown side 1 - w2 * 1.
        c.require(std::abs(*v.low_f.value.score - 1.0) < 1e-12 &&
                      std::abs(*v.opposing.value.score - (1.0 - AgentCalibration{}.w2)) < 1e-12,
                  "extremal scores differ from the formula at " + format_fraction(l));
        c.require(externally_stronger(known, unknown, l, wheel, *neutral).relation == Relation::indeterminate,
                  "neutral agent not indeterminate at " + format_fraction(l));
    }
}

Json without_kind(const StrengthVerdict& v)
{
    auto j = to_json(v);
    j.erase("kind");
    return j;
}

void strength_laws(Check& c)
{
    std::mt19937 rng(99);
    const auto wheel = build_continuous_reference_set();
    const std::vector<std::string> labels{"a", "b", "c", "d"};
    auto masses = [&]() {
        std::vector<int> parts(4, 1);
        std::uniform_int_distribution<std::size_t> pick(0, 3);
        for (int left = 16; left > 0; --left) ++parts[pick(rng)];
        std::vector<Fraction> out;
        for (int p : parts) out.emplace_back(p, 20);
        return out;
    };
    std::uniform_int_distribution<int> lam(1, 3);
    std::uniform_real_distribution<double> mean(-1, 1), sd(0.5, 2);
    for (int i = 0; i < 200; ++i) {
        std::shared_ptr<SimulatedAgent> agent;
        Distribution f, g;
        if (i % 4 == 3) {
            agent = std::make_shared<SimulatedAgent>(
                "agent", std::map<std::string, SpaceBelief>{{"y", {Law{ContinuousDF::normal(0, 1)}, 0.3}}});
            f = Distribution{"F", "y", ContinuousDF::normal(mean(rng), sd(rng)), "subjective", nullptr};
            g = Distribution{"G", "y", ContinuousDF::normal(mean(rng), sd(rng)), "subjective", nullptr};
        } else {
            agent = std::make_shared<SimulatedAgent>(
                "agent", std::map<std::string, SpaceBelief>{{"x", {Law{DiscretePMF(labels, masses())}, 0.3}}});
            f = Distribution{"F", "x", DiscretePMF(labels, masses()), "subjective", nullptr};
            g = Distribution{"G", "x", DiscretePMF(labels, masses()), "subjective", nullptr};
        }
        const Fraction l(lam(rng), 4);
        const auto in_fg = internally_stronger(f, g, l, wheel, *agent).relation;
        const auto in_gf = internally_stronger(g, f, l, wheel, *agent).relation;
        const auto ex = externally_stronger(f, g, l, wheel, *agent);
        const auto ex_gf = externally_stronger(g, f, l, wheel, *agent).relation;
        const auto tag = " (pair " + std::to_string(i) + ")";
        c.require(internally_stronger(f, f, l, wheel, *agent).relation != Relation::stronger &&
                      externally_stronger(f, f, l, wheel, *agent).relation != Relation::stronger,
                  "irreflexivity" + tag);
        c.require(!(in_fg == Relation::stronger && in_gf == Relation::stronger) &&
                      !(ex.relation == Relation::stronger && ex_gf == Relation::stronger),
                  "antisymmetry" + tag);
        c.require(ex.relation != Relation::stronger || in_fg == Relation::stronger, "external => internal" + tag);
        c.require(ex_gf != Relation::stronger || in_gf == Relation::stronger, "external => internal" + tag);
        const auto gen =
            externally_stronger_general(f, g, l, wheel, {direct_evaluation()}, {direct_evaluation()}, *agent);
        c.require(without_kind(gen).dump() == without_kind(ex).dump(), "singleton reduction" + tag);
    }
}

// -- normal mean ---------------------------------------------------------------

void fiducial_identity(Check& c)
{
    for (int n : {1, 4, 100}) {
        const auto flat = conjugate_posterior(PriorSpec::flat(), 1.0, 1.0, n);
        const auto fid = fiducial_distribution(1.0, 1.0, n);
        c.require(flat.df().knots() == fid.knots() && flat.df().cdf_values() == fid.cdf_values(),
                  "flat limit differs from the fiducial distribution at n=" + std::to_string(n));
    }
    const auto vague = conjugate_posterior(PriorSpec::diffuse(0.0, 1e8), 1.0, 1.0, 4);
    const auto fid = fiducial_distribution(1.0, 1.0, 4);
    // Sup distance of piecewise-linear CDFs, over the union of knots.
    std::vector<double> ts = vague.df().knots();
    ts.insert(ts.end(), fid.knots().begin(), fid.knots().end());
    double sup = 0;
    for (double t : ts) sup = std::max(sup, std::abs(vague.df().cdf(t) - fid.cdf(t)));
    std::ostringstream s;
    s << "tau2=1e8 sup distance " << sup;
    c.require(sup < 1e-6, s.str());
}

void normal_mean_directions(Check& c)
{
    const auto agent = build_scenario("normal-mean-fiducial").agent("").make();
    const auto wheel = build_continuous_reference_set();
    const std::vector<ReasoningProcess> both{bayesian_reasoning(), fiducial_reasoning()};
    for (int n : {4, 100}) {
        const auto ds = normal_mean_distributions(1.0, 1.0, n);
        auto get = [&](const std::string& id) {
            return *std::find_if(ds.begin(), ds.end(), [&](const Distribution& d) { return d.id == id; });
        };
        const auto cx = get("C(mu|x)");
        const auto dx = get("D(mu|x)");
        const auto ix = get("I(mu|x)");
        const auto tag = " at n=" + std::to_string(n);
        c.require(externally_stronger_general(cx, dx, Fraction(1, 2), wheel, {fiducial_reasoning()},
                                              {bayesian_reasoning()}, *agent)
                          .relation == Relation::stronger,
                  "C not stronger than D" + tag);
        c.require(choose_distribution(cx, ix, Fraction(1, 2), wheel, both, *agent).choice == Choice::f_favored,
                  "C not favored over I" + tag);
    }
}

// -- alpha -----------------------------------------------------------------------

void alpha(Check& c)
{
    const auto wheel = build_continuous_reference_set();
    const DiscretePMF seven({"red", "black"}, {Fraction(7, 10), Fraction(3, 10)});
    const DiscretePMF half({"red", "black"}, {Fraction(1, 2), Fraction(1, 2)});
    const Distribution f{"F", "x", seven, "subjective", nullptr};
    const Distribution g{"G", "y", half, "subjective", nullptr};
    const Distribution h{"H", "z", seven, "physical", nullptr};
    auto agent = [&](double amb_g) {
        return SimulatedAgent("a", {{"x", {Law{seven}, 0.8}}, {"y", {Law{half}, amb_g}}, {"z", {Law{seven}, 0.0}}});
    };

    const auto a0 = alpha_measure(f, g, h, Fraction(1, 2), wheel, agent(0.8));
    c.require(a0.status == AlphaStatus::solved && a0.alpha_exact == Fraction(0), "alpha=0 endpoint not exact");
    const auto a1 = alpha_measure(f, g, h, Fraction(1, 2), wheel, agent(0.0));
    c.require(a1.status == AlphaStatus::solved && a1.alpha_exact == Fraction(1), "alpha=1 endpoint not exact");

    const auto cal = build_scenario("alpha-calibration");
    const auto cal_agent = cal.agent("").make();
    const auto ac = alpha_measure(cal.distribution("D(mu)"), cal.distribution("C(mu|x)"), cal.distribution("U(z)"),
                                  Fraction(1, 2), wheel, *cal_agent);
    std::ostringstream s;
    s << "alpha-calibration alpha " << ac.alpha;
    c.require(ac.status == AlphaStatus::solved && ac.alpha >= 0.9, s.str());

    // Mixture ambiguity (1-a) 0.8 + a 0 against amb_g = 1/3.
    const double amb_g = 1.0 / 3.0;
    const auto judge = agent(amb_g);
    for (const Fraction& l : {Fraction(1, 2), Fraction(3, 10)}) {
        const auto nf = event_family(f, l, FamilyParams{}).size();
        const auto ng = event_family(g, l, FamilyParams{}).size();
        const auto nh = event_family(h, l, FamilyParams{}).size();
        double lo = 2, hi = -1;
        for (std::size_t i = 0; i < nf; ++i) {
            for (std::size_t j = 0; j < ng; ++j) {
                for (std::size_t k = 0; k < nh; ++k) {
                    AlphaOptions o;
                    o.rep_f = i;
                    o.rep_g = j;
                    o.rep_h = k;
                    const auto r = alpha_measure(f, g, h, l, wheel, judge, o);
                    c.require(r.status == AlphaStatus::solved, "representative triple unsolved");
                    c.require(std::abs(r.alpha - (1.0 - amb_g / 0.8)) < 1e-6, "alpha off the closed form");
                    lo = std::min(lo, r.alpha);
                    hi = std::max(hi, r.alpha);
                }
            }
        }
        c.require(nf * ng * nh >= 4, "Bernoulli families too small to test invariance");
        c.require(hi - lo <= 2e-6, "representative spread above 2e-6 at lambda " + format_fraction(l));
    }
}

// -- elicitation -------------------------------------------------------------------

void elicitation(Check& c)
{
    const auto b = build_scenario("governor-election");
    const auto agent = b.agent("").make();
    const auto wheel = build_continuous_reference_set();
    auto proposer = b.elicitation->proposer;
    proposer.kind = ProposerKind::mass_transfer;
    proposer.budget = 2000;
    const auto& target = b.distribution("analyst-df").pmf();
    c.require(target.masses() == std::vector<Fraction>{Fraction(3, 10), Fraction(1, 4), Fraction(1, 5),
                                                        Fraction(3, 20), Fraction(1, 10)},
              "target is not the five-atom governor pmf");
    const auto r = elicit(b.distribution("uniform-df"), proposer, Fraction(1, 2), wheel, agent);

    double best = 1;
    for (const auto& d : r.frontier) {
        const auto& m = d.pmf().masses();
        double tv = 0;
        for (std::size_t i = 0; i < m.size(); ++i) tv += std::abs(to_double(m[i]) - to_double(target.masses()[i]));
        best = std::min(best, tv / 2);
    }
    std::ostringstream s;
    s << "best frontier total variation " << best;
    c.require(best < 0.05, s.str());

    double prev = *side_extremum(b.distribution("uniform-df"), direct_evaluation(), Fraction(1, 2), wheel, *agent,
                                 FamilyParams{}, true, "F")
                       .value.score;
    for (const auto& t : r.trace) {
        if (!t.accepted) continue;
        const double now = *t.verdict.low_f.value.score;
        c.require(now > prev, "accepted chain min-score did not increase at step " + std::to_string(t.index));
        prev = now;
    }
}

// -- compatibility -------------------------------------------------------------------

void compatibility(Check& c)
{
    const auto agent = build_scenario("unknown-urn-reference").agent("").make();
    const std::vector<ReferenceSet> sets{build_discrete_reference_set(10), build_discrete_reference_set(100),
                                         build_continuous_reference_set()};
    for (const auto& a : sets) {
        for (const auto& b : sets) {
            c.require(check_compatibility(a, b, *agent, default_battery(a, b)).status == CompatStatus::compatible,
                      a.id() + " vs " + b.id() + " not compatible");
        }
    }
    const auto known = build_discrete_reference_set(10);
    const auto unknown = build_discrete_reference_set(10, 1.0);
    const auto r = check_compatibility(known, unknown, *agent, default_battery(known, unknown));
    c.require(r.status == CompatStatus::incompatible && r.witness.has_value(),
              "known vs unknown-composition urn not incompatible with a witness");
    if (r.witness) {
        const auto& w = *r.witness;
        const bool ambiguous = spaces_of(w.e0).count("battery-unknown-urn") || spaces_of(w.e1).count("battery-unknown-urn");
        c.require(ambiguous && w.under_r0 != w.under_r1, "witness does not involve the ambiguous event");
    }

    const auto ells = build_scenario("ellsberg-two-urn");
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            // Sweeps are defined on [0.05, 0.95].
            std::vector<Fraction> shared;
            for (const auto& l : shared_grid(sets[i], sets[j])) {
                if (l >= Fraction(1, 20) && l <= Fraction(19, 20)) shared.push_back(l);
            }
            const auto t = sensitivity_sweep(ells.distribution("known-urn-df"), ells.distribution("unknown-urn-df"),
                                             {sets[i], sets[j]}, shared, *ells.agent("").make(), Comparison::external);
            c.require(t.column(sets[i].id()) == t.column(sets[j].id()),
                      "sweep columns differ for " + sets[i].id() + " and " + sets[j].id());
        }
    }
}

// -- determinism -------------------------------------------------------------------

void determinism(Check& c)
{
    Session s;
    ExecutionContext ctx;
    ctx.catalog = &s.catalog;
    ctx.log = s.log;
    ctx.responder = [](const JudgmentQuery& q) -> std::optional<Answer> {
        return q.first.key() < q.second.key() ? Answer::first_greater : Answer::second_greater;
    };
    for (const auto& name : scenario_names()) {
        const auto ex = execute({{"op", "scenario"}, {"name", name}}, ctx);
        s.verdicts.push_back({{"request", ex.request}, {"result", ex.result}});
    }
    const std::vector<Json> more{
        {{"op", "alpha"}, {"scenario", "alpha-calibration"}, {"f", "D(mu)"}, {"g", "C(mu|x)"}, {"h", "U(z)"}},
        {{"op", "compat"}, {"r0", "urn:10"}, {"r1", "unknown-urn:10"}, {"scenario", "unknown-urn-reference"}},
        {{"op", "sweep"}, {"scenario", "ellsberg-two-urn"}, {"f", "known-urn-df"}, {"g", "unknown-urn-df"}},
        {{"op", "compare"}, {"mode", "internal"}, {"scenario", "governor-election"}, {"source", "interactive"},
         {"f", "analyst-df"}, {"g", "lopsided-df"}},
    };
    for (const auto& r : more) {
        const auto ex = execute(r, ctx);
        s.verdicts.push_back({{"request", ex.request}, {"result", ex.result}});
    }
    for (const auto& source : {"agent", "interactive"}) {
        const auto ex = execute({{"op", "elicit"}, {"scenario", "governor-election"}, {"source", source}, {"budget", 60}},
                                ctx);
        s.traces.push_back({{"request", ex.request}, {"result", ex.result}});
    }
    const auto path = std::filesystem::temp_directory_path() / "credo-acceptance-session.json";
    save_session(path.string(), s);
    const auto one = replay_session(load_session(path.string()));
    const auto two = replay_session(load_session(path.string()));
    std::filesystem::remove(path);
    c.require(one.entries == s.verdicts.size() + s.traces.size(), "not every entry was replayed");
    c.require(one.mismatches == 0, std::to_string(one.mismatches) + " replayed verdicts differ");
    c.require(one.text == two.text, "two replays differ");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"discrete event families match brute force", discrete_families},
        {"Bernoulli(1/2) family at 1/2 has two members", bernoulli_half},
        {"Ellsberg verdicts across the lambda range", ellsberg},
        {"strength-order laws on 200 random pairs", strength_laws},
        {"fiducial identity and vague-prior approximation", fiducial_identity},
        {"fiducial against Bayesian verdict directions", normal_mean_directions},
        {"alpha endpoints, calibration and representative invariance", alpha},
        {"elicitation convergence and monotone acceptance", elicitation},
        {"reference-set compatibility and sweep agreement", compatibility},
        {"session replay determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            run(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS " : "FAIL ") << name;
        if (!c.ok) std::cout << " -- " << c.why.str();
        std::cout << "\n";
        failures += c.ok ? 0 : 1;
    }
    std::cout << (10 - failures) << "/10 criteria passed\n";
    return failures;
}
