#include "credo/strength.hpp"

#include "credo/agent.hpp"
#include "credo/error.hpp"

namespace credo {

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::stronger: return "stronger";
    case Relation::weaker: return "weaker";
    case Relation::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

std::string to_string(VerdictKind k)
{
    switch (k) {
    case VerdictKind::internal: return "internal";
    case VerdictKind::external: return "external";
    case VerdictKind::external_general: return "external-general";
    }
    return "internal";
}

std::string to_string(Choice c)
{
    switch (c) {
    case Choice::f_favored: return "F-favored";
    case Choice::g_favored: return "G-favored";
    case Choice::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

std::string to_string(AlphaStatus s) { return s == AlphaStatus::solved ? "solved" : "no-solution"; }

namespace {

void require_resolution(const ReferenceSet& r, const Fraction& lambda)
{
    if (!r.contains(lambda)) {
        throw Error(Errc::resolution_not_available,
                    "lambda = " + format_fraction(lambda) + " is not in the resolution set of " + r.id());
    }
}

void require_independent(const ReferenceSet& r, const Distribution& d)
{
    if (r.base().id == d.space) {
        throw Error(Errc::domain_mismatch, "reference set " + r.id() + " is built on the variable of " + d.id);
    }
}

Relation relation_of(Ordering o)
{
    if (o == Ordering::greater) return Relation::stronger;
    if (o == Ordering::less) return Relation::weaker;
    return Relation::indeterminate;
}

SideExtremum best_over(const Distribution& dist, const std::vector<ReasoningProcess>& processes,
                       const Fraction& lambda, const ReferenceSet& r, const SimilaritySource& source,
                       const FamilyParams& params, bool minimum, const std::string& prefix)
{
    if (processes.empty()) throw Error(Errc::invalid_parameter, "empty set of reasoning processes");
    auto best = side_extremum(dist, processes.front(), lambda, r, source, params, minimum, prefix);
    for (std::size_t i = 1; i < processes.size(); ++i) {
        auto next = side_extremum(dist, processes[i], lambda, r, source, params, minimum, prefix);
        if (compare(next.value, best.value) == Ordering::greater) best = std::move(next);
    }
    return best;
}

}  // namespace

std::optional<Lens> lens_for(const Distribution& dist, const ReasoningProcess& process, const ReferenceSet& r)
{
    const Distribution* d = &dist;
    if (!process.applies_to(d->event_class)) {
        if (!d->approximates || !process.applies_to(d->approximates->event_class)) return std::nullopt;
        d = d->approximates.get();
    }
    Lens out;
    out.evaluated = d;
    out.process = process.name;
    out.views.push_back(SpaceView{d->space, d->law, process.ambiguity_for(d->event_class), std::nullopt});
    out.views.push_back(reference_view(r));
    return out;
}

SideExtremum side_extremum(const Distribution& dist, const ReasoningProcess& process, const Fraction& lambda,
                           const ReferenceSet& r, const SimilaritySource& source, const FamilyParams& params,
                           bool minimum, const std::string& tag_prefix)
{
    const auto ref = r.event(lambda);
    auto lens = lens_for(dist, process, r);
    if (!lens) return SideExtremum{source.floor_value(EventExpr::never(), ref), std::nullopt, std::nullopt,
                                   process.name, dist.id};

    const auto family = event_family(*lens->evaluated, lambda, params, tag_prefix);
    const auto judge = source.under(lens->views);
    auto ext = minimum ? min_similarity(*judge, family, ref) : max_similarity(*judge, family, ref);
    return SideExtremum{std::move(ext.value), std::move(ext.witness), ext.index, process.name, lens->evaluated->id};
}

StrengthVerdict internally_stronger(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                    const ReferenceSet& r, const SimilaritySource& source,
                                    const FamilyParams& params)
{
    if (f.space != g.space) {
        throw Error(Errc::domain_mismatch, f.id + " and " + g.id + " are not over the same variable");
    }
    if (f.is_discrete() != g.is_discrete()) {
        throw Error(Errc::domain_mismatch, f.id + " and " + g.id + " mix discrete and continuous laws");
    }
    require_independent(r, f);
    require_resolution(r, lambda);

    const auto direct = direct_evaluation();
    StrengthVerdict v;
    v.kind = VerdictKind::internal;
    v.lambda = lambda;
    v.reference_id = r.id();
    v.f_id = f.id;
    v.g_id = g.id;
    v.low_f = side_extremum(f, direct, lambda, r, source, params, true, "LF");
    v.opposing = side_extremum(g, direct, lambda, r, source, params, true, "LG");
    v.relation = relation_of(compare(v.low_f.value, v.opposing.value));
    return v;
}

StrengthVerdict externally_stronger(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                    const ReferenceSet& r, const SimilaritySource& source,
                                    const FamilyParams& params)
{
    require_independent(r, f);
    require_independent(r, g);
    require_resolution(r, lambda);

    const auto direct = direct_evaluation();
    StrengthVerdict v;
    v.kind = VerdictKind::external;
    v.lambda = lambda;
    v.reference_id = r.id();
    v.f_id = f.id;
    v.g_id = g.id;
    v.low_f = side_extremum(f, direct, lambda, r, source, params, true, "LF");
    v.opposing = side_extremum(g, direct, lambda, r, source, params, false, "LG");
    v.reverse_low = side_extremum(g, direct, lambda, r, source, params, true, "LG");
    v.reverse_high = side_extremum(f, direct, lambda, r, source, params, false, "LF");
    if (compare(v.low_f.value, v.opposing.value) == Ordering::greater) {
        v.relation = Relation::stronger;
    } else if (compare(v.reverse_low->value, v.reverse_high->value) == Ordering::greater) {
        v.relation = Relation::weaker;
    }
    return v;
}

StrengthVerdict externally_stronger_general(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                            const ReferenceSet& r, const std::vector<ReasoningProcess>& m_f,
                                            const std::vector<ReasoningProcess>& m_g,
                                            const SimilaritySource& source, const FamilyParams& params)
{
    require_independent(r, f);
    require_independent(r, g);
    require_resolution(r, lambda);

    StrengthVerdict v;
    v.kind = VerdictKind::external_general;
    v.lambda = lambda;
    v.reference_id = r.id();
    v.f_id = f.id;
    v.g_id = g.id;
    v.low_f = best_over(f, m_f, lambda, r, source, params, true, "LF");
    v.opposing = best_over(g, m_g, lambda, r, source, params, false, "LG");
    v.reverse_low = best_over(g, m_g, lambda, r, source, params, true, "LG");
    v.reverse_high = best_over(f, m_f, lambda, r, source, params, false, "LF");
    if (compare(v.low_f.value, v.opposing.value) == Ordering::greater) {
        v.relation = Relation::stronger;
    } else if (compare(v.reverse_low->value, v.reverse_high->value) == Ordering::greater) {
        v.relation = Relation::weaker;
    }
    return v;
}

ChoiceResult choose_distribution(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                 const ReferenceSet& r, const std::vector<ReasoningProcess>& m,
                                 const SimilaritySource& source, const FamilyParams& params)
{
    if (f.space != g.space) {
        throw Error(Errc::domain_mismatch, f.id + " and " + g.id + " are not proposals for the same variable");
    }
    ChoiceResult out;
    out.verdict = externally_stronger_general(f, g, lambda, r, m, m, source, params);
    if (out.verdict.relation == Relation::stronger) out.choice = Choice::f_favored;
    if (out.verdict.relation == Relation::weaker) out.choice = Choice::g_favored;
    return out;
}

EvenSimilarity even_similarity(const Distribution& f, const Fraction& lambda, const ReferenceSet& r,
                               const SimilaritySource& source, const FamilyParams& params,
                               const ReasoningProcess& process)
{
    require_independent(r, f);
    require_resolution(r, lambda);
    EvenSimilarity out;
    out.low = side_extremum(f, process, lambda, r, source, params, true, "LF");
    out.high = side_extremum(f, process, lambda, r, source, params, false, "LF");
    out.even = compare(out.low.value, out.high.value) == Ordering::equal;
    return out;
}

bool is_even_similarity(const Distribution& f, const Fraction& lambda, const ReferenceSet& r,
                        const SimilaritySource& source, const FamilyParams& params)
{
    return even_similarity(f, lambda, r, source, params).even;
}

namespace {

struct AlphaSide {
    ReasoningProcess process;
    Lens lens;
    EventFamily family;
    SideExtremum low;
};

AlphaSide alpha_side(const char* name, const Distribution& d, const Fraction& lambda, const ReferenceSet& r,
                     const SimilaritySource& source, const AlphaOptions& options, const std::string& prefix)
{
    std::optional<AlphaSide> best;
    for (const auto& p : options.processes) {
        auto lens = lens_for(d, p, r);
        if (!lens) continue;
        auto low = side_extremum(d, p, lambda, r, source, options.params, true, prefix);
        if (!best || compare(low.value, best->low.value) == Ordering::greater) {
            auto family = event_family(*lens->evaluated, lambda, options.params, prefix);
            best = AlphaSide{p, std::move(*lens), std::move(family), std::move(low)};
        }
    }
    if (!best) {
        throw Error(Errc::precondition_violated, std::string("no reasoning process applies to ") + name);
    }
    const auto even = even_similarity(d, lambda, r, source, options.params, best->process);
    if (!even.even) {
        throw Error(Errc::precondition_violated, std::string(name) + " (" + d.id + ") is not even-similarity");
    }
    return std::move(*best);
}

const EventExpr& representative(const AlphaSide& side, const std::optional<std::size_t>& index)
{
    if (!index) return *side.low.witness;
    if (*index >= side.family.size()) throw Error(Errc::invalid_parameter, "representative index out of range");
    return side.family.members[*index];
}

}  // namespace

AlphaResult alpha_measure(const Distribution& f, const Distribution& g, const Distribution& h, const Fraction& lambda,
                          const ReferenceSet& r, const SimilaritySource& source, const AlphaOptions& options)
{
    if (f.space == h.space) {
        throw Error(Errc::precondition_violated, "F and H must be over independent variables, both use " + f.space);
    }
    for (const auto* d : {&f, &g, &h}) require_independent(r, *d);
    require_resolution(r, lambda);
    if (!(options.tolerance > 0)) throw Error(Errc::invalid_parameter, "tolerance must be positive");

    const auto side_f = alpha_side("F", f, lambda, r, source, options, "LF");
    const auto side_g = alpha_side("G", g, lambda, r, source, options, "LG");
    const auto side_h = alpha_side("H", h, lambda, r, source, options, "LH");

    if (externally_stronger_general(g, f, lambda, r, options.processes, options.processes, source, options.params)
            .relation == Relation::weaker) {
        throw Error(Errc::precondition_violated, "G is externally weaker than F");
    }
    if (externally_stronger_general(g, h, lambda, r, options.processes, options.processes, source, options.params)
            .relation == Relation::stronger) {
        throw Error(Errc::precondition_violated, "G is externally stronger than H");
    }

    AlphaResult out;
    out.rep_f = representative(side_f, options.rep_f);
    out.rep_g = representative(side_g, options.rep_g);
    out.rep_h = representative(side_h, options.rep_h);
    out.process_f = side_f.process.name;
    out.process_g = side_g.process.name;
    out.process_h = side_h.process.name;

    const auto ref = r.event(lambda);
    out.target = source.under(side_g.lens.views)->judge(out.rep_g, ref);

    auto mix_views = side_f.lens.views;
    mix_views.insert(mix_views.end(), side_h.lens.views.begin(), side_h.lens.views.end());
    const auto mix_judge = source.under(mix_views);
    auto mixture = [&](const Fraction& a) {
        return mix_judge->judge(scaling_mixture(out.rep_f, out.rep_h, a, "alpha"), ref);
    };

    out.at_zero = mixture(Fraction(0));
    out.at_one = mixture(Fraction(1));
    const auto o0 = compare(out.at_zero, out.target);
    const auto o1 = compare(out.at_one, out.target);
    auto solved = [&](const Fraction& a, double width) {
        out.status = AlphaStatus::solved;
        out.alpha_exact = a;
        out.alpha = to_double(a);
        out.tolerance = width;
        return out;
    };
    if (o0 == Ordering::equal) return solved(Fraction(0), 0.0);
    if (o1 == Ordering::equal) return solved(Fraction(1), 0.0);
    const bool brackets = (o0 == Ordering::less && o1 == Ordering::greater) ||
                          (o0 == Ordering::greater && o1 == Ordering::less);
    if (!brackets) {
        out.status = AlphaStatus::no_solution;
        return out;
    }

    Fraction lo(0), hi(1);
    while (to_double(hi - lo) > options.tolerance) {
        const Fraction mid = (lo + hi) / Fraction(2);
        const auto o = compare(mixture(mid), out.target);
        out.history.push_back(AlphaStep{lo, hi, mid, o});
        if (o == Ordering::equal) return solved(mid, to_double(hi - lo) / 2);
        if (o == Ordering::incomparable) {
            out.status = AlphaStatus::no_solution;
            return out;
        }
        (o == o0 ? lo : hi) = mid;
    }
    return solved((lo + hi) / Fraction(2), to_double(hi - lo) / 2);
}

}  // namespace credo
