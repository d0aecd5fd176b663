#include "credo/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "credo/error.hpp"

namespace credo {

std::string to_string(ProposerKind k)
{
    switch (k) {
    case ProposerKind::mass_transfer: return "mass-transfer";
    case ProposerKind::coordinate_perturbation: return "coordinate-perturbation";
    case ProposerKind::quantile_shift: return "quantile-shift";
    case ProposerKind::user_supplied: return "user-supplied";
    }
    return "mass-transfer";
}

ProposerKind proposer_kind_from_string(const std::string& s)
{
    if (s == "mass-transfer") return ProposerKind::mass_transfer;
    if (s == "coordinate-perturbation") return ProposerKind::coordinate_perturbation;
    if (s == "quantile-shift") return ProposerKind::quantile_shift;
    if (s == "user-supplied") return ProposerKind::user_supplied;
    throw Error(Errc::invalid_parameter, "unknown proposer '" + s + "'");
}

std::string to_string(Termination t)
{
    switch (t) {
    case Termination::running: return "running";
    case Termination::budget: return "budget";
    case Termination::convergence: return "convergence";
    case Termination::session_closed: return "session-closed";
    }
    return "running";
}

std::string to_string(Comparison c) { return c == Comparison::internal ? "internal" : "external"; }

namespace {

// Small deterministic draws; std distributions are not portable across
// standard libraries, so draws use plain modulo on the raw engine output.
class Draws {
public:
    Draws(std::uint64_t seed, std::size_t index)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

Distribution with_law(const Distribution& base, Law law, std::size_t index)
{
    Distribution d;
    d.id = "candidate-" + std::to_string(index);
    d.space = base.space;
    d.law = std::move(law);
    d.event_class = base.event_class;
    return d;
}

Law transfer(const DiscretePMF& pmf, Draws& draws, const Fraction& step)
{
    auto m = pmf.masses();
    const auto n = m.size();
    const auto from = draws.below(n);
    auto to = draws.below(n - 1);
    if (to >= from) ++to;
    const auto amount = std::min(step, m[from]);
    m[from] -= amount;
    m[to] += amount;
    return DiscretePMF(pmf.labels(), std::move(m));
}

Law perturb(const DiscretePMF& pmf, Draws& draws, Fraction step)
{
    auto m = pmf.masses();
    const auto n = m.size();
    const auto i = draws.below(n);
    const bool up = draws.below(2) == 0;
    const Fraction spread(static_cast<std::int64_t>(n - 1));
    if (up) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k != i) step = std::min(step, m[k] * spread);
        }
    } else {
        step = std::min(step, m[i]);
    }
    const Fraction share = step / spread;
    const Fraction sign(up ? 1 : -1);
    for (std::size_t k = 0; k < n; ++k) m[k] += sign * (k == i ? step : -share);
    return DiscretePMF(pmf.labels(), std::move(m));
}

// Moves the quantile at a lattice level by step * sd, dragging neighbouring
// knots along with a tent-shaped weight that vanishes at both tails.
Law shift(const ContinuousDF& df, Draws& draws, const Fraction& step)
{
    const double u = static_cast<double>(1 + draws.below(9)) / 10.0;
    const double sign = draws.below(2) == 0 ? 1.0 : -1.0;
    const double sd = std::sqrt(df.variance());
    double delta = sign * to_double(step) * sd;
    const auto& t = df.knots();
    const auto& c = df.cdf_values();
    for (int attempt = 0; attempt < 30; ++attempt, delta /= 2) {
        std::vector<double> moved(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            const double w = c[k] <= u ? c[k] / u : (1.0 - c[k]) / (1.0 - u);
            moved[k] = t[k] + delta * w;
        }
        if (std::adjacent_find(moved.begin(), moved.end(), std::greater_equal<>()) == moved.end()) {
            return ContinuousDF(std::move(moved), c, df.unit());
        }
    }
    return df;
}

}  // namespace

Distribution Proposer::propose(const Distribution& current, std::size_t index) const
{
    if (kind == ProposerKind::user_supplied) {
        if (index >= candidates.size()) throw Error(Errc::invalid_parameter, "no user-supplied candidate left");
        auto d = candidates[index];
        if (d.space != current.space) throw Error(Errc::domain_mismatch, "candidate is for another variable");
        return d;
    }
    if (steps.empty()) throw Error(Errc::invalid_parameter, "proposer has no step sizes");
    Draws draws(seed, index);
    const auto step = steps[draws.below(steps.size())];
    if (kind == ProposerKind::quantile_shift) {
        if (current.is_discrete()) throw Error(Errc::domain_mismatch, "quantile-shift needs a continuous distribution");
        return with_law(current, shift(current.df(), draws, step), index);
    }
    if (!current.is_discrete() || current.pmf().size() < 2) {
        throw Error(Errc::domain_mismatch, to_string(kind) + " needs a pmf with at least two atoms");
    }
    if (kind == ProposerKind::mass_transfer) return with_law(current, transfer(current.pmf(), draws, step), index);
    return with_law(current, perturb(current.pmf(), draws, step), index);
}

Elicitor::Elicitor(Distribution initial, Proposer proposer, Fraction lambda, ReferenceSet r, SourcePtr source,
                   FamilyParams params)
    : current_(std::move(initial)),
      proposer_(std::move(proposer)),
      lambda_(lambda),
      r_(std::move(r)),
      source_(std::move(source)),
      params_(params)
{
    if (!source_) throw Error(Errc::invalid_parameter, "elicitation needs a similarity source");
    if (!r_.contains(lambda_)) {
        throw Error(Errc::resolution_not_available,
                    "lambda = " + format_fraction(lambda_) + " is not in the resolution set of " + r_.id());
    }
    if (proposer_.kind == ProposerKind::user_supplied) {
        proposer_.budget = std::min(proposer_.budget, proposer_.candidates.size());
    }
    if (proposer_.budget == 0) terminated_by_ = Termination::budget;
}

const TraceEntry* Elicitor::step()
{
    if (done()) return nullptr;
    auto candidate = proposer_.propose(current_, next_);
    auto verdict = internally_stronger(candidate, current_, lambda_, r_, *source_, params_);

    TraceEntry entry{next_, std::move(candidate), std::move(verdict), false};
    ++next_;
    if (entry.verdict.relation == Relation::stronger) {
        entry.accepted = true;
        current_ = entry.candidate;
        ties_.clear();
        rejections_ = 0;
    } else {
        ++rejections_;
        if (entry.verdict.relation == Relation::indeterminate) {
            ties_.push_back(entry.candidate);
            if (ties_.size() > kFrontierCandidates) ties_.erase(ties_.begin());
        }
    }
    trace_.push_back(std::move(entry));

    if (rejections_ >= kMaxConsecutiveRejections) {
        terminated_by_ = Termination::convergence;
    } else if (next_ >= proposer_.budget) {
        terminated_by_ = Termination::budget;
    }
    return &trace_.back();
}

std::vector<Distribution> Elicitor::frontier() const
{
    std::vector<Distribution> out{current_};
    for (auto it = ties_.rbegin(); it != ties_.rend(); ++it) {
        const bool dominated = std::any_of(out.begin(), out.end(), [&](const Distribution& member) {
            return internally_stronger(member, *it, lambda_, r_, *source_, params_).relation != Relation::indeterminate;
        });
        if (!dominated) out.push_back(*it);
    }
    return out;
}

ElicitationResult Elicitor::result() const
{
    return ElicitationResult{frontier(), trace_, terminated_by_, current_, proposer_.seed};
}

ElicitationResult elicit(const Distribution& initial, const Proposer& proposer, const Fraction& lambda,
                         const ReferenceSet& r, SourcePtr source, const FamilyParams& params)
{
    Elicitor e(initial, proposer, lambda, r, std::move(source), params);
    try {
        while (e.step()) {
        }
        return e.result();
    } catch (const Error& err) {
        if (err.code() != Errc::judgment_unavailable) throw;
    }
    e.close();
    ElicitationResult partial{{e.current()}, e.trace(), Termination::session_closed, e.current(), proposer.seed};
    return partial;
}

std::vector<std::optional<Relation>> SweepTable::column(const std::string& reference_id) const
{
    std::vector<std::optional<Relation>> out;
    for (const auto& c : cells) {
        if (c.reference_id != reference_id) continue;
        out.push_back(c.verdict ? std::optional<Relation>(c.verdict->relation) : std::nullopt);
    }
    return out;
}

SweepTable sensitivity_sweep(const Distribution& f, const Distribution& g, const std::vector<ReferenceSet>& refs,
                             const std::vector<Fraction>& grid, const SimilaritySource& source,
                             Comparison comparison, const FamilyParams& params)
{
    if (grid.empty()) throw Error(Errc::invalid_parameter, "empty resolution grid");
    if (refs.empty()) throw Error(Errc::invalid_parameter, "no reference sets to sweep");
    for (const auto& l : grid) {
        if (l < Fraction(1, 20) || l > Fraction(19, 20)) {
            throw Error(Errc::invalid_parameter, "sweep resolutions must lie in [0.05, 0.95], got " + format_fraction(l));
        }
    }

    SweepTable table;
    std::map<Relation, std::size_t> counts;
    std::size_t evaluated = 0;
    for (const auto& r : refs) {
        for (const auto& l : grid) {
            SweepCell cell{r.id(), l, std::nullopt};
            if (r.contains(l)) {
                cell.verdict = comparison == Comparison::internal
                                   ? internally_stronger(f, g, l, r, source, params)
                                   : externally_stronger(f, g, l, r, source, params);
                ++counts[cell.verdict->relation];
                ++evaluated;
            }
            table.cells.push_back(std::move(cell));
        }
    }
    std::size_t best = 0;
    for (auto rel : {Relation::stronger, Relation::weaker, Relation::indeterminate}) {
        if (counts[rel] > best) {
            best = counts[rel];
            table.modal = rel;
        }
    }
    table.stability = evaluated ? static_cast<double>(best) / static_cast<double>(evaluated) : 0.0;
    return table;
}

std::vector<Fraction> twentieths_grid()
{
    std::vector<Fraction> out;
    for (int i = 1; i < 20; ++i) out.emplace_back(i, 20);
    return out;
}

}  // namespace credo
