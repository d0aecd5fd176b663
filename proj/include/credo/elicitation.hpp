#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "credo/distribution.hpp"
#include "credo/family.hpp"
#include "credo/reference_set.hpp"
#include "credo/similarity.hpp"
#include "credo/strength.hpp"

namespace credo {

enum class ProposerKind { mass_transfer, coordinate_perturbation, quantile_shift, user_supplied };

std::string to_string(ProposerKind k);
ProposerKind proposer_kind_from_string(const std::string& s);

/// Candidate generator. Candidate i depends only on (seed, i) and the
/// current distribution, so a trace can be regenerated exactly.
struct Proposer {
    ProposerKind kind = ProposerKind::mass_transfer;
    /// Step sizes; one is drawn per candidate. Discrete steps are exact.
    std::vector<Fraction> steps{Fraction(1, 20), Fraction(1, 50), Fraction(1, 100)};
    std::size_t budget = 100;
    std::uint64_t seed = 1;
    std::vector<Distribution> candidates;  // user_supplied, consumed in order

    /// Candidate number `index` (0-based) derived from `current`.
    [[nodiscard]] Distribution propose(const Distribution& current, std::size_t index) const;
};

struct TraceEntry {
    std::size_t index = 0;
    Distribution candidate;
    StrengthVerdict verdict;  // candidate vs the current distribution at the time
    bool accepted = false;
};

enum class Termination { running, budget, convergence, session_closed };

std::string to_string(Termination t);

struct ElicitationResult {
    std::vector<Distribution> frontier;
    std::vector<TraceEntry> trace;
    Termination terminated_by = Termination::running;
    Distribution current;
    std::uint64_t seed = 0;
};

/// Step-at-a-time elicitation loop. A candidate replaces the current
/// distribution iff it is internally stronger. With an interactive source a
/// step may raise QueryPending; nothing is changed in that case and the same
/// step can be retried after the answer is in.
class Elicitor {
public:
    static constexpr std::size_t kMaxConsecutiveRejections = 50;
    static constexpr std::size_t kFrontierCandidates = 10;

    Elicitor(Distribution initial, Proposer proposer, Fraction lambda, ReferenceSet r, SourcePtr source,
             FamilyParams params = {});

    [[nodiscard]] bool done() const { return terminated_by_ != Termination::running; }
    [[nodiscard]] Termination terminated_by() const { return terminated_by_; }
    [[nodiscard]] const Distribution& current() const { return current_; }
    [[nodiscard]] const std::vector<TraceEntry>& trace() const { return trace_; }
    [[nodiscard]] const Proposer& proposer() const { return proposer_; }
    [[nodiscard]] const Fraction& lambda() const { return lambda_; }
    [[nodiscard]] const ReferenceSet& reference() const { return r_; }

    /// Evaluates one candidate. Returns nullptr once the run is over.
    const TraceEntry* step();

    void close() { terminated_by_ = Termination::session_closed; }

    /// Current distribution plus recent candidates that tied with it,
    /// filtered to a mutually non-dominated set.
    [[nodiscard]] std::vector<Distribution> frontier() const;
    [[nodiscard]] ElicitationResult result() const;

private:
    Distribution current_;
    Proposer proposer_;
    Fraction lambda_;
    ReferenceSet r_;
    SourcePtr source_;
    FamilyParams params_;
    std::vector<TraceEntry> trace_;
    std::vector<Distribution> ties_;
    std::size_t next_ = 0;
    std::size_t rejections_ = 0;
    Termination terminated_by_ = Termination::running;
};

/// Runs to completion. A source that gives up ends the run with
/// terminated_by = session_closed and the partial result.
ElicitationResult elicit(const Distribution& initial, const Proposer& proposer, const Fraction& lambda,
                         const ReferenceSet& r, SourcePtr source, const FamilyParams& params = {});

enum class Comparison { internal, external };
std::string to_string(Comparison c);

struct SweepCell {
    std::string reference_id;
    Fraction lambda;
    std::optional<StrengthVerdict> verdict;  // nullopt when lambda is not in the set's resolution
};

struct SweepTable {
    std::vector<SweepCell> cells;
    double stability = 0.0;  // share of evaluated cells agreeing with the modal relation
    Relation modal = Relation::indeterminate;

    /// Verdict relations for one reference set, in grid order.
    [[nodiscard]] std::vector<std::optional<Relation>> column(const std::string& reference_id) const;
};

SweepTable sensitivity_sweep(const Distribution& f, const Distribution& g, const std::vector<ReferenceSet>& refs,
                             const std::vector<Fraction>& grid, const SimilaritySource& source,
                             Comparison comparison, const FamilyParams& params = {});

/// {1/20, 2/20, ..., 19/20}.
std::vector<Fraction> twentieths_grid();

}  // namespace credo
