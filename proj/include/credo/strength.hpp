#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credo/distribution.hpp"
#include "credo/family.hpp"
#include "credo/process.hpp"
#include "credo/reference_set.hpp"
#include "credo/similarity.hpp"

namespace credo {

enum class Relation { stronger, weaker, indeterminate };
enum class VerdictKind { internal, external, external_general };

std::string to_string(Relation r);
std::string to_string(VerdictKind k);

/// Extremum of one side, as seen through one reasoning process.
struct SideExtremum {
    SimilarityValue value;
    std::optional<EventExpr> witness;  // nullopt when the process contributed the floor
    std::optional<std::size_t> index;
    std::string process;
    std::string evaluated;  // id of the distribution actually evaluated
};

/// For internal verdicts `low_f`/`opposing` are the two minima; for external
/// verdicts `opposing` is the maximum on the G side. `reverse_low`/
/// `reverse_high` hold min over G and max over F, used to decide "weaker".
struct StrengthVerdict {
    Relation relation = Relation::indeterminate;
    VerdictKind kind = VerdictKind::internal;
    Fraction lambda;
    std::string reference_id;
    std::string f_id;
    std::string g_id;
    SideExtremum low_f;
    SideExtremum opposing;
    std::optional<SideExtremum> reverse_low;
    std::optional<SideExtremum> reverse_high;
};

/// How a process sees a distribution: which distribution it actually
/// evaluates (possibly one that the given function approximates) and the
/// space views it induces. Inapplicable processes yield nullopt.
struct Lens {
    const Distribution* evaluated = nullptr;
    std::vector<SpaceView> views;
    std::string process;
};

std::optional<Lens> lens_for(const Distribution& dist, const ReasoningProcess& process, const ReferenceSet& r);

/// min (or max) of S(member, R(lambda)) over the family of `dist`, under
/// `process`; the floor value when the process does not apply.
SideExtremum side_extremum(const Distribution& dist, const ReasoningProcess& process, const Fraction& lambda,
                           const ReferenceSet& r, const SimilaritySource& source, const FamilyParams& params,
                           bool minimum, const std::string& tag_prefix);

StrengthVerdict internally_stronger(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                    const ReferenceSet& r, const SimilaritySource& source,
                                    const FamilyParams& params = {});

StrengthVerdict externally_stronger(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                    const ReferenceSet& r, const SimilaritySource& source,
                                    const FamilyParams& params = {});

StrengthVerdict externally_stronger_general(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                            const ReferenceSet& r, const std::vector<ReasoningProcess>& m_f,
                                            const std::vector<ReasoningProcess>& m_g,
                                            const SimilaritySource& source, const FamilyParams& params = {});

enum class Choice { f_favored, g_favored, indeterminate };
std::string to_string(Choice c);

struct ChoiceResult {
    Choice choice = Choice::indeterminate;
    StrengthVerdict verdict;
};

ChoiceResult choose_distribution(const Distribution& f, const Distribution& g, const Fraction& lambda,
                                 const ReferenceSet& r, const std::vector<ReasoningProcess>& m,
                                 const SimilaritySource& source, const FamilyParams& params = {});

struct EvenSimilarity {
    bool even = false;
    SideExtremum low;
    SideExtremum high;
};

EvenSimilarity even_similarity(const Distribution& f, const Fraction& lambda, const ReferenceSet& r,
                               const SimilaritySource& source, const FamilyParams& params = {},
                               const ReasoningProcess& process = direct_evaluation());

bool is_even_similarity(const Distribution& f, const Fraction& lambda, const ReferenceSet& r,
                        const SimilaritySource& source, const FamilyParams& params = {});

enum class AlphaStatus { solved, no_solution };
std::string to_string(AlphaStatus s);

struct AlphaStep {
    Fraction lo;
    Fraction hi;
    Fraction mid;
    Ordering mixture_vs_target = Ordering::equal;
};

struct AlphaOptions {
    std::vector<ReasoningProcess> processes{direct_evaluation(), bayesian_reasoning(), fiducial_reasoning()};
    double tolerance = 1e-6;
    /// Representatives by family index; default is each family's min witness.
    std::optional<std::size_t> rep_f;
    std::optional<std::size_t> rep_g;
    std::optional<std::size_t> rep_h;
    FamilyParams params;
};

struct AlphaResult {
    AlphaStatus status = AlphaStatus::no_solution;
    double alpha = 0.0;
    Fraction alpha_exact;
    double tolerance = 0.0;  // width of the final bracket
    std::vector<AlphaStep> history;
    EventExpr rep_f;
    EventExpr rep_g;
    EventExpr rep_h;
    std::string process_f;
    std::string process_g;
    std::string process_h;
    SimilarityValue target;     // S(B, R)
    SimilarityValue at_zero;    // mixture at alpha = 0
    SimilarityValue at_one;     // mixture at alpha = 1
};

/// Solves S(B, R) = S((A ∩ L(a)^c) ∪ (C ∩ L(a)), R) for a by bisection.
/// Throws precondition_violated when F, G or H is not even-similarity, when
/// G is externally weaker than F or stronger than H, or when X and Z share a
/// space. A bracket without sign change is reported as no_solution.
AlphaResult alpha_measure(const Distribution& f, const Distribution& g, const Distribution& h, const Fraction& lambda,
                          const ReferenceSet& r, const SimilaritySource& source, const AlphaOptions& options = {});

}  // namespace credo
