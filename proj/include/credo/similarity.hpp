#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credo/distribution.hpp"
#include "credo/event.hpp"
#include "credo/family.hpp"

namespace credo {

enum class Ordering { greater, less, equal, incomparable };

std::string to_string(Ordering o);

/// Scores closer than this compare equal.
inline constexpr double kEqualityTolerance = 1e-9;

class SimilaritySource;

/// S(a, b) as judged by one source. Simulated agents attach a scalar score;
/// interactive sources resolve comparisons lazily through judgment queries.
struct SimilarityValue {
    std::string source_id;
    EventExpr a;
    EventExpr b;
    std::optional<double> score;
    /// Stand-in for a reasoning process that cannot assess the events;
    /// compares below every other value.
    bool floor = false;
    std::shared_ptr<const SimilaritySource> origin;
};

/// Values from different sources are incomparable. Scored values compare by
/// score with kEqualityTolerance; anything else is delegated to the source.
Ordering compare(const SimilarityValue& x, const SimilarityValue& y);

/// How one variable should be seen while a distribution function for it is
/// being evaluated. `law` is adopted unless the agent already holds a latent
/// belief for the space. `ambiguity` is forced when set; otherwise the
/// agent's own value is kept, or `fallback_ambiguity` for a space the agent
/// has never heard of (nullopt there means the agent's default).
struct SpaceView {
    std::string space;
    std::optional<Law> law;
    std::optional<double> ambiguity;
    std::optional<double> fallback_ambiguity;
};

class SimilaritySource : public std::enable_shared_from_this<SimilaritySource> {
public:
    virtual ~SimilaritySource() = default;

    [[nodiscard]] virtual std::string id() const = 0;
    [[nodiscard]] virtual SimilarityValue judge(const EventExpr& a, const EventExpr& b) const = 0;

    /// Orders two values from this source. Simulated sources compare scores;
    /// interactive sources only compare values sharing an event.
    [[nodiscard]] virtual Ordering order(const SimilarityValue& x, const SimilarityValue& y) const = 0;
    [[nodiscard]] virtual bool totally_comparable() const = 0;

    /// The same judge seeing some variables through a reasoning process.
    [[nodiscard]] virtual std::shared_ptr<const SimilaritySource> under(std::span<const SpaceView> views) const = 0;

    [[nodiscard]] virtual SimilarityValue floor_value(const EventExpr& a, const EventExpr& b) const;
};

using SourcePtr = std::shared_ptr<const SimilaritySource>;

struct Extremum {
    EventExpr witness;
    SimilarityValue value;
    std::size_t index = 0;
};

/// Member minimizing S(member, ref); ties go to the earliest member. With an
/// interactive source this is a sequential tournament of shared-ref queries.
Extremum min_similarity(const SimilaritySource& source, const EventFamily& family, const EventExpr& ref);
Extremum max_similarity(const SimilaritySource& source, const EventFamily& family, const EventExpr& ref);

}  // namespace credo
