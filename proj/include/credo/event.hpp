#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "credo/fraction.hpp"

namespace credo {

/// Immutable event expression over declared outcome spaces and independent
/// scaling events. Copies share structure.
///
/// Leaves are atoms {X = label}, open intervals {lo < X < hi} and scaling
/// events L(b) = {V* < b}. Each scaling event carries a tag; distinct tags
/// denote mutually independent spinners, equal tags denote the same spinner.
class EventExpr {
public:
    enum class Kind { never, always, atom, interval, scaling, any_of, all_of, complement };

    EventExpr();  // never

    static EventExpr never();
    static EventExpr always();
    static EventExpr atom(std::string space, std::string label);
    static EventExpr interval(std::string space, double lo, double hi);
    static EventExpr scaling(Fraction b, std::string tag);
    static EventExpr any_of(std::vector<EventExpr> children);
    static EventExpr all_of(std::vector<EventExpr> children);
    static EventExpr complement(EventExpr child);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const std::string& space() const;  // atom, interval
    [[nodiscard]] const std::string& label() const;  // atom
    [[nodiscard]] double lo() const;                 // interval
    [[nodiscard]] double hi() const;                 // interval
    [[nodiscard]] const Fraction& coefficient() const;  // scaling
    [[nodiscard]] const std::string& tag() const;       // scaling
    [[nodiscard]] const std::vector<EventExpr>& children() const;  // any_of, all_of, complement

    /// Canonical text form. Two expressions are structurally identical iff
    /// their keys are equal.
    [[nodiscard]] const std::string& key() const;

    friend bool operator==(const EventExpr& a, const EventExpr& b) { return a.key() == b.key(); }
    friend bool operator<(const EventExpr& a, const EventExpr& b) { return a.key() < b.key(); }

private:
    struct Node;
    explicit EventExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

EventExpr operator|(const EventExpr& a, const EventExpr& b);
EventExpr operator&(const EventExpr& a, const EventExpr& b);
EventExpr operator!(const EventExpr& a);

/// Flattens nested unions/intersections, drops identities, removes double
/// complements, folds L(0)/L(1) and sorts children. Idempotent.
EventExpr normalize(const EventExpr& e);

/// Random variables an event depends on: "space:<id>" and "tag:<tag>".
std::set<std::string> variables(const EventExpr& e);
std::set<std::string> spaces_of(const EventExpr& e);

/// Events over disjoint sets of independent variables are independent.
bool independent(const EventExpr& a, const EventExpr& b);

/// (weak ∩ L(alpha)^c) ∪ (strong ∩ L(alpha)) with L tagged `tag`.
EventExpr scaling_mixture(const EventExpr& weak, const EventExpr& strong, const Fraction& alpha,
                          const std::string& tag);

struct MixtureParts {
    EventExpr weak;
    EventExpr strong;
    Fraction alpha;
    std::string tag;
};

/// Recognizes the two-branch shape built by scaling_mixture, also after
/// normalization.
std::optional<MixtureParts> match_scaling_mixture(const EventExpr& e);

/// Plain-language rendering for people answering judgment queries.
std::string describe(const EventExpr& e);

std::string format_real(double x);

}  // namespace credo
