#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "credo/similarity.hpp"

namespace credo {

enum class Answer { first_greater, second_greater, equal };

std::string to_string(Answer a);
Answer answer_from_string(const std::string& s);

/// Asks for the ordering of S(first, shared) vs S(second, shared), or of
/// S(shared, first) vs S(shared, second) when `shared_first` is set.
struct JudgmentQuery {
    std::string id;
    EventExpr shared;
    EventExpr first;
    EventExpr second;
    bool shared_first = false;
    std::optional<Answer> answer;
    std::string asked_at;
    std::string answered_at;

    /// Canonical identity of the triple, independent of the id.
    [[nodiscard]] std::string key() const;
    /// Key of the same question with first and second swapped.
    [[nodiscard]] std::string swapped_key() const;
    [[nodiscard]] std::string prompt() const;
};

/// Append-only record of every answered query. Answers are cached by triple;
/// asking the swapped triple returns the mirrored answer.
class JudgmentLog {
public:
    [[nodiscard]] std::optional<Answer> lookup(const JudgmentQuery& q) const;
    /// Appends an answered query. Re-recording a known triple keeps the
    /// first answer and returns it.
    Answer record(JudgmentQuery q);
    [[nodiscard]] std::vector<JudgmentQuery> entries() const;
    [[nodiscard]] std::size_t size() const;
    /// Next query id, "q<n>".
    [[nodiscard]] std::string next_id() const;

private:
    mutable std::mutex mutex_;
    std::vector<JudgmentQuery> entries_;
    std::map<std::string, Answer> cache_;
};

/// Thrown when an interactive source needs an answer that nobody has given
/// yet. The computation can be re-run once the query is answered.
class QueryPending : public std::exception {
public:
    explicit QueryPending(JudgmentQuery q) : query_(std::move(q)) {}
    [[nodiscard]] const JudgmentQuery& query() const { return query_; }
    [[nodiscard]] const char* what() const noexcept override { return "judgment query pending"; }

private:
    JudgmentQuery query_;
};

/// Answers a query on the spot; nullopt means the person walked away.
using Responder = std::function<std::optional<Answer>(const JudgmentQuery&)>;

/// A live person. Values carry no score; two values are comparable only when
/// they share an event in the same position, and each such comparison is
/// one judgment query. Reasoning-process lenses have no effect: the person
/// brings their own reasoning.
class InteractiveSource : public SimilaritySource {
public:
    /// Without a responder, unanswered queries raise QueryPending.
    InteractiveSource(std::string id, std::shared_ptr<JudgmentLog> log, Responder responder = {});

    [[nodiscard]] std::string id() const override { return id_; }
    [[nodiscard]] SimilarityValue judge(const EventExpr& a, const EventExpr& b) const override;
    [[nodiscard]] Ordering order(const SimilarityValue& x, const SimilarityValue& y) const override;
    [[nodiscard]] bool totally_comparable() const override { return false; }
    [[nodiscard]] SourcePtr under(std::span<const SpaceView> views) const override;

    [[nodiscard]] const std::shared_ptr<JudgmentLog>& log() const { return log_; }

    /// Closing makes every unanswered query fail with judgment_unavailable.
    void close() { closed_ = true; }

private:
    std::string id_;
    std::shared_ptr<JudgmentLog> log_;
    Responder responder_;
    bool closed_ = false;
};

/// Answers only from a recorded log; anything else is judgment_unavailable.
/// Used to replay sessions without a person present.
std::shared_ptr<InteractiveSource> replay_source(std::string id, std::shared_ptr<JudgmentLog> log);

std::string utc_timestamp();

}  // namespace credo
