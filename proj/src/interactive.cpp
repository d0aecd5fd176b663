#include "credo/interactive.hpp"

#include <chrono>
#include <ctime>

#include "credo/error.hpp"

namespace credo {

std::string to_string(Answer a)
{
    switch (a) {
    case Answer::first_greater: return "first-greater";
    case Answer::second_greater: return "second-greater";
    case Answer::equal: return "equal";
    }
    return "equal";
}

Answer answer_from_string(const std::string& s)
{
    if (s == "first-greater") return Answer::first_greater;
    if (s == "second-greater") return Answer::second_greater;
    if (s == "equal") return Answer::equal;
    throw Error(Errc::parse_error, "answer must be first-greater, second-greater or equal, got '" + s + "'");
}

namespace {

Answer mirror(Answer a)
{
    switch (a) {
    case Answer::first_greater: return Answer::second_greater;
    case Answer::second_greater: return Answer::first_greater;
    case Answer::equal: return Answer::equal;
    }
    return a;
}

std::string triple_key(const EventExpr& shared, const EventExpr& first, const EventExpr& second, bool shared_first)
{
    return std::string(shared_first ? "S<" : "S>") + shared.key() + "|" + first.key() + "|" + second.key();
}

}  // namespace

std::string JudgmentQuery::key() const { return triple_key(shared, first, second, shared_first); }

std::string JudgmentQuery::swapped_key() const { return triple_key(shared, second, first, shared_first); }

std::string JudgmentQuery::prompt() const
{
    if (shared_first) {
        return "Relative to \"" + describe(shared) + "\", which feels more alike in how confident you are: (1) \"" +
               describe(first) + "\" or (2) \"" + describe(second) + "\"?";
    }
    return "Which event feels more like \"" + describe(shared) + "\" in how confident you are that it happens: (1) \"" +
           describe(first) + "\" or (2) \"" + describe(second) + "\"?";
}

std::optional<Answer> JudgmentLog::lookup(const JudgmentQuery& q) const
{
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(q.key()); it != cache_.end()) return it->second;
    if (auto it = cache_.find(q.swapped_key()); it != cache_.end()) return mirror(it->second);
    return std::nullopt;
}

Answer JudgmentLog::record(JudgmentQuery q)
{
    if (!q.answer) throw Error(Errc::invalid_parameter, "cannot record an unanswered query");
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(q.key()); it != cache_.end()) return it->second;
    if (auto it = cache_.find(q.swapped_key()); it != cache_.end()) return mirror(it->second);
    cache_.emplace(q.key(), *q.answer);
    const auto a = *q.answer;
    entries_.push_back(std::move(q));
    return a;
}

std::vector<JudgmentQuery> JudgmentLog::entries() const
{
    std::lock_guard lock(mutex_);
    return entries_;
}

std::size_t JudgmentLog::size() const
{
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::string JudgmentLog::next_id() const
{
    std::lock_guard lock(mutex_);
    return "q" + std::to_string(entries_.size() + 1);
}

InteractiveSource::InteractiveSource(std::string id, std::shared_ptr<JudgmentLog> log, Responder responder)
    : id_(std::move(id)), log_(log ? std::move(log) : std::make_shared<JudgmentLog>()), responder_(std::move(responder))
{
}

SimilarityValue InteractiveSource::judge(const EventExpr& a, const EventExpr& b) const
{
    return SimilarityValue{id_, a, b, std::nullopt, false, shared_from_this()};
}

Ordering InteractiveSource::order(const SimilarityValue& x, const SimilarityValue& y) const
{
    if (x.a == y.a && x.b == y.b) return Ordering::equal;

    JudgmentQuery q;
    if (x.b == y.b) {
        q.shared = x.b;
        q.first = x.a;
        q.second = y.a;
    } else if (x.a == y.a) {
        q.shared = x.a;
        q.first = x.b;
        q.second = y.b;
        q.shared_first = true;
    } else {
        return Ordering::incomparable;
    }

    auto answer = log_->lookup(q);
    if (!answer) {
        if (closed_) throw Error(Errc::judgment_unavailable, "session closed with an unanswered query");
        q.id = log_->next_id();
        q.asked_at = utc_timestamp();
        if (!responder_) throw QueryPending(q);
        answer = responder_(q);
        if (!answer) throw Error(Errc::judgment_unavailable, "no answer given to " + q.id);
        q.answer = answer;
        q.answered_at = utc_timestamp();
        answer = log_->record(q);
    }
    switch (*answer) {
    case Answer::first_greater: return Ordering::greater;
    case Answer::second_greater: return Ordering::less;
    case Answer::equal: return Ordering::equal;
    }
    return Ordering::incomparable;
}

SourcePtr InteractiveSource::under(std::span<const SpaceView>) const { return shared_from_this(); }

std::shared_ptr<InteractiveSource> replay_source(std::string id, std::shared_ptr<JudgmentLog> log)
{
    auto s = std::make_shared<InteractiveSource>(std::move(id), std::move(log));
    s->close();
    return s;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace credo
