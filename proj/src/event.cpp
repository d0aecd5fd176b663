#include "credo/event.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "credo/error.hpp"

namespace credo {

struct EventExpr::Node {
    Kind kind = Kind::never;
    std::string space;
    std::string label;  // atom label or scaling tag
    double lo = 0.0;
    double hi = 0.0;
    Fraction coefficient{0};
    std::vector<EventExpr> children;
    std::string key;
};

namespace {

const std::vector<EventExpr>& empty_children()
{
    static const std::vector<EventExpr> none;
    return none;
}

std::string join_keys(const std::vector<EventExpr>& children, const char* sep)
{
    std::string out = "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += sep;
        out += children[i].key();
    }
    out += ")";
    return out;
}

}  // namespace

std::string format_real(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

EventExpr::EventExpr() : EventExpr(never()) {}

EventExpr::EventExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

EventExpr EventExpr::never()
{
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::never;
        n->key = "never";
        return n;
    }();
    return EventExpr(node);
}

EventExpr EventExpr::always()
{
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::always;
        n->key = "always";
        return n;
    }();
    return EventExpr(node);
}

EventExpr EventExpr::atom(std::string space, std::string label)
{
    if (space.empty()) throw Error(Errc::invalid_parameter, "atom without space");
    auto n = std::make_shared<Node>();
    n->kind = Kind::atom;
    n->key = space + "=" + label;
    n->space = std::move(space);
    n->label = std::move(label);
    return EventExpr(std::move(n));
}

EventExpr EventExpr::interval(std::string space, double lo, double hi)
{
    if (space.empty()) throw Error(Errc::invalid_parameter, "interval without space");
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
        throw Error(Errc::invalid_parameter, "interval requires lo < hi, got (" + format_real(lo) + ", " +
                                                 format_real(hi) + ")");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::interval;
    n->key = space + " in (" + format_real(lo) + "," + format_real(hi) + ")";
    n->space = std::move(space);
    n->lo = lo;
    n->hi = hi;
    return EventExpr(std::move(n));
}

EventExpr EventExpr::scaling(Fraction b, std::string tag)
{
    if (b < Fraction(0) || b > Fraction(1)) {
        throw Error(Errc::invalid_parameter, "scaling coefficient outside [0,1]: " + format_fraction(b));
    }
    if (tag.empty()) throw Error(Errc::invalid_parameter, "scaling event without tag");
    auto n = std::make_shared<Node>();
    n->kind = Kind::scaling;
    n->key = "L[" + tag + "](" + format_fraction(b) + ")";
    n->label = std::move(tag);
    n->coefficient = b;
    return EventExpr(std::move(n));
}

EventExpr EventExpr::any_of(std::vector<EventExpr> children)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::any_of;
    n->key = join_keys(children, " | ");
    n->children = std::move(children);
    return EventExpr(std::move(n));
}

EventExpr EventExpr::all_of(std::vector<EventExpr> children)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::all_of;
    n->key = join_keys(children, " & ");
    n->children = std::move(children);
    return EventExpr(std::move(n));
}

EventExpr EventExpr::complement(EventExpr child)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::complement;
    n->key = "!" + child.key();
    n->children.push_back(std::move(child));
    return EventExpr(std::move(n));
}

EventExpr::Kind EventExpr::kind() const { return node_->kind; }
const std::string& EventExpr::space() const { return node_->space; }
const std::string& EventExpr::label() const { return node_->label; }
double EventExpr::lo() const { return node_->lo; }
double EventExpr::hi() const { return node_->hi; }
const Fraction& EventExpr::coefficient() const { return node_->coefficient; }
const std::string& EventExpr::tag() const { return node_->label; }
const std::string& EventExpr::key() const { return node_->key; }

const std::vector<EventExpr>& EventExpr::children() const
{
    return node_ ? node_->children : empty_children();
}

EventExpr operator|(const EventExpr& a, const EventExpr& b) { return EventExpr::any_of({a, b}); }
EventExpr operator&(const EventExpr& a, const EventExpr& b) { return EventExpr::all_of({a, b}); }
EventExpr operator!(const EventExpr& a) { return EventExpr::complement(a); }

namespace {

EventExpr normalize_nary(const EventExpr& e, EventExpr::Kind kind)
{
    const bool is_union = kind == EventExpr::Kind::any_of;
    const auto identity = is_union ? EventExpr::Kind::never : EventExpr::Kind::always;
    const auto absorbing = is_union ? EventExpr::Kind::always : EventExpr::Kind::never;

    std::vector<EventExpr> flat;
    for (const auto& child : e.children()) {
        auto c = normalize(child);
        if (c.kind() == identity) continue;
        if (c.kind() == absorbing) return c;
        if (c.kind() == kind) {
            flat.insert(flat.end(), c.children().begin(), c.children().end());
        } else {
            flat.push_back(std::move(c));
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return is_union ? EventExpr::never() : EventExpr::always();
    if (flat.size() == 1) return flat.front();
    return is_union ? EventExpr::any_of(std::move(flat)) : EventExpr::all_of(std::move(flat));
}

}  // namespace

EventExpr normalize(const EventExpr& e)
{
    switch (e.kind()) {
    case EventExpr::Kind::never:
    case EventExpr::Kind::always:
    case EventExpr::Kind::atom:
    case EventExpr::Kind::interval:
        return e;
    case EventExpr::Kind::scaling:
        if (e.coefficient() == Fraction(0)) return EventExpr::never();
        if (e.coefficient() == Fraction(1)) return EventExpr::always();
        return e;
    case EventExpr::Kind::complement: {
        auto inner = normalize(e.children().front());
        if (inner.kind() == EventExpr::Kind::never) return EventExpr::always();
        if (inner.kind() == EventExpr::Kind::always) return EventExpr::never();
        if (inner.kind() == EventExpr::Kind::complement) return inner.children().front();
        return EventExpr::complement(std::move(inner));
    }
    case EventExpr::Kind::any_of:
    case EventExpr::Kind::all_of:
        return normalize_nary(e, e.kind());
    }
    return e;
}

namespace {

void collect_variables(const EventExpr& e, std::set<std::string>& out)
{
    switch (e.kind()) {
    case EventExpr::Kind::atom:
    case EventExpr::Kind::interval:
        out.insert("space:" + e.space());
        break;
    case EventExpr::Kind::scaling:
        out.insert("tag:" + e.tag());
        break;
    default:
        for (const auto& c : e.children()) collect_variables(c, out);
    }
}

}  // namespace

std::set<std::string> variables(const EventExpr& e)
{
    std::set<std::string> out;
    collect_variables(e, out);
    return out;
}

std::set<std::string> spaces_of(const EventExpr& e)
{
    std::set<std::string> out;
    for (const auto& v : variables(e)) {
        if (v.rfind("space:", 0) == 0) out.insert(v.substr(6));
    }
    return out;
}

bool independent(const EventExpr& a, const EventExpr& b)
{
    auto va = variables(a);
    auto vb = variables(b);
    return std::none_of(va.begin(), va.end(), [&](const std::string& v) { return vb.count(v) > 0; });
}

EventExpr scaling_mixture(const EventExpr& weak, const EventExpr& strong, const Fraction& alpha,
                          const std::string& tag)
{
    auto spinner = EventExpr::scaling(alpha, tag);
    return EventExpr::any_of({EventExpr::all_of({weak, EventExpr::complement(spinner)}),
                              EventExpr::all_of({strong, spinner})});
}

namespace {

struct SpinnerLiteral {
    std::size_t index;
    std::string tag;
    Fraction alpha;
    bool complemented;
};

std::vector<SpinnerLiteral> spinner_literals(const EventExpr& branch)
{
    std::vector<SpinnerLiteral> out;
    if (branch.kind() != EventExpr::Kind::all_of) return out;
    const auto& kids = branch.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const auto& c = kids[i];
        const EventExpr* scaling = nullptr;
        bool complemented = false;
        if (c.kind() == EventExpr::Kind::scaling) {
            scaling = &c;
        } else if (c.kind() == EventExpr::Kind::complement &&
                   c.children().front().kind() == EventExpr::Kind::scaling) {
            scaling = &c.children().front();
            complemented = true;
        }
        if (!scaling) continue;
        bool shared = false;
        for (std::size_t j = 0; j < kids.size(); ++j) {
            if (j != i && variables(kids[j]).count("tag:" + scaling->tag())) shared = true;
        }
        if (!shared) out.push_back({i, scaling->tag(), scaling->coefficient(), complemented});
    }
    return out;
}

EventExpr without_child(const EventExpr& branch, std::size_t index)
{
    std::vector<EventExpr> rest;
    for (std::size_t i = 0; i < branch.children().size(); ++i) {
        if (i != index) rest.push_back(branch.children()[i]);
    }
    return rest.size() == 1 ? rest.front() : EventExpr::all_of(std::move(rest));
}

}  // namespace

std::optional<MixtureParts> match_scaling_mixture(const EventExpr& e)
{
    if (e.kind() != EventExpr::Kind::any_of || e.children().size() != 2) return std::nullopt;
    const auto& b0 = e.children()[0];
    const auto& b1 = e.children()[1];
    for (const auto& l0 : spinner_literals(b0)) {
        for (const auto& l1 : spinner_literals(b1)) {
            if (l0.tag != l1.tag || l0.alpha != l1.alpha || l0.complemented == l1.complemented) continue;
            auto r0 = without_child(b0, l0.index);
            auto r1 = without_child(b1, l1.index);
            if (l0.complemented) return MixtureParts{r0, r1, l0.alpha, l0.tag};
            return MixtureParts{r1, r0, l0.alpha, l0.tag};
        }
    }
    return std::nullopt;
}

std::string describe(const EventExpr& e)
{
    switch (e.kind()) {
    case EventExpr::Kind::never: return "the impossible event";
    case EventExpr::Kind::always: return "the certain event";
    case EventExpr::Kind::atom: return e.space() + " is '" + e.label() + "'";
    case EventExpr::Kind::interval: {
        const bool open_lo = std::isinf(e.lo());
        const bool open_hi = std::isinf(e.hi());
        if (open_lo && open_hi) return e.space() + " takes any value";
        if (open_lo) return e.space() + " < " + format_real(e.hi());
        if (open_hi) return e.space() + " > " + format_real(e.lo());
        return format_real(e.lo()) + " < " + e.space() + " < " + format_real(e.hi());
    }
    case EventExpr::Kind::scaling:
        return "spinner " + e.tag() + " stops below " + format_fraction(e.coefficient());
    case EventExpr::Kind::complement: return "not (" + describe(e.children().front()) + ")";
    case EventExpr::Kind::any_of:
    case EventExpr::Kind::all_of: {
        const char* sep = e.kind() == EventExpr::Kind::any_of ? " or " : " and ";
        std::string out;
        for (std::size_t i = 0; i < e.children().size(); ++i) {
            if (i) out += sep;
            const auto& c = e.children()[i];
            const bool leaf = c.children().empty();
            out += leaf ? describe(c) : "(" + describe(c) + ")";
        }
        return out;
    }
    }
    return e.key();
}

}  // namespace credo
