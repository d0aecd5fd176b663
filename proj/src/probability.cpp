#include "credo/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "credo/error.hpp"

namespace credo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One independent variable split into the cells the event can distinguish.
template <class Num>
struct Variable {
    enum class Kind { discrete, continuous, spinner } kind;
    std::string name;
    std::vector<Num> weights;
    std::vector<std::string> labels;                   // discrete; "" marks the rest bucket
    std::vector<std::pair<double, double>> bounds;     // continuous
    std::vector<std::pair<Fraction, Fraction>> spans;  // spinner
};

struct Compiled {
    EventExpr::Kind kind;
    std::size_t var = 0;
    std::vector<char> truth;  // per cell of `var`, for leaves
    std::vector<Compiled> children;
};

struct Collected {
    std::map<std::string, std::set<std::string>> atoms;     // space -> labels
    std::map<std::string, std::set<double>> breakpoints;    // space -> finite endpoints
    std::map<std::string, std::set<Fraction>> thresholds;   // tag -> coefficients
};

void collect(const EventExpr& e, Collected& c)
{
    switch (e.kind()) {
    case EventExpr::Kind::atom:
        c.atoms[e.space()].insert(e.label());
        break;
    case EventExpr::Kind::interval: {
        auto& bp = c.breakpoints[e.space()];
        if (std::isfinite(e.lo())) bp.insert(e.lo());
        if (std::isfinite(e.hi())) bp.insert(e.hi());
        break;
    }
    case EventExpr::Kind::scaling:
        c.thresholds[e.tag()].insert(e.coefficient());
        break;
    default:
        for (const auto& child : e.children()) collect(child, c);
    }
}

template <class Num>
Num to_num(const Fraction& f)
{
    if constexpr (std::is_same_v<Num, Fraction>) {
        return f;
    } else {
        return to_double(f);
    }
}

template <class Num>
std::vector<Variable<Num>> build_variables(const Collected& c, const LawLookup& lookup)
{
    std::vector<Variable<Num>> vars;
    std::set<std::string> spaces;
    for (const auto& [s, _] : c.atoms) spaces.insert(s);
    for (const auto& [s, _] : c.breakpoints) spaces.insert(s);

    for (const auto& s : spaces) {
        const Law* law = lookup(s);
        if (!law) throw Error(Errc::domain_mismatch, "no law for space '" + s + "'");
        Variable<Num> v;
        v.name = s;
        if (const auto* pmf = std::get_if<DiscretePMF>(law)) {
            if (c.breakpoints.count(s)) throw Error(Errc::domain_mismatch, "interval event on discrete space '" + s + "'");
            v.kind = Variable<Num>::Kind::discrete;
            const auto& mentioned = c.atoms.at(s);
            Num rest = Num(0);
            bool any_rest = false;
            for (std::size_t i = 0; i < pmf->size(); ++i) {
                if (mentioned.count(pmf->labels()[i])) continue;
                rest += to_num<Num>(pmf->masses()[i]);
                any_rest = true;
            }
            for (const auto& label : mentioned) {
                if (!pmf->index_of(label)) throw Error(Errc::domain_mismatch, "space '" + s + "' has no atom '" + label + "'");
                v.labels.push_back(label);
                v.weights.push_back(to_num<Num>(pmf->mass(label)));
            }
            if (any_rest) {
                v.labels.emplace_back();
                v.weights.push_back(rest);
            }
        } else {
            if (c.atoms.count(s)) throw Error(Errc::domain_mismatch, "atom event on continuous space '" + s + "'");
            if constexpr (std::is_same_v<Num, Fraction>) {
                throw Error(Errc::domain_mismatch, "exact probability requested for continuous space '" + s + "'");
            } else {
                const auto& df = std::get<ContinuousDF>(*law);
                v.kind = Variable<Num>::Kind::continuous;
                std::vector<double> cuts{-kInf};
                const auto& bp = c.breakpoints.at(s);
                cuts.insert(cuts.end(), bp.begin(), bp.end());
                cuts.push_back(kInf);
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                    v.bounds.emplace_back(cuts[i], cuts[i + 1]);
                    v.weights.push_back(df.cdf(cuts[i + 1]) - df.cdf(cuts[i]));
                }
            }
        }
        vars.push_back(std::move(v));
    }

    for (const auto& [tag, ts] : c.thresholds) {
        Variable<Num> v;
        v.kind = Variable<Num>::Kind::spinner;
        v.name = tag;
        std::vector<Fraction> cuts{Fraction(0)};
        for (const auto& t : ts) {
            if (t > Fraction(0) && t < Fraction(1)) cuts.push_back(t);
        }
        cuts.push_back(Fraction(1));
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            v.spans.emplace_back(cuts[i], cuts[i + 1]);
            v.weights.push_back(to_num<Num>(cuts[i + 1] - cuts[i]));
        }
        vars.push_back(std::move(v));
    }
    return vars;
}

template <class Num>
Compiled compile(const EventExpr& e, const std::vector<Variable<Num>>& vars,
                 const std::map<std::string, std::size_t>& space_index,
                 const std::map<std::string, std::size_t>& tag_index)
{
    Compiled out{e.kind(), 0, {}, {}};
    switch (e.kind()) {
    case EventExpr::Kind::atom: {
        out.var = space_index.at(e.space());
        const auto& v = vars[out.var];
        for (const auto& l : v.labels) out.truth.push_back(!l.empty() && l == e.label());
        break;
    }
    case EventExpr::Kind::interval: {
        out.var = space_index.at(e.space());
        const auto& v = vars[out.var];
        for (const auto& [lo, hi] : v.bounds) out.truth.push_back(e.lo() <= lo && hi <= e.hi());
        break;
    }
    case EventExpr::Kind::scaling: {
        out.var = tag_index.at(e.tag());
        const auto& v = vars[out.var];
        for (const auto& [lo, hi] : v.spans) out.truth.push_back(hi <= e.coefficient());
        break;
    }
    default:
        for (const auto& c : e.children()) out.children.push_back(compile(c, vars, space_index, tag_index));
    }
    return out;
}

bool evaluate(const Compiled& c, const std::vector<std::size_t>& cell)
{
    switch (c.kind) {
    case EventExpr::Kind::never: return false;
    case EventExpr::Kind::always: return true;
    case EventExpr::Kind::atom:
    case EventExpr::Kind::interval:
    case EventExpr::Kind::scaling:
        return c.truth[cell[c.var]] != 0;
    case EventExpr::Kind::complement: return !evaluate(c.children.front(), cell);
    case EventExpr::Kind::any_of:
        return std::any_of(c.children.begin(), c.children.end(), [&](const Compiled& k) { return evaluate(k, cell); });
    case EventExpr::Kind::all_of:
        return std::all_of(c.children.begin(), c.children.end(), [&](const Compiled& k) { return evaluate(k, cell); });
    }
    return false;
}

template <class Num>
Num probability_impl(const EventExpr& e, const LawLookup& lookup)
{
    Collected c;
    collect(e, c);
    auto vars = build_variables<Num>(c, lookup);

    std::map<std::string, std::size_t> space_index, tag_index;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        (vars[i].kind == Variable<Num>::Kind::spinner ? tag_index : space_index)[vars[i].name] = i;
    }
    const auto program = compile(e, vars, space_index, tag_index);

    std::vector<std::size_t> cell(vars.size(), 0);
    Num total = Num(0);
    while (true) {
        Num w = Num(1);
        for (std::size_t i = 0; i < vars.size(); ++i) w *= vars[i].weights[cell[i]];
        if (w != Num(0) && evaluate(program, cell)) total += w;

        std::size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (++cell[i] < vars[i].weights.size()) break;
            cell[i] = 0;
        }
        if (i == vars.size()) break;
    }
    return total;
}

LawLookup single(const Distribution& dist)
{
    return [&dist](const std::string& space) -> const Law* {
        if (space != dist.space) {
            throw Error(Errc::domain_mismatch,
                        "event refers to space '" + space + "' but the distribution is over '" + dist.space + "'");
        }
        return &dist.law;
    };
}

}  // namespace

double probability(const EventExpr& e, const LawLookup& lookup) { return probability_impl<double>(e, lookup); }

Fraction probability_exact(const EventExpr& e, const LawLookup& lookup) { return probability_impl<Fraction>(e, lookup); }

double probability_of(const Distribution& dist, const EventExpr& a) { return probability(a, single(dist)); }

Fraction exact_probability_of(const Distribution& dist, const EventExpr& a)
{
    return probability_exact(a, single(dist));
}

}  // namespace credo
