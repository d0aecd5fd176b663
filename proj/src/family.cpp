#include "credo/family.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "credo/error.hpp"

namespace credo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_resolution(const Fraction& lambda)
{
    if (lambda <= Fraction(0) || lambda >= Fraction(1)) {
        throw Error(Errc::invalid_resolution, "lambda must lie in (0,1), got " + format_fraction(lambda));
    }
}

double level_to_value(const ContinuousDF& f, const Fraction& u)
{
    if (u == Fraction(0)) return -kInf;
    if (u == Fraction(1)) return kInf;
    return f.quantile(to_double(u));
}

class ContinuousBuilder {
public:
    ContinuousBuilder(const ContinuousDF& f, std::string space, Fraction lambda, int q)
        : f_(f), space_(std::move(space)), lambda_(lambda), q_(q)
    {
    }

    void add(std::vector<std::pair<Fraction, Fraction>> pieces)
    {
        if (!seen_.insert(pieces).second) return;
        std::vector<EventExpr> intervals;
        for (const auto& [u, v] : pieces) {
            intervals.push_back(EventExpr::interval(space_, level_to_value(f_, u), level_to_value(f_, v)));
        }
        family_.members.push_back(intervals.size() == 1 ? intervals.front() : EventExpr::any_of(intervals));
        family_.quantiles.push_back(QuantileUnion{std::move(pieces)});
    }

    [[nodiscard]] Fraction level(int i) const { return Fraction(i, q_); }

    EventFamily take() { return std::move(family_); }

    EventFamily family_;

private:
    const ContinuousDF& f_;
    std::string space_;
    Fraction lambda_;
    int q_;
    std::set<std::vector<std::pair<Fraction, Fraction>>> seen_;
};

}  // namespace

EventFamily event_family_continuous(const ContinuousDF& f, const std::string& space, const Fraction& lambda,
                                    int m_intervals, int q_grid)
{
    check_resolution(lambda);
    if (m_intervals < 1 || m_intervals > 3) throw Error(Errc::invalid_parameter, "m_intervals must be 1, 2 or 3");
    if (q_grid < 20) throw Error(Errc::invalid_parameter, "q_grid must be at least 20");

    ContinuousBuilder b(f, space, lambda, q_grid);
    b.family_.lambda = lambda;
    b.family_.space = space;
    b.family_.construction = Construction::continuous_grid;
    b.family_.params = FamilyParams{m_intervals, q_grid, FamilyParams{}.cap};

    const int q = q_grid;
    // Single intervals anchored at either end.
    for (int i = 0; i <= q; ++i) {
        auto u = b.level(i);
        if (u + lambda <= Fraction(1)) b.add({{u, u + lambda}});
    }
    for (int i = 0; i <= q; ++i) {
        auto v = b.level(i);
        if (v - lambda >= Fraction(0)) b.add({{v - lambda, v}});
    }
    if (m_intervals >= 2) {
        for (int i1 = 0; i1 <= q; ++i1) {
            for (int j1 = i1 + 1; j1 <= q; ++j1) {
                auto first = b.level(j1) - b.level(i1);
                if (first >= lambda) break;
                for (int i2 = j1 + 1; i2 <= q; ++i2) {
                    auto u2 = b.level(i2);
                    auto v2 = u2 + (lambda - first);
                    if (v2 > Fraction(1)) break;
                    b.add({{b.level(i1), b.level(j1)}, {u2, v2}});
                }
            }
        }
    }
    if (m_intervals >= 3) {
        for (int i1 = 0; i1 <= q; ++i1) {
            for (int j1 = i1 + 1; j1 <= q; ++j1) {
                auto first = b.level(j1) - b.level(i1);
                if (first >= lambda) break;
                for (int i2 = j1 + 1; i2 <= q; ++i2) {
                    for (int j2 = i2 + 1; j2 <= q; ++j2) {
                        auto two = first + b.level(j2) - b.level(i2);
                        if (two >= lambda) break;
                        for (int i3 = j2 + 1; i3 <= q; ++i3) {
                            auto u3 = b.level(i3);
                            auto v3 = u3 + (lambda - two);
                            if (v3 > Fraction(1)) break;
                            b.add({{b.level(i1), b.level(j1)}, {b.level(i2), b.level(j2)}, {u3, v3}});
                        }
                    }
                }
            }
        }
    }
    return b.take();
}

EventExpr materialize(const DiscretePMF& f, const std::string& space, const ScaledAtomEvent& s,
                      const std::string& tag)
{
    std::vector<EventExpr> parts;
    for (auto i : s.whole) parts.push_back(EventExpr::atom(space, f.labels()[i]));
    if (s.fractional) {
        parts.push_back(EventExpr::all_of(
            {EventExpr::scaling(s.coefficient, tag), EventExpr::atom(space, f.labels()[*s.fractional])}));
    }
    if (parts.empty()) return EventExpr::never();
    return parts.size() == 1 ? parts.front() : EventExpr::any_of(std::move(parts));
}

EventFamily event_family_discrete(const DiscretePMF& f, const std::string& space, const Fraction& lambda, int cap,
                                  const std::string& tag_prefix)
{
    check_resolution(lambda);
    if (static_cast<int>(f.size()) > cap) {
        throw Error(Errc::enumeration_cap_exceeded,
                    "support of " + std::to_string(f.size()) + " atoms exceeds the cap of " + std::to_string(cap));
    }

    EventFamily family;
    family.lambda = lambda;
    family.space = space;
    family.construction = Construction::discrete_enumeration;
    family.params.cap = cap;

    const auto& m = f.masses();
    const std::size_t n = f.size();
    std::vector<std::size_t> chosen;
    std::vector<char> in_subset(n, 0);

    auto emit = [&](ScaledAtomEvent s) {
        auto tag = tag_prefix + "/" + std::to_string(family.atoms.size());
        family.members.push_back(materialize(f, space, s, tag));
        family.atoms.push_back(std::move(s));
    };

    // Include/exclude recursion over atoms; a partial sum above lambda can
    // never come back down, so that branch is cut.
    auto recurse = [&](auto&& self, std::size_t i, const Fraction& sum) -> void {
        if (i == n) {
            if (sum == lambda) {
                emit(ScaledAtomEvent{chosen, std::nullopt, Fraction(0)});
            } else if (sum < lambda) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (in_subset[j] || sum + m[j] <= lambda) continue;
                    emit(ScaledAtomEvent{chosen, j, (lambda - sum) / m[j]});
                }
            }
            return;
        }
        self(self, i + 1, sum);
        if (sum + m[i] <= lambda) {
            chosen.push_back(i);
            in_subset[i] = 1;
            self(self, i + 1, sum + m[i]);
            in_subset[i] = 0;
            chosen.pop_back();
        }
    };
    recurse(recurse, 0, Fraction(0));
    return family;
}

EventFamily event_family(const Distribution& dist, const Fraction& lambda, const FamilyParams& params,
                         const std::string& tag_prefix)
{
    if (dist.is_discrete()) return event_family_discrete(dist.pmf(), dist.space, lambda, params.cap, tag_prefix);
    return event_family_continuous(dist.df(), dist.space, lambda, params.m_intervals, params.q_grid);
}

}  // namespace credo
