#include "meritfair/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "meritfair/error.hpp"

namespace meritfair {

Tolerance::Tolerance(double value) : value_(value) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw Error(ErrorCode::InvalidArgument, "tolerance must be a finite non-negative number");
}

bool Tolerance::exceeded_by(const Rational& difference) const noexcept {
    if (exact()) return difference != Rational(0);
    return to_double(difference) > value_;
}

std::vector<Merit> FairnessVerdict::violated_classes() const {
    std::vector<Merit> out;
    for (const auto& c : classes)
        if (c.violated) out.push_back(c.merit);
    return out;
}

ClassComparison compare_class(Merit m, const std::optional<Rational>& a, const std::optional<Rational>& b,
                              Tolerance tol) {
    ClassComparison c;
    c.merit = m;
    c.rate_a = a;
    c.rate_b = b;
    c.comparable = a.has_value() && b.has_value();
    if (c.comparable) {
        c.difference = abs(*a - *b);
        c.violated = tol.exceeded_by(*c.difference);
    }
    return c;
}

FairnessVerdict check_pairwise_fairness(const ConditionalRates& a, const ConditionalRates& b, Tolerance tol) {
    FairnessVerdict v;
    v.tolerance = tol;
    v.empirical = a.empirical || b.empirical;
    for (Merit m : kMeritClasses) {
        auto& slot = v.classes[static_cast<std::size_t>(to_int(m))];
        slot = compare_class(m, a.rate(m), b.rate(m), tol);
        if (slot.violated) v.fair = false;
    }
    return v;
}

FairnessVerdict check_pairwise_fairness(const Procedure& proc, const Population& pop, const GroupSpec& a,
                                        const GroupSpec& b, Tolerance tol) {
    auto v = check_pairwise_fairness(exact_rates(proc, pop, a), exact_rates(proc, pop, b), tol);
    v.group_a = a;
    v.group_b = b;
    return v;
}

namespace {

std::vector<std::string> sorted_ids(const Population& pop, std::uint64_t mask, bool in_mask) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (((mask >> i) & 1U) == static_cast<std::uint64_t>(in_mask)) ids.push_back(pop[i].id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<Rational> conviction_vector(const Procedure& proc, const Population& pop) {
    std::vector<Rational> p;
    p.reserve(pop.size());
    for (const auto& ind : pop) p.push_back(conviction_probability(proc, ind));
    return p;
}

}  // namespace

std::vector<GroupPairViolation> violating_bipartitions(const Population& pop, std::span<const Rational> conviction,
                                                       Tolerance tol, std::size_t max_n) {
    const std::size_t n = pop.size();
    if (conviction.size() != n)
        throw Error(ErrorCode::InvalidArgument, "conviction probabilities do not match population size");
    if (max_n > kMaxBipartitionSize) max_n = kMaxBipartitionSize;
    if (n > max_n)
        throw Error(ErrorCode::PopulationTooLarge,
                    "population of " + std::to_string(n) + " exceeds the bipartition limit of " +
                        std::to_string(max_n) + "; use singletons mode instead");

    std::vector<GroupPairViolation> out;
    if (n < 2) return out;

    Rational total[2] = {Rational(0), Rational(0)};
    std::int64_t total_n[2] = {0, 0};
    std::vector<int> merit(n);
    for (std::size_t i = 0; i < n; ++i) {
        merit[i] = to_int(pop[i].merit);
        total[merit[i]] += conviction[i];
        ++total_n[merit[i]];
    }

    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    // Member 0 always sits in the subset, so each unordered split appears once.
    for (std::uint64_t mask = 1; mask < full; mask += 2) {
        Rational sum[2] = {Rational(0), Rational(0)};
        std::int64_t count[2] = {0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) {
                sum[merit[i]] += conviction[i];
                ++count[merit[i]];
            }
        }
        GroupPairViolation v;
        for (Merit m : kMeritClasses) {
            const int j = to_int(m);
            const std::int64_t rest = total_n[j] - count[j];
            if (count[j] == 0 || rest == 0) continue;
            auto c = compare_class(m, sum[j] / count[j], (total[j] - sum[j]) / rest, tol);
            if (c.violated) v.classes.push_back(std::move(c));
        }
        if (v.classes.empty()) continue;
        v.subset_mask = mask;
        v.group_a = sorted_ids(pop, mask, true);
        v.group_b = sorted_ids(pop, mask, false);
        out.push_back(std::move(v));
    }
    return out;
}

AbsoluteFairnessReport check_absolute_fairness(const Procedure& proc, const Population& pop,
                                               const AbsoluteFairnessOptions& options, Tolerance tol) {
    if (pop.empty()) throw Error(ErrorCode::InvalidArgument, "absolute fairness needs a non-empty population");
    const auto conviction = conviction_vector(proc, pop);
    AbsoluteFairnessReport report;
    report.mode = options.mode;

    if (options.mode == AbsoluteMode::Bipartitions) {
        report.violations = violating_bipartitions(pop, conviction, tol, options.max_n);
        report.violation_count = report.violations.size();
        report.fair = report.violations.empty();
        return report;
    }

    // Singletons: same-merit individuals must share one probability. Members
    // are bucketed by probability (first-appearance order); violating pairs
    // are exactly the cross-bucket pairs.
    for (Merit m : kMeritClasses) {
        std::vector<Rational> bucket_value;
        std::vector<std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (pop[i].merit != m) continue;
            auto it = std::find(bucket_value.begin(), bucket_value.end(), conviction[i]);
            if (it == bucket_value.end()) {
                bucket_value.push_back(conviction[i]);
                buckets.emplace_back();
                it = bucket_value.end() - 1;
            }
            buckets[static_cast<std::size_t>(it - bucket_value.begin())].push_back(i);
        }
        for (std::size_t u = 0; u < buckets.size(); ++u) {
            for (std::size_t w = u + 1; w < buckets.size(); ++w) {
                auto c = compare_class(m, bucket_value[u], bucket_value[w], tol);
                if (!c.violated) continue;
                report.violation_count += static_cast<std::uint64_t>(buckets[u].size() * buckets[w].size());
                for (std::size_t a : buckets[u]) {
                    for (std::size_t b : buckets[w]) {
                        if (report.violations.size() >= options.max_reported) {
                            report.truncated = true;
                            break;
                        }
                        GroupPairViolation v;
                        v.group_a = {pop[a].id};
                        v.group_b = {pop[b].id};
                        v.classes.push_back(c);
                        report.violations.push_back(std::move(v));
                    }
                    if (report.truncated) break;
                }
            }
        }
    }
    report.fair = report.violation_count == 0;
    return report;
}

const ContingencyCell& ContingencyTable::cell(const std::string& value, Merit m) const {
    for (const auto& c : cells)
        if (c.value == value && c.merit == m) return c;
    throw Error(ErrorCode::InvalidArgument, "no contingency cell for " + attribute + "=" + value);
}

Rational ContingencyTable::total_convictions(Merit m) const {
    Rational sum(0);
    for (const auto& c : cells)
        if (c.merit == m) sum += c.expected_convictions;
    return sum;
}

std::int64_t ContingencyTable::total_count(Merit m) const {
    std::int64_t sum = 0;
    for (const auto& c : cells)
        if (c.merit == m) sum += c.count;
    return sum;
}

ContingencyTable expected_contingency(const Population& pop, const Procedure& proc, const std::string& attribute) {
    ContingencyTable table;
    table.attribute = attribute;
    table.values = attribute_values(pop, attribute);
    std::map<std::string, std::size_t> slot;
    for (const auto& v : table.values) {
        slot[v] = table.cells.size();
        for (Merit m : kMeritClasses) table.cells.push_back(ContingencyCell{v, m, 0, Rational(0), Rational(0)});
    }
    for (const auto& ind : pop) {
        const auto* value = ind.attribute(attribute);
        if (value == nullptr)
            throw Error(ErrorCode::MissingAttribute, "individual '" + ind.id + "' lacks attribute '" + attribute + "'");
        auto& c = table.cells[slot[*value] + static_cast<std::size_t>(to_int(ind.merit))];
        const Rational p = conviction_probability(proc, ind);
        ++c.count;
        c.expected_convictions += p;
        c.expected_acquittals += Rational(1) - p;
    }
    return table;
}

namespace {

GroupJustice justice_of(std::string value, const Rational& guilty_conv, const Rational& innocent_conv) {
    GroupJustice g;
    g.value = std::move(value);
    g.guilty_convictions = guilty_conv;
    g.mistaken_convictions = innocent_conv;
    g.convictions = guilty_conv + innocent_conv;
    if (g.convictions != Rational(0)) g.guilty_share = guilty_conv / g.convictions;
    return g;
}

}  // namespace

JusticeMetrics justice_metrics(const ContingencyTable& table) {
    JusticeMetrics out;
    for (const auto& v : table.values) {
        out.groups.push_back(justice_of(v, table.cell(v, Merit::Guilty).expected_convictions,
                                        table.cell(v, Merit::Innocent).expected_convictions));
    }
    out.overall = justice_of("all", table.total_convictions(Merit::Guilty), table.total_convictions(Merit::Innocent));
    return out;
}

}  // namespace meritfair
