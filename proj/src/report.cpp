#include "meritfair/report.hpp"

namespace meritfair::report {

json rational(const Rational& r) { return json{{"exact", to_string(r)}, {"approx", to_double(r)}}; }

json rational(const std::optional<Rational>& r) { return r ? rational(*r) : json(nullptr); }

json group(const GroupSpec& g) {
    struct Visitor {
        json operator()(const Everyone&) const { return {{"kind", "all"}}; }
        json operator()(const AttributeEquals& a) const {
            return {{"kind", "attribute"}, {"name", a.name}, {"value", a.value}};
        }
        json operator()(const CriterionEquals& c) const { return {{"kind", "criterion"}, {"X", to_int(c.value)}}; }
        json operator()(const ExplicitIdSet& s) const {
            return {{"kind", "ids"}, {"ids", std::vector<std::string>(s.ids.begin(), s.ids.end())}};
        }
        json operator()(const Singleton& s) const { return {{"kind", "singleton"}, {"id", s.id}}; }
    };
    json out = std::visit(Visitor{}, g);
    out["label"] = describe(g);
    return out;
}

json rates(const ConditionalRates& r) {
    return {{"h", rational(r.h)},
            {"k", rational(r.k)},
            {"n_guilty", r.support.n_guilty},
            {"n_innocent", r.support.n_innocent},
            {"empirical", r.empirical}};
}

namespace {

json comparison(const ClassComparison& c) {
    return {{"J", to_int(c.merit)},         {"rate_a", rational(c.rate_a)},
            {"rate_b", rational(c.rate_b)}, {"difference", rational(c.difference)},
            {"comparable", c.comparable},   {"violated", c.violated}};
}

}  // namespace

json verdict(const FairnessVerdict& v) {
    json classes = json::array();
    for (const auto& c : v.classes) classes.push_back(comparison(c));
    return {{"group_a", v.group_a ? group(*v.group_a) : json(nullptr)},
            {"group_b", v.group_b ? group(*v.group_b) : json(nullptr)},
            {"classes", classes},
            {"tolerance", v.tolerance.value()},
            {"empirical", v.empirical},
            {"fair", v.fair}};
}

json violation(const GroupPairViolation& v) {
    json classes = json::array();
    json violated = json::array();
    for (const auto& c : v.classes) {
        classes.push_back(comparison(c));
        violated.push_back(to_int(c.merit));
    }
    return {{"group_a", v.group_a}, {"group_b", v.group_b}, {"violated_classes", violated}, {"classes", classes}};
}

json absolute(const AbsoluteFairnessReport& r) {
    json list = json::array();
    for (const auto& v : r.violations) list.push_back(violation(v));
    return {{"mode", r.mode == AbsoluteMode::Singletons ? "singletons" : "bipartitions"},
            {"fair", r.fair},
            {"violation_count", r.violation_count},
            {"truncated", r.truncated},
            {"violations", list}};
}

json contingency(const ContingencyTable& t) {
    json cells = json::array();
    for (const auto& c : t.cells) {
        cells.push_back({{"value", c.value},
                         {"J", to_int(c.merit)},
                         {"count", c.count},
                         {"expected_convictions", rational(c.expected_convictions)},
                         {"expected_acquittals", rational(c.expected_acquittals)}});
    }
    return {{"attribute", t.attribute},
            {"values", t.values},
            {"cells", cells},
            {"totals",
             {{"guilty_count", t.total_count(Merit::Guilty)},
              {"innocent_count", t.total_count(Merit::Innocent)},
              {"guilty_convicted", rational(t.total_convictions(Merit::Guilty))},
              {"innocent_convicted", rational(t.total_convictions(Merit::Innocent))}}}};
}

namespace {

json group_justice(const GroupJustice& g) {
    return {{"value", g.value},
            {"convictions", rational(g.convictions)},
            {"guilty_convictions", rational(g.guilty_convictions)},
            {"mistaken_convictions", rational(g.mistaken_convictions)},
            {"guilty_share", rational(g.guilty_share)}};
}

}  // namespace

json justice(const JusticeMetrics& m) {
    json groups = json::array();
    for (const auto& g : m.groups) groups.push_back(group_justice(g));
    return {{"groups", groups}, {"overall", group_justice(m.overall)}};
}

json roc_point(const RocPoint& p, double eps) {
    const auto c = classify(p, eps);
    const auto d = to_diamond(p);
    return {{"h", p.h},   {"k", p.k},       {"eps", eps}, {"class", to_string(c)}, {"merit_agnostic", is_merit_agnostic(c)},
            {"x", d.x},   {"y", d.y}};
}

json witness(const WitnessReport& w) {
    json classes = json::array();
    for (const auto& c : w.classes) {
        classes.push_back({{"J", to_int(c.merit)},
                           {"n_x0", c.n_x0},
                           {"n_x1", c.n_x1},
                           {"conviction_x0", rational(c.conviction_x0)},
                           {"conviction_x1", rational(c.conviction_x1)},
                           {"violated", c.violated}});
    }
    json violated = json::array();
    for (Merit m : w.violated_merit_classes) violated.push_back(to_int(m));
    return {{"status", to_string(w.status)},
            {"group_x1", {{"spec", group(w.group_x1)}, {"ids", w.ids_x1}}},
            {"group_x0", {{"spec", group(w.group_x0)}, {"ids", w.ids_x0}}},
            {"violated_merit_classes", violated},
            {"classes", classes},
            {"point", w.point ? roc_point(*w.point) : json(nullptr)},
            {"procedure_class", w.procedure_class ? json(to_string(*w.procedure_class)) : json(nullptr)}};
}

json property(const PropertyReport& r) {
    json ce = json::array();
    for (const auto& c : r.counterexamples)
        ce.push_back({{"trial", c.trial}, {"reason", c.reason}, {"population", c.population_csv}});
    return {{"passed", r.passed()},
            {"n_individuals", r.n_individuals},
            {"trials", r.trials},
            {"seed", r.seed},
            {"perfect_instances", r.perfect_instances},
            {"witnessed_instances", r.witnessed_instances},
            {"unwitnessable_instances", r.unwitnessable_instances},
            {"bipartitions_checked", r.bipartitions_checked},
            {"counterexamples", ce}};
}

}  // namespace meritfair::report
