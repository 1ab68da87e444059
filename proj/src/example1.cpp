#include "meritfair/example1.hpp"

namespace meritfair::example1 {

Population population() {
    std::vector<Individual> members;
    members.reserve(static_cast<std::size_t>(kMaleGuilty + kMaleInnocent + kFemaleGuilty + kFemaleInnocent));
    auto add = [&](const char* sex, Merit merit, std::int64_t count) {
        for (std::int64_t i = 0; i < count; ++i) {
            Individual ind;
            ind.id = std::string(sex) + (merit == Merit::Guilty ? "g" : "i") + std::to_string(i);
            ind.merit = merit;
            ind.attributes.emplace("sex", sex);
            members.push_back(std::move(ind));
        }
    };
    add("M", Merit::Guilty, kMaleGuilty);
    add("M", Merit::Innocent, kMaleInnocent);
    add("F", Merit::Guilty, kFemaleGuilty);
    add("F", Merit::Innocent, kFemaleInnocent);
    return Population(std::move(members));
}

RandomizedProcedure global_procedure() {
    return RandomizedProcedure{GlobalRates{RatePair::make(Rational(3, 4), Rational(1, 10))}};
}

RandomizedProcedure group_fair_procedure() { return make_group_fair(Rational(3, 4), Rational(1, 10), "sex", {"M", "F"}); }

namespace {

Stage run_stage(std::string name, const Population& pop, const RandomizedProcedure& proc) {
    Stage s;
    s.name = std::move(name);
    s.procedure = proc;
    s.table = expected_contingency(pop, s.procedure, "sex");
    s.justice = justice_metrics(s.table);
    s.verdict = check_pairwise_fairness(s.procedure, pop, AttributeEquals{"sex", "M"}, AttributeEquals{"sex", "F"},
                                        Tolerance{});
    const auto whole = exact_rates(s.procedure, pop, Everyone{});
    s.procedure_class = classify(RocPoint::make(*whole.h, *whole.k));
    return s;
}

}  // namespace

Report run() {
    const Population pop = population();
    Report r;
    r.male = merit_counts(pop, AttributeEquals{"sex", "M"});
    r.female = merit_counts(pop, AttributeEquals{"sex", "F"});
    r.total = merit_counts(pop, Everyone{});
    r.global = run_stage("global", pop, global_procedure());
    r.group_fair = run_stage("group-fair", pop, group_fair_procedure());
    r.headcount_note = "The example's prose states a population of " + std::to_string(kStatedHeadcount) +
                       " individuals, but its attribute and guilt tables sum to " + std::to_string(r.total.total()) +
                       "; the tables are reproduced here.";
    return r;
}

}  // namespace meritfair::example1
