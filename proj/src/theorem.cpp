#include "meritfair/theorem.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "meritfair/error.hpp"
#include "meritfair/procedure.hpp"

namespace meritfair {

const char* to_string(WitnessStatus s) noexcept {
    switch (s) {
        case WitnessStatus::Perfect: return "perfect";
        case WitnessStatus::Witnessed: return "witnessed";
        case WitnessStatus::Unwitnessable: return "unwitnessable";
    }
    return "?";
}

namespace {

void require_deterministic_population(const Population& pop) {
    if (pop.empty()) throw Error(ErrorCode::InvalidArgument, "witness construction needs a non-empty population");
    for (const auto& ind : pop)
        if (!ind.criterion)
            throw Error(ErrorCode::MissingCriterion, "individual '" + ind.id +
                                                         "' has no criterion X; a deterministic procedure is required");
}

}  // namespace

WitnessReport construct_witness(const Population& pop) {
    require_deterministic_population(pop);
    WitnessReport report;
    bool perfect = true;
    for (const auto& ind : pop) {
        const bool acquit = *ind.criterion == Criterion::Acquit;
        (acquit ? report.ids_x1 : report.ids_x0).push_back(ind.id);
        auto& wc = report.classes[static_cast<std::size_t>(to_int(ind.merit))];
        ++(acquit ? wc.n_x1 : wc.n_x0);
        if (to_int(*ind.criterion) != to_int(ind.merit)) perfect = false;
    }
    std::sort(report.ids_x1.begin(), report.ids_x1.end());
    std::sort(report.ids_x0.begin(), report.ids_x0.end());

    for (Merit m : kMeritClasses) {
        auto& wc = report.classes[static_cast<std::size_t>(to_int(m))];
        wc.merit = m;
        // U = X: everyone on the X=0 side is convicted, nobody on the X=1 side.
        if (wc.n_x0 > 0) wc.conviction_x0 = Rational(1);
        if (wc.n_x1 > 0) wc.conviction_x1 = Rational(0);
        wc.violated = wc.n_x0 > 0 && wc.n_x1 > 0;
        if (wc.violated) report.violated_merit_classes.push_back(m);
    }

    if (perfect)
        report.status = WitnessStatus::Perfect;
    else if (report.violated_merit_classes.empty())
        report.status = WitnessStatus::Unwitnessable;
    else
        report.status = WitnessStatus::Witnessed;

    const auto& guilty = report.classes[0];
    const auto& innocent = report.classes[1];
    if (guilty.n_x0 + guilty.n_x1 > 0 && innocent.n_x0 + innocent.n_x1 > 0) {
        const Rational h(guilty.n_x0, guilty.n_x0 + guilty.n_x1);
        const Rational k(innocent.n_x0, innocent.n_x0 + innocent.n_x1);
        report.point = RocPoint::make(h, k);
        report.procedure_class = classify(*report.point);
    }
    return report;
}

std::vector<GroupPairViolation> exhaustive_search(const Population& pop, std::size_t max_n) {
    if (pop.size() > max_n)
        throw Error(ErrorCode::PopulationTooLarge, "population of " + std::to_string(pop.size()) +
                                                       " exceeds exhaustive search limit " + std::to_string(max_n));
    require_deterministic_population(pop);
    const Procedure proc = DeterministicProcedure{};
    std::vector<Rational> conviction;
    conviction.reserve(pop.size());
    for (const auto& ind : pop) conviction.push_back(conviction_probability(proc, ind));
    return violating_bipartitions(pop, conviction, Tolerance{}, max_n);
}

bool contains_split(const std::vector<GroupPairViolation>& violations, const std::vector<std::string>& ids_a,
                    const std::vector<std::string>& ids_b) {
    return std::any_of(violations.begin(), violations.end(), [&](const GroupPairViolation& v) {
        return (v.group_a == ids_a && v.group_b == ids_b) || (v.group_a == ids_b && v.group_b == ids_a);
    });
}

Population make_random_population(std::size_t n, std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    // Error level per population: 0 yields perfect procedures, 1/2 pure noise.
    constexpr std::uint64_t kFlipPer16[] = {0, 1, 3, 8};
    const std::uint64_t flip = kFlipPer16[rng() % 4];
    std::vector<Individual> members;
    members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Individual ind;
        ind.id = "p" + std::to_string(i);
        ind.merit = static_cast<Merit>(rng() & 1U);
        const bool wrong = (rng() % 16) < flip;
        ind.criterion = static_cast<Criterion>(to_int(ind.merit) ^ (wrong ? 1 : 0));
        members.push_back(std::move(ind));
    }
    return Population(std::move(members));
}

PropertyReport verify_theorem(std::size_t n_individuals, std::uint64_t trials, std::uint64_t seed) {
    if (n_individuals > 15)
        throw Error(ErrorCode::PopulationTooLarge, "verify_theorem supports at most 15 individuals");
    PropertyReport report;
    report.n_individuals = n_individuals;
    report.trials = trials;
    report.seed = seed;
    if (n_individuals == 0) return report;

    const Procedure proc = DeterministicProcedure{};
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Population pop = make_random_population(n_individuals, seed, t);
        const WitnessReport witness = construct_witness(pop);
        const auto violations = exhaustive_search(pop, 15);
        report.bipartitions_checked += n_individuals >= 2 ? (std::uint64_t{1} << (n_individuals - 1)) - 1 : 0;

        std::string reason;
        switch (witness.status) {
            case WitnessStatus::Perfect: ++report.perfect_instances; break;
            case WitnessStatus::Witnessed: ++report.witnessed_instances; break;
            case WitnessStatus::Unwitnessable: ++report.unwitnessable_instances; break;
        }

        if (witness.status == WitnessStatus::Witnessed) {
            if (!contains_split(violations, witness.ids_x1, witness.ids_x0))
                reason = "witness split {X=1}/{X=0} missing from exhaustive search";
            for (const auto& wc : witness.classes) {
                if (wc.violated && (wc.conviction_x0 != Rational(1) || wc.conviction_x1 != Rational(0)))
                    reason = "witness probabilities are not exactly 1 vs 0";
            }
        } else if (!violations.empty()) {
            reason = std::string("exhaustive search found violations on a ") + to_string(witness.status) +
                     " instance";
        }

        // Soundness: every reported split fails the pairwise check on its own.
        for (const auto& v : violations) {
            if (!reason.empty()) break;
            const GroupSpec a = ExplicitIdSet{{v.group_a.begin(), v.group_a.end()}};
            const GroupSpec b = ExplicitIdSet{{v.group_b.begin(), v.group_b.end()}};
            const auto verdict = check_pairwise_fairness(proc, pop, a, b, Tolerance{});
            if (verdict.fair) reason = "reported split " + describe(a) + " is fair under check_pairwise_fairness";
        }

        if (!reason.empty()) {
            std::ostringstream csv;
            write_population(csv, pop);
            report.counterexamples.push_back(Counterexample{t, reason, csv.str()});
        }
    }
    return report;
}

}  // namespace meritfair
