// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "meritfair/example1.hpp"
#include "meritfair/fairness.hpp"
#include "meritfair/procedure.hpp"
#include "meritfair/roc.hpp"
#include "meritfair/theorem.hpp"
#include "oracles.hpp"

using namespace meritfair;

namespace {

struct AcceptanceCriterion {
    int number;
    std::string name;
    double time_limit_s;  // <= 0: no runtime bound
    std::function<std::string()> check;  // empty string = pass, otherwise reason
};

#define EXPECT(cond)                                           \
    do {                                                       \
        if (!(cond)) return std::string("failed: ") + #cond;   \
    } while (0)

std::string example1_reproduction() {
    const auto pop = example1::population();
    EXPECT(merit_counts(pop, AttributeEquals{"sex", "M"}) == (MeritCounts{2000, 4000}));
    EXPECT(merit_counts(pop, AttributeEquals{"sex", "F"}) == (MeritCounts{500, 3500}));
    const auto table = expected_contingency(pop, example1::global_procedure(), "sex");
    EXPECT(table.total_convictions(Merit::Guilty) == Rational(1875));
    EXPECT(table.total_convictions(Merit::Innocent) == Rational(750));
    EXPECT(table.cell("M", Merit::Guilty).expected_convictions == Rational(1500));
    EXPECT(table.cell("M", Merit::Innocent).expected_convictions == Rational(400));
    EXPECT(table.cell("F", Merit::Guilty).expected_convictions == Rational(375));
    EXPECT(table.cell("F", Merit::Innocent).expected_convictions == Rational(350));
    const auto justice = justice_metrics(table);
    const auto& m = justice.groups.at(0);
    const auto& f = justice.groups.at(1);
    EXPECT(m.value == "M" && f.value == "F");
    EXPECT(m.mistaken_convictions == Rational(400));
    EXPECT(m.convictions == Rational(1900));
    EXPECT(f.guilty_share.has_value() && *f.guilty_share == Rational(375, 725));
    return {};
}

std::string group_fair_verdict() {
    const auto pop = example1::population();
    const Procedure proc = make_group_fair(Rational(3, 4), Rational(1, 10), "sex", {"M", "F"});
    const auto verdict =
        check_pairwise_fairness(proc, pop, AttributeEquals{"sex", "M"}, AttributeEquals{"sex", "F"}, Tolerance{0.0});
    EXPECT(verdict.fair);
    EXPECT(verdict.of(Merit::Guilty).comparable && verdict.of(Merit::Innocent).comparable);
    const auto whole = exact_rates(proc, pop, Everyone{});
    EXPECT(classify(RocPoint::make(*whole.h, *whole.k), 0.0) == ProcedureClass::ImperfectlyJust);
    for (const auto* v : {"M", "F"}) {
        const auto r = exact_rates(proc, pop, AttributeEquals{"sex", v});
        EXPECT(classify(RocPoint::make(*r.h, *r.k), 0.0) == ProcedureClass::ImperfectlyJust);
    }
    return {};
}

// Grid h = i/99, k = j/99. The expected class is derived from the integer
// indices alone, straight from the case definitions.
ProcedureClass grid_oracle(int i, int j) {
    constexpr int N = 99;
    if (i == N && j == 0) return ProcedureClass::PerfectlyJust;       // (i)
    if (i == N && j == N) return ProcedureClass::EveryoneConvicted;   // (ii)
    if (i == 0 && j == 0) return ProcedureClass::EveryoneAcquitted;   // (iii)
    if (i == 0 && j == N) return ProcedureClass::PerfectlyUnjust;
    if (i == N) return ProcedureClass::PerfectForGuilty;               // (iv)
    if (j == 0) return ProcedureClass::PerfectForInnocent;             // (v)
    if (i == j) return ProcedureClass::MeritAgnostic;                  // (vi)
    if (i > j) return ProcedureClass::ImperfectlyJust;                 // (vii)
    return ProcedureClass::UnreasonablyUnjust;
}

std::string taxonomy_coverage() {
    constexpr int N = 99;
    std::vector<std::size_t> seen(std::size(kAllProcedureClasses), 0);
    std::size_t points = 0;
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            const RocPoint p{static_cast<double>(i) / N, static_cast<double>(j) / N};
            const auto c = classify(p, 0.0);
            if (c != grid_oracle(i, j))
                return "point (" + std::to_string(i) + "/99, " + std::to_string(j) + "/99) classified " +
                       to_string(c) + ", expected " + to_string(grid_oracle(i, j));
            ++seen[static_cast<std::size_t>(c)];
            ++points;
        }
    }
    EXPECT(points == 10000);
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (seen[c] == 0) return std::string("class never produced: ") + to_string(kAllProcedureClasses[c]);
    EXPECT(classify({1, 0}) == ProcedureClass::PerfectlyJust);
    EXPECT(classify({1, 1}) == ProcedureClass::EveryoneConvicted);
    EXPECT(classify({0, 0}) == ProcedureClass::EveryoneAcquitted);
    EXPECT(classify({1, 0.4}) == ProcedureClass::PerfectForGuilty);
    EXPECT(classify({0.4, 0}) == ProcedureClass::PerfectForInnocent);
    EXPECT(classify({0.5, 0.5}) == ProcedureClass::MeritAgnostic);
    EXPECT(classify({0.75, 0.1}) == ProcedureClass::ImperfectlyJust);
    EXPECT(classify({0, 1}) == ProcedureClass::PerfectlyUnjust);
    EXPECT(classify({0.1, 0.75}) == ProcedureClass::UnreasonablyUnjust);
    return {};
}

std::string impossibility_theorem() {
    const auto r = verify_theorem(10, 1000, 20240601);
    if (!r.passed())
        return std::to_string(r.counterexamples.size()) + " counterexample(s); first: " +
               r.counterexamples.front().reason;
    EXPECT(r.trials == 1000);
    EXPECT(r.witnessed_instances > 0 && r.perfect_instances > 0);
    std::printf("      perfect=%llu witnessed=%llu unwitnessable=%llu\n",
                static_cast<unsigned long long>(r.perfect_instances),
                static_cast<unsigned long long>(r.witnessed_instances),
                static_cast<unsigned long long>(r.unwitnessable_instances));
    return {};
}

std::string randomized_exemption() {
    const Procedure coin = RandomizedProcedure{GlobalRates{RatePair::make(Rational(1, 2), Rational(1, 2))}};
    AbsoluteFairnessOptions opts;
    opts.mode = AbsoluteMode::Bipartitions;
    opts.max_n = 12;
    std::size_t populations = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::uint64_t t = 0; t < 5; ++t) {
            const auto pop = make_random_population(n, 777, t);
            const auto report = check_absolute_fairness(coin, pop, opts, Tolerance{0.0});
            if (!report.fair || report.violation_count != 0)
                return "violation for n=" + std::to_string(n) + " trial " + std::to_string(t);
            ++populations;
        }
    }
    EXPECT(populations == 60);
    return {};
}

std::string monte_carlo_consistency() {
    const auto pop = example1::population();
    const auto proc = example1::global_procedure();
    const std::uint64_t trials = 400;  // 2500 guilty x 400 = 10^6 guilty draws
    const auto runs = simulate(proc, pop, 31337, trials);
    const auto r = empirical_rates(pop, runs, Everyone{});
    const double n_guilty = static_cast<double>(r.support.n_guilty) * trials;
    const double n_innocent = static_cast<double>(r.support.n_innocent) * trials;
    EXPECT(n_guilty >= 1e6);
    const double dh = std::abs(to_double(*r.h) - 0.75);
    const double dk = std::abs(to_double(*r.k) - 0.10);
    std::printf("      |h-0.75|=%.3g (bound %.3g), |k-0.1|=%.3g (bound %.3g)\n", dh, oracle::three_sigma(0.75, n_guilty),
                dk, oracle::three_sigma(0.10, n_innocent));
    EXPECT(dh <= oracle::three_sigma(0.75, n_guilty));
    EXPECT(dk <= oracle::three_sigma(0.10, n_innocent));
    return {};
}

std::string diamond_geometry() {
    constexpr double tol = 1e-12;
    const double r = 1.0 / std::sqrt(2.0);
    auto near = [&](DiamondPoint d, double x, double y) { return std::abs(d.x - x) <= tol && std::abs(d.y - y) <= tol; };
    EXPECT(near(to_diamond({0, 0}), 0.0, 0.0));            // O bottom
    EXPECT(near(to_diamond({1, 0}), r, r));                // A right
    EXPECT(near(to_diamond({0, 1}), -r, r));               // B left
    EXPECT(near(to_diamond({1, 1}), 0.0, std::sqrt(2.0)));  // Q top

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const RocPoint p{u(rng), u(rng)}, q{u(rng), u(rng)};
        const auto dp = to_diamond(p), dq = to_diamond(q);
        const double before = std::hypot(p.h - q.h, p.k - q.k);
        const double after = std::hypot(dp.x - dq.x, dp.y - dq.y);
        if (std::abs(before - after) > tol) return "distance not preserved for pair " + std::to_string(i);
    }
    return {};
}

}  // namespace

int main() {
    const std::vector<AcceptanceCriterion> criteria{
        {1, "Example-1 reproduction (exact rationals)", 1.0, example1_reproduction},
        {2, "Group-fair verdict coexists with ImperfectlyJust", 0.0, group_fair_verdict},
        {3, "Taxonomy coverage on a 10^4-point grid", 1.0, taxonomy_coverage},
        {4, "Impossibility theorem, n=10, 1000 trials", 60.0, impossibility_theorem},
        {5, "Randomized exemption, coin toss, n<=12", 10.0, randomized_exemption},
        {6, "Monte-Carlo consistency, >=10^6 guilty draws", 30.0, monte_carlo_consistency},
        {7, "Diamond geometry within 1e-12", 0.0, diamond_geometry},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string reason;
        try {
            reason = c.check();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (reason.empty() && c.time_limit_s > 0 && elapsed >= c.time_limit_s)
            reason = "runtime " + std::to_string(elapsed) + " s exceeds " + std::to_string(c.time_limit_s) + " s";
        const bool pass = reason.empty();
        failures += pass ? 0 : 1;
        std::printf("[%s] AC%d %s (%.3f s)%s%s\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(), elapsed,
                    pass ? "" : ": ", reason.c_str());
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
