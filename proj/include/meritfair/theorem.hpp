#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meritfair/fairness.hpp"
#include "meritfair/population.hpp"
#include "meritfair/rational.hpp"
#include "meritfair/roc.hpp"

namespace meritfair {

enum class WitnessStatus : std::uint8_t {
    /// X = J for everyone; no group can witness unfairness.
    Perfect,
    /// The {X=1}/{X=0} split violates at least one merit class.
    Witnessed,
    /// Imperfect, but every comparison across the X split is vacuous here.
    Unwitnessable,
};

const char* to_string(WitnessStatus s) noexcept;

/// Conviction probabilities of one merit class on each side of the X split.
/// Under U = X these are always 1 on the X=0 side and 0 on the X=1 side.
struct WitnessClass {
    Merit merit = Merit::Guilty;
    std::int64_t n_x0 = 0;
    std::int64_t n_x1 = 0;
    std::optional<Rational> conviction_x0;
    std::optional<Rational> conviction_x1;
    bool violated = false;
};

struct WitnessReport {
    GroupSpec group_x1 = CriterionEquals{Criterion::Acquit};
    GroupSpec group_x0 = CriterionEquals{Criterion::Convict};
    std::vector<std::string> ids_x1;  // sorted
    std::vector<std::string> ids_x0;  // sorted
    std::array<WitnessClass, 2> classes;
    std::vector<Merit> violated_merit_classes;
    WitnessStatus status = WitnessStatus::Perfect;
    /// Empirical (h, k) of the procedure on this population, when both exist.
    std::optional<RocPoint> point;
    std::optional<ProcedureClass> procedure_class;
};

/// Builds the {X=1}/{X=0} witness for the deterministic procedure U = X.
/// Requires a non-empty population with X on every member.
WitnessReport construct_witness(const Population& pop);

/// Every subset/complement split at tolerance 0, deterministic procedure.
std::vector<GroupPairViolation> exhaustive_search(const Population& pop, std::size_t max_n = 15);

/// True when `violations` contains the split {ids_a}/{ids_b} in either order.
bool contains_split(const std::vector<GroupPairViolation>& violations, const std::vector<std::string>& ids_a,
                    const std::vector<std::string>& ids_b);

struct Counterexample {
    std::uint64_t trial = 0;
    std::string reason;
    std::string population_csv;
};

struct PropertyReport {
    std::size_t n_individuals = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t perfect_instances = 0;
    std::uint64_t witnessed_instances = 0;
    std::uint64_t unwitnessable_instances = 0;
    std::uint64_t bipartitions_checked = 0;
    std::vector<Counterexample> counterexamples;

    bool passed() const noexcept { return counterexamples.empty(); }
};

/// Random populations sampled by `make_random_population`.
Population make_random_population(std::size_t n, std::uint64_t seed, std::uint64_t trial);

/// Checks, per random population, that construct_witness and exhaustive_search
/// agree: a witnessed instance's split is found by the search, every reported
/// split re-verifies through check_pairwise_fairness, and perfect or
/// unwitnessable instances produce no violation at all.
PropertyReport verify_theorem(std::size_t n_individuals, std::uint64_t trials, std::uint64_t seed);

}  // namespace meritfair
