#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meritfair/population.hpp"
#include "meritfair/procedure.hpp"
#include "meritfair/rational.hpp"

namespace meritfair {

/// Non-negative threshold on |rate difference|. Zero means exact comparison.
class Tolerance {
public:
    constexpr Tolerance() = default;
    explicit Tolerance(double value);
    double value() const noexcept { return value_; }
    bool exact() const noexcept { return value_ == 0.0; }
    /// True when `difference` (already non-negative) exceeds the tolerance.
    bool exceeded_by(const Rational& difference) const noexcept;

private:
    double value_ = 0.0;
};

/// One merit class compared across two groups.
struct ClassComparison {
    Merit merit = Merit::Guilty;
    std::optional<Rational> rate_a;
    std::optional<Rational> rate_b;
    std::optional<Rational> difference;
    bool comparable = false;
    bool violated = false;
};

struct FairnessVerdict {
    std::optional<GroupSpec> group_a;
    std::optional<GroupSpec> group_b;
    std::array<ClassComparison, 2> classes;
    Tolerance tolerance;
    bool empirical = false;
    bool fair = true;

    const ClassComparison& of(Merit m) const noexcept { return classes[static_cast<std::size_t>(to_int(m))]; }
    std::vector<Merit> violated_classes() const;
};

ClassComparison compare_class(Merit m, const std::optional<Rational>& a, const std::optional<Rational>& b,
                              Tolerance tol);

/// Same-merit, cross-group equality of conviction rates, both classes.
/// A class missing from either side is incomparable and imposes no constraint.
FairnessVerdict check_pairwise_fairness(const ConditionalRates& a, const ConditionalRates& b, Tolerance tol);

FairnessVerdict check_pairwise_fairness(const Procedure& proc, const Population& pop, const GroupSpec& a,
                                        const GroupSpec& b, Tolerance tol);

/// A pair of groups (each a sorted id list) on which fairness fails.
struct GroupPairViolation {
    std::vector<std::string> group_a;
    std::vector<std::string> group_b;
    std::vector<ClassComparison> classes;  // violated classes only
    /// Bit i set iff population member i is in group_a (bipartitions only).
    std::uint64_t subset_mask = 0;
};

enum class AbsoluteMode : std::uint8_t { Singletons, Bipartitions };

struct AbsoluteFairnessOptions {
    AbsoluteMode mode = AbsoluteMode::Singletons;
    std::size_t max_n = 15;
    /// Cap on listed singleton pairs; bipartitions are always listed in full.
    std::size_t max_reported = 1000;
};

struct AbsoluteFairnessReport {
    AbsoluteMode mode = AbsoluteMode::Singletons;
    bool fair = true;
    std::uint64_t violation_count = 0;
    std::vector<GroupPairViolation> violations;
    bool truncated = false;
};

/// Largest population accepted by bipartition enumeration.
inline constexpr std::size_t kMaxBipartitionSize = 30;

/// Every nontrivial subset S (always holding member 0) against its complement,
/// using per-individual conviction probabilities. Ordered by subset mask.
std::vector<GroupPairViolation> violating_bipartitions(const Population& pop, std::span<const Rational> conviction,
                                                       Tolerance tol, std::size_t max_n);

AbsoluteFairnessReport check_absolute_fairness(const Procedure& proc, const Population& pop,
                                               const AbsoluteFairnessOptions& options, Tolerance tol);

struct ContingencyCell {
    std::string value;
    Merit merit = Merit::Guilty;
    std::int64_t count = 0;
    Rational expected_convictions;
    Rational expected_acquittals;
};

struct ContingencyTable {
    std::string attribute;
    std::vector<std::string> values;    // first-appearance order
    std::vector<ContingencyCell> cells;  // per value: guilty, then innocent

    const ContingencyCell& cell(const std::string& value, Merit m) const;
    /// Summed over every group value.
    Rational total_convictions(Merit m) const;
    std::int64_t total_count(Merit m) const;
};

/// Expected convictions per (attribute value, merit) cell: the sum of member
/// conviction probabilities, which is count x rate for homogeneous cells.
ContingencyTable expected_contingency(const Population& pop, const Procedure& proc, const std::string& attribute);

struct GroupJustice {
    std::string value;
    Rational convictions;
    Rational guilty_convictions;
    Rational mistaken_convictions;  // innocent convicted
    std::optional<Rational> guilty_share;
};

struct JusticeMetrics {
    std::vector<GroupJustice> groups;
    GroupJustice overall;
};

JusticeMetrics justice_metrics(const ContingencyTable& table);

}  // namespace meritfair
