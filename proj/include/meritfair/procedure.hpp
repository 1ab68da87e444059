#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "meritfair/population.hpp"
#include "meritfair/rational.hpp"

namespace meritfair {

/// Conviction probabilities of a procedure: h = P(U=0 | J=0) for the guilty,
/// k = P(U=0 | J=1) for the innocent.
struct RatePair {
    Rational h;
    Rational k;

    /// Throws Error{Domain} unless both lie in [0, 1].
    static RatePair make(Rational h, Rational k);

    const Rational& of(Merit m) const noexcept { return m == Merit::Guilty ? h : k; }
    friend bool operator==(const RatePair&, const RatePair&) = default;
};

/// U = X for every individual.
struct DeterministicProcedure {
    friend bool operator==(const DeterministicProcedure&, const DeterministicProcedure&) = default;
};

struct GlobalRates {
    RatePair rates;
    friend bool operator==(const GlobalRates&, const GlobalRates&) = default;
};

/// Rates keyed by the value of a single attribute.
struct PerGroupRates {
    std::string attribute;
    std::map<std::string, RatePair> rates;
    friend bool operator==(const PerGroupRates&, const PerGroupRates&) = default;
};

struct RandomizedProcedure {
    std::variant<GlobalRates, PerGroupRates> rates;
    friend bool operator==(const RandomizedProcedure&, const RandomizedProcedure&) = default;
};

using Procedure = std::variant<DeterministicProcedure, RandomizedProcedure>;

/// Conditional conviction rates of one (sub)population. A rate is present only
/// when its merit class has support; `empirical` marks rates counted from
/// simulated outcomes rather than known probabilities.
struct ConditionalRates {
    std::optional<Rational> h;
    std::optional<Rational> k;
    MeritCounts support;
    bool empirical = false;

    const std::optional<Rational>& rate(Merit m) const noexcept { return m == Merit::Guilty ? h : k; }
    /// Throws Error{UndefinedRate} when the class has no support.
    const Rational& require(Merit m) const;
    /// P(U=1 | J=m) = 1 - P(U=0 | J=m).
    std::optional<Rational> acquittal_rate(Merit m) const;
};

/// 1 = acquitted, 0 = convicted, stored in population order.
struct OutcomeAssignment {
    enum class Provenance : std::uint8_t { Deterministic, Simulated };

    std::vector<std::uint8_t> outcomes;
    Provenance provenance = Provenance::Deterministic;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    std::size_t size() const noexcept { return outcomes.size(); }
    int outcome(std::size_t index) const { return outcomes.at(index); }
};

/// P(U=0) for one individual under the procedure.
Rational conviction_probability(const Procedure& proc, const Individual& ind);

OutcomeAssignment apply_deterministic(const DeterministicProcedure& proc, const Population& pop);

/// Exact conditional rates of group g. Deterministic procedures count
/// misclassifications; randomized procedures report their configured rates
/// and fail with AmbiguousRate when members of one merit class in g fall
/// under different configured rates.
ConditionalRates exact_rates(const Procedure& proc, const Population& pop, const GroupSpec& g);

/// Independent Bernoulli draws per individual and trial. Trial t uses its own
/// mt19937_64 stream seeded from splitmix64(seed, t), and the draw compares the
/// raw 64-bit output against p * 2^64 exactly, so results are bit-stable
/// across platforms and independent of how trials are scheduled.
std::vector<OutcomeAssignment> simulate(const RandomizedProcedure& proc, const Population& pop, std::uint64_t seed,
                                        std::uint64_t trials);

/// Rates counted over all trials: h = convicted guilty draws / guilty draws.
ConditionalRates empirical_rates(const Population& pop, const std::vector<OutcomeAssignment>& runs,
                                 const GroupSpec& g);

/// The same (h, k) for every listed value of `attribute`.
RandomizedProcedure make_group_fair(const Rational& h, const Rational& k, const std::string& attribute,
                                    const std::set<std::string>& values);

/// Procedure description (JSON):
///   {"type":"deterministic"}
///   {"type":"randomized","rates":{"global":[h,k]}}
///   {"type":"randomized","attribute":"sex","rates":{"M":[h,k],"F":[h,k]}}
/// Probabilities may be JSON numbers, decimal strings or "a/b" strings.
Procedure parse_procedure(std::istream& in);
Procedure parse_procedure_text(const std::string& text);
Procedure load_procedure_file(const std::string& path);
std::string procedure_to_json(const Procedure& proc);

}  // namespace meritfair
