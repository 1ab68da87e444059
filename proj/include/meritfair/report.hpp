#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "meritfair/fairness.hpp"
#include "meritfair/population.hpp"
#include "meritfair/procedure.hpp"
#include "meritfair/rational.hpp"
#include "meritfair/roc.hpp"
#include "meritfair/theorem.hpp"

// JSON renderings of library results. Rationals appear as
// {"exact": "a/b", "approx": <double>}; undefined values as null.
// Field-level schemas live in schemas/*.schema.json.

namespace meritfair::report {

using nlohmann::json;

json rational(const Rational& r);
json rational(const std::optional<Rational>& r);
json group(const GroupSpec& g);
json rates(const ConditionalRates& r);
json verdict(const FairnessVerdict& v);
json violation(const GroupPairViolation& v);
json absolute(const AbsoluteFairnessReport& r);
json contingency(const ContingencyTable& t);
json justice(const JusticeMetrics& m);
json roc_point(const RocPoint& p, double eps = 0.0);
json witness(const WitnessReport& w);
json property(const PropertyReport& r);

}  // namespace meritfair::report
