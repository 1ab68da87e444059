#pragma once

#include <string>

#include "meritfair/fairness.hpp"
#include "meritfair/population.hpp"
#include "meritfair/procedure.hpp"
#include "meritfair/roc.hpp"

namespace meritfair::example1 {

// Sex-split criminal-trial population: M 2000 guilty / 4000 innocent,
// F 500 guilty / 3500 innocent (10000 people in total).
inline constexpr std::int64_t kMaleGuilty = 2000;
inline constexpr std::int64_t kMaleInnocent = 4000;
inline constexpr std::int64_t kFemaleGuilty = 500;
inline constexpr std::int64_t kFemaleInnocent = 3500;
/// Headcount stated in the source prose; the tables only account for 10000.
inline constexpr std::int64_t kStatedHeadcount = 12000;

Population population();

/// h = 3/4 for the guilty, k = 1/10 for the innocent, sex-blind.
RandomizedProcedure global_procedure();
/// The same rates configured per sex value.
RandomizedProcedure group_fair_procedure();

struct Stage {
    std::string name;
    Procedure procedure;
    ContingencyTable table;
    JusticeMetrics justice;
    FairnessVerdict verdict;  // sex=M vs sex=F at tolerance 0
    ProcedureClass procedure_class = ProcedureClass::ImperfectlyJust;
};

struct Report {
    MeritCounts male;
    MeritCounts female;
    MeritCounts total;
    Stage global;
    Stage group_fair;
    std::string headcount_note;
};

Report run();

}  // namespace meritfair::example1
