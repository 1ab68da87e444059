#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meritfair/rational.hpp"

namespace meritfair {

/// A procedure as a point of the ROC square: h = P(U=0|J=0) (true positive
/// rate), k = P(U=0|J=1) (false positive rate).
struct RocPoint {
    double h = 0.0;
    double k = 0.0;

    /// Throws Error{Domain} unless both coordinates lie in [0, 1].
    static RocPoint make(double h, double k);
    static RocPoint make(const Rational& h, const Rational& k);
};

enum class ProcedureClass : std::uint8_t {
    PerfectlyJust,
    EveryoneConvicted,
    EveryoneAcquitted,
    PerfectForGuilty,
    PerfectForInnocent,
    MeritAgnostic,
    ImperfectlyJust,
    PerfectlyUnjust,
    UnreasonablyUnjust,
};

inline constexpr ProcedureClass kAllProcedureClasses[] = {
    ProcedureClass::PerfectlyJust,      ProcedureClass::EveryoneConvicted, ProcedureClass::EveryoneAcquitted,
    ProcedureClass::PerfectForGuilty,   ProcedureClass::PerfectForInnocent, ProcedureClass::MeritAgnostic,
    ProcedureClass::ImperfectlyJust,    ProcedureClass::PerfectlyUnjust,   ProcedureClass::UnreasonablyUnjust,
};

const char* to_string(ProcedureClass c) noexcept;
std::optional<ProcedureClass> procedure_class_from_string(std::string_view name);

/// Conviction odds independent of merit: the segment h = k, including both
/// degenerate endpoints (everyone convicted / everyone acquitted).
bool is_merit_agnostic(ProcedureClass c) noexcept;

/// Vertices first, then edges (h = 1, k = 0, h = k), then the two open
/// triangles. `eps` widens every equality test and must lie in [0, 1/4).
ProcedureClass classify(const RocPoint& p, double eps = 0.0);

struct DiamondPoint {
    double x = 0.0;
    double y = 0.0;
};

/// The unit square rotated by 45 degrees: (0,0) at the bottom, (1,1) on top,
/// the perfect procedure (1,0) on the right and its inverse (0,1) on the left.
DiamondPoint to_diamond(const RocPoint& p) noexcept;

enum class DiagramFormat : std::uint8_t { Svg, Csv };

struct LabelledPoint {
    std::string label;
    RocPoint point;
};

/// SVG: 600x600 diamond with shaded S1/S2 triangles, dotted merit-agnostic
/// diagonal and labelled points. CSV: `label,h,k,x,y,class`, 8 decimals.
std::string export_diagram(const std::vector<LabelledPoint>& points, DiagramFormat format);

/// Points file: CSV with header `label,h,k`; probabilities as decimals or a/b.
std::vector<LabelledPoint> parse_points(std::string_view text);

}  // namespace meritfair
