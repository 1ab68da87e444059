#include "meritfair/roc.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "meritfair/error.hpp"

namespace meritfair {

RocPoint RocPoint::make(double h, double k) {
    if (!(h >= 0.0 && h <= 1.0) || !(k >= 0.0 && k <= 1.0))
        throw Error(ErrorCode::Domain, "ROC point outside the unit square: (" + std::to_string(h) + ", " +
                                           std::to_string(k) + ")");
    return RocPoint{h, k};
}

RocPoint RocPoint::make(const Rational& h, const Rational& k) { return make(to_double(h), to_double(k)); }

const char* to_string(ProcedureClass c) noexcept {
    switch (c) {
        case ProcedureClass::PerfectlyJust: return "PerfectlyJust";
        case ProcedureClass::EveryoneConvicted: return "EveryoneConvicted";
        case ProcedureClass::EveryoneAcquitted: return "EveryoneAcquitted";
        case ProcedureClass::PerfectForGuilty: return "PerfectForGuilty";
        case ProcedureClass::PerfectForInnocent: return "PerfectForInnocent";
        case ProcedureClass::MeritAgnostic: return "MeritAgnostic";
        case ProcedureClass::ImperfectlyJust: return "ImperfectlyJust";
        case ProcedureClass::PerfectlyUnjust: return "PerfectlyUnjust";
        case ProcedureClass::UnreasonablyUnjust: return "UnreasonablyUnjust";
    }
    return "?";
}

std::optional<ProcedureClass> procedure_class_from_string(std::string_view name) {
    for (ProcedureClass c : kAllProcedureClasses)
        if (name == to_string(c)) return c;
    return std::nullopt;
}

bool is_merit_agnostic(ProcedureClass c) noexcept {
    return c == ProcedureClass::MeritAgnostic || c == ProcedureClass::EveryoneConvicted ||
           c == ProcedureClass::EveryoneAcquitted;
}

ProcedureClass classify(const RocPoint& p, double eps) {
    if (!(eps >= 0.0 && eps < 0.25)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 1/4)");
    const auto near = [eps](double a, double b) { return std::abs(a - b) <= eps; };
    const double h = p.h;
    const double k = p.k;

    if (near(h, 1) && near(k, 0)) return ProcedureClass::PerfectlyJust;
    if (near(h, 1) && near(k, 1)) return ProcedureClass::EveryoneConvicted;
    if (near(h, 0) && near(k, 0)) return ProcedureClass::EveryoneAcquitted;
    if (near(h, 0) && near(k, 1)) return ProcedureClass::PerfectlyUnjust;

    if (near(h, 1)) return ProcedureClass::PerfectForGuilty;
    if (near(k, 0)) return ProcedureClass::PerfectForInnocent;
    if (near(h, k)) return ProcedureClass::MeritAgnostic;

    return h - k > eps ? ProcedureClass::ImperfectlyJust : ProcedureClass::UnreasonablyUnjust;
}

DiamondPoint to_diamond(const RocPoint& p) noexcept {
    const double s = std::sqrt(0.5);
    return DiamondPoint{(p.h - p.k) * s, (p.h + p.k) * s};
}

namespace {

std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    std::string s = buf;
    if (s == "-0.00000000" || s == "-0.000") s.erase(0, 1);
    return s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Diamond coordinates span x in [-1/sqrt2, 1/sqrt2], y in [0, sqrt2].
constexpr double kSize = 600.0;
constexpr double kScale = 360.0;

double px(double x) { return kSize / 2 + x * kScale; }
double py(double y) { return kSize - 45.0 - y * kScale; }

std::string svg_xy(const RocPoint& p) {
    const auto d = to_diamond(p);
    return fixed(px(d.x), 3) + "," + fixed(py(d.y), 3);
}

std::string render_svg(const std::vector<LabelledPoint>& points) {
    const RocPoint O{0, 0}, A{1, 0}, B{0, 1}, Q{1, 1};
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n"
      << "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n"
      << "  <polygon id=\"S1\" points=\"" << svg_xy(O) << " " << svg_xy(A) << " " << svg_xy(Q)
      << "\" fill=\"#d9d9d9\" stroke=\"none\"/>\n"
      << "  <polygon id=\"S2\" points=\"" << svg_xy(O) << " " << svg_xy(B) << " " << svg_xy(Q)
      << "\" fill=\"#f2dede\" stroke=\"none\"/>\n"
      << "  <polygon id=\"diamond\" points=\"" << svg_xy(O) << " " << svg_xy(A) << " " << svg_xy(Q) << " "
      << svg_xy(B) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    const auto o = to_diamond(O), q = to_diamond(Q);
    s << "  <line id=\"segment-a\" x1=\"" << fixed(px(o.x), 3) << "\" y1=\"" << fixed(py(o.y), 3) << "\" x2=\""
      << fixed(px(q.x), 3) << "\" y2=\"" << fixed(py(q.y), 3)
      << "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"2,4\"/>\n";
    s << "  <g font-family=\"sans-serif\" font-size=\"14\">\n"
      << "    <text x=\"" << fixed(px(o.x) + 8, 3) << "\" y=\"" << fixed(py(o.y) + 18, 3) << "\">O</text>\n"
      << "    <text x=\"" << fixed(px(q.x) + 8, 3) << "\" y=\"" << fixed(py(q.y) - 8, 3) << "\">Q</text>\n"
      << "    <text x=\"" << fixed(px(to_diamond(A).x) + 8, 3) << "\" y=\"" << fixed(py(to_diamond(A).y), 3)
      << "\">A</text>\n"
      << "    <text x=\"" << fixed(px(to_diamond(B).x) - 20, 3) << "\" y=\"" << fixed(py(to_diamond(B).y), 3)
      << "\">B</text>\n"
      << "    <text x=\"" << fixed(px(0.25), 3) << "\" y=\"" << fixed(py(0.7071), 3) << "\">S1</text>\n"
      << "    <text x=\"" << fixed(px(-0.32), 3) << "\" y=\"" << fixed(py(0.7071), 3) << "\">S2</text>\n"
      << "    <text x=\"" << fixed(px(0.02), 3) << "\" y=\"" << fixed(py(0.35), 3) << "\">a</text>\n"
      << "    <text x=\"300\" y=\"590\" text-anchor=\"middle\" font-size=\"12\">h = P(U=0|J=0) (true positive rate), "
         "k = P(U=0|J=1) (false positive rate)</text>\n"
      << "  </g>\n";
    s << "  <g id=\"points\" font-family=\"sans-serif\" font-size=\"13\">\n";
    for (const auto& lp : points) {
        const auto d = to_diamond(lp.point);
        s << "    <circle cx=\"" << fixed(px(d.x), 3) << "\" cy=\"" << fixed(py(d.y), 3)
          << "\" r=\"5\" fill=\"#1f4e9c\"><title>" << xml_escape(lp.label) << " (" << to_string(classify(lp.point))
          << ")</title></circle>\n"
          << "    <text x=\"" << fixed(px(d.x) + 8, 3) << "\" y=\"" << fixed(py(d.y) - 8, 3) << "\">"
          << xml_escape(lp.label) << "</text>\n";
    }
    s << "  </g>\n</svg>\n";
    return s.str();
}

std::string render_csv(const std::vector<LabelledPoint>& points) {
    std::ostringstream s;
    s << "label,h,k,x,y,class\n";
    for (const auto& lp : points) {
        const auto d = to_diamond(lp.point);
        s << lp.label << ',' << fixed(lp.point.h, 8) << ',' << fixed(lp.point.k, 8) << ',' << fixed(d.x, 8) << ','
          << fixed(d.y, 8) << ',' << to_string(classify(lp.point)) << '\n';
    }
    return s.str();
}

}  // namespace

std::string export_diagram(const std::vector<LabelledPoint>& points, DiagramFormat format) {
    std::set<std::string> seen;
    for (const auto& lp : points) {
        if (lp.label.empty()) throw Error(ErrorCode::InvalidArgument, "diagram labels must be non-empty");
        if (!seen.insert(lp.label).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate diagram label '" + lp.label + "'");
    }
    return format == DiagramFormat::Svg ? render_svg(points) : render_csv(points);
}

std::vector<LabelledPoint> parse_points(std::string_view text) {
    std::vector<LabelledPoint> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header) {
            if (line != "label,h,k")
                throw Error(ErrorCode::Parse, "points line 1: expected header 'label,h,k', got '" + line + "'");
            header = true;
            continue;
        }
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
            throw Error(ErrorCode::Parse, "points line " + std::to_string(line_no) + ": expected label,h,k");
        try {
            out.push_back(LabelledPoint{line.substr(0, c1),
                                        RocPoint::make(parse_probability(line.substr(c1 + 1, c2 - c1 - 1)),
                                                       parse_probability(line.substr(c2 + 1)))});
        } catch (const Error& e) {
            throw Error(e.code(), "points line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header) throw Error(ErrorCode::Parse, "points: missing header 'label,h,k'");
    return out;
}

}  // namespace meritfair
