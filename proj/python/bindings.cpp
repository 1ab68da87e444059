#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "meritfair/cli.hpp"
#include "meritfair/error.hpp"
#include "meritfair/example1.hpp"
#include "meritfair/fairness.hpp"
#include "meritfair/population.hpp"
#include "meritfair/procedure.hpp"
#include "meritfair/report.hpp"
#include "meritfair/roc.hpp"
#include "meritfair/theorem.hpp"

namespace py = pybind11;
namespace mf = meritfair;

namespace {

mf::Population population_from(const std::string& csv) {
    std::istringstream in(csv);
    return mf::load_population(in);
}

mf::GroupSpec group_from(const std::string& attribute, const std::string& value) {
    if (attribute.empty()) return mf::Everyone{};
    return mf::AttributeEquals{attribute, value};
}

// Reports cross the boundary as JSON text; the Python package decodes them.
std::string classify_json(const std::string& h, const std::string& k, double eps) {
    return mf::report::roc_point(mf::RocPoint::make(mf::parse_probability(h), mf::parse_probability(k)), eps).dump();
}

std::string example1_json() {
    std::ostringstream out, err;
    mf::cli::run({"example1", "--format", "json"}, out, err);
    return out.str();
}

std::string exact_rates_json(const std::string& csv, const std::string& procedure, const std::string& attribute,
                             const std::string& value) {
    const auto pop = population_from(csv);
    return mf::report::rates(mf::exact_rates(mf::parse_procedure_text(procedure), pop, group_from(attribute, value)))
        .dump();
}

std::string pairwise_json(const std::string& csv, const std::string& procedure, const std::string& attribute,
                          const std::string& value_a, const std::string& value_b, double tolerance) {
    const auto pop = population_from(csv);
    return mf::report::verdict(mf::check_pairwise_fairness(mf::parse_procedure_text(procedure), pop,
                                                         mf::AttributeEquals{attribute, value_a},
                                                         mf::AttributeEquals{attribute, value_b},
                                                         mf::Tolerance(tolerance)))
        .dump();
}

std::string absolute_json(const std::string& csv, const std::string& procedure, const std::string& mode,
                          std::size_t max_n, double tolerance) {
    mf::AbsoluteFairnessOptions opts;
    if (mode == "singletons")
        opts.mode = mf::AbsoluteMode::Singletons;
    else if (mode == "bipartitions")
        opts.mode = mf::AbsoluteMode::Bipartitions;
    else
        throw mf::Error(mf::ErrorCode::InvalidArgument, "mode must be 'singletons' or 'bipartitions'");
    opts.max_n = max_n;
    const auto pop = population_from(csv);
    return mf::report::absolute(
               mf::check_absolute_fairness(mf::parse_procedure_text(procedure), pop, opts, mf::Tolerance(tolerance)))
        .dump();
}

std::string contingency_json(const std::string& csv, const std::string& procedure, const std::string& attribute) {
    const auto pop = population_from(csv);
    const auto table = mf::expected_contingency(pop, mf::parse_procedure_text(procedure), attribute);
    auto doc = mf::report::contingency(table);
    doc["justice"] = mf::report::justice(mf::justice_metrics(table));
    return doc.dump();
}

std::string simulate_json(const std::string& csv, const std::string& procedure, std::uint64_t seed,
                          std::uint64_t trials, const std::string& attribute, const std::string& value) {
    const auto pop = population_from(csv);
    const auto proc = mf::parse_procedure_text(procedure);
    const auto* randomized = std::get_if<mf::RandomizedProcedure>(&proc);
    if (randomized == nullptr)
        throw mf::Error(mf::ErrorCode::InvalidArgument, "simulate needs a randomized procedure");
    const auto runs = mf::simulate(*randomized, pop, seed, trials);
    return mf::report::rates(mf::empirical_rates(pop, runs, group_from(attribute, value))).dump();
}

std::string witness_json(const std::string& csv) { return mf::report::witness(mf::construct_witness(population_from(csv))).dump(); }

std::string search_json(const std::string& csv, std::size_t max_n) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : mf::exhaustive_search(population_from(csv), max_n)) list.push_back(mf::report::violation(v));
    return list.dump();
}

std::string verify_json(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
    return mf::report::property(mf::verify_theorem(n, trials, seed)).dump();
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = mf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Group-fairness auditing of binary decision procedures (C++ core)";

    static py::exception<mf::Error> error(m, "MeritfairError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const mf::Error& e) {
            py::set_error(error, (std::string(mf::to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    m.def("classify", classify_json, py::arg("h"), py::arg("k"), py::arg("eps") = 0.0);
    m.def("to_diamond",
          [](double h, double k) {
              const auto d = mf::to_diamond(mf::RocPoint::make(h, k));
              return std::make_pair(d.x, d.y);
          },
          py::arg("h"), py::arg("k"));
    m.def("export_diagram",
          [](const std::string& points_csv, const std::string& format) {
              return mf::export_diagram(mf::parse_points(points_csv),
                                        format == "csv" ? mf::DiagramFormat::Csv : mf::DiagramFormat::Svg);
          },
          py::arg("points_csv"), py::arg("format") = "svg");
    m.def("example1", example1_json);
    m.def("exact_rates", exact_rates_json, py::arg("population_csv"), py::arg("procedure_json"),
          py::arg("attribute") = "", py::arg("value") = "");
    m.def("check_pairwise_fairness", pairwise_json, py::arg("population_csv"), py::arg("procedure_json"),
          py::arg("attribute"), py::arg("value_a"), py::arg("value_b"), py::arg("tolerance") = 0.0);
    m.def("check_absolute_fairness", absolute_json, py::arg("population_csv"), py::arg("procedure_json"),
          py::arg("mode") = "singletons", py::arg("max_n") = 15, py::arg("tolerance") = 0.0);
    m.def("expected_contingency", contingency_json, py::arg("population_csv"), py::arg("procedure_json"),
          py::arg("attribute"));
    m.def("simulate", simulate_json, py::arg("population_csv"), py::arg("procedure_json"), py::arg("seed"),
          py::arg("trials"), py::arg("attribute") = "", py::arg("value") = "");
    m.def("construct_witness", witness_json, py::arg("population_csv"));
    m.def("exhaustive_search", search_json, py::arg("population_csv"), py::arg("max_n") = 15);
    m.def("verify_theorem", verify_json, py::arg("n_individuals"), py::arg("trials"), py::arg("seed"));
    m.def("run_cli", run_cli, py::arg("args"));
}
