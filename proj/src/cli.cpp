#include "meritfair/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "meritfair/error.hpp"
#include "meritfair/example1.hpp"
#include "meritfair/fairness.hpp"
#include "meritfair/population.hpp"
#include "meritfair/procedure.hpp"
#include "meritfair/report.hpp"
#include "meritfair/roc.hpp"
#include "meritfair/theorem.hpp"

namespace meritfair::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultEmpiricalTolerance = 1e-9;

struct RunConfig {
    std::string population;
    std::string procedure;
    std::string attribute;
    std::optional<double> tolerance;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> trials;
    std::string format;
    std::string out;
    std::size_t max_n = 15;
    std::string h;
    std::string k;
    double eps = 0.0;
    std::string points;
    std::size_t n_individuals = 10;
};

std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

std::string opt_rational(const std::optional<Rational>& r) { return r ? to_string(*r) : ""; }
std::string opt_decimal(const std::optional<Rational>& r) { return r ? fixed(to_double(*r), 8) : ""; }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write output file '" + cfg.out + "'");
    file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// audit ---------------------------------------------------------------------

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Population pop = load_population_file(cfg.population);
    const Procedure proc = load_procedure_file(cfg.procedure);
    if (pop.empty()) throw Error(ErrorCode::InvalidArgument, "audit needs a non-empty population");

    const bool empirical = cfg.trials.has_value();
    if (empirical && std::holds_alternative<DeterministicProcedure>(proc))
        throw Error(ErrorCode::InvalidArgument, "--trials applies to randomized procedures only");
    if (empirical && cfg.tolerance && *cfg.tolerance == 0.0)
        err << "warning: comparing simulated rates at zero tolerance is degenerate; sampling noise alone will "
               "register as unfairness\n";
    const Tolerance tol(cfg.tolerance.value_or(empirical ? kDefaultEmpiricalTolerance : 0.0));

    std::vector<OutcomeAssignment> runs;
    if (empirical) runs = simulate(std::get<RandomizedProcedure>(proc), pop, cfg.seed, *cfg.trials);
    auto rates_of = [&](const GroupSpec& g) {
        return empirical ? empirical_rates(pop, runs, g) : exact_rates(proc, pop, g);
    };

    const auto values = attribute_values(pop, cfg.attribute);
    if (values.empty()) throw Error(ErrorCode::MissingAttribute, "no member carries attribute '" + cfg.attribute + "'");
    std::vector<std::pair<GroupSpec, ConditionalRates>> groups;
    for (const auto& v : values) {
        GroupSpec g = AttributeEquals{cfg.attribute, v};
        groups.emplace_back(g, rates_of(g));
    }
    const auto table = expected_contingency(pop, proc, cfg.attribute);
    const auto justice = justice_metrics(table);

    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "group,J,count,conviction_rate,conviction_rate_decimal,expected_convictions,expected_acquittals\n";
        for (const auto& [g, r] : groups) {
            const auto& value = std::get<AttributeEquals>(g).value;
            for (Merit m : kMeritClasses) {
                const auto& c = table.cell(value, m);
                s << describe(g) << ',' << to_int(m) << ',' << c.count << ',' << opt_rational(r.rate(m)) << ','
                  << opt_decimal(r.rate(m)) << ',' << to_string(c.expected_convictions) << ','
                  << to_string(c.expected_acquittals) << '\n';
            }
        }
        emit(cfg, s.str(), out);
        return kExitOk;
    }

    json doc;
    doc["command"] = "audit";
    doc["attribute"] = cfg.attribute;
    doc["procedure"] = json::parse(procedure_to_json(proc));
    doc["empirical"] = empirical;
    if (empirical) doc["simulation"] = {{"seed", cfg.seed}, {"trials", *cfg.trials}};
    doc["tolerance"] = tol.value();
    doc["rates"] = json::array();
    for (const auto& [g, r] : groups) {
        auto entry = report::rates(r);
        entry["group"] = report::group(g);
        doc["rates"].push_back(entry);
    }
    doc["verdicts"] = json::array();
    bool all_fair = true;
    for (std::size_t a = 0; a < groups.size(); ++a) {
        for (std::size_t b = a + 1; b < groups.size(); ++b) {
            auto v = check_pairwise_fairness(groups[a].second, groups[b].second, tol);
            v.group_a = groups[a].first;
            v.group_b = groups[b].first;
            all_fair = all_fair && v.fair;
            doc["verdicts"].push_back(report::verdict(v));
        }
    }
    doc["fair"] = all_fair;
    doc["contingency"] = report::contingency(table);
    doc["justice"] = report::justice(justice);
    AbsoluteFairnessOptions abs_opts;
    abs_opts.max_reported = 20;
    doc["absolute_singletons"] = report::absolute(check_absolute_fairness(proc, pop, abs_opts, Tolerance{}));
    emit(cfg, dump(doc), out);
    return kExitOk;
}

// classify ------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const auto p = RocPoint::make(parse_probability(cfg.h), parse_probability(cfg.k));
    const auto c = classify(p, cfg.eps);
    if (cfg.format == "json") {
        auto doc = report::roc_point(p, cfg.eps);
        doc["command"] = "classify";
        emit(cfg, dump(doc), out);
    } else if (cfg.format == "csv") {
        emit(cfg, export_diagram({LabelledPoint{"point", p}}, DiagramFormat::Csv), out);
    } else {
        emit(cfg, std::string(to_string(c)) + "\n", out);
    }
    return kExitOk;
}

// witness -------------------------------------------------------------------

int cmd_witness(const RunConfig& cfg, std::ostream& out) {
    const Population pop = load_population_file(cfg.population);
    const auto w = construct_witness(pop);
    std::optional<std::vector<GroupPairViolation>> search;
    if (pop.size() <= cfg.max_n) search = exhaustive_search(pop, cfg.max_n);

    const bool violation = w.status == WitnessStatus::Witnessed || (search && !search->empty());
    if (cfg.format == "json") {
        json doc;
        doc["command"] = "witness";
        doc["violation_found"] = violation;
        doc["witness"] = report::witness(w);
        if (search) {
            json list = json::array();
            for (const auto& v : *search) list.push_back(report::violation(v));
            doc["exhaustive_search"] = {{"performed", true},
                                        {"violation_count", search->size()},
                                        {"contains_witness", contains_split(*search, w.ids_x1, w.ids_x0)},
                                        {"violations", list}};
        } else {
            doc["exhaustive_search"] = {{"performed", false}, {"max_n", cfg.max_n}};
        }
        emit(cfg, dump(doc), out);
    } else {
        std::ostringstream s;
        s << "status: " << to_string(w.status) << "\n";
        if (w.procedure_class) s << "procedure class: " << to_string(*w.procedure_class) << "\n";
        if (!violation) {
            s << "no violation\n";
        } else {
            s << "violation: groups X=1 (" << w.ids_x1.size() << " members) and X=0 (" << w.ids_x0.size()
              << " members)\n";
            for (const auto& c : w.classes) {
                if (!c.violated) continue;
                s << "  J=" << to_int(c.merit) << ": P(U=0 | X=0) = " << to_string(*c.conviction_x0)
                  << ", P(U=0 | X=1) = " << to_string(*c.conviction_x1) << "\n";
            }
        }
        if (search)
            s << "exhaustive search: " << search->size() << " violating bipartition(s)\n";
        else
            s << "exhaustive search: skipped (population exceeds --max-n " << cfg.max_n << ")\n";
        emit(cfg, s.str(), out);
    }
    return violation ? kExitViolation : kExitOk;
}

// simulate ------------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const Population pop = load_population_file(cfg.population);
    const Procedure proc = load_procedure_file(cfg.procedure);
    const auto* randomized = std::get_if<RandomizedProcedure>(&proc);
    if (randomized == nullptr) throw Error(ErrorCode::InvalidArgument, "simulate needs a randomized procedure");
    const std::uint64_t trials = cfg.trials.value_or(1);
    const auto runs = simulate(*randomized, pop, cfg.seed, trials);

    std::vector<GroupSpec> groups{Everyone{}};
    if (!cfg.attribute.empty())
        for (const auto& v : attribute_values(pop, cfg.attribute)) groups.push_back(AttributeEquals{cfg.attribute, v});

    struct Row {
        GroupSpec group;
        ConditionalRates empirical;
        std::optional<ConditionalRates> expected;
    };
    std::vector<Row> rows;
    for (const auto& g : groups) {
        Row row{g, empirical_rates(pop, runs, g), std::nullopt};
        try {
            row.expected = exact_rates(proc, pop, g);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::AmbiguousRate) throw;
        }
        rows.push_back(std::move(row));
    }

    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "group,J,draws,empirical_rate,empirical_rate_decimal,expected_rate\n";
        for (const auto& r : rows) {
            for (Merit m : kMeritClasses) {
                s << describe(r.group) << ',' << to_int(m) << ','
                  << r.empirical.support.of(m) * static_cast<std::int64_t>(trials) << ','
                  << opt_rational(r.empirical.rate(m)) << ',' << opt_decimal(r.empirical.rate(m)) << ','
                  << (r.expected ? opt_rational(r.expected->rate(m)) : std::string()) << '\n';
            }
        }
        emit(cfg, s.str(), out);
        return kExitOk;
    }
    json doc;
    doc["command"] = "simulate";
    doc["seed"] = cfg.seed;
    doc["trials"] = trials;
    doc["groups"] = json::array();
    for (const auto& r : rows) {
        doc["groups"].push_back({{"group", report::group(r.group)},
                                 {"empirical", report::rates(r.empirical)},
                                 {"expected", r.expected ? report::rates(*r.expected) : json(nullptr)}});
    }
    emit(cfg, dump(doc), out);
    return kExitOk;
}

// example1 ------------------------------------------------------------------

json stage_json(const example1::Stage& s) {
    return {{"name", s.name},
            {"procedure", json::parse(procedure_to_json(s.procedure))},
            {"procedure_class", to_string(s.procedure_class)},
            {"contingency", report::contingency(s.table)},
            {"justice", report::justice(s.justice)},
            {"verdict", report::verdict(s.verdict)}};
}

std::string example1_text(const example1::Report& r) {
    std::ostringstream s;
    auto conv = [](const Rational& x) { return to_string(x); };
    s << "Population (sex x merit)\n"
      << "  M: " << r.male.n_guilty << " guilty, " << r.male.n_innocent << " innocent\n"
      << "  F: " << r.female.n_guilty << " guilty, " << r.female.n_innocent << " innocent\n"
      << "  total: " << r.total.total() << "\n"
      << "  note: " << r.headcount_note << "\n\n";
    for (const auto* st : {&r.global, &r.group_fair}) {
        const auto& t = st->table;
        s << "Stage: " << st->name << " procedure " << procedure_to_json(st->procedure) << "\n"
          << "  class: " << to_string(st->procedure_class) << "\n"
          << "  GUILTY CONVICTED " << conv(t.total_convictions(Merit::Guilty)) << "\n"
          << "  NOT GUILTY CONVICTED " << conv(t.total_convictions(Merit::Innocent)) << "\n";
        for (const auto& g : st->justice.groups) {
            s << "  " << g.value << ": GUILTY CONVICTED " << conv(g.guilty_convictions) << ", NOT GUILTY CONVICTED "
              << conv(g.mistaken_convictions) << ", convictions " << conv(g.convictions) << ", guilty share "
              << (g.guilty_share ? conv(*g.guilty_share) + " (" + fixed(to_double(*g.guilty_share), 4) + ")" : "n/a")
              << "\n";
        }
        s << "  M vs F fairness at tolerance 0: " << (st->verdict.fair ? "fair" : "unfair") << "\n\n";
    }
    return s.str();
}

std::string example1_csv(const example1::Report& r) {
    std::ostringstream s;
    s << "stage,group,J,count,expected_convictions,expected_acquittals\n";
    for (const auto* st : {&r.global, &r.group_fair}) {
        for (const auto& c : st->table.cells)
            s << st->name << ',' << c.value << ',' << to_int(c.merit) << ',' << c.count << ','
              << to_string(c.expected_convictions) << ',' << to_string(c.expected_acquittals) << '\n';
        for (Merit m : kMeritClasses) {
            const auto conv = st->table.total_convictions(m);
            s << st->name << ",all," << to_int(m) << ',' << st->table.total_count(m) << ',' << to_string(conv) << ','
              << to_string(Rational(st->table.total_count(m)) - conv) << '\n';
        }
    }
    return s.str();
}

int cmd_example1(const RunConfig& cfg, std::ostream& out) {
    const auto r = example1::run();
    if (cfg.format == "json") {
        json doc;
        doc["command"] = "example1";
        doc["population"] = {{"M", {{"guilty", r.male.n_guilty}, {"innocent", r.male.n_innocent}}},
                             {"F", {{"guilty", r.female.n_guilty}, {"innocent", r.female.n_innocent}}},
                             {"total", r.total.total()},
                             {"stated_headcount", example1::kStatedHeadcount}};
        doc["note"] = r.headcount_note;
        doc["stages"] = json::array({stage_json(r.global), stage_json(r.group_fair)});
        emit(cfg, dump(doc), out);
    } else if (cfg.format == "csv") {
        emit(cfg, example1_csv(r), out);
    } else {
        emit(cfg, example1_text(r), out);
    }
    return kExitOk;
}

// roc-export ----------------------------------------------------------------

int cmd_roc_export(const RunConfig& cfg, std::ostream& out) {
    std::vector<LabelledPoint> points;
    if (!cfg.points.empty()) {
        std::ifstream in(cfg.points);
        if (!in) throw Error(ErrorCode::Io, "cannot open points file '" + cfg.points + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        points = parse_points(buf.str());
    }
    if (cfg.format == "json") {
        json doc;
        doc["command"] = "roc-export";
        doc["points"] = json::array();
        for (const auto& p : points) {
            auto entry = report::roc_point(p.point);
            entry["label"] = p.label;
            doc["points"].push_back(entry);
        }
        export_diagram(points, DiagramFormat::Csv);  // label validation
        emit(cfg, dump(doc), out);
    } else {
        emit(cfg, export_diagram(points, cfg.format == "csv" ? DiagramFormat::Csv : DiagramFormat::Svg), out);
    }
    return kExitOk;
}

// verify --------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto r = verify_theorem(cfg.n_individuals, cfg.trials.value_or(1000), cfg.seed);
    if (cfg.format == "json") {
        auto doc = report::property(r);
        doc["command"] = "verify";
        emit(cfg, dump(doc), out);
    } else {
        std::ostringstream s;
        s << (r.passed() ? "PASS" : "FAIL") << ": n=" << r.n_individuals << " trials=" << r.trials
          << " seed=" << r.seed << " perfect=" << r.perfect_instances << " witnessed=" << r.witnessed_instances
          << " unwitnessable=" << r.unwitnessable_instances << " counterexamples=" << r.counterexamples.size()
          << "\n";
        for (const auto& c : r.counterexamples) s << "  trial " << c.trial << ": " << c.reason << "\n";
        emit(cfg, s.str(), out);
    }
    return r.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group-fairness auditing of binary decision procedures against a moral ground truth", "meritfair"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout"); };

    auto* audit = app.add_subcommand("audit", "Group-fairness and justice report for one procedure");
    audit->add_option("--population", cfg.population, "Population CSV")->required();
    audit->add_option("--procedure", cfg.procedure, "Procedure JSON")->required();
    audit->add_option("--attribute", cfg.attribute, "Attribute defining the groups")->required();
    audit->add_option("--tolerance", cfg.tolerance, "Allowed |rate difference| (default 0, or 1e-9 when simulating)")
        ->check(CLI::NonNegativeNumber);
    audit->add_option("--trials", cfg.trials, "Audit simulated outcomes instead of exact rates")
        ->check(CLI::PositiveNumber);
    audit->add_option("--seed", cfg.seed, "Simulation seed");
    add_out(audit);

    auto* classify_cmd = app.add_subcommand("classify", "Classify a point (h, k) of the ROC square");
    classify_cmd->set_help_flag("--help", "Print this help message and exit");
    classify_cmd->add_option("--h", cfg.h, "P(U=0 | J=0), decimal or a/b")->required();
    classify_cmd->add_option("--k", cfg.k, "P(U=0 | J=1), decimal or a/b")->required();
    classify_cmd->add_option("--eps", cfg.eps, "Classification tolerance in [0, 0.25)");
    add_out(classify_cmd);

    auto* witness = app.add_subcommand("witness", "Construct the X-split witness for a deterministic procedure");
    witness->add_option("--population", cfg.population, "Population CSV with X on every row")->required();
    witness->add_option("--max-n", cfg.max_n, "Largest population searched exhaustively");
    add_out(witness);

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo outcomes of a randomized procedure");
    sim->add_option("--population", cfg.population, "Population CSV")->required();
    sim->add_option("--procedure", cfg.procedure, "Procedure JSON")->required();
    sim->add_option("--attribute", cfg.attribute, "Also report per value of this attribute");
    sim->add_option("--seed", cfg.seed, "Seed");
    sim->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
    add_out(sim);

    auto* ex1 = app.add_subcommand("example1", "Reproduce the sex-split criminal-trial example");
    add_out(ex1);

    auto* roc = app.add_subcommand("roc-export", "Render procedures in the rotated ROC diagram");
    roc->add_option("--points", cfg.points, "CSV with header label,h,k");
    add_out(roc);

    auto* verify = app.add_subcommand("verify", "Randomized check that every imperfect deterministic procedure "
                                                "has a witness");
    verify->add_option("--n", cfg.n_individuals, "Individuals per population (<= 15)");
    verify->add_option("--trials", cfg.trials, "Number of random populations")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "Seed");
    add_out(verify);

    // Per-subcommand format choices; only the parsed subcommand's default matters.
    std::string fmt_audit = "json", fmt_classify = "text", fmt_witness = "text", fmt_sim = "json", fmt_ex1 = "text",
                fmt_roc = "svg", fmt_verify = "text";
    audit->add_option("--format", fmt_audit, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    classify_cmd->add_option("--format", fmt_classify, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
    witness->add_option("--format", fmt_witness, "text|json")->check(CLI::IsMember({"text", "json"}));
    sim->add_option("--format", fmt_sim, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    ex1->add_option("--format", fmt_ex1, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
    roc->add_option("--format", fmt_roc, "svg|csv|json")->check(CLI::IsMember({"svg", "csv", "json"}));
    verify->add_option("--format", fmt_verify, "text|json")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    try {
        if (audit->parsed()) {
            cfg.format = fmt_audit;
            return cmd_audit(cfg, out, err);
        }
        if (classify_cmd->parsed()) {
            cfg.format = fmt_classify;
            return cmd_classify(cfg, out);
        }
        if (witness->parsed()) {
            cfg.format = fmt_witness;
            return cmd_witness(cfg, out);
        }
        if (sim->parsed()) {
            cfg.format = fmt_sim;
            return cmd_simulate(cfg, out);
        }
        if (ex1->parsed()) {
            cfg.format = fmt_ex1;
            return cmd_example1(cfg, out);
        }
        if (roc->parsed()) {
            cfg.format = fmt_roc;
            return cmd_roc_export(cfg, out);
        }
        if (verify->parsed()) {
            cfg.format = fmt_verify;
            return cmd_verify(cfg, out);
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace meritfair::cli
