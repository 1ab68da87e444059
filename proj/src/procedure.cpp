#include "meritfair/procedure.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "meritfair/error.hpp"

namespace meritfair {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0xD1B54A32D192ED03ULL));
}

// True with probability exactly p = num/den over a uniform 64-bit draw.
bool bernoulli(std::uint64_t draw, const Rational& p) {
    __extension__ using u128 = unsigned __int128;
    const auto num = static_cast<std::uint64_t>(p.numerator());
    const auto den = static_cast<std::uint64_t>(p.denominator());
    return static_cast<u128>(draw) * den < (static_cast<u128>(num) << 64);
}

}  // namespace

RatePair RatePair::make(Rational h, Rational k) {
    if (!is_probability(h) || !is_probability(k))
        throw Error(ErrorCode::Domain, "rates must lie in [0, 1], got h=" + to_string(h) + ", k=" + to_string(k));
    return RatePair{h, k};
}

const Rational& ConditionalRates::require(Merit m) const {
    const auto& r = rate(m);
    if (!r)
        throw Error(ErrorCode::UndefinedRate,
                    std::string("conviction rate undefined: group has no ") + to_string(m) + " members");
    return *r;
}

std::optional<Rational> ConditionalRates::acquittal_rate(Merit m) const {
    const auto& r = rate(m);
    if (!r) return std::nullopt;
    return Rational(1) - *r;
}

Rational conviction_probability(const Procedure& proc, const Individual& ind) {
    return std::visit(
        Overloaded{
            [&](const DeterministicProcedure&) -> Rational {
                if (!ind.criterion)
                    throw Error(ErrorCode::MissingCriterion,
                                "individual '" + ind.id + "' has no criterion X; deterministic procedure requires it");
                return *ind.criterion == Criterion::Convict ? Rational(1) : Rational(0);
            },
            [&](const RandomizedProcedure& r) -> Rational {
                return std::visit(
                    Overloaded{
                        [&](const GlobalRates& g) -> Rational { return g.rates.of(ind.merit); },
                        [&](const PerGroupRates& g) -> Rational {
                            const auto* value = ind.attribute(g.attribute);
                            if (value == nullptr)
                                throw Error(ErrorCode::MissingAttribute,
                                            "individual '" + ind.id + "' lacks attribute '" + g.attribute + "'");
                            auto it = g.rates.find(*value);
                            if (it == g.rates.end())
                                throw Error(ErrorCode::MissingRate,
                                            "no rates configured for " + g.attribute + "=" + *value);
                            return it->second.of(ind.merit);
                        },
                    },
                    r.rates);
            },
        },
        proc);
}

OutcomeAssignment apply_deterministic(const DeterministicProcedure& proc, const Population& pop) {
    OutcomeAssignment out;
    out.outcomes.reserve(pop.size());
    for (const auto& ind : pop)
        out.outcomes.push_back(conviction_probability(proc, ind) == Rational(1) ? 0 : 1);
    return out;
}

ConditionalRates exact_rates(const Procedure& proc, const Population& pop, const GroupSpec& g) {
    const bool deterministic = std::holds_alternative<DeterministicProcedure>(proc);
    ConditionalRates out;
    // Per class: convictions (deterministic) or the single configured rate.
    std::int64_t convicted[2] = {0, 0};
    std::optional<Rational> configured[2];

    for (std::size_t i : member_indices(pop, g)) {
        const Individual& ind = pop[i];
        const int j = to_int(ind.merit);
        const Rational p = conviction_probability(proc, ind);
        if (j == 0)
            ++out.support.n_guilty;
        else
            ++out.support.n_innocent;
        if (deterministic) {
            convicted[j] += p == Rational(1) ? 1 : 0;
        } else if (!configured[j]) {
            configured[j] = p;
        } else if (*configured[j] != p) {
            throw Error(ErrorCode::AmbiguousRate, "group " + describe(g) + " spans " + to_string(ind.merit) +
                                                      " members with different configured rates (" +
                                                      to_string(*configured[j]) + " vs " + to_string(p) + ")");
        }
    }

    for (Merit m : kMeritClasses) {
        const int j = to_int(m);
        const std::int64_t n = out.support.of(m);
        if (n == 0) continue;
        Rational r = deterministic ? Rational(convicted[j], n) : *configured[j];
        (m == Merit::Guilty ? out.h : out.k) = r;
    }
    return out;
}

std::vector<OutcomeAssignment> simulate(const RandomizedProcedure& proc, const Population& pop, std::uint64_t seed,
                                        std::uint64_t trials) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "simulate: trials must be >= 1");
    const Procedure as_proc = proc;
    std::vector<Rational> p;
    p.reserve(pop.size());
    for (const auto& ind : pop) p.push_back(conviction_probability(as_proc, ind));

    std::vector<OutcomeAssignment> runs(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(seed, t));
        auto& run = runs[t];
        run.provenance = OutcomeAssignment::Provenance::Simulated;
        run.seed = seed;
        run.trial = t;
        run.outcomes.resize(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) run.outcomes[i] = bernoulli(rng(), p[i]) ? 0 : 1;
    }
    return runs;
}

ConditionalRates empirical_rates(const Population& pop, const std::vector<OutcomeAssignment>& runs,
                                 const GroupSpec& g) {
    ConditionalRates out;
    out.empirical = true;
    std::int64_t draws[2] = {0, 0};
    std::int64_t convicted[2] = {0, 0};
    const auto members = member_indices(pop, g);
    for (const auto& run : runs) {
        if (run.size() != pop.size())
            throw Error(ErrorCode::InvalidArgument, "outcome assignment does not match population size");
        for (std::size_t i : members) {
            const int j = to_int(pop[i].merit);
            ++draws[j];
            convicted[j] += run.outcomes[i] == 0 ? 1 : 0;
        }
    }
    for (std::size_t i : members) {
        if (pop[i].merit == Merit::Guilty)
            ++out.support.n_guilty;
        else
            ++out.support.n_innocent;
    }
    if (draws[0] > 0) out.h = Rational(convicted[0], draws[0]);
    if (draws[1] > 0) out.k = Rational(convicted[1], draws[1]);
    return out;
}

RandomizedProcedure make_group_fair(const Rational& h, const Rational& k, const std::string& attribute,
                                    const std::set<std::string>& values) {
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, "make_group_fair: empty value set");
    if (attribute.empty()) throw Error(ErrorCode::InvalidArgument, "make_group_fair: empty attribute name");
    const RatePair pair = RatePair::make(h, k);
    PerGroupRates per{attribute, {}};
    for (const auto& v : values) per.rates.emplace(v, pair);
    return RandomizedProcedure{per};
}

namespace {

Rational json_probability(const nlohmann::json& v) {
    if (v.is_string()) return parse_probability(v.get<std::string>());
    if (v.is_number()) return parse_probability(v.dump());
    throw Error(ErrorCode::Parse, "procedure: probability must be a number or string, got " + v.dump());
}

RatePair json_pair(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 2)
        throw Error(ErrorCode::Parse, "procedure: rates must be [h, k], got " + v.dump());
    return RatePair::make(json_probability(v[0]), json_probability(v[1]));
}

}  // namespace

Procedure parse_procedure_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("procedure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw Error(ErrorCode::Parse, "procedure: expected an object with a string \"type\"");
    const auto type = doc["type"].get<std::string>();
    if (type == "deterministic") return DeterministicProcedure{};
    if (type != "randomized") throw Error(ErrorCode::Parse, "procedure: unknown type '" + type + "'");

    if (!doc.contains("rates") || !doc["rates"].is_object())
        throw Error(ErrorCode::Parse, "procedure: randomized procedure needs a \"rates\" object");
    const auto& rates = doc["rates"];
    if (!doc.contains("attribute")) {
        if (rates.size() != 1 || !rates.contains("global"))
            throw Error(ErrorCode::Parse, "procedure: without \"attribute\", rates must be {\"global\": [h, k]}");
        return RandomizedProcedure{GlobalRates{json_pair(rates["global"])}};
    }
    if (!doc["attribute"].is_string() || doc["attribute"].get<std::string>().empty())
        throw Error(ErrorCode::Parse, "procedure: \"attribute\" must be a non-empty string");
    PerGroupRates per{doc["attribute"].get<std::string>(), {}};
    for (const auto& [value, pair] : rates.items()) per.rates.emplace(value, json_pair(pair));
    if (per.rates.empty()) throw Error(ErrorCode::Parse, "procedure: per-group rates are empty");
    return RandomizedProcedure{per};
}

Procedure parse_procedure(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_procedure_text(buf.str());
}

Procedure load_procedure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open procedure file '" + path + "'");
    return parse_procedure(in);
}

std::string procedure_to_json(const Procedure& proc) {
    nlohmann::json doc;
    auto pair = [](const RatePair& p) { return nlohmann::json::array({to_string(p.h), to_string(p.k)}); };
    std::visit(Overloaded{
                   [&](const DeterministicProcedure&) { doc["type"] = "deterministic"; },
                   [&](const RandomizedProcedure& r) {
                       doc["type"] = "randomized";
                       std::visit(Overloaded{
                                      [&](const GlobalRates& g) { doc["rates"]["global"] = pair(g.rates); },
                                      [&](const PerGroupRates& g) {
                                          doc["attribute"] = g.attribute;
                                          doc["rates"] = nlohmann::json::object();
                                          for (const auto& [v, p] : g.rates) doc["rates"][v] = pair(p);
                                      },
                                  },
                                  r.rates);
                   },
               },
               proc);
    return doc.dump();
}

}  // namespace meritfair
