#include "meritfair/population.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "meritfair/error.hpp"

namespace meritfair {

Merit merit_from_int(int value) {
    if (value != 0 && value != 1)
        throw Error(ErrorCode::Domain, "merit J must be 0 or 1, got " + std::to_string(value));
    return static_cast<Merit>(value);
}

const char* to_string(Merit m) noexcept { return m == Merit::Guilty ? "guilty" : "innocent"; }

Criterion criterion_from_int(int value) {
    if (value != 0 && value != 1)
        throw Error(ErrorCode::Domain, "criterion X must be 0 or 1, got " + std::to_string(value));
    return static_cast<Criterion>(value);
}

const std::string* Individual::attribute(const std::string& name) const {
    auto it = attributes.find(name);
    return it == attributes.end() ? nullptr : &it->second;
}

Population::Population(std::vector<Individual> members) : members_(std::move(members)) {
    index_.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const Individual& ind = members_[i];
        if (ind.id.empty()) throw Error(ErrorCode::Domain, "individual id must be non-empty");
        for (const auto& [name, value] : ind.attributes) {
            if (name.empty() || value.empty())
                throw Error(ErrorCode::Domain, "individual '" + ind.id + "' has an empty attribute name or value");
        }
        if (!index_.emplace(ind.id, i).second)
            throw Error(ErrorCode::DuplicateId, "duplicate individual id '" + ind.id + "'");
    }
}

std::optional<std::size_t> Population::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Population::fully_labelled() const noexcept {
    return std::all_of(members_.begin(), members_.end(), [](const Individual& i) { return i.criterion.has_value(); });
}

std::string describe(const GroupSpec& g) {
    struct Visitor {
        std::string operator()(const Everyone&) const { return "all"; }
        std::string operator()(const AttributeEquals& a) const { return a.name + "=" + a.value; }
        std::string operator()(const CriterionEquals& c) const { return "X=" + std::to_string(to_int(c.value)); }
        std::string operator()(const Singleton& s) const { return "{" + s.id + "}"; }
        std::string operator()(const ExplicitIdSet& s) const {
            std::string out = "{";
            bool first = true;
            for (const auto& id : s.ids) {
                if (!first) out += ",";
                out += id;
                first = false;
            }
            return out + "}";
        }
    };
    return std::visit(Visitor{}, g);
}

void validate(const Population& pop, const GroupSpec& g) {
    if (const auto* s = std::get_if<Singleton>(&g)) {
        if (!pop.contains(s->id)) throw Error(ErrorCode::UnknownId, "unknown individual id '" + s->id + "'");
    } else if (const auto* set = std::get_if<ExplicitIdSet>(&g)) {
        for (const auto& id : set->ids)
            if (!pop.contains(id)) throw Error(ErrorCode::UnknownId, "unknown individual id '" + id + "'");
    }
}

bool matches(const Individual& ind, const GroupSpec& g) {
    struct Visitor {
        const Individual& ind;
        bool operator()(const Everyone&) const { return true; }
        bool operator()(const AttributeEquals& a) const {
            const auto* v = ind.attribute(a.name);
            return v != nullptr && *v == a.value;
        }
        bool operator()(const CriterionEquals& c) const { return ind.criterion == c.value; }
        bool operator()(const ExplicitIdSet& s) const { return s.ids.count(ind.id) != 0; }
        bool operator()(const Singleton& s) const { return s.id == ind.id; }
    };
    return std::visit(Visitor{ind}, g);
}

std::vector<std::size_t> member_indices(const Population& pop, const GroupSpec& g) {
    validate(pop, g);
    std::vector<std::size_t> out;
    if (const auto* s = std::get_if<Singleton>(&g)) {
        out.push_back(*pop.index_of(s->id));
        return out;
    }
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (matches(pop[i], g)) out.push_back(i);
    return out;
}

std::vector<Individual> group_members(const Population& pop, const GroupSpec& g) {
    std::vector<Individual> out;
    for (std::size_t i : member_indices(pop, g)) out.push_back(pop[i]);
    return out;
}

MeritCounts merit_counts(const Population& pop, const GroupSpec& g) {
    MeritCounts counts;
    for (std::size_t i : member_indices(pop, g)) {
        if (pop[i].merit == Merit::Guilty)
            ++counts.n_guilty;
        else
            ++counts.n_innocent;
    }
    return counts;
}

std::vector<std::string> attribute_values(const Population& pop, const std::string& attribute) {
    std::vector<std::string> values;
    std::unordered_set<std::string> seen;
    for (const auto& ind : pop) {
        if (const auto* v = ind.attribute(attribute); v != nullptr && seen.insert(*v).second) values.push_back(*v);
    }
    return values;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(std::move(cur));
    return parts;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& why, ErrorCode code = ErrorCode::Parse) {
    throw Error(code, "population line " + std::to_string(line_no) + ": " + why);
}

int parse_bit(const std::string& field, std::size_t line_no, const char* column) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    fail_line(line_no, std::string(column) + " must be 0 or 1, got '" + field + "'", ErrorCode::Domain);
}

}  // namespace

Population load_population(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::vector<Individual> members;
    std::unordered_map<std::string, std::size_t> first_seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!saw_header) {
            if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
            if (line != "id,J,X,attrs") fail_line(line_no, "expected header 'id,J,X,attrs', got '" + line + "'");
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;

        auto fields = split(line, ',');
        if (fields.size() != 4)
            fail_line(line_no, "expected 4 comma-separated fields, got " + std::to_string(fields.size()));

        Individual ind;
        ind.id = fields[0];
        if (ind.id.empty()) fail_line(line_no, "empty id");
        ind.merit = static_cast<Merit>(parse_bit(fields[1], line_no, "J"));
        if (!fields[2].empty()) ind.criterion = static_cast<Criterion>(parse_bit(fields[2], line_no, "X"));
        if (!fields[3].empty()) {
            for (const auto& pair : split(fields[3], ';')) {
                const auto eq = pair.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
                    fail_line(line_no, "malformed attribute '" + pair + "', expected name=value");
                if (!ind.attributes.emplace(pair.substr(0, eq), pair.substr(eq + 1)).second)
                    fail_line(line_no, "attribute '" + pair.substr(0, eq) + "' given twice");
            }
        }
        if (auto [it, inserted] = first_seen.emplace(ind.id, line_no); !inserted)
            fail_line(line_no, "duplicate id '" + ind.id + "' (first seen on line " + std::to_string(it->second) + ")",
                      ErrorCode::DuplicateId);
        members.push_back(std::move(ind));
    }
    if (!saw_header) throw Error(ErrorCode::Parse, "population: missing header 'id,J,X,attrs'");
    return Population(std::move(members));
}

Population load_population_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open population file '" + path + "'");
    return load_population(in);
}

void write_population(std::ostream& out, const Population& pop) {
    out << "id,J,X,attrs\n";
    for (const auto& ind : pop) {
        out << ind.id << ',' << to_int(ind.merit) << ',';
        if (ind.criterion) out << to_int(*ind.criterion);
        out << ',';
        bool first = true;
        for (const auto& [name, value] : ind.attributes) {
            if (!first) out << ';';
            out << name << '=' << value;
            first = false;
        }
        out << '\n';
    }
}

}  // namespace meritfair
