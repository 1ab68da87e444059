#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace meritfair {

/// Moral ground truth. Innocent deserves acquittal, Guilty deserves conviction.
enum class Merit : std::uint8_t { Guilty = 0, Innocent = 1 };

inline constexpr Merit kMeritClasses[] = {Merit::Guilty, Merit::Innocent};

inline int to_int(Merit m) noexcept { return static_cast<int>(m); }
Merit merit_from_int(int value);
const char* to_string(Merit m) noexcept;

/// Determinant criterion of a deterministic procedure (1 = acquittal facts in
/// place). Outcome is always U = X.
enum class Criterion : std::uint8_t { Convict = 0, Acquit = 1 };

inline int to_int(Criterion c) noexcept { return static_cast<int>(c); }
Criterion criterion_from_int(int value);

struct Individual {
    std::string id;
    Merit merit = Merit::Guilty;
    std::optional<Criterion> criterion;
    std::map<std::string, std::string> attributes;

    /// Attribute value or nullptr.
    const std::string* attribute(const std::string& name) const;
};

/// Ordered, id-unique collection of individuals. Immutable once built.
class Population {
public:
    Population() = default;
    /// Throws Error{DuplicateId} or Error{Domain} on invariant violations.
    explicit Population(std::vector<Individual> members);

    const std::vector<Individual>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const Individual& operator[](std::size_t i) const { return members_[i]; }

    std::optional<std::size_t> index_of(const std::string& id) const;
    bool contains(const std::string& id) const { return index_of(id).has_value(); }

    /// True iff every member carries a criterion label.
    bool fully_labelled() const noexcept;

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

private:
    std::vector<Individual> members_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct AttributeEquals {
    std::string name;
    std::string value;
    friend bool operator==(const AttributeEquals&, const AttributeEquals&) = default;
};

struct CriterionEquals {
    Criterion value = Criterion::Convict;
    friend bool operator==(const CriterionEquals&, const CriterionEquals&) = default;
};

struct ExplicitIdSet {
    std::set<std::string> ids;
    friend bool operator==(const ExplicitIdSet&, const ExplicitIdSet&) = default;
};

struct Singleton {
    std::string id;
    friend bool operator==(const Singleton&, const Singleton&) = default;
};

struct Everyone {
    friend bool operator==(const Everyone&, const Everyone&) = default;
};

using GroupSpec = std::variant<Everyone, AttributeEquals, CriterionEquals, ExplicitIdSet, Singleton>;

/// Short human-readable form, e.g. "sex=M", "X=0", "{a,b}", "all".
std::string describe(const GroupSpec& g);

/// Throws Error{UnknownId} if g references ids absent from pop.
void validate(const Population& pop, const GroupSpec& g);

bool matches(const Individual& ind, const GroupSpec& g);

/// Indices into pop, in population order.
std::vector<std::size_t> member_indices(const Population& pop, const GroupSpec& g);

std::vector<Individual> group_members(const Population& pop, const GroupSpec& g);

struct MeritCounts {
    std::int64_t n_guilty = 0;
    std::int64_t n_innocent = 0;

    std::int64_t of(Merit m) const noexcept { return m == Merit::Guilty ? n_guilty : n_innocent; }
    std::int64_t total() const noexcept { return n_guilty + n_innocent; }
    friend bool operator==(const MeritCounts&, const MeritCounts&) = default;
};

MeritCounts merit_counts(const Population& pop, const GroupSpec& g);

/// Distinct values of one attribute in order of first appearance.
std::vector<std::string> attribute_values(const Population& pop, const std::string& attribute);

/// Population CSV: header `id,J,X,attrs`, attrs as `name=value;name=value`.
Population load_population(std::istream& in);
Population load_population_file(const std::string& path);
void write_population(std::ostream& out, const Population& pop);

}  // namespace meritfair
