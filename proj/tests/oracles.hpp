#pragma once

// Test-only reference computations. Nothing here calls into the library's
// rate, fairness or search code: inputs are plain (J, X) vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Subject {
    int j;  // merit
    int x;  // criterion; outcome U = X, conviction iff X == 0
};

/// Misclassification counts: h = convicted guilty / guilty, k = convicted
/// innocent / innocent, as (numerator, denominator) pairs.
struct CountRates {
    long h_num = 0, h_den = 0, k_num = 0, k_den = 0;
};

inline CountRates count_rates(const std::vector<Subject>& subjects) {
    CountRates r;
    for (const auto& s : subjects) {
        const bool convicted = s.x == 0;
        if (s.j == 0) {
            ++r.h_den;
            r.h_num += convicted;
        } else {
            ++r.k_den;
            r.k_num += convicted;
        }
    }
    return r;
}

/// Unordered bipartition as the sorted index list of the side holding index 0.
using Split = std::vector<int>;

/// All splits {S, complement} for which some merit class present on both
/// sides has different conviction fractions. Enumerates every ordered subset
/// and canonicalises, so it shares no enumeration logic with the library.
inline std::set<Split> violating_splits(const std::vector<Subject>& subjects) {
    const int n = static_cast<int>(subjects.size());
    std::set<Split> out;
    for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
        bool violated = false;
        for (int j = 0; j < 2 && !violated; ++j) {
            long in_n = 0, in_c = 0, out_n = 0, out_c = 0;
            for (int i = 0; i < n; ++i) {
                if (subjects[i].j != j) continue;
                const long conv = subjects[i].x == 0 ? 1 : 0;
                if (mask & (1U << i)) {
                    ++in_n;
                    in_c += conv;
                } else {
                    ++out_n;
                    out_c += conv;
                }
            }
            if (in_n > 0 && out_n > 0 && in_c * out_n != out_c * in_n) violated = true;
        }
        if (!violated) continue;
        const std::uint32_t side = (mask & 1U) ? mask : ((1U << n) - 1) ^ mask;
        Split s;
        for (int i = 0; i < n; ++i)
            if (side & (1U << i)) s.push_back(i);
        out.insert(s);
    }
    return out;
}

/// Three binomial standard errors of a proportion p over n draws.
inline double three_sigma(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace oracle
