#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vqrsim/corpus.hpp"

namespace vqrsim {

enum class CreditMode { equal_split, life_science_byline };

struct CreditPolicy {
    CreditMode mode = CreditMode::equal_split;
    std::set<std::string> life_science_udas;

    // Byline weighting applies only in life-science areas; everything else
    // falls back to the equal split.
    bool byline_weighted(std::string_view uda) const {
        return mode == CreditMode::life_science_byline &&
               life_science_udas.count(std::string(uda)) > 0;
    }
};

// Per-position fractional credits for one byline, summing to 1.
// affiliations[i] is the university of byline position i+1, empty string for
// external authors. Under byline weighting: first and last at the same
// university get 0.40 each with 0.20 split among the middle authors;
// otherwise first/last get 0.30, second/second-to-last 0.15, and 0.10 is
// split among the remaining interior positions (folded into the four endpoint
// roles when no interior position exists). Bylines of one or two authors
// renormalize to 1.0 and 0.5/0.5.
std::vector<double> credit_vector(const CreditPolicy& policy, std::string_view uda,
                                  std::span<const std::string> affiliations);

// The credit of one authorship's byline position.
double fractional_credit(const CreditPolicy& policy, std::string_view uda,
                         const Authorship& authorship,
                         std::span<const std::string> affiliations);

}  // namespace vqrsim
