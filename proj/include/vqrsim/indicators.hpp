#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vqrsim/benchmark.hpp"
#include "vqrsim/crediting.hpp"
#include "vqrsim/corpus.hpp"

namespace vqrsim {

struct FaiiConfig {
    std::set<int> metric_substitution_years{2010};
    const BenchmarkSet* benchmarks = nullptr;  // non-owning, must outlive use
    CreditPolicy credit_policy;
};

// University id per byline position, empty string for external authors.
// Throws DomainError when the byline is incomplete.
std::vector<std::string> byline_affiliations(const Corpus& corpus, const Publication& pub);

// c / c-bar for the publication's pooled reference cell, or the journal-metric
// ratio in substitution years. Empty when the value cannot be computed
// (unindexed product, missing metric, or an empty reference mean); bulk FSS
// sums treat those terms as zero contributions.
std::optional<double> scaled_impact(const FaiiConfig& config, const Publication& pub);

// Fractional article impact of one (publication, internal author) pair:
// scaled impact times the author's fractional contribution. Unlike the bulk
// sums, this throws on every incomputable case.
double faii(const Corpus& corpus, const FaiiConfig& config, const Publication& pub,
            const Authorship& authorship);

struct SdsProductivity {
    std::string university_id;
    std::string sds;
    double raw_fss = 0.0;            // per-salary-unit scaled fractional impact
    double salary = 0.0;             // total staff salary in the sector
    double national_mean_fss = 0.0;  // pooled national value for the sector
};

SdsProductivity fss_sds(const Corpus& corpus, const FaiiConfig& config,
                        const std::string& university_id, const std::string& sds);

// Pooled national value: sum of all universities' numerators over the total
// national salary in the sector. Makes the closure identity exact.
double national_mean_fss(const Corpus& corpus, const FaiiConfig& config,
                         const std::string& sds);

enum class FssLevel { uda, university };

inline constexpr std::string_view kWholeInstitution = "overall";

struct InstitutionProductivity {
    std::string university_id;
    FssLevel level = FssLevel::university;
    std::string scope_code;
    double fss_value = 0.0;
    double total_salary = 0.0;
    std::vector<std::string> skipped_sds;  // sectors with no national activity
};

// Salary-weighted mean of nationally normalized sector values over the scope.
// Sectors whose national mean is zero are dropped from the sum (reported in
// skipped_sds); their salary still counts in the scope total.
InstitutionProductivity fss_aggregate(const Corpus& corpus, const FaiiConfig& config,
                                      const std::string& university_id, FssLevel level,
                                      const std::string& scope_code);

}  // namespace vqrsim
