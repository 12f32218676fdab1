#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vqrsim/benchmark.hpp"
#include "vqrsim/corpus.hpp"

namespace vqrsim {

enum class MeritOutcome { A, B, C, D, IR };
std::string_view to_string(MeritOutcome o);
std::optional<MeritOutcome> parse_merit(std::string_view s);

enum class MissingMode { zero, penalty };
enum class PenaltyEvent { missing_product, inadmissible, fraud };

struct ClassificationMatrix {
    int year_start = 0;
    int year_end = 0;
    // Row-major over (citation class, journal class): cells[(ic-1)*4 + (ir-1)].
    std::array<MeritOutcome, 16> cells{};
    bool covers(int year) const { return year >= year_start && year <= year_end; }
    MeritOutcome at(PercentileClass ic, PercentileClass ir) const {
        return cells[static_cast<std::size_t>((to_int(ic) - 1) * 4 + (to_int(ir) - 1))];
    }
};

struct RuleSet {
    std::string uda;
    std::vector<ClassificationMatrix> matrices;
    std::array<double, 4> merit_scores{1.0, 0.8, 0.5, 0.0};  // A, B, C, D
    double ir_score = 0.5;          // informed-peer-review stand-in value
    double unindexed_score = 0.25;  // indexed-without-metric routing
    double penalty_missing = -0.5;
    double penalty_inadmissible = -1.0;
    double penalty_fraud = -2.0;
    MissingMode missing_mode = MissingMode::zero;

    double merit_score(MeritOutcome o) const;
};

RuleSet load_ruleset(const std::filesystem::path& file);
RuleSet parse_ruleset_text(const std::string& json_text, const std::string& context);

// The unique cell for (ic, ir) in the matrix whose period contains year.
MeritOutcome classify(const RuleSet& rules, PercentileClass ic, PercentileClass ir, int year);

// outcome is empty for products routed by the unindexed rule (not indexed, or
// no journal metric).
struct VqrScore {
    std::optional<MeritOutcome> outcome;
    double value = 0.0;
};

VqrScore score_publication(const RuleSet& rules, const Publication& pub,
                           const BenchmarkSet& benchmarks);

double penalty_for(const RuleSet& rules, PenaltyEvent event);

struct ScoredProduct {
    std::string publication_id;
    std::string researcher_id;
    std::optional<MeritOutcome> vqr_outcome;
    double vqr_score = 0.0;
    double faii_score = 0.0;
};

// (researcher_id, publication_id) -> scores
using ScoreTable = std::map<std::pair<std::string, std::string>, ScoredProduct>;

}  // namespace vqrsim
