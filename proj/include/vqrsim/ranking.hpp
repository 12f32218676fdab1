#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqrsim/rules.hpp"
#include "vqrsim/selection.hpp"

namespace vqrsim {

enum class Scenario { vqr, faii_top_k, fss };
std::string_view to_string(Scenario s);

struct RankEntry {
    std::string university_id;
    double score = 0.0;
    int rank = 0;      // competition ranking: ties share the better rank
    int quartile = 0;  // 1..4
};

struct RankingList {
    std::string scope;     // uda code or "overall"
    std::string scenario;  // vqr / faii_top_k / fss
    std::vector<RankEntry> entries;  // sorted by score descending
};

// (total selected weight + missing * missing-product penalty) / products due.
// Empty when nothing is due (the university is excluded from the scope).
std::optional<double> university_vqr_score(double total_weight, int missing,
                                           int products_due, const RuleSet& rules);
std::optional<double> university_vqr_score(const SelectionResult& selection,
                                           int products_due, const RuleSet& rules);

// ceil(4 * rank / n); tied ranks share a quartile.
int assign_quartile(int n, int rank);

// Sorts, ranks and quartiles the given scores, dropping universities whose
// staff count is below min_staff. Throws DomainError when nothing remains.
RankingList build_ranking(const std::map<std::string, double>& scores,
                          const std::map<std::string, int>& staff_counts, int min_staff,
                          std::string scope, std::string scenario);

enum class CorrKind { pearson, spearman };

// Product-moment coefficient; spearman applies it to midrank-transformed
// data. Throws DomainError on degenerate variance or fewer than two points.
double correlation(std::span<const double> xs, std::span<const double> ys, CorrKind kind);

std::vector<double> midranks(std::span<const double> xs);

struct QuartileStats {
    double pct_shifting_quartile = 0.0;
    double avg_shift = 0.0;
    double median_shift = 0.0;
    int max_shift = 0;
    std::optional<double> correlation;  // Spearman on quartile labels
    double top_to_nontop_pct = 0.0;     // A-top universities not top in B
};

struct ComparisonReport {
    int n = 0;  // universities present in both lists
    double pct_shifting_rank = 0.0;
    double avg_shift = 0.0;
    double median_shift = 0.0;
    int max_shift = 0;
    std::optional<double> score_correlation;  // Pearson on scores
    QuartileStats quartile;
};

// Statistics over the shared universities, re-ranked and re-quartiled within
// the intersection so that differing exclusions cannot fabricate shifts.
// Correlations are empty when a side has no score variance.
ComparisonReport compare(const RankingList& a, const RankingList& b);

}  // namespace vqrsim
