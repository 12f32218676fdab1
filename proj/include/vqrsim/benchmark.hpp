#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vqrsim/corpus.hpp"

namespace vqrsim {

enum class DocGroup { all, article_only, review_only };
std::string_view to_string(DocGroup g);

enum class PercentileClass : int { c1 = 1, c2 = 2, c3 = 3, c4 = 4 };
inline int to_int(PercentileClass c) { return static_cast<int>(c); }

struct ReferenceKey {
    int year = 0;
    std::string category;  // subject category, possibly a merged group name
    DocGroup group = DocGroup::all;
    auto operator<=>(const ReferenceKey&) const = default;
};

struct ReferenceDistribution {
    ReferenceKey key;
    std::vector<int> citations;    // sorted ascending
    std::vector<double> metrics;   // present journal metrics, sorted ascending
    std::optional<double> mean_cited_citations;  // mean over citations > 0
    std::optional<double> mean_present_metric;   // mean over present metrics, absent if none or all zero
};

enum class Axis { citations, metric };

// Midrank percentile of `value` on the chosen axis:
// 100 * (count_below + 0.5 * count_equal) / N. Ties land mid-cohort, so a
// fully tied distribution queries to 50.
double percentile(const ReferenceDistribution& dist, double value, Axis axis);

// Class 1 iff p >= 80; 2 iff 60 <= p < 80; 3 iff 50 <= p < 60; 4 iff p < 50.
PercentileClass class_of(double percentile);

// category -> merged group name; categories not mentioned keep their own name.
using CategoryMergeMap = std::map<std::string, std::string>;

// File format: {"group_name": ["CAT_A", "CAT_B"], ...}
CategoryMergeMap load_category_merge_map(const std::filesystem::path& file);
CategoryMergeMap parse_category_merge_map(const std::string& json_text,
                                          const std::string& context);

// One distribution per occupied (year, category, group) key over the corpus's
// indexed publications. Review/article splits are built for the categories
// that carry output of the listed discipline areas; the split applies to the
// citation axis only, and metric (journal-indicator) queries always read the
// pooled cell, as do the FAII normalizers.
class BenchmarkSet {
public:
    static BenchmarkSet build(const Corpus& corpus,
                              const CategoryMergeMap& merge = {},
                              const std::set<std::string>& split_review_udas = {});

    const ReferenceDistribution* find(const ReferenceKey& key) const;

    // Cell answering citation-percentile queries for a publication assessed
    // under `uda`. Throws DomainError when no distribution covers the key.
    const ReferenceDistribution& citation_cell(const Publication& pub,
                                               std::string_view uda) const;

    // Pooled (group = all) cell: journal-metric percentiles and FAII means.
    const ReferenceDistribution& pooled_cell(const Publication& pub) const;

    std::string mapped_category(const std::string& category) const;
    const std::map<ReferenceKey, ReferenceDistribution>& distributions() const {
        return distributions_;
    }

private:
    std::map<ReferenceKey, ReferenceDistribution> distributions_;
    CategoryMergeMap merge_;
    std::set<std::string> split_review_udas_;
};

}  // namespace vqrsim
