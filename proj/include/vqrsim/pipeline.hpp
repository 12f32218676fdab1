#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vqrsim/benchmark.hpp"
#include "vqrsim/corpus.hpp"
#include "vqrsim/crediting.hpp"
#include "vqrsim/ranking.hpp"
#include "vqrsim/rules.hpp"
#include "vqrsim/synth.hpp"

namespace vqrsim {

struct RunConfig {
    std::filesystem::path corpus_dir;
    Window window{2004, 2010};
    std::map<std::string, std::filesystem::path> ruleset_paths;  // per-uda files
    std::filesystem::path default_ruleset;  // used for udas not listed above
    CreditPolicy credit_policy;
    std::set<int> faii_substitution_years{2010};
    std::optional<MissingMode> missing_mode;  // overrides the rule-set files
    int uda_min_staff = 10;
    int overall_min_staff = 30;
    CategoryMergeMap category_merge;
    std::set<std::string> split_review_udas;
    std::filesystem::path out_dir;
    bool dump_selections = false;

    // Relative paths resolve against the config file's directory.
    static RunConfig load(const std::filesystem::path& file);
};

struct RunResult {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

// The full three-scenario experiment: benchmarks, VQR and FAII scoring,
// per-university optimal selection, FSS, rankings per scope, and all pairwise
// comparison reports. Deterministic for fixed inputs at any thread count.
RunResult run_pipeline(const RunConfig& config,
                       const std::filesystem::path& out_dir_override = {},
                       int threads = 1);

// Generates and writes a corpus; returns the four CSV paths.
std::vector<std::filesystem::path> synth_to_dir(const SynthSpec& spec,
                                                const std::filesystem::path& out_dir);

void write_ranking_csv(const RankingList& list, const std::filesystem::path& file);
RankingList read_ranking_csv(const std::filesystem::path& file);

std::string comparison_json_text(const ComparisonReport& report, const std::string& scope,
                                 const std::string& label_a, const std::string& label_b);

// Compares two ranking CSVs; returns the report as JSON text.
std::string compare_ranking_files(const std::filesystem::path& a,
                                  const std::filesystem::path& b);

}  // namespace vqrsim
