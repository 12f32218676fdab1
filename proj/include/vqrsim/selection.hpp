#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vqrsim/corpus.hpp"
#include "vqrsim/rules.hpp"

namespace vqrsim {

struct SelectionEdge {
    std::string researcher_id;
    std::string publication_id;
    double weight = 0.0;
    bool operator==(const SelectionEdge&) const = default;
};

// One university's submission problem: pick per-researcher product sets,
// each publication presented at most once per institution.
struct SelectionProblem {
    std::string university_id;
    std::vector<SelectionEdge> edges;   // unique (researcher, publication) pairs
    std::map<std::string, int> quotas;  // every researcher of the university
};

struct SelectionResult {
    std::vector<std::pair<std::string, std::string>> chosen;  // sorted pairs
    double total_weight = 0.0;
    std::map<std::string, int> per_researcher_counts;
    int missing = 0;  // total quota minus chosen count
};

enum class WeightKind { vqr, faii };

// One edge per internal authorship of an indexed publication; weight from the
// score table. Throws DomainError on indexed products missing from it.
SelectionProblem build_problem(const Corpus& corpus, const ScoreTable& scores,
                               const std::string& university_id, WeightKind kind);

// Globally maximal total weight subject to quotas and per-publication
// capacity; among maximum-weight solutions, one with the most chosen pairs.
// Deterministic: edges are processed in (researcher, publication) order.
SelectionResult solve_exact(const SelectionProblem& problem);

// Picks the heaviest feasible edge until none remains (ties by pair order).
SelectionResult solve_greedy(const SelectionProblem& problem);

}  // namespace vqrsim
