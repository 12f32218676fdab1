#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vqrsim/rng.hpp"
#include "vqrsim/selection.hpp"

// Test-side oracles, independent of the flow-based solver.
namespace oracle {

// Exhaustive optimum over (weight, then chosen count): every publication goes
// to at most one candidate researcher with remaining quota; memoized search
// over the per-researcher quota state.
inline std::pair<double, int> best_assignment(const vqrsim::SelectionProblem& problem) {
    std::vector<std::string> researchers;
    std::vector<int> quotas;
    std::map<std::string, std::size_t> r_index;
    for (const auto& [id, q] : problem.quotas) {
        r_index[id] = researchers.size();
        researchers.push_back(id);
        quotas.push_back(q);
    }
    std::set<std::string> pub_set;
    for (const auto& e : problem.edges)
        pub_set.insert(e.publication_id);
    std::vector<std::string> pubs(pub_set.begin(), pub_set.end());
    std::map<std::string, std::size_t> p_index;
    for (std::size_t i = 0; i < pubs.size(); ++i)
        p_index[pubs[i]] = i;

    std::vector<std::vector<std::pair<std::size_t, double>>> candidates(pubs.size());
    for (const auto& e : problem.edges)
        candidates[p_index[e.publication_id]].push_back({r_index[e.researcher_id], e.weight});

    int base = 1;
    for (int q : quotas)
        base = std::max(base, q + 1);
    std::size_t states = 1;
    std::vector<std::size_t> digit(researchers.size());
    for (std::size_t i = 0; i < researchers.size(); ++i) {
        digit[i] = states;
        states *= static_cast<std::size_t>(base);
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i < researchers.size(); ++i)
        start += digit[i] * static_cast<std::size_t>(quotas[i]);

    std::vector<std::vector<char>> seen(pubs.size() + 1, std::vector<char>(states, 0));
    std::vector<std::vector<std::pair<double, int>>> memo(
        pubs.size() + 1, std::vector<std::pair<double, int>>(states));

    auto better = [](const std::pair<double, int>& a, const std::pair<double, int>& b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second > b.second;
    };

    std::function<std::pair<double, int>(std::size_t, std::size_t)> solve =
        [&](std::size_t pub, std::size_t state) -> std::pair<double, int> {
        if (pub == pubs.size())
            return {0.0, 0};
        if (seen[pub][state])
            return memo[pub][state];
        auto best = solve(pub + 1, state);  // leave the publication unassigned
        for (const auto& [r, w] : candidates[pub]) {
            std::size_t remaining = (state / digit[r]) % static_cast<std::size_t>(base);
            if (remaining == 0)
                continue;
            auto sub = solve(pub + 1, state - digit[r]);
            std::pair<double, int> with{sub.first + w, sub.second + 1};
            if (better(with, best))
                best = with;
        }
        seen[pub][state] = 1;
        memo[pub][state] = best;
        return best;
    };
    return solve(0, start);
}

// Seeded random instances: <= 5 researchers, <= 10 publications, quotas 1..3,
// shared authorships and researcher-dependent weights, some zero.
inline vqrsim::SelectionProblem random_instance(std::uint64_t index) {
    vqrsim::CounterRng rng(977, 31, index);
    vqrsim::SelectionProblem problem;
    problem.university_id = "U";
    int researchers = rng.next_int(1, 5);
    int pubs = rng.next_int(1, 10);
    for (int r = 0; r < researchers; ++r)
        problem.quotas["R" + std::to_string(r)] = rng.next_int(1, 3);
    for (int r = 0; r < researchers; ++r)
        for (int p = 0; p < pubs; ++p) {
            if (rng.next_unit() < 0.5)
                continue;
            double w = rng.next_unit() < 0.15 ? 0.0 : rng.next_unit();
            problem.edges.push_back({"R" + std::to_string(r), "P" + std::to_string(p), w});
        }
    return problem;
}

// No shared publications and researcher-independent weights: the optimum is
// each researcher's top-quota products.
inline vqrsim::SelectionProblem no_conflict_instance(std::uint64_t index, double* expected) {
    vqrsim::CounterRng rng(978, 32, index);
    vqrsim::SelectionProblem problem;
    problem.university_id = "U";
    int researchers = rng.next_int(1, 5);
    double total = 0.0;
    int pub_counter = 0;
    for (int r = 0; r < researchers; ++r) {
        std::string rid = "R" + std::to_string(r);
        int quota = rng.next_int(1, 3);
        problem.quotas[rid] = quota;
        int own = rng.next_int(0, 6);
        std::vector<double> weights;
        for (int k = 0; k < own; ++k) {
            double w = rng.next_unit();
            weights.push_back(w);
            problem.edges.push_back({rid, "P" + std::to_string(pub_counter++), w});
        }
        std::sort(weights.rbegin(), weights.rend());
        for (std::size_t i = 0; i < weights.size() && i < static_cast<std::size_t>(quota); ++i)
            total += weights[i];
    }
    *expected = total;
    return problem;
}

}  // namespace oracle
