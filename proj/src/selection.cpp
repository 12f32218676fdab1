#include "vqrsim/selection.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "vqrsim/errors.hpp"

namespace vqrsim {

SelectionProblem build_problem(const Corpus& corpus, const ScoreTable& scores,
                               const std::string& university_id, WeightKind kind) {
    if (!corpus.find_university(university_id))
        throw ReferentialError("unknown university '" + university_id + "'");

    SelectionProblem problem;
    problem.university_id = university_id;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : corpus.researchers()) {
        if (r.university_id != university_id)
            continue;
        problem.quotas[r.id] = r.quota;
        for (const Authorship* a : corpus.authored_by(r.id)) {
            const Publication* pub = corpus.find_publication(a->publication_id);
            if (!pub->indexed)
                continue;
            if (!seen.insert({r.id, pub->id}).second)
                continue;
            auto it = scores.find({r.id, pub->id});
            if (it == scores.end())
                throw DomainError("unscored publication '" + pub->id + "' for researcher '" +
                                  r.id + "'");
            double w = kind == WeightKind::vqr ? it->second.vqr_score : it->second.faii_score;
            problem.edges.push_back(SelectionEdge{r.id, pub->id, w});
        }
    }
    std::sort(problem.edges.begin(), problem.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.researcher_id, a.publication_id) <
               std::tie(b.researcher_id, b.publication_id);
    });
    return problem;
}

namespace {

constexpr double kCostEps = 1e-9;

struct Arc {
    int to;
    int cap;
    double cost;
};

// Successive shortest augmenting paths on the researcher/publication network.
// All edge costs are -weight <= 0, so augmenting while the shortest path cost
// stays <= 0 yields the maximum weight; the zero-cost augmentations on top of
// that maximize the number of chosen pairs.
class MinCostFlow {
public:
    explicit MinCostFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    int add(int u, int v, int cap, double cost) {
        int id = static_cast<int>(arcs_.size());
        arcs_.push_back(Arc{v, cap, cost});
        arcs_.push_back(Arc{u, 0, -cost});
        adj_[static_cast<std::size_t>(u)].push_back(id);
        adj_[static_cast<std::size_t>(v)].push_back(id + 1);
        return id;
    }

    const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }

    void run(int source, int sink) {
        const double inf = std::numeric_limits<double>::infinity();
        std::size_t n = adj_.size();
        std::vector<double> dist(n);
        std::vector<int> parent_arc(n);
        std::vector<char> queued(n);

        for (;;) {
            std::fill(dist.begin(), dist.end(), inf);
            std::fill(parent_arc.begin(), parent_arc.end(), -1);
            std::fill(queued.begin(), queued.end(), 0);
            dist[static_cast<std::size_t>(source)] = 0.0;
            std::deque<int> queue{source};
            queued[static_cast<std::size_t>(source)] = 1;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                queued[static_cast<std::size_t>(u)] = 0;
                for (int id : adj_[static_cast<std::size_t>(u)]) {
                    const Arc& a = arcs_[static_cast<std::size_t>(id)];
                    if (a.cap <= 0)
                        continue;
                    double nd = dist[static_cast<std::size_t>(u)] + a.cost;
                    // Strict improvement only: keeps the first-found parent on
                    // ties and rules out relaxation cycles from rounding noise.
                    if (nd < dist[static_cast<std::size_t>(a.to)] - 1e-12) {
                        dist[static_cast<std::size_t>(a.to)] = nd;
                        parent_arc[static_cast<std::size_t>(a.to)] = id;
                        if (!queued[static_cast<std::size_t>(a.to)]) {
                            queue.push_back(a.to);
                            queued[static_cast<std::size_t>(a.to)] = 1;
                        }
                    }
                }
            }
            if (parent_arc[static_cast<std::size_t>(sink)] < 0 && sink != source)
                break;
            if (dist[static_cast<std::size_t>(sink)] > kCostEps)
                break;

            int bottleneck = std::numeric_limits<int>::max();
            for (int v = sink; v != source;) {
                int id = parent_arc[static_cast<std::size_t>(v)];
                bottleneck = std::min(bottleneck, arcs_[static_cast<std::size_t>(id)].cap);
                v = arcs_[static_cast<std::size_t>(id ^ 1)].to;
            }
            for (int v = sink; v != source;) {
                int id = parent_arc[static_cast<std::size_t>(v)];
                arcs_[static_cast<std::size_t>(id)].cap -= bottleneck;
                arcs_[static_cast<std::size_t>(id ^ 1)].cap += bottleneck;
                v = arcs_[static_cast<std::size_t>(id ^ 1)].to;
            }
        }
    }

private:
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
};

void validate_weights(const SelectionProblem& problem) {
    for (const auto& e : problem.edges) {
        if (!std::isfinite(e.weight) || e.weight < 0.0)
            throw DomainError("edge (" + e.researcher_id + ", " + e.publication_id +
                              ") has negative or non-finite weight");
        if (!problem.quotas.count(e.researcher_id))
            throw ReferentialError("edge researcher '" + e.researcher_id +
                                   "' missing from quotas");
    }
}

SelectionResult finish(const SelectionProblem& problem,
                       std::vector<std::pair<std::string, std::string>> chosen,
                       const std::map<std::pair<std::string, std::string>, double>& weight_of) {
    SelectionResult result;
    std::sort(chosen.begin(), chosen.end());
    result.chosen = std::move(chosen);
    int total_quota = 0;
    for (const auto& [id, q] : problem.quotas) {
        result.per_researcher_counts[id] = 0;
        total_quota += q;
    }
    for (const auto& pair : result.chosen) {
        result.total_weight += weight_of.at(pair);
        ++result.per_researcher_counts[pair.first];
    }
    result.missing = total_quota - static_cast<int>(result.chosen.size());
    return result;
}

}  // namespace

SelectionResult solve_exact(const SelectionProblem& problem) {
    validate_weights(problem);

    std::vector<std::string> researchers;
    for (const auto& [id, q] : problem.quotas)
        researchers.push_back(id);
    std::set<std::string> pub_set;
    for (const auto& e : problem.edges)
        pub_set.insert(e.publication_id);
    std::vector<std::string> pubs(pub_set.begin(), pub_set.end());

    std::map<std::string, int> r_index, p_index;
    for (std::size_t i = 0; i < researchers.size(); ++i)
        r_index[researchers[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < pubs.size(); ++i)
        p_index[pubs[i]] = static_cast<int>(i);

    int R = static_cast<int>(researchers.size());
    int P = static_cast<int>(pubs.size());
    int source = 0, sink = R + P + 1;
    MinCostFlow flow(R + P + 2);

    for (int i = 0; i < R; ++i) {
        int quota = problem.quotas.at(researchers[static_cast<std::size_t>(i)]);
        if (quota > 0)
            flow.add(source, 1 + i, quota, 0.0);
    }
    std::map<std::pair<std::string, std::string>, double> weight_of;
    std::vector<int> edge_arc(problem.edges.size(), -1);
    for (std::size_t i = 0; i < problem.edges.size(); ++i) {
        const auto& e = problem.edges[i];
        weight_of[{e.researcher_id, e.publication_id}] = e.weight;
        edge_arc[i] = flow.add(1 + r_index[e.researcher_id],
                               1 + R + p_index[e.publication_id], 1, -e.weight);
    }
    for (int j = 0; j < P; ++j)
        flow.add(1 + R + j, sink, 1, 0.0);

    flow.run(source, sink);

    std::vector<std::pair<std::string, std::string>> chosen;
    for (std::size_t i = 0; i < problem.edges.size(); ++i)
        if (flow.arc(edge_arc[i]).cap == 0)  // saturated forward arc
            chosen.push_back({problem.edges[i].researcher_id, problem.edges[i].publication_id});
    return finish(problem, std::move(chosen), weight_of);
}

SelectionResult solve_greedy(const SelectionProblem& problem) {
    validate_weights(problem);

    std::vector<const SelectionEdge*> order;
    std::map<std::pair<std::string, std::string>, double> weight_of;
    for (const auto& e : problem.edges) {
        order.push_back(&e);
        weight_of[{e.researcher_id, e.publication_id}] = e.weight;
    }
    std::sort(order.begin(), order.end(), [](const SelectionEdge* a, const SelectionEdge* b) {
        if (a->weight != b->weight)
            return a->weight > b->weight;
        return std::tie(a->researcher_id, a->publication_id) <
               std::tie(b->researcher_id, b->publication_id);
    });

    std::map<std::string, int> remaining = problem.quotas;
    std::set<std::string> used_pubs;
    std::vector<std::pair<std::string, std::string>> chosen;
    for (const SelectionEdge* e : order) {
        if (remaining[e->researcher_id] <= 0 || used_pubs.count(e->publication_id))
            continue;
        --remaining[e->researcher_id];
        used_pubs.insert(e->publication_id);
        chosen.push_back({e->researcher_id, e->publication_id});
    }
    return finish(problem, std::move(chosen), weight_of);
}

}  // namespace vqrsim
