#include "vqrsim/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "vqrsim/errors.hpp"

namespace vqrsim {

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::vqr: return "vqr";
        case Scenario::faii_top_k: return "faii_top_k";
        case Scenario::fss: return "fss";
    }
    return "vqr";
}

std::optional<double> university_vqr_score(double total_weight, int missing,
                                           int products_due, const RuleSet& rules) {
    if (products_due <= 0)
        return std::nullopt;
    return (total_weight + missing * penalty_for(rules, PenaltyEvent::missing_product)) /
           products_due;
}

std::optional<double> university_vqr_score(const SelectionResult& selection,
                                           int products_due, const RuleSet& rules) {
    return university_vqr_score(selection.total_weight, selection.missing, products_due, rules);
}

int assign_quartile(int n, int rank) {
    if (n < 1 || rank < 1 || rank > n)
        throw DomainError("rank " + std::to_string(rank) + " outside 1.." + std::to_string(n));
    return (4 * rank + n - 1) / n;
}

namespace {

// entries must be sorted by score descending; fills ranks and quartiles.
void rank_entries(std::vector<RankEntry>& entries) {
    int n = static_cast<int>(entries.size());
    for (int i = 0; i < n; ++i) {
        if (i > 0 && entries[static_cast<std::size_t>(i)].score ==
                         entries[static_cast<std::size_t>(i - 1)].score)
            entries[static_cast<std::size_t>(i)].rank =
                entries[static_cast<std::size_t>(i - 1)].rank;
        else
            entries[static_cast<std::size_t>(i)].rank = i + 1;
        entries[static_cast<std::size_t>(i)].quartile =
            assign_quartile(n, entries[static_cast<std::size_t>(i)].rank);
    }
}

}  // namespace

RankingList build_ranking(const std::map<std::string, double>& scores,
                          const std::map<std::string, int>& staff_counts, int min_staff,
                          std::string scope, std::string scenario) {
    RankingList list;
    list.scope = std::move(scope);
    list.scenario = std::move(scenario);
    for (const auto& [id, score] : scores) {
        auto it = staff_counts.find(id);
        int staff = it == staff_counts.end() ? 0 : it->second;
        if (staff < min_staff)
            continue;
        list.entries.push_back(RankEntry{id, score, 0, 0});
    }
    if (list.entries.empty())
        throw DomainError("ranking '" + list.scope + "/" + list.scenario +
                          "' is empty after exclusions");
    std::sort(list.entries.begin(), list.entries.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.university_id < b.university_id;
    });
    rank_entries(list.entries);
    return list;
}

std::vector<double> midranks(std::span<const double> xs) {
    std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]])
            ++j;
        double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson_checked(std::span<const double> xs, std::span<const double> ys) {
    std::size_t n = xs.size();
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DomainError("correlation of a constant sequence is undefined");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double correlation(std::span<const double> xs, std::span<const double> ys, CorrKind kind) {
    if (xs.size() != ys.size())
        throw DomainError("correlation input lengths differ");
    if (xs.size() < 2)
        throw DomainError("correlation needs at least two points");
    if (kind == CorrKind::pearson)
        return pearson_checked(xs, ys);
    auto rx = midranks(xs);
    auto ry = midranks(ys);
    return pearson_checked(rx, ry);
}

namespace {

struct Shifts {
    double pct_shifting = 0, avg = 0, median = 0;
    int max = 0;
};

Shifts shift_stats(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t n = a.size();
    std::vector<int> d(n);
    int shifting = 0;
    long long sum = 0;
    Shifts s;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = std::abs(a[i] - b[i]);
        if (d[i] != 0)
            ++shifting;
        sum += d[i];
        s.max = std::max(s.max, d[i]);
    }
    std::sort(d.begin(), d.end());
    s.pct_shifting = 100.0 * shifting / static_cast<double>(n);
    s.avg = static_cast<double>(sum) / static_cast<double>(n);
    s.median = n % 2 ? d[n / 2] : (d[n / 2 - 1] + d[n / 2]) / 2.0;
    return s;
}

// Competition ranks and quartiles of `scores` restricted to the given order.
void re_rank(const std::vector<double>& scores, std::vector<int>& ranks,
             std::vector<int>& quartiles) {
    std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    ranks.assign(n, 0);
    quartiles.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = order[i];
        if (i > 0 && scores[idx] == scores[order[i - 1]])
            ranks[idx] = ranks[order[i - 1]];
        else
            ranks[idx] = static_cast<int>(i) + 1;
        quartiles[idx] = assign_quartile(static_cast<int>(n), ranks[idx]);
    }
}

std::optional<double> correlation_or_empty(std::span<const double> xs,
                                           std::span<const double> ys, CorrKind kind) {
    try {
        return correlation(xs, ys, kind);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

}  // namespace

ComparisonReport compare(const RankingList& a, const RankingList& b) {
    std::map<std::string, double> score_a, score_b;
    for (const auto& e : a.entries)
        score_a[e.university_id] = e.score;
    for (const auto& e : b.entries)
        score_b[e.university_id] = e.score;

    std::vector<std::string> shared;
    for (const auto& [id, s] : score_a)
        if (score_b.count(id))
            shared.push_back(id);
    if (shared.size() < 2)
        throw DomainError("rankings share fewer than two universities");

    std::size_t n = shared.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = score_a[shared[i]];
        ys[i] = score_b[shared[i]];
    }

    std::vector<int> rank_a, rank_b, quart_a, quart_b;
    re_rank(xs, rank_a, quart_a);
    re_rank(ys, rank_b, quart_b);

    ComparisonReport report;
    report.n = static_cast<int>(n);
    Shifts rs = shift_stats(rank_a, rank_b);
    report.pct_shifting_rank = rs.pct_shifting;
    report.avg_shift = rs.avg;
    report.median_shift = rs.median;
    report.max_shift = rs.max;
    report.score_correlation = correlation_or_empty(xs, ys, CorrKind::pearson);

    Shifts qs = shift_stats(quart_a, quart_b);
    report.quartile.pct_shifting_quartile = qs.pct_shifting;
    report.quartile.avg_shift = qs.avg;
    report.quartile.median_shift = qs.median;
    report.quartile.max_shift = qs.max;
    std::vector<double> qa(n), qb(n);
    for (std::size_t i = 0; i < n; ++i) {
        qa[i] = quart_a[i];
        qb[i] = quart_b[i];
    }
    report.quartile.correlation = correlation_or_empty(qa, qb, CorrKind::spearman);

    int top_a = 0, lost = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (quart_a[i] == 1) {
            ++top_a;
            if (quart_b[i] != 1)
                ++lost;
        }
    report.quartile.top_to_nontop_pct = top_a ? 100.0 * lost / top_a : 0.0;
    return report;
}

}  // namespace vqrsim
