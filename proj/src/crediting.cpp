#include "vqrsim/crediting.hpp"

#include "vqrsim/errors.hpp"

namespace vqrsim {

std::vector<double> credit_vector(const CreditPolicy& policy, std::string_view uda,
                                  std::span<const std::string> affiliations) {
    std::size_t n = affiliations.size();
    if (n == 0)
        throw DomainError("credit_vector on an empty byline");

    if (!policy.byline_weighted(uda))
        return std::vector<double>(n, 1.0 / static_cast<double>(n));

    if (n == 1)
        return {1.0};
    if (n == 2)
        return {0.5, 0.5};

    std::vector<double> credits(n, 0.0);
    const std::string& first = affiliations.front();
    const std::string& last = affiliations.back();
    bool same_university = !first.empty() && first == last;

    if (same_university) {
        credits.front() = 0.40;
        credits.back() = 0.40;
        double middle_share = 0.20 / static_cast<double>(n - 2);
        for (std::size_t i = 1; i + 1 < n; ++i)
            credits[i] = middle_share;
        return credits;
    }

    credits[0] += 0.30;
    credits[n - 1] += 0.30;
    credits[1] += 0.15;
    credits[n - 2] += 0.15;
    if (n >= 5) {
        double interior_share = 0.10 / static_cast<double>(n - 4);
        for (std::size_t i = 2; i + 2 < n; ++i)
            credits[i] += interior_share;
    } else {
        // No interior position left: fold the remainder equally into the four
        // endpoint roles (positions may coincide for 3-author bylines).
        credits[0] += 0.025;
        credits[n - 1] += 0.025;
        credits[1] += 0.025;
        credits[n - 2] += 0.025;
    }
    return credits;
}

double fractional_credit(const CreditPolicy& policy, std::string_view uda,
                         const Authorship& authorship,
                         std::span<const std::string> affiliations) {
    if (authorship.total_authors < 1)
        throw DomainError("authorship of '" + authorship.publication_id +
                          "' has no authors");
    if (affiliations.size() != static_cast<std::size_t>(authorship.total_authors))
        throw DomainError("affiliation list for '" + authorship.publication_id +
                          "' does not cover the byline");
    auto credits = credit_vector(policy, uda, affiliations);
    return credits[static_cast<std::size_t>(authorship.byline_position - 1)];
}

}  // namespace vqrsim
