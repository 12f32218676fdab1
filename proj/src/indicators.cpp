#include "vqrsim/indicators.hpp"

#include <algorithm>
#include <map>

#include "vqrsim/errors.hpp"

namespace vqrsim {

std::vector<std::string> byline_affiliations(const Corpus& corpus, const Publication& pub) {
    auto byline = corpus.authors_of(pub.id);
    if (byline.empty())
        throw DomainError("publication '" + pub.id + "' has no recorded byline");
    int total = byline.front().total_authors;
    if (byline.size() != static_cast<std::size_t>(total))
        throw DomainError("publication '" + pub.id + "' byline is incomplete (" +
                          std::to_string(byline.size()) + " of " + std::to_string(total) +
                          " positions)");
    std::vector<std::string> affiliations(static_cast<std::size_t>(total));
    for (const auto& a : byline) {
        if (a.is_external())
            continue;  // empty affiliation marks external authors
        const Researcher* r = corpus.find_researcher(a.author_key);
        if (!r)
            throw ReferentialError("unknown author '" + a.author_key + "'");
        affiliations[static_cast<std::size_t>(a.byline_position - 1)] = r->university_id;
    }
    return affiliations;
}

std::optional<double> scaled_impact(const FaiiConfig& config, const Publication& pub) {
    if (!config.benchmarks)
        throw DomainError("FaiiConfig has no benchmarks");
    if (!pub.indexed)
        return std::nullopt;

    if (config.metric_substitution_years.count(pub.year)) {
        if (!pub.journal_metric)
            return std::nullopt;
        const ReferenceDistribution* cell = nullptr;
        try {
            cell = &config.benchmarks->pooled_cell(pub);
        } catch (const DomainError&) {
            return std::nullopt;
        }
        if (!cell->mean_present_metric)
            return std::nullopt;
        return *pub.journal_metric / *cell->mean_present_metric;
    }

    if (pub.citations == 0)
        return 0.0;
    const ReferenceDistribution* cell = nullptr;
    try {
        cell = &config.benchmarks->pooled_cell(pub);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    if (!cell->mean_cited_citations)
        return std::nullopt;
    return pub.citations / *cell->mean_cited_citations;
}

double faii(const Corpus& corpus, const FaiiConfig& config, const Publication& pub,
            const Authorship& authorship) {
    if (authorship.is_external())
        throw DomainError("FAII is defined per internal author; '" + pub.id +
                          "' authorship is external");
    const Researcher* r = corpus.find_researcher(authorship.author_key);
    if (!r)
        throw ReferentialError("unknown author '" + authorship.author_key + "'");
    if (!config.benchmarks)
        throw DomainError("FaiiConfig has no benchmarks");

    auto affiliations = byline_affiliations(corpus, pub);
    double f = fractional_credit(config.credit_policy, r->uda, authorship, affiliations);

    if (config.metric_substitution_years.count(pub.year)) {
        if (!pub.journal_metric)
            throw DomainError("publication '" + pub.id +
                              "' has no journal metric in a substitution year");
        const auto& cell = config.benchmarks->pooled_cell(pub);
        if (!cell.mean_present_metric)
            throw DomainError("reference cell for '" + pub.id + "' has no journal metrics");
        return (*pub.journal_metric / *cell.mean_present_metric) * f;
    }
    if (pub.citations == 0)
        return 0.0;
    const auto& cell = config.benchmarks->pooled_cell(pub);
    if (!cell.mean_cited_citations)
        throw DomainError("reference cell for '" + pub.id + "' has no cited publications");
    return (pub.citations / *cell.mean_cited_citations) * f;
}

namespace {

// Per-position credits cached per publication; within one sector all staff
// share the same uda, so one cache per call is sound.
class CreditCache {
public:
    CreditCache(const Corpus& corpus, const CreditPolicy& policy, std::string uda)
        : corpus_(corpus), policy_(policy), uda_(std::move(uda)) {}

    double at(const Publication& pub, const Authorship& a) {
        auto it = credits_.find(pub.id);
        if (it == credits_.end()) {
            auto affiliations = byline_affiliations(corpus_, pub);
            it = credits_.emplace(pub.id, credit_vector(policy_, uda_, affiliations)).first;
        }
        return it->second[static_cast<std::size_t>(a.byline_position - 1)];
    }

private:
    const Corpus& corpus_;
    const CreditPolicy& policy_;
    std::string uda_;
    std::map<std::string, std::vector<double>> credits_;
};

// Sum of scaled fractional impacts over the given staff's authorships, in the
// documented order: publication id, then byline position.
double numerator_sum(const Corpus& corpus, const FaiiConfig& config,
                     const std::vector<const Researcher*>& staff) {
    if (staff.empty())
        return 0.0;
    std::vector<const Authorship*> terms;
    for (const Researcher* r : staff)
        for (const Authorship* a : corpus.authored_by(r->id))
            terms.push_back(a);
    std::sort(terms.begin(), terms.end(), [](const Authorship* a, const Authorship* b) {
        return std::tie(a->publication_id, a->byline_position) <
               std::tie(b->publication_id, b->byline_position);
    });

    CreditCache credits(corpus, config.credit_policy, staff.front()->uda);
    double sum = 0.0;
    for (const Authorship* a : terms) {
        const Publication* pub = corpus.find_publication(a->publication_id);
        auto impact = scaled_impact(config, *pub);
        if (!impact || *impact == 0.0)
            continue;
        sum += *impact * credits.at(*pub, *a);
    }
    return sum;
}

std::vector<const Researcher*> staff_of(const Corpus& corpus, const std::string& university_id,
                                        const std::string& sds) {
    std::vector<const Researcher*> staff;
    for (const auto& r : corpus.researchers())
        if (r.sds == sds && (university_id.empty() || r.university_id == university_id))
            staff.push_back(&r);
    return staff;
}

double total_salary(const std::vector<const Researcher*>& staff) {
    double sum = 0.0;
    for (const Researcher* r : staff)
        sum += r->salary;
    return sum;
}

}  // namespace

double national_mean_fss(const Corpus& corpus, const FaiiConfig& config, const std::string& sds) {
    auto staff = staff_of(corpus, std::string(), sds);
    if (staff.empty())
        throw DomainError("sds '" + sds + "' has no national staff");
    double salary = total_salary(staff);
    if (!(salary > 0.0))
        throw DomainError("sds '" + sds + "' has zero national salary");
    return numerator_sum(corpus, config, staff) / salary;
}

SdsProductivity fss_sds(const Corpus& corpus, const FaiiConfig& config,
                        const std::string& university_id, const std::string& sds) {
    auto staff = staff_of(corpus, university_id, sds);
    if (staff.empty())
        throw DomainError("university '" + university_id + "' has no staff in sds '" + sds + "'");
    double salary = total_salary(staff);
    if (!(salary > 0.0))
        throw DomainError("university '" + university_id + "' sds '" + sds +
                          "' has zero total salary");

    SdsProductivity result;
    result.university_id = university_id;
    result.sds = sds;
    result.salary = salary;
    result.raw_fss = numerator_sum(corpus, config, staff) / salary;
    result.national_mean_fss = national_mean_fss(corpus, config, sds);
    return result;
}

InstitutionProductivity fss_aggregate(const Corpus& corpus, const FaiiConfig& config,
                                      const std::string& university_id, FssLevel level,
                                      const std::string& scope_code) {
    // Sector -> scope salary, over every researcher in scope.
    std::map<std::string, double> sds_salary;
    for (const auto& r : corpus.researchers()) {
        if (r.university_id != university_id)
            continue;
        if (level == FssLevel::uda && r.uda != scope_code)
            continue;
        sds_salary[r.sds] += r.salary;
    }
    if (sds_salary.empty())
        throw DomainError("university '" + university_id + "' has no staff in scope '" +
                          scope_code + "'");

    InstitutionProductivity result;
    result.university_id = university_id;
    result.level = level;
    result.scope_code = level == FssLevel::university ? std::string(kWholeInstitution)
                                                      : scope_code;
    for (const auto& [sds, salary] : sds_salary)
        result.total_salary += salary;
    if (!(result.total_salary > 0.0))
        throw DomainError("university '" + university_id + "' scope '" + scope_code +
                          "' has zero total salary");

    for (const auto& [sds, salary] : sds_salary) {
        if (!(salary > 0.0)) {
            result.skipped_sds.push_back(sds);
            continue;
        }
        SdsProductivity sp = fss_sds(corpus, config, university_id, sds);
        if (!(sp.national_mean_fss > 0.0)) {
            result.skipped_sds.push_back(sds);
            continue;
        }
        result.fss_value +=
            (sp.raw_fss / sp.national_mean_fss) * (salary / result.total_salary);
    }
    return result;
}

}  // namespace vqrsim
