#include "vqrsim/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "vqrsim/errors.hpp"

namespace vqrsim {

namespace {

// Stream kinds: one per entity concern, so draws never interleave.
constexpr std::uint64_t kResearcherStream = 1;
constexpr std::uint64_t kPubCountStream = 2;
constexpr std::uint64_t kPubCoreStream = 3;
constexpr std::uint64_t kBylineStream = 4;
constexpr std::uint64_t kUniversityStream = 5;

std::string make_id(char prefix, int min_width, std::size_t index, std::size_t count) {
    int width = min_width;
    std::size_t cap = 1;
    for (int i = 0; i < width; ++i)
        cap *= 10;
    while (count > cap) {
        cap *= 10;
        ++width;
    }
    std::string digits = std::to_string(index);
    std::string out(1, prefix);
    out.append(static_cast<std::size_t>(width) - std::min<std::size_t>(digits.size(),
                                                                       static_cast<std::size_t>(width)),
               '0');
    out += digits;
    return out;
}

}  // namespace

int CountDistribution::sample(CounterRng& rng, double location_shift) const {
    double value = 0.0;
    switch (kind) {
        case Kind::fixed:
            value = mean;
            break;
        case Kind::poisson:
            value = rng.next_poisson(mean * std::exp(location_shift));
            break;
        case Kind::lognormal:
            value = std::floor(rng.next_lognormal(mu + location_shift, sigma));
            break;
    }
    int n = static_cast<int>(value);
    return std::clamp(n, min, max);
}

double CountDistribution::log_center() const {
    switch (kind) {
        case Kind::fixed:
        case Kind::poisson:
            return std::log(std::max(mean, 1.0));
        case Kind::lognormal:
            return mu;
    }
    return 0.0;
}

void SynthSpec::validate() const {
    if (n_universities < 1 || researchers_per_university < 1)
        throw DomainError("synth spec: counts must be >= 1");
    if (publications_per_researcher_mean < 0.0)
        throw DomainError("synth spec: negative publication mean");
    if (external_author_rate < 0.0 || external_author_rate > 1.0)
        throw DomainError("synth spec: external_author_rate outside [0, 1]");
    if (university_quality_sigma < 0.0)
        throw DomainError("synth spec: negative university_quality_sigma");
    if (window.start > window.end)
        throw DomainError("synth spec: window out of order");
    double rank_weight = 0.0;
    for (const auto& r : ranks) {
        if (r.weight < 0.0 || r.quota < 0 || r.quota > 6 || r.salary < 0.0)
            throw DomainError("synth spec: bad rank profile '" + r.name + "'");
        rank_weight += r.weight;
    }
    if (!ranks.empty() && rank_weight <= 0.0)
        throw DomainError("synth spec: rank weights sum to zero");
    for (const auto& p : sds_profiles) {
        if (p.sds.empty() || p.uda.empty())
            throw DomainError("synth spec: sds profile with empty sds/uda");
        if (p.coauthors.min < 1 || p.coauthors.min > p.coauthors.max)
            throw DomainError("synth spec: bad coauthor bounds in '" + p.sds + "'");
        if (p.coauthor_mu_university_sigma < 0.0)
            throw DomainError("synth spec: negative coauthor_mu_university_sigma in '" +
                              p.sds + "'");
        for (double rate : {p.metric_present_rate, p.indexed_rate})
            if (rate < 0.0 || rate > 1.0)
                throw DomainError("synth spec: probability outside [0, 1] in '" + p.sds + "'");
        if (p.w_article < 0 || p.w_review < 0 || p.w_proceedings < 0 || p.w_other < 0 ||
            p.w_article + p.w_review + p.w_proceedings + p.w_other <= 0.0)
            throw DomainError("synth spec: bad doc_type weights in '" + p.sds + "'");
    }
}

namespace {

std::vector<RankProfile> default_ranks() {
    return {{"assistant", 0.35, 1, 1.0}, {"associate", 0.35, 2, 1.4}, {"full", 0.30, 3, 2.0}};
}

std::vector<SdsProfile> default_profiles() {
    SdsProfile p;
    p.sds = "S01";
    p.uda = "AREA1";
    return {p};
}

CountDistribution parse_count_distribution(const nlohmann::json& j, const std::string& context) {
    CountDistribution d;
    std::string kind = j.value("kind", "poisson");
    if (kind == "fixed")
        d.kind = CountDistribution::Kind::fixed;
    else if (kind == "poisson")
        d.kind = CountDistribution::Kind::poisson;
    else if (kind == "lognormal")
        d.kind = CountDistribution::Kind::lognormal;
    else
        throw ParseError(context + ": unknown count distribution kind '" + kind + "'");
    d.mean = j.value("mean", d.mean);
    d.mu = j.value("mu", d.mu);
    d.sigma = j.value("sigma", d.sigma);
    d.min = j.value("min", d.min);
    d.max = j.value("max", d.max);
    return d;
}

}  // namespace

SynthSpec SynthSpec::parse_text(const std::string& json_text, const std::string& context) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    SynthSpec spec;
    try {
        spec.seed = doc.value("seed", spec.seed);
        if (doc.contains("window")) {
            spec.window.start = doc["window"].at(0).get<int>();
            spec.window.end = doc["window"].at(1).get<int>();
        }
        spec.n_universities = doc.value("n_universities", spec.n_universities);
        spec.researchers_per_university =
            doc.value("researchers_per_university", spec.researchers_per_university);
        spec.publications_per_researcher_mean =
            doc.value("publications_per_researcher_mean", spec.publications_per_researcher_mean);
        spec.external_author_rate = doc.value("external_author_rate", spec.external_author_rate);
        spec.university_quality_sigma =
            doc.value("university_quality_sigma", spec.university_quality_sigma);

        if (doc.contains("ranks")) {
            for (const auto& r : doc["ranks"]) {
                RankProfile rp;
                rp.name = r.at("name").get<std::string>();
                rp.weight = r.value("weight", 1.0);
                rp.quota = r.at("quota").get<int>();
                rp.salary = r.at("salary").get<double>();
                spec.ranks.push_back(std::move(rp));
            }
        }
        if (doc.contains("sds_profiles")) {
            for (const auto& s : doc["sds_profiles"]) {
                SdsProfile p;
                p.sds = s.at("sds").get<std::string>();
                p.uda = s.at("uda").get<std::string>();
                if (s.contains("coauthors"))
                    p.coauthors = parse_count_distribution(s["coauthors"], context);
                std::string pool = s.value("coauthor_pool", "sds");
                if (pool == "sds")
                    p.pool = CoauthorPool::sds;
                else if (pool == "university_sds")
                    p.pool = CoauthorPool::university_sds;
                else
                    throw ParseError(context + ": unknown coauthor_pool '" + pool + "'");
                p.coauthor_mu_university_sigma =
                    s.value("coauthor_mu_university_sigma", p.coauthor_mu_university_sigma);
                p.citation_coauthor_coupling =
                    s.value("citation_coauthor_coupling", p.citation_coauthor_coupling);
                if (s.contains("citations")) {
                    p.citations.mu = s["citations"].value("mu", p.citations.mu);
                    p.citations.sigma = s["citations"].value("sigma", p.citations.sigma);
                    if (s["citations"].contains("mu_by_year"))
                        for (const auto& [year, mu] : s["citations"]["mu_by_year"].items())
                            p.citations.mu_by_year[std::stoi(year)] = mu.get<double>();
                }
                if (s.contains("metric")) {
                    p.metric_mu = s["metric"].value("mu", p.metric_mu);
                    p.metric_sigma = s["metric"].value("sigma", p.metric_sigma);
                }
                p.metric_present_rate = s.value("metric_present_rate", p.metric_present_rate);
                p.indexed_rate = s.value("indexed_rate", p.indexed_rate);
                if (s.contains("doc_types")) {
                    const auto& w = s["doc_types"];
                    p.w_article = w.value("article", 0.0);
                    p.w_review = w.value("review", 0.0);
                    p.w_proceedings = w.value("proceedings", 0.0);
                    p.w_other = w.value("other", 0.0);
                }
                spec.sds_profiles.push_back(std::move(p));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    if (spec.ranks.empty())
        spec.ranks = default_ranks();
    if (spec.sds_profiles.empty())
        spec.sds_profiles = default_profiles();
    spec.validate();
    return spec;
}

SynthSpec SynthSpec::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_text(text, file.string());
}

Corpus generate(const SynthSpec& raw_spec) {
    SynthSpec spec = raw_spec;
    if (spec.ranks.empty())
        spec.ranks = default_ranks();
    if (spec.sds_profiles.empty())
        spec.sds_profiles = default_profiles();
    spec.validate();

    std::size_t n_univ = static_cast<std::size_t>(spec.n_universities);
    std::size_t per_univ = static_cast<std::size_t>(spec.researchers_per_university);
    std::size_t n_res = n_univ * per_univ;
    std::size_t n_profiles = spec.sds_profiles.size();

    std::vector<University> universities;
    universities.reserve(n_univ);
    for (std::size_t u = 0; u < n_univ; ++u) {
        std::string id = make_id('U', 3, u, n_univ);
        universities.push_back(University{id, "University " + id});
    }

    double rank_weight_total = 0.0;
    for (const auto& r : spec.ranks)
        rank_weight_total += r.weight;

    std::vector<double> quality(n_univ, 0.0);
    std::vector<std::vector<double>> coauthor_shift(n_univ,
                                                    std::vector<double>(n_profiles, 0.0));
    for (std::size_t u = 0; u < n_univ; ++u) {
        CounterRng rng(spec.seed, kUniversityStream, u);
        quality[u] = rng.next_normal(0.0, 1.0) * spec.university_quality_sigma;
        for (std::size_t p = 0; p < n_profiles; ++p)
            coauthor_shift[u][p] = rng.next_normal(0.0, 1.0) *
                                   spec.sds_profiles[p].coauthor_mu_university_sigma;
    }

    std::vector<Researcher> researchers;
    researchers.reserve(n_res);
    // sector -> member researcher indexes (round-robin assignment keeps every
    // sector staffed at every university)
    std::vector<std::vector<std::size_t>> pool(n_profiles);
    std::vector<std::vector<std::vector<std::size_t>>> pool_by_univ(
        n_profiles, std::vector<std::vector<std::size_t>>(n_univ));
    std::vector<std::size_t> profile_of(n_res);
    std::vector<std::size_t> university_of(n_res);
    for (std::size_t u = 0; u < n_univ; ++u) {
        for (std::size_t i = 0; i < per_univ; ++i) {
            std::size_t g = u * per_univ + i;
            std::size_t prof = i % n_profiles;
            profile_of[g] = prof;
            university_of[g] = u;
            pool[prof].push_back(g);
            pool_by_univ[prof][u].push_back(g);

            CounterRng rng(spec.seed, kResearcherStream, g);
            double pick = rng.next_unit() * rank_weight_total;
            const RankProfile* rank = &spec.ranks.back();
            for (const auto& r : spec.ranks) {
                if (pick < r.weight) {
                    rank = &r;
                    break;
                }
                pick -= r.weight;
            }
            Researcher r;
            r.id = make_id('R', 5, g, n_res);
            r.university_id = universities[u].id;
            r.sds = spec.sds_profiles[prof].sds;
            r.uda = spec.sds_profiles[prof].uda;
            r.quota = rank->quota;
            r.salary = rank->salary;
            researchers.push_back(std::move(r));
        }
    }

    std::vector<Publication> publications;
    std::vector<Authorship> authorships;
    int years = spec.window.end - spec.window.start + 1;
    std::size_t approx_pubs =
        static_cast<std::size_t>(spec.publications_per_researcher_mean * static_cast<double>(n_res)) + 16;
    publications.reserve(approx_pubs);

    std::size_t pub_counter = 0;
    for (std::size_t lead = 0; lead < n_res; ++lead) {
        const SdsProfile& prof = spec.sds_profiles[profile_of[lead]];
        CounterRng count_rng(spec.seed, kPubCountStream, lead);
        int n_pubs = count_rng.next_poisson(spec.publications_per_researcher_mean);
        for (int k = 0; k < n_pubs; ++k) {
            std::size_t pid = pub_counter++;
            Publication pub;
            pub.id = make_id('P', 6, pid, approx_pubs * 10);

            CounterRng rng(spec.seed, kPubCoreStream, pid);
            pub.year = spec.window.start + rng.next_int(0, years - 1);
            int total_authors = prof.coauthors.sample(
                rng, coauthor_shift[university_of[lead]][profile_of[lead]]);

            double w = rng.next_unit() *
                       (prof.w_article + prof.w_review + prof.w_proceedings + prof.w_other);
            if (w < prof.w_article)
                pub.doc_type = DocType::article;
            else if (w < prof.w_article + prof.w_review)
                pub.doc_type = DocType::review;
            else if (w < prof.w_article + prof.w_review + prof.w_proceedings)
                pub.doc_type = DocType::proceedings;
            else
                pub.doc_type = DocType::other;

            pub.subject_category = "C_" + prof.sds;
            double lead_quality = quality[university_of[lead]];
            double coupling = prof.citation_coauthor_coupling == 0.0
                                  ? 0.0
                                  : prof.citation_coauthor_coupling *
                                        (std::log(static_cast<double>(total_authors)) -
                                         prof.coauthors.log_center());
            pub.citations = static_cast<int>(std::floor(rng.next_lognormal(
                prof.citations.mu_for(pub.year) + lead_quality + coupling,
                prof.citations.sigma)));
            pub.indexed = rng.next_unit() < prof.indexed_rate;
            bool metric_present = rng.next_unit() < prof.metric_present_rate;
            double metric_value =
                rng.next_lognormal(prof.metric_mu + lead_quality, prof.metric_sigma);
            if (metric_present)
                pub.journal_metric = metric_value;

            // Byline: the lead somewhere in it, co-authors drawn without
            // replacement from the configured pool, externals by rate.
            CounterRng brng(spec.seed, kBylineStream, pid);
            int lead_pos = brng.next_int(1, total_authors);
            const std::vector<std::size_t>& recruit =
                prof.pool == CoauthorPool::university_sds
                    ? pool_by_univ[profile_of[lead]][university_of[lead]]
                    : pool[profile_of[lead]];
            std::vector<std::size_t> avail;
            avail.reserve(recruit.size());
            for (std::size_t r : recruit)
                if (r != lead)
                    avail.push_back(r);
            std::size_t avail_n = avail.size();

            for (int pos = 1; pos <= total_authors; ++pos) {
                Authorship a;
                a.publication_id = pub.id;
                a.byline_position = pos;
                a.total_authors = total_authors;
                if (pos == lead_pos) {
                    a.author_key = researchers[lead].id;
                } else {
                    bool external = brng.next_unit() < spec.external_author_rate;
                    if (!external && avail_n == 0) {
                        if (spec.external_author_rate > 0.0) {
                            external = true;  // sector exhausted, spill outside
                        } else {
                            throw DomainError(
                                "infeasible synth spec: byline of " +
                                std::to_string(total_authors) + " authors needs more staff than sds '" +
                                prof.sds + "' has");
                        }
                    }
                    if (external) {
                        a.author_key = std::string(kExternalAuthor);
                    } else {
                        std::size_t j = static_cast<std::size_t>(
                            brng.next_int(0, static_cast<int>(avail_n) - 1));
                        a.author_key = researchers[avail[j]].id;
                        std::swap(avail[j], avail[avail_n - 1]);
                        --avail_n;
                    }
                }
                authorships.push_back(std::move(a));
            }
            publications.push_back(std::move(pub));
        }
    }

    return Corpus(std::move(universities), std::move(researchers), std::move(publications),
                  std::move(authorships), spec.window);
}

}  // namespace vqrsim
