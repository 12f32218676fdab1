#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vqrsim/corpus.hpp"
#include "vqrsim/rng.hpp"

namespace vqrsim {

// Distribution over author counts. lognormal gives the heavy-tailed
// "grand experiment" regimes; fixed and poisson cover ordinary fields.
struct CountDistribution {
    enum class Kind { fixed, poisson, lognormal };
    Kind kind = Kind::poisson;
    double mean = 3.0;   // poisson mean, or the fixed value
    double mu = 0.0;     // lognormal parameters
    double sigma = 1.0;
    int min = 1;
    int max = 1000000;
    // location_shift moves the distribution on the log scale (ignored by fixed).
    int sample(CounterRng& rng, double location_shift = 0.0) const;
    double log_center() const;  // typical ln(count), the coupling reference
};

struct CitationModel {
    double mu = 1.0;
    double sigma = 1.2;
    std::map<int, double> mu_by_year;  // optional per-year override
    double mu_for(int year) const {
        auto it = mu_by_year.find(year);
        return it == mu_by_year.end() ? mu : it->second;
    }
};

// Where co-authors are recruited from: the whole sector, or only the lead
// author's own university (the "grand experiment" department pattern).
enum class CoauthorPool { sds, university_sds };

struct SdsProfile {
    std::string sds;
    std::string uda;
    CountDistribution coauthors;
    CoauthorPool pool = CoauthorPool::sds;
    // Per-university shift of the lognormal co-author location: universities
    // differ in how exposed their staff are to large collaborations.
    double coauthor_mu_university_sigma = 0.0;
    // Citation location shift per unit of ln(authors) - coauthor mu: larger
    // collaborations collect more citations when positive.
    double citation_coauthor_coupling = 0.0;
    CitationModel citations;
    double metric_mu = 0.3;
    double metric_sigma = 0.7;
    double metric_present_rate = 0.9;
    double indexed_rate = 0.95;
    double w_article = 0.85;
    double w_review = 0.10;
    double w_proceedings = 0.05;
    double w_other = 0.0;
};

struct RankProfile {
    std::string name;
    double weight = 1.0;  // relative share of the staff
    int quota = 3;
    double salary = 1.0;
};

struct SynthSpec {
    std::uint64_t seed = 1;
    Window window{2004, 2010};
    int n_universities = 10;
    int researchers_per_university = 20;
    double publications_per_researcher_mean = 4.0;
    double external_author_rate = 0.2;
    // Per-university quality: a normal shift of this scale is added to the
    // citation and metric location parameters of publications led there.
    double university_quality_sigma = 0.0;
    std::vector<RankProfile> ranks;        // defaulted when empty
    std::vector<SdsProfile> sds_profiles;  // defaulted when empty

    void validate() const;
    static SynthSpec load(const std::filesystem::path& file);
    static SynthSpec parse_text(const std::string& json_text, const std::string& context);
};

// Deterministic: identical seed and spec give a structurally identical corpus
// (and byte-identical files once saved). Citations come from a discretized
// lognormal per sector and year. Co-authors are drawn from the lead author's
// sector across all universities; when the internal pool is exhausted the
// remaining positions become external, or, with external_author_rate = 0, the
// spec is reported as infeasible.
Corpus generate(const SynthSpec& spec);

}  // namespace vqrsim
