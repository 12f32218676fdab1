#include "vqrsim/benchmark.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "vqrsim/errors.hpp"

namespace vqrsim {

std::string_view to_string(DocGroup g) {
    switch (g) {
        case DocGroup::all: return "all";
        case DocGroup::article_only: return "article_only";
        case DocGroup::review_only: return "review_only";
    }
    return "all";
}

namespace {

template <typename T>
double midrank_percentile(const std::vector<T>& sorted, double value) {
    auto below = std::lower_bound(sorted.begin(), sorted.end(), value,
                                  [](const T& x, double v) { return static_cast<double>(x) < v; });
    auto above = std::upper_bound(sorted.begin(), sorted.end(), value,
                                  [](double v, const T& x) { return v < static_cast<double>(x); });
    double count_below = static_cast<double>(below - sorted.begin());
    double count_equal = static_cast<double>(above - below);
    return 100.0 * (count_below + 0.5 * count_equal) / static_cast<double>(sorted.size());
}

}  // namespace

double percentile(const ReferenceDistribution& dist, double value, Axis axis) {
    if (axis == Axis::citations) {
        if (dist.citations.empty())
            throw DomainError("percentile query on empty citation axis");
        return midrank_percentile(dist.citations, value);
    }
    if (dist.metrics.empty())
        throw DomainError("percentile query on empty metric axis");
    return midrank_percentile(dist.metrics, value);
}

PercentileClass class_of(double p) {
    if (!(p >= 0.0 && p <= 100.0))
        throw DomainError("percentile " + std::to_string(p) + " outside [0, 100]");
    if (p >= 80.0) return PercentileClass::c1;
    if (p >= 60.0) return PercentileClass::c2;
    if (p >= 50.0) return PercentileClass::c3;
    return PercentileClass::c4;
}

CategoryMergeMap parse_category_merge_map(const std::string& json_text,
                                          const std::string& context) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    if (!doc.is_object())
        throw ParseError(context + ": merge map must be a JSON object");
    CategoryMergeMap map;
    for (const auto& [group, cats] : doc.items()) {
        if (!cats.is_array())
            throw ParseError(context + ": group '" + group + "' must map to an array");
        for (const auto& c : cats) {
            if (!c.is_string())
                throw ParseError(context + ": group '" + group + "' has a non-string category");
            auto [it, inserted] = map.emplace(c.get<std::string>(), group);
            if (!inserted && it->second != group)
                throw DomainError(context + ": category '" + it->first +
                                  "' assigned to two merge groups");
        }
    }
    return map;
}

CategoryMergeMap load_category_merge_map(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_category_merge_map(text, file.string());
}

std::string BenchmarkSet::mapped_category(const std::string& category) const {
    auto it = merge_.find(category);
    return it == merge_.end() ? category : it->second;
}

BenchmarkSet BenchmarkSet::build(const Corpus& corpus, const CategoryMergeMap& merge,
                                 const std::set<std::string>& split_review_udas) {
    BenchmarkSet set;
    set.merge_ = merge;
    set.split_review_udas_ = split_review_udas;

    std::set<std::string> corpus_categories;
    for (const auto& p : corpus.publications())
        corpus_categories.insert(p.subject_category);
    for (const auto& [cat, group] : merge)
        if (!corpus_categories.count(cat))
            throw DomainError("merge map mentions unknown category '" + cat + "'");

    // Categories whose distributions need an article/review split: those
    // carrying indexed output of researchers in the listed discipline areas.
    std::set<std::string> split_categories;
    if (!split_review_udas.empty()) {
        for (const auto& a : corpus.authorships()) {
            if (a.is_external())
                continue;
            const Researcher* r = corpus.find_researcher(a.author_key);
            if (!r || !split_review_udas.count(r->uda))
                continue;
            const Publication* p = corpus.find_publication(a.publication_id);
            if (p && p->indexed)
                split_categories.insert(set.mapped_category(p->subject_category));
        }
    }

    auto add_to = [&](const ReferenceKey& key, const Publication& p) {
        auto& dist = set.distributions_[key];
        dist.key = key;
        dist.citations.push_back(p.citations);
        if (p.journal_metric)
            dist.metrics.push_back(*p.journal_metric);
    };

    for (const auto& p : corpus.publications()) {
        if (!p.indexed)
            continue;
        std::string cat = set.mapped_category(p.subject_category);
        add_to(ReferenceKey{p.year, cat, DocGroup::all}, p);
        if (split_categories.count(cat)) {
            DocGroup g = p.doc_type == DocType::review ? DocGroup::review_only
                                                       : DocGroup::article_only;
            add_to(ReferenceKey{p.year, cat, g}, p);
        }
    }

    for (auto& [key, dist] : set.distributions_) {
        std::sort(dist.citations.begin(), dist.citations.end());
        std::sort(dist.metrics.begin(), dist.metrics.end());
        double cited_sum = 0;
        std::size_t cited_n = 0;
        for (int c : dist.citations)
            if (c > 0) {
                cited_sum += c;
                ++cited_n;
            }
        if (cited_n > 0)
            dist.mean_cited_citations = cited_sum / static_cast<double>(cited_n);
        double metric_sum = std::accumulate(dist.metrics.begin(), dist.metrics.end(), 0.0);
        if (!dist.metrics.empty() && metric_sum > 0.0)
            dist.mean_present_metric = metric_sum / static_cast<double>(dist.metrics.size());
    }
    return set;
}

const ReferenceDistribution* BenchmarkSet::find(const ReferenceKey& key) const {
    auto it = distributions_.find(key);
    return it == distributions_.end() ? nullptr : &it->second;
}

const ReferenceDistribution& BenchmarkSet::citation_cell(const Publication& pub,
                                                         std::string_view uda) const {
    ReferenceKey key{pub.year, mapped_category(pub.subject_category), DocGroup::all};
    if (split_review_udas_.count(std::string(uda)))
        key.group = pub.doc_type == DocType::review ? DocGroup::review_only
                                                    : DocGroup::article_only;
    if (const auto* d = find(key))
        return *d;
    throw DomainError("no reference distribution for (" + std::to_string(key.year) + ", " +
                      key.category + ", " + std::string(to_string(key.group)) + ")");
}

const ReferenceDistribution& BenchmarkSet::pooled_cell(const Publication& pub) const {
    ReferenceKey key{pub.year, mapped_category(pub.subject_category), DocGroup::all};
    if (const auto* d = find(key))
        return *d;
    throw DomainError("no reference distribution for (" + std::to_string(key.year) + ", " +
                      key.category + ", all)");
}

}  // namespace vqrsim
