#include "vqrsim/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vqrsim/csv.hpp"
#include "vqrsim/errors.hpp"
#include "vqrsim/util.hpp"

namespace vqrsim {

std::optional<DocType> parse_doc_type(std::string_view s) {
    if (s == "article") return DocType::article;
    if (s == "review") return DocType::review;
    if (s == "proceedings") return DocType::proceedings;
    if (s == "other") return DocType::other;
    return std::nullopt;
}

std::string_view to_string(DocType t) {
    switch (t) {
        case DocType::article: return "article";
        case DocType::review: return "review";
        case DocType::proceedings: return "proceedings";
        case DocType::other: return "other";
    }
    return "other";
}

Corpus::Corpus(std::vector<University> universities,
               std::vector<Researcher> researchers,
               std::vector<Publication> publications,
               std::vector<Authorship> authorships,
               Window window)
    : universities_(std::move(universities)),
      researchers_(std::move(researchers)),
      publications_(std::move(publications)),
      authorships_(std::move(authorships)),
      window_(window) {
    // Canonical storage order makes loading deterministic and serialization
    // byte-stable regardless of input row order.
    std::sort(universities_.begin(), universities_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(researchers_.begin(), researchers_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(publications_.begin(), publications_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(authorships_.begin(), authorships_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.publication_id, a.byline_position) <
               std::tie(b.publication_id, b.byline_position);
    });
    build_indexes();
    validate();
}

void Corpus::build_indexes() {
    for (std::size_t i = 0; i < universities_.size(); ++i)
        if (!university_by_id_.emplace(universities_[i].id, i).second)
            throw ReferentialError("duplicate university id '" + universities_[i].id + "'");
    for (std::size_t i = 0; i < researchers_.size(); ++i)
        if (!researcher_by_id_.emplace(researchers_[i].id, i).second)
            throw ReferentialError("duplicate researcher id '" + researchers_[i].id + "'");
    for (std::size_t i = 0; i < publications_.size(); ++i)
        if (!publication_by_id_.emplace(publications_[i].id, i).second)
            throw ReferentialError("duplicate publication id '" + publications_[i].id + "'");

    for (std::size_t i = 1; i < authorships_.size(); ++i)
        if (authorships_[i - 1].publication_id == authorships_[i].publication_id &&
            authorships_[i - 1].byline_position == authorships_[i].byline_position)
            throw ReferentialError("duplicate byline position " +
                                   std::to_string(authorships_[i].byline_position) +
                                   " for publication '" + authorships_[i].publication_id + "'");
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= authorships_.size(); ++i) {
        if (i == authorships_.size() ||
            authorships_[i].publication_id != authorships_[begin].publication_id) {
            byline_range_.emplace(authorships_[begin].publication_id,
                                  std::make_pair(begin, i));
            begin = i;
        }
    }
    for (const auto& a : authorships_)
        if (!a.is_external())
            by_researcher_[a.author_key].push_back(&a);
}

void Corpus::validate() const {
    for (const auto& u : universities_)
        if (u.id.empty())
            throw DomainError("university with empty id");

    std::map<std::string, std::string> sds_to_uda;
    for (const auto& r : researchers_) {
        if (r.id.empty() || r.sds.empty() || r.uda.empty())
            throw DomainError("researcher '" + r.id + "' with empty id/sds/uda");
        if (r.id == kExternalAuthor)
            throw DomainError("researcher id '" + r.id + "' collides with the external-author marker");
        if (!find_university(r.university_id))
            throw ReferentialError("researcher '" + r.id + "' references unknown university '" +
                                   r.university_id + "'");
        if (r.quota < 0 || r.quota > 6)
            throw DomainError("researcher '" + r.id + "' quota " + std::to_string(r.quota) +
                              " outside 0..6");
        if (!(r.salary >= 0.0) || !std::isfinite(r.salary))
            throw DomainError("researcher '" + r.id + "' has negative or non-finite salary");
        auto [it, inserted] = sds_to_uda.emplace(r.sds, r.uda);
        if (!inserted && it->second != r.uda)
            throw DomainError("sds '" + r.sds + "' mapped to both uda '" + it->second +
                              "' and '" + r.uda + "'");
    }

    for (const auto& p : publications_) {
        if (p.id.empty() || p.subject_category.empty())
            throw DomainError("publication '" + p.id + "' with empty id/subject_category");
        if (!window_.contains(p.year))
            throw DomainError("publication '" + p.id + "' year " + std::to_string(p.year) +
                              " outside window " + std::to_string(window_.start) + ".." +
                              std::to_string(window_.end));
        if (p.citations < 0)
            throw DomainError("publication '" + p.id + "' has negative citations");
        if (p.journal_metric && (!(*p.journal_metric >= 0.0) || !std::isfinite(*p.journal_metric)))
            throw DomainError("publication '" + p.id + "' has negative or non-finite journal_metric");
    }

    for (const auto& a : authorships_) {
        if (!find_publication(a.publication_id))
            throw ReferentialError("authorship references unknown publication '" +
                                   a.publication_id + "'");
        if (!a.is_external() && !find_researcher(a.author_key))
            throw ReferentialError("authorship of '" + a.publication_id +
                                   "' references unknown author '" + a.author_key + "'");
        if (a.total_authors < 1)
            throw DomainError("authorship of '" + a.publication_id + "' with total_authors " +
                              std::to_string(a.total_authors));
        if (a.byline_position < 1 || a.byline_position > a.total_authors)
            throw DomainError("authorship of '" + a.publication_id + "' byline_position " +
                              std::to_string(a.byline_position) + " outside 1.." +
                              std::to_string(a.total_authors));
    }
    for (const auto& [pub_id, range] : byline_range_) {
        int total = authorships_[range.first].total_authors;
        for (std::size_t i = range.first; i < range.second; ++i)
            if (authorships_[i].total_authors != total)
                throw DomainError("publication '" + pub_id +
                                  "' has inconsistent total_authors across its byline");
    }
}

const University* Corpus::find_university(std::string_view id) const {
    auto it = university_by_id_.find(id);
    return it == university_by_id_.end() ? nullptr : &universities_[it->second];
}

const Researcher* Corpus::find_researcher(std::string_view id) const {
    auto it = researcher_by_id_.find(id);
    return it == researcher_by_id_.end() ? nullptr : &researchers_[it->second];
}

const Publication* Corpus::find_publication(std::string_view id) const {
    auto it = publication_by_id_.find(id);
    return it == publication_by_id_.end() ? nullptr : &publications_[it->second];
}

std::span<const Authorship> Corpus::authors_of(std::string_view publication_id) const {
    if (!find_publication(publication_id))
        throw ReferentialError("unknown publication '" + std::string(publication_id) + "'");
    auto it = byline_range_.find(publication_id);
    if (it == byline_range_.end())
        return {};
    return std::span<const Authorship>(authorships_.data() + it->second.first,
                                       it->second.second - it->second.first);
}

std::span<const Authorship* const> Corpus::authored_by(std::string_view researcher_id) const {
    auto it = by_researcher_.find(researcher_id);
    if (it == by_researcher_.end())
        return {};
    return it->second;
}

bool Corpus::operator==(const Corpus& other) const {
    return universities_ == other.universities_ && researchers_ == other.researchers_ &&
           publications_ == other.publications_ && authorships_ == other.authorships_ &&
           window_ == other.window_;
}

CorpusPaths CorpusPaths::in_dir(const std::filesystem::path& dir) {
    return CorpusPaths{dir / "universities.csv", dir / "researchers.csv",
                       dir / "publications.csv", dir / "authorships.csv"};
}

Corpus load_corpus(const CorpusPaths& paths, Window window) {
    std::vector<University> universities;
    for (const auto& row : read_csv(paths.universities, {"id", "name"}))
        universities.push_back(University{row.fields[0], row.fields[1]});

    std::vector<Researcher> researchers;
    for (const auto& row : read_csv(paths.researchers,
                                    {"id", "university_id", "sds", "uda", "quota", "salary"})) {
        Researcher r;
        r.id = row.fields[0];
        r.university_id = row.fields[1];
        r.sds = row.fields[2];
        r.uda = row.fields[3];
        r.quota = parse_int(row.fields[4], paths.researchers, row.line_no, "quota");
        r.salary = parse_double(row.fields[5], paths.researchers, row.line_no, "salary");
        researchers.push_back(std::move(r));
    }

    std::vector<Publication> publications;
    for (const auto& row :
         read_csv(paths.publications, {"id", "year", "subject_category", "doc_type",
                                       "citations", "journal_metric", "indexed"})) {
        Publication p;
        p.id = row.fields[0];
        p.year = parse_int(row.fields[1], paths.publications, row.line_no, "year");
        p.subject_category = row.fields[2];
        auto dt = parse_doc_type(row.fields[3]);
        if (!dt)
            throw ParseError(paths.publications.string() + ":" + std::to_string(row.line_no) +
                             ": unknown doc_type '" + row.fields[3] + "'");
        p.doc_type = *dt;
        p.citations = parse_int(row.fields[4], paths.publications, row.line_no, "citations");
        if (!row.fields[5].empty())
            p.journal_metric =
                parse_double(row.fields[5], paths.publications, row.line_no, "journal_metric");
        p.indexed = parse_bool(row.fields[6], paths.publications, row.line_no, "indexed");
        publications.push_back(std::move(p));
    }

    std::vector<Authorship> authorships;
    for (const auto& row : read_csv(paths.authorships, {"publication_id", "author_key",
                                                        "byline_position", "total_authors"})) {
        Authorship a;
        a.publication_id = row.fields[0];
        a.author_key = row.fields[1];
        a.byline_position =
            parse_int(row.fields[2], paths.authorships, row.line_no, "byline_position");
        a.total_authors =
            parse_int(row.fields[3], paths.authorships, row.line_no, "total_authors");
        authorships.push_back(std::move(a));
    }

    return Corpus(std::move(universities), std::move(researchers), std::move(publications),
                  std::move(authorships), window);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto paths = CorpusPaths::in_dir(dir);

    std::vector<std::vector<std::string>> rows;
    for (const auto& u : corpus.universities())
        rows.push_back({u.id, u.name});
    write_csv(paths.universities, {"id", "name"}, rows);

    rows.clear();
    for (const auto& r : corpus.researchers())
        rows.push_back({r.id, r.university_id, r.sds, r.uda, std::to_string(r.quota),
                        format_exact(r.salary)});
    write_csv(paths.researchers, {"id", "university_id", "sds", "uda", "quota", "salary"}, rows);

    rows.clear();
    for (const auto& p : corpus.publications())
        rows.push_back({p.id, std::to_string(p.year), p.subject_category,
                        std::string(to_string(p.doc_type)), std::to_string(p.citations),
                        p.journal_metric ? format_exact(*p.journal_metric) : std::string(),
                        p.indexed ? "1" : "0"});
    write_csv(paths.publications,
              {"id", "year", "subject_category", "doc_type", "citations", "journal_metric",
               "indexed"},
              rows);

    rows.clear();
    for (const auto& a : corpus.authorships())
        rows.push_back({a.publication_id, a.author_key, std::to_string(a.byline_position),
                        std::to_string(a.total_authors)});
    write_csv(paths.authorships, {"publication_id", "author_key", "byline_position",
                                  "total_authors"},
              rows);
}

}  // namespace vqrsim
