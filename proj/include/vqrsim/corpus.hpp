#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqrsim {

// Reserved author_key for co-authors outside the assessed population. They
// keep byline positions and author counts truthful without needing records.
inline constexpr std::string_view kExternalAuthor = "EXT";

enum class DocType { article, review, proceedings, other };
std::optional<DocType> parse_doc_type(std::string_view s);
std::string_view to_string(DocType t);

struct Window {
    int start = 2004;
    int end = 2010;
    bool contains(int year) const { return year >= start && year <= end; }
    bool operator==(const Window&) const = default;
};

struct University {
    std::string id;
    std::string name;
    bool operator==(const University&) const = default;
};

struct Researcher {
    std::string id;
    std::string university_id;
    std::string sds;   // scientific disciplinary sector (one per researcher)
    std::string uda;   // discipline area the sds belongs to
    int quota = 0;     // products due, 0..6
    double salary = 0.0;
    bool operator==(const Researcher&) const = default;
};

struct Publication {
    std::string id;
    int year = 0;
    std::string subject_category;
    DocType doc_type = DocType::article;
    int citations = 0;                    // count at census date
    std::optional<double> journal_metric; // impact-factor-like value
    bool indexed = true;
    bool operator==(const Publication&) const = default;
};

struct Authorship {
    std::string publication_id;
    std::string author_key;  // researcher id or kExternalAuthor
    int byline_position = 0; // 1-based
    int total_authors = 0;
    bool is_external() const { return author_key == kExternalAuthor; }
    bool operator==(const Authorship&) const = default;
};

// Immutable after construction; construction cross-validates every reference
// and invariant. Safe for concurrent reads.
class Corpus {
public:
    Corpus(std::vector<University> universities,
           std::vector<Researcher> researchers,
           std::vector<Publication> publications,
           std::vector<Authorship> authorships,
           Window window);

    const std::vector<University>& universities() const { return universities_; }
    const std::vector<Researcher>& researchers() const { return researchers_; }
    const std::vector<Publication>& publications() const { return publications_; }
    const std::vector<Authorship>& authorships() const { return authorships_; }
    Window window() const { return window_; }

    const University* find_university(std::string_view id) const;
    const Researcher* find_researcher(std::string_view id) const;
    const Publication* find_publication(std::string_view id) const;

    // Byline-ordered authorship rows of a publication (may be shorter than
    // total_authors when the data omits positions).
    std::span<const Authorship> authors_of(std::string_view publication_id) const;

    // Authorships naming this researcher, ordered by (publication id, byline
    // position). Empty for researchers with no recorded authorship.
    std::span<const Authorship* const> authored_by(std::string_view researcher_id) const;

    bool operator==(const Corpus& other) const;

private:
    void validate() const;
    void build_indexes();

    std::vector<University> universities_;
    std::vector<Researcher> researchers_;
    std::vector<Publication> publications_;
    std::vector<Authorship> authorships_;
    Window window_;

    std::map<std::string, std::size_t, std::less<>> university_by_id_;
    std::map<std::string, std::size_t, std::less<>> researcher_by_id_;
    std::map<std::string, std::size_t, std::less<>> publication_by_id_;
    std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> byline_range_;
    std::map<std::string, std::vector<const Authorship*>, std::less<>> by_researcher_;
};

struct CorpusPaths {
    std::filesystem::path universities;
    std::filesystem::path researchers;
    std::filesystem::path publications;
    std::filesystem::path authorships;
    static CorpusPaths in_dir(const std::filesystem::path& dir);
};

Corpus load_corpus(const CorpusPaths& paths, Window window);
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);

}  // namespace vqrsim
