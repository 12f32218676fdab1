#include <doctest.h>

#include "test_helpers.hpp"
#include "vqrsim/corpus.hpp"
#include "vqrsim/errors.hpp"

using namespace vqrsim;
using testutil::CorpusBuilder;

namespace {

void write_minimal_csvs(const std::filesystem::path& dir, const std::string& authorships =
                                                              "publication_id,author_key,"
                                                              "byline_position,total_authors\n") {
    testutil::write_file(dir / "universities.csv", "id,name\nU1,Alpha University\n");
    testutil::write_file(dir / "researchers.csv",
                         "id,university_id,sds,uda,quota,salary\nR1,U1,S1,A1,3,1.5\n");
    testutil::write_file(dir / "publications.csv",
                         "id,year,subject_category,doc_type,citations,journal_metric,indexed\n");
    testutil::write_file(dir / "authorships.csv", authorships);
}

}  // namespace

TEST_CASE("load_corpus accepts a corpus with no publications") {
    auto dir = testutil::make_temp_dir("corpus_empty");
    write_minimal_csvs(dir);
    Corpus corpus = load_corpus(CorpusPaths::in_dir(dir), Window{2004, 2010});
    CHECK(corpus.publications().empty());
    CHECK(corpus.universities().size() == 1);
    CHECK(corpus.researchers().size() == 1);
    CHECK(corpus.find_researcher("R1")->salary == 1.5);
}

TEST_CASE("load_corpus rejects byline positions beyond total_authors") {
    CorpusBuilder b;
    b.uni("U1").researcher("R1", "U1", "S1", "A1");
    b.pub("P1", 2006, "CAT", DocType::article, 3, 1.0);
    b.author("P1", "R1", 5, 3);
    CHECK_THROWS_AS(b.build(), DomainError);
}

TEST_CASE("duplicate byline positions are rejected") {
    CorpusBuilder b;
    b.uni("U1").researcher("R1", "U1", "S1", "A1").researcher("R2", "U1", "S1", "A1");
    b.pub("P1", 2006, "CAT", DocType::article, 3, 1.0);
    b.author("P1", "R1", 1, 2).author("P1", "R2", 1, 2);
    CHECK_THROWS_AS(b.build(), ReferentialError);
}

TEST_CASE("dangling references are rejected") {
    SUBCASE("unknown university") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U9", "S1", "A1");
        CHECK_THROWS_AS(b.build(), ReferentialError);
    }
    SUBCASE("unknown publication in authorship") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U1", "S1", "A1");
        b.author("P404", "R1", 1, 1);
        CHECK_THROWS_AS(b.build(), ReferentialError);
    }
    SUBCASE("unknown author key") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U1", "S1", "A1");
        b.pub("P1", 2006, "CAT", DocType::article, 0, {});
        b.author("P1", "RX", 1, 1);
        CHECK_THROWS_AS(b.build(), ReferentialError);
    }
    SUBCASE("external marker is allowed") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U1", "S1", "A1");
        b.pub("P1", 2006, "CAT", DocType::article, 0, {});
        b.author("P1", "R1", 1, 2).author("P1", std::string(kExternalAuthor), 2, 2);
        CHECK_NOTHROW(b.build());
    }
}

TEST_CASE("domain invariants") {
    SUBCASE("year outside the window") {
        CorpusBuilder b;
        b.uni("U1").pub("P1", 1999, "CAT", DocType::article, 0, {});
        CHECK_THROWS_AS(b.build(), DomainError);
    }
    SUBCASE("quota outside 0..6") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U1", "S1", "A1", 7);
        CHECK_THROWS_AS(b.build(), DomainError);
    }
    SUBCASE("an sds cannot span two udas") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U1", "S1", "A1").researcher("R2", "U1", "S1", "A2");
        CHECK_THROWS_AS(b.build(), DomainError);
    }
    SUBCASE("inconsistent total_authors across a byline") {
        CorpusBuilder b;
        b.uni("U1").researcher("R1", "U1", "S1", "A1").researcher("R2", "U1", "S1", "A1");
        b.pub("P1", 2006, "CAT", DocType::article, 1, 1.0);
        b.author("P1", "R1", 1, 2).author("P1", "R2", 2, 3);
        CHECK_THROWS_AS(b.build(), DomainError);
    }
}

TEST_CASE("parse errors carry the line number") {
    auto dir = testutil::make_temp_dir("corpus_badrow");
    write_minimal_csvs(dir);
    testutil::write_file(dir / "researchers.csv",
                         "id,university_id,sds,uda,quota,salary\nR1,U1,S1,A1,notanint,1.0\n");
    try {
        load_corpus(CorpusPaths::in_dir(dir), Window{2004, 2010});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("authors_of returns the byline in order") {
    CorpusBuilder b;
    b.uni("U1");
    b.researcher("R1", "U1", "S1", "A1").researcher("R2", "U1", "S1", "A1");
    b.pub("P1", 2006, "CAT", DocType::article, 3, 1.0);
    b.pub("P2", 2007, "CAT", DocType::article, 1, 1.0);
    // inserted out of order on purpose
    b.author("P1", "R2", 3, 3).author("P1", "R1", 1, 3);
    b.author("P1", std::string(kExternalAuthor), 2, 3);
    b.author("P2", "R1", 1, 1);
    Corpus corpus = b.build();

    auto byline = corpus.authors_of("P1");
    REQUIRE(byline.size() == 3);
    CHECK(byline[0].byline_position == 1);
    CHECK(byline[1].byline_position == 2);
    CHECK(byline[1].is_external());
    CHECK(byline[2].author_key == "R2");

    auto single = corpus.authors_of("P2");
    REQUIRE(single.size() == 1);
    CHECK(single[0].author_key == "R1");

    CHECK_THROWS_AS(corpus.authors_of("P404"), ReferentialError);
}

TEST_CASE("save and reload round-trips exactly") {
    CorpusBuilder b;
    b.uni("U1").uni("U2");
    b.researcher("R1", "U1", "S1", "A1", 2, 1.4).researcher("R2", "U2", "S2", "A2", 3, 2.0);
    b.pub("P1", 2006, "CAT,with comma", DocType::review, 7, 3.14159265358979, true);
    b.pub("P2", 2010, "CAT2", DocType::proceedings, 0, {}, false);
    b.author("P1", "R1", 1, 2).author("P1", std::string(kExternalAuthor), 2, 2);
    b.author("P2", "R2", 1, 1);
    Corpus corpus = b.build();

    auto dir = testutil::make_temp_dir("corpus_roundtrip");
    save_corpus(corpus, dir);
    Corpus reloaded = load_corpus(CorpusPaths::in_dir(dir), corpus.window());
    CHECK(corpus == reloaded);

    // identical bytes in, structurally identical corpus out
    Corpus again = load_corpus(CorpusPaths::in_dir(dir), corpus.window());
    CHECK(reloaded == again);
}

TEST_CASE("internally authored publications are reachable from a university") {
    CorpusBuilder b;
    b.uni("U1").researcher("R1", "U1", "S1", "A1");
    b.pub("P1", 2006, "CAT", DocType::article, 2, 1.0);
    b.author("P1", "R1", 1, 1);
    Corpus corpus = b.build();

    for (const auto& pub : corpus.publications()) {
        bool internal = false;
        bool reachable = false;
        for (const auto& a : corpus.authors_of(pub.id)) {
            if (a.is_external())
                continue;
            internal = true;
            const auto* r = corpus.find_researcher(a.author_key);
            if (r && corpus.find_university(r->university_id))
                reachable = true;
        }
        if (internal)
            CHECK(reachable);
    }
}
