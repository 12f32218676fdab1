#include <doctest.h>

#include "test_helpers.hpp"
#include "vqrsim/benchmark.hpp"
#include "vqrsim/errors.hpp"
#include "vqrsim/rng.hpp"

using namespace vqrsim;
using testutil::CorpusBuilder;

namespace {

ReferenceDistribution dist_of(std::vector<int> citations, std::vector<double> metrics = {}) {
    ReferenceDistribution d;
    d.citations = std::move(citations);
    d.metrics = std::move(metrics);
    std::sort(d.citations.begin(), d.citations.end());
    std::sort(d.metrics.begin(), d.metrics.end());
    return d;
}

}  // namespace

TEST_CASE("midrank percentile") {
    SUBCASE("all values tied lands at the median") {
        auto d = dist_of({4, 4, 4, 4});
        CHECK(percentile(d, 4, Axis::citations) == doctest::Approx(50.0));
    }
    SUBCASE("maximum of 100 distinct values") {
        std::vector<int> values(100);
        for (int i = 0; i < 100; ++i)
            values[static_cast<std::size_t>(i)] = i + 1;
        auto d = dist_of(values);
        CHECK(percentile(d, 100, Axis::citations) == doctest::Approx(99.5));
    }
    SUBCASE("minimum of 10 distinct values") {
        auto d = dist_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
        CHECK(percentile(d, 1, Axis::citations) == doctest::Approx(5.0));
    }
    SUBCASE("empty axis is an error") {
        auto d = dist_of({});
        CHECK_THROWS_AS(percentile(d, 1, Axis::citations), DomainError);
        CHECK_THROWS_AS(percentile(d, 1, Axis::metric), DomainError);
    }
}

TEST_CASE("percentile is monotone in the query value") {
    CounterRng rng(7, 99, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> values;
        int n = rng.next_int(1, 40);
        for (int i = 0; i < n; ++i)
            values.push_back(rng.next_int(0, 30));
        auto d = dist_of(values);
        double prev = -1.0;
        for (int v = 0; v <= 31; ++v) {
            double p = percentile(d, v, Axis::citations);
            CHECK(p >= prev);
            prev = p;
        }
    }
}

TEST_CASE("scaling a citation distribution is percentile-equivariant") {
    auto d = dist_of({0, 1, 2, 5, 9, 9, 20});
    std::vector<int> scaled;
    for (int v : d.citations)
        scaled.push_back(v * 5);
    auto d5 = dist_of(scaled);
    for (int j = 0; j <= 50; ++j) {
        double v = j / 2.0;  // members and non-members alike
        CHECK(percentile(d, v, Axis::citations) ==
              percentile(d5, 5.0 * v, Axis::citations));
    }
}

TEST_CASE("class_of boundary table") {
    CHECK(class_of(85) == PercentileClass::c1);
    CHECK(class_of(55) == PercentileClass::c3);
    CHECK(class_of(10) == PercentileClass::c4);
    CHECK(class_of(80) == PercentileClass::c1);
    CHECK(class_of(79.999) == PercentileClass::c2);
    CHECK(class_of(60) == PercentileClass::c2);
    CHECK(class_of(59.999) == PercentileClass::c3);
    CHECK(class_of(50) == PercentileClass::c3);
    CHECK(class_of(49.999) == PercentileClass::c4);
    CHECK(class_of(0) == PercentileClass::c4);
    CHECK(class_of(100) == PercentileClass::c1);
    CHECK_THROWS_AS(class_of(-0.5), DomainError);
    CHECK_THROWS_AS(class_of(100.5), DomainError);
}

TEST_CASE("build_benchmarks produces one pooled key without a split") {
    CorpusBuilder b;
    b.uni("U1").researcher("R1", "U1", "S1", "A1");
    b.pub("P1", 2008, "CHEM", DocType::article, 0, 1.0);
    b.pub("P2", 2008, "CHEM", DocType::article, 4, 2.0);
    b.pub("P3", 2008, "CHEM", DocType::review, 8, {});
    b.pub("P4", 2008, "CHEM", DocType::article, 0, 0.5);
    b.author("P1", "R1", 1, 1).author("P2", "R1", 1, 1);
    b.author("P3", "R1", 1, 1).author("P4", "R1", 1, 1);
    auto set = BenchmarkSet::build(b.build());

    CHECK(set.distributions().size() == 1);
    const auto* d = set.find(ReferenceKey{2008, "CHEM", DocGroup::all});
    REQUIRE(d != nullptr);
    // zeros excluded from the cited mean: {0,0,4,8} -> 6
    CHECK(d->mean_cited_citations == doctest::Approx(6.0));
    // metric mean over present values only
    CHECK(d->mean_present_metric == doctest::Approx((1.0 + 2.0 + 0.5) / 3.0));
}

TEST_CASE("category merging pools distributions") {
    CorpusBuilder b;
    b.uni("U1").researcher("R1", "U1", "S1", "A1");
    b.pub("P1", 2008, "HEMA", DocType::article, 10, 1.0);
    b.pub("P2", 2008, "RHEU", DocType::article, 2, 1.0);
    b.author("P1", "R1", 1, 1).author("P2", "R1", 1, 1);
    Corpus corpus = b.build();

    CategoryMergeMap merge{{"HEMA", "GROUP1"}, {"RHEU", "GROUP1"}};
    auto set = BenchmarkSet::build(corpus, merge);
    const auto* d = set.find(ReferenceKey{2008, "GROUP1", DocGroup::all});
    REQUIRE(d != nullptr);
    CHECK(d->citations == std::vector<int>{2, 10});
    CHECK(set.find(ReferenceKey{2008, "HEMA", DocGroup::all}) == nullptr);

    CategoryMergeMap bad{{"NOPE", "G"}};
    CHECK_THROWS_AS(BenchmarkSet::build(corpus, bad), DomainError);
}

TEST_CASE("review split builds separate distributions for the flagged areas") {
    CorpusBuilder b;
    b.uni("U1").researcher("R1", "U1", "SBIO", "BIO").researcher("R2", "U1", "SCHM", "CHEM");
    b.pub("P1", 2008, "BIOCAT", DocType::article, 3, 1.0);
    b.pub("P2", 2008, "BIOCAT", DocType::review, 30, 1.0);
    b.pub("P3", 2008, "CHMCAT", DocType::article, 5, 1.0);
    b.author("P1", "R1", 1, 1).author("P2", "R1", 1, 1).author("P3", "R2", 1, 1);
    Corpus corpus = b.build();

    auto set = BenchmarkSet::build(corpus, {}, {"BIO"});
    CHECK(set.find(ReferenceKey{2008, "BIOCAT", DocGroup::article_only}) != nullptr);
    CHECK(set.find(ReferenceKey{2008, "BIOCAT", DocGroup::review_only}) != nullptr);
    CHECK(set.find(ReferenceKey{2008, "BIOCAT", DocGroup::all}) != nullptr);
    // categories with no output from the flagged area stay pooled
    CHECK(set.find(ReferenceKey{2008, "CHMCAT", DocGroup::article_only}) == nullptr);

    const Publication& review = *corpus.find_publication("P2");
    CHECK(set.citation_cell(review, "BIO").key.group == DocGroup::review_only);
    CHECK(set.citation_cell(review, "CHEM").key.group == DocGroup::all);
    // journal-metric queries always read the pooled cell
    CHECK(set.pooled_cell(review).key.group == DocGroup::all);
}
