#include <doctest.h>

#include "test_helpers.hpp"
#include "vqrsim/errors.hpp"
#include "vqrsim/rules.hpp"

using namespace vqrsim;
using testutil::CorpusBuilder;

namespace {

const char* kRulesDir = VQRSIM_RULES_DIR;

RuleSet chemistry() { return load_ruleset(std::filesystem::path(kRulesDir) / "chemistry.json"); }

// Ten indexed 2006 publications with citations 1..10 and metrics 1..10, so a
// value v queries to percentile 100*(v-0.5)/10 on both axes.
Corpus percentile_fixture() {
    CorpusBuilder b;
    for (int i = 1; i <= 10; ++i)
        b.pub("P" + std::to_string(i), 2006, "CHEM", DocType::article, i,
              static_cast<double>(i));
    return b.build();
}

std::string all_d_cells(int drop_ic = 0, int drop_ir = 0) {
    std::string cells;
    for (int ic = 1; ic <= 4; ++ic)
        for (int ir = 1; ir <= 4; ++ir) {
            if (ic == drop_ic && ir == drop_ir)
                continue;
            cells += (cells.empty() ? "" : ", ") + std::string("\"") + std::to_string(ic) +
                     "," + std::to_string(ir) + "\": \"D\"";
        }
    return "{" + cells + "}";
}

std::string all_d_ruleset_json() {
    return "{\"uda\": \"x\", \"matrices\": [{\"years\": [2004, 2010], \"cells\": " +
           all_d_cells() + "}]}";
}

}  // namespace

TEST_CASE("the chemistry rule set reproduces both classification matrices") {
    RuleSet rules = chemistry();

    const MeritOutcome A = MeritOutcome::A, B = MeritOutcome::B, C = MeritOutcome::C,
                       D = MeritOutcome::D, IR = MeritOutcome::IR;
    const MeritOutcome mature[4][4] = {
        {A, A, A, IR}, {B, B, B, IR}, {IR, C, C, C}, {IR, D, D, D}};
    const MeritOutcome recent[4][4] = {
        {A, IR, IR, IR}, {A, B, C, D}, {A, B, C, D}, {IR, IR, IR, D}};

    for (int ic = 1; ic <= 4; ++ic)
        for (int ir = 1; ir <= 4; ++ir) {
            auto icc = static_cast<PercentileClass>(ic);
            auto irc = static_cast<PercentileClass>(ir);
            CHECK(classify(rules, icc, irc, 2006) == mature[ic - 1][ir - 1]);
            CHECK(classify(rules, icc, irc, 2010) == recent[ic - 1][ir - 1]);
        }
}

TEST_CASE("classify spec examples and uncovered years") {
    RuleSet rules = chemistry();
    CHECK(classify(rules, PercentileClass::c1, PercentileClass::c2, 2006) == MeritOutcome::A);
    CHECK(classify(rules, PercentileClass::c1, PercentileClass::c4, 2006) == MeritOutcome::IR);
    CHECK(classify(rules, PercentileClass::c4, PercentileClass::c1, 2010) == MeritOutcome::IR);
    CHECK_THROWS_AS(classify(rules, PercentileClass::c1, PercentileClass::c1, 2003),
                    DomainError);
}

TEST_CASE("merit constants and penalties from the shipped defaults") {
    RuleSet rules = chemistry();
    CHECK(rules.merit_score(MeritOutcome::A) == 1.0);
    CHECK(rules.merit_score(MeritOutcome::B) == 0.8);
    CHECK(rules.merit_score(MeritOutcome::C) == 0.5);
    CHECK(rules.merit_score(MeritOutcome::D) == 0.0);
    CHECK(rules.ir_score == 0.5);

    CHECK(penalty_for(rules, PenaltyEvent::fraud) == -2.0);
    CHECK(penalty_for(rules, PenaltyEvent::inadmissible) == -1.0);
    CHECK(penalty_for(rules, PenaltyEvent::missing_product) == 0.0);  // simulation mode
    RuleSet penal = rules;
    penal.missing_mode = MissingMode::penalty;
    CHECK(penalty_for(penal, PenaltyEvent::missing_product) == -0.5);
}

TEST_CASE("score_publication routing") {
    Corpus corpus = percentile_fixture();
    auto benchmarks = BenchmarkSet::build(corpus);

    SUBCASE("unindexed products take the per-area special score") {
        Publication pub{"PX", 2006, "CHEM", DocType::proceedings, 0, std::nullopt, true};
        RuleSet bio = chemistry();
        bio.unindexed_score = 0.0;
        auto s = score_publication(bio, pub, benchmarks);
        CHECK_FALSE(s.outcome.has_value());
        CHECK(s.value == 0.0);

        RuleSet info = chemistry();
        info.unindexed_score = 0.5;
        CHECK(score_publication(info, pub, benchmarks).value == 0.5);
    }
    SUBCASE("indexed article lands on the matrix") {
        // c=8, metric=8 -> percentile 75 on both axes -> classes (2,2) -> B
        const Publication& pub = *corpus.find_publication("P8");
        auto s = score_publication(chemistry(), pub, benchmarks);
        CHECK(s.outcome == MeritOutcome::B);
        CHECK(s.value == doctest::Approx(0.8));
    }
    SUBCASE("inconsistent indicators resolve through ir_score") {
        // c=10 -> 95 -> class 1; metric=1 -> 5 -> class 4; Table 1 (1,4) = IR
        Publication pub{"PX", 2006, "CHEM", DocType::article, 10, 1.0, true};
        auto s = score_publication(chemistry(), pub, benchmarks);
        CHECK(s.outcome == MeritOutcome::IR);
        CHECK(s.value == doctest::Approx(0.5));
    }
    SUBCASE("scores stay in [0, 1]") {
        for (const auto& pub : corpus.publications()) {
            auto s = score_publication(chemistry(), pub, benchmarks);
            CHECK(s.value >= 0.0);
            CHECK(s.value <= 1.0);
        }
    }
    SUBCASE("an all-D rule set zeroes every indexed publication") {
        RuleSet rules = parse_ruleset_text(all_d_ruleset_json(), "test");
        for (const auto& pub : corpus.publications())
            CHECK(score_publication(rules, pub, benchmarks).value == 0.0);
    }
    SUBCASE("a publication outside every reference cell is an error") {
        Publication pub{"PX", 2006, "UNSEEN_CAT", DocType::article, 4, 2.0, true};
        CHECK_THROWS_AS(score_publication(chemistry(), pub, benchmarks), DomainError);
    }
}

TEST_CASE("rule-set validation") {
    CHECK_THROWS_AS(parse_ruleset_text("{", "test"), ParseError);
    CHECK_THROWS_AS(parse_ruleset_text("{\"matrices\": []}", "test"), ParseError);

    std::string fifteen = "{\"matrices\": [{\"years\": [2004, 2010], \"cells\": " +
                          all_d_cells(1, 1) + "}]}";
    CHECK_THROWS_AS(parse_ruleset_text(fifteen, "test"), ParseError);

    std::string overlapping =
        "{\"matrices\": [{\"years\": [2004, 2008], \"cells\": " + all_d_cells() +
        "}, {\"years\": [2008, 2010], \"cells\": " + all_d_cells() + "}]}";
    CHECK_THROWS_AS(parse_ruleset_text(overlapping, "test"), DomainError);

    std::string flat = all_d_ruleset_json();
    flat.insert(flat.size() - 1,
                ", \"merit_scores\": {\"A\": 1.0, \"B\": 1.0, \"C\": 0.5, \"D\": 0.0}");
    CHECK_THROWS_AS(parse_ruleset_text(flat, "test"), DomainError);

    std::string bad_mode = all_d_ruleset_json();
    bad_mode.insert(bad_mode.size() - 1, ", \"missing_mode\": \"sometimes\"");
    CHECK_THROWS_AS(parse_ruleset_text(bad_mode, "test"), ParseError);
}
