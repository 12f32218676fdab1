#include <doctest.h>

#include <numeric>

#include "test_helpers.hpp"
#include "vqrsim/crediting.hpp"
#include "vqrsim/errors.hpp"
#include "vqrsim/rng.hpp"

using namespace vqrsim;

namespace {

CreditPolicy life_science_policy() {
    CreditPolicy p;
    p.mode = CreditMode::life_science_byline;
    p.life_science_udas = {"BIO"};
    return p;
}

// n positions; first and last affiliation chosen by the caller.
std::vector<std::string> byline(std::size_t n, std::string first, std::string last) {
    std::vector<std::string> affs(n, "U_MID");
    if (n > 0)
        affs.front() = std::move(first);
    if (n > 1)
        affs.back() = std::move(last);
    return affs;
}

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

TEST_CASE("equal split") {
    CreditPolicy policy;  // equal_split
    auto credits = credit_vector(policy, "ANY", byline(4, "U1", "U1"));
    REQUIRE(credits.size() == 4);
    for (double c : credits)
        CHECK(c == doctest::Approx(0.25));

    CHECK(credit_vector(policy, "ANY", byline(1, "U1", "U1")) == std::vector<double>{1.0});
    CHECK(credit_vector(policy, "ANY", byline(2, "U1", "U2")) ==
          std::vector<double>{0.5, 0.5});
}

TEST_CASE("life-science byline weights, same-university endpoints") {
    auto policy = life_science_policy();
    auto credits = credit_vector(policy, "BIO", byline(10, "U1", "U1"));
    REQUIRE(credits.size() == 10);
    CHECK(credits.front() == 0.40);
    CHECK(credits.back() == 0.40);
    for (std::size_t i = 1; i + 1 < credits.size(); ++i)
        CHECK(credits[i] == 0.20 / 8);
    CHECK(sum(credits) == doctest::Approx(1.0).epsilon(1e-12));

    auto five = credit_vector(policy, "BIO", byline(5, "U1", "U1"));
    CHECK(five[0] == 0.4);
    CHECK(five[4] == 0.4);
    for (std::size_t i = 1; i <= 3; ++i)
        CHECK(five[i] == doctest::Approx(0.2 / 3).epsilon(1e-15));
}

TEST_CASE("life-science byline weights, different universities") {
    auto policy = life_science_policy();
    auto credits = credit_vector(policy, "BIO", byline(6, "U1", "U2"));
    REQUIRE(credits.size() == 6);
    CHECK(credits[0] == 0.30);
    CHECK(credits[5] == 0.30);
    CHECK(credits[1] == 0.15);
    CHECK(credits[4] == 0.15);
    CHECK(credits[2] == 0.05);
    CHECK(credits[3] == 0.05);

    SUBCASE("four authors: remainder folds into the endpoint roles") {
        auto four = credit_vector(policy, "BIO", byline(4, "U1", "U2"));
        CHECK(four[0] == doctest::Approx(0.325));
        CHECK(four[1] == doctest::Approx(0.175));
        CHECK(four[2] == doctest::Approx(0.175));
        CHECK(four[3] == doctest::Approx(0.325));
        CHECK(sum(four) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("three authors: second and second-to-last coincide") {
        auto three = credit_vector(policy, "BIO", byline(3, "U1", "U2"));
        CHECK(three[0] == doctest::Approx(0.325));
        CHECK(three[1] == doctest::Approx(0.35));
        CHECK(three[2] == doctest::Approx(0.325));
        CHECK(sum(three) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("external endpoints force this branch") {
        auto credits_ext = credit_vector(policy, "BIO", byline(6, "", ""));
        CHECK(credits_ext[0] == 0.30);
    }
}

TEST_CASE("non-life-science areas fall back to the equal split") {
    auto policy = life_science_policy();
    auto credits = credit_vector(policy, "PHYS", byline(5, "U1", "U1"));
    for (double c : credits)
        CHECK(c == doctest::Approx(0.2));
}

TEST_CASE("credits sum to one for random bylines under both policies") {
    CreditPolicy equal;
    auto ls = life_science_policy();
    CounterRng rng(11, 42, 0);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.next_int(1, 40));
        std::vector<std::string> affs(n);
        for (auto& a : affs) {
            int pick = rng.next_int(0, 3);
            a = pick == 0 ? "" : "U" + std::to_string(pick);
        }
        CHECK(sum(credit_vector(equal, "BIO", affs)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sum(credit_vector(ls, "BIO", affs)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("same-university endpoints dominate the middle positions") {
    auto policy = life_science_policy();
    CounterRng rng(13, 43, 0);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.next_int(3, 30));
        auto credits = credit_vector(policy, "BIO", byline(n, "U1", "U1"));
        CHECK(credits.front() == credits.back());
        for (std::size_t i = 1; i + 1 < n; ++i)
            CHECK(credits.front() >= credits[i]);
    }
}

TEST_CASE("fractional_credit picks the authorship's position") {
    auto policy = life_science_policy();
    auto affs = byline(6, "U1", "U2");
    Authorship second{"P1", "R2", 2, 6};
    CHECK(fractional_credit(policy, "BIO", second, affs) == 0.15);

    Authorship bad{"P1", "R2", 2, 5};  // affiliation list does not cover the byline
    CHECK_THROWS_AS(fractional_credit(policy, "BIO", bad, affs), DomainError);
    CHECK_THROWS_AS(credit_vector(policy, "BIO", std::vector<std::string>{}), DomainError);
}
