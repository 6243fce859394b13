#include <doctest.h>

#include <numbers>
#include <random>

#include "kms/coding.hpp"
#include "kms/measure.hpp"
#include "neel_oracle.hpp"

using namespace kms;
using coding::AB;
using coding::Greek;

TEST_CASE("k to m and back") {
    const Word k = parse_word("1122121");
    const auto m = coding::to_ab(k);
    CHECK(m.size() == k.size() - 1);
    CHECK(coding::format_ab(m) == "ababbb");
    CHECK(coding::from_ab(m, Symbol::one) == k);
    CHECK(coding::parse_ab(coding::format_ab(m)) == m);
    CHECK_THROWS_AS(coding::to_ab(parse_word("1")), SizeError);
    CHECK_THROWS(coding::parse_ab("abc"));
}

TEST_CASE("alpha beta blocks") {
    const auto code = coding::to_alphabeta(coding::parse_ab("aaabbabb"));
    CHECK(coding::format_greek(code.w) == "αββα");
    CHECK_FALSE(code.held_back.has_value());
    const auto odd = coding::to_alphabeta(coding::parse_ab("aba"));
    CHECK(coding::format_greek(odd.w) == "α");
    REQUIRE(odd.held_back.has_value());
    CHECK(*odd.held_back == AB::a);
}

TEST_CASE("reduction cancels alpha alpha and beta beta") {
    using W = coding::AlphaBetaWord;
    CHECK(coding::reduce(W{Greek::alpha, Greek::alpha}).empty());
    CHECK(coding::reduce(W{Greek::alpha, Greek::beta, Greek::beta, Greek::alpha, Greek::beta}) ==
          W{Greek::beta});
    CHECK(coding::reduce(W{Greek::alpha, Greek::beta}) == W{Greek::alpha, Greek::beta});
}

TEST_CASE("label propagation") {
    CHECK(coding::propagate_label(0, Symbol::one, Symbol::one) == 1);
    CHECK(coding::propagate_label(1, Symbol::two, Symbol::two) == 0);
    CHECK(coding::propagate_label(1, Symbol::one, Symbol::two) == 1);
}

TEST_CASE("conjugacy of alternating words is all zero") {
    const ModelParams m = new_params(std::numbers::pi / 6);
    const Word w = testing::alternating(Symbol::two, 60);
    const auto out = coding::conjugacy_h(m, w, 1e-6, 50, 8);
    REQUIRE(out.coords.size() == 8);
    CHECK(out.resolved_count() == 8);
    for (const auto& c : out.coords) CHECK(c.value == 0);
}

TEST_CASE("conjugacy is shift equivariant and self consistent") {
    const ModelParams m = new_params(1.0);
    Sampler s(m, 99);
    for (int trial = 0; trial < 200; ++trial) {
        const Word w = s.sample(60);
        const auto hx = coding::conjugacy_h(m, w, 1e-6, 51, 9);
        const auto hs = coding::conjugacy_h(m, WordView(w).subspan(1), 1e-6, 51, 8);
        for (std::size_t j = 0; j < 8; ++j) {
            if (hs.coords[j].status == coding::CoordinateStatus::resolved &&
                hx.coords[j + 1].status == coding::CoordinateStatus::resolved) {
                CHECK(hs.coords[j].value == hx.coords[j + 1].value);
            }
            CHECK(hx.coords[j].status != coding::CoordinateStatus::inconsistent);
        }
    }
    CHECK_THROWS_AS(coding::conjugacy_h(m, parse_word("1212"), 1e-6, 3, 2), SizeError);
}

TEST_CASE("to_ab and from_ab are inverse") {
    for (int n = 2; n <= 12; ++n) {
        for (const Word& k : testing::all_words(n)) {
            CHECK(coding::from_ab(coding::to_ab(k), k.front()) == k);
        }
    }
}

TEST_CASE("reduction is confluent") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        coding::AlphaBetaWord w(rng() % 20);
        for (auto& g : w) g = (rng() & 1) ? Greek::beta : Greek::alpha;
        coding::AlphaBetaWord x = w;
        // cancel equal adjacent letters at random positions until none remain
        for (;;) {
            std::vector<std::size_t> spots;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                if (x[i] == x[i + 1]) spots.push_back(i);
            }
            if (spots.empty()) break;
            const std::size_t i = spots[rng() % spots.size()];
            x.erase(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(i) + 2);
        }
        CHECK(x == coding::reduce(w));
    }
}

TEST_CASE("splicing abab or baba does not change the class") {
    const ModelParams m = new_params(std::numbers::pi / 6);
    Sampler s(m, 21);
    std::mt19937_64 rng(4);
    int compared = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Word k = s.sample(120);
        auto ab = coding::to_ab(k);
        const auto splice = (rng() & 1) ? coding::parse_ab("abab") : coding::parse_ab("baba");
        const auto at = static_cast<long>(rng() % 20);
        ab.insert(ab.begin() + at, splice.begin(), splice.end());
        const Word spliced = coding::from_ab(ab, k.front());
        const auto before = jacobian::classify(m, k, 1e-6, 110);
        const auto after = jacobian::classify(m, spliced, 1e-6, 110);
        if (before.label == jacobian::ClassLabel::Unresolved || after.label == jacobian::ClassLabel::Unresolved) continue;
        ++compared;
        CHECK(before.label == after.label);
    }
    CHECK(compared > 450);
}

TEST_CASE("propagation rules hold on resolved pairs") {
    const ModelParams m = new_params(std::numbers::pi / 3);
    Sampler s(m, 5);
    for (int trial = 0; trial < 300; ++trial) {
        const Word w = s.sample(70);
        const auto out = coding::conjugacy_h(m, w, 1e-6, 60, 10);
        for (std::size_t j = 0; j + 1 < out.coords.size(); ++j) {
            const auto& c = out.coords[j];
            const auto& d = out.coords[j + 1];
            if (c.status == coding::CoordinateStatus::resolved && d.status == coding::CoordinateStatus::resolved) {
                CHECK(c.value == coding::propagate_label(d.value, w[j], w[j + 1]));
            }
        }
    }
}
