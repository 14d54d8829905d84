// Crossed products of finite actions, regular-pair representations, and
// the boundary action on alternating words.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "lpa/dynamics.hpp"
#include "lpa/rng.hpp"

using namespace lpa;

namespace {

FiniteAction z3_rotation() {
    FiniteAction a;
    a.group = FiniteGroup::cyclic(3);
    a.point_count = 3;
    a.act = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    return a;
}

CrossedElement random_crossed(const FiniteAction& a, Rng& rng) {
    CrossedElement f;
    f.action = a;
    f.values.assign(a.group.order(), std::vector<cx>(a.point_count));
    for (auto& row : f.values) {
        for (cx& v : row) v = rng.complex_normal();
    }
    return f;
}

double crossed_distance(const CrossedElement& f, const CrossedElement& g) {
    double worst = 0.0;
    for (std::size_t s = 0; s < f.values.size(); ++s) {
        for (std::size_t x = 0; x < f.values[s].size(); ++x) {
            worst = std::max(worst, std::abs(f.values[s][x] - g.values[s][x]));
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("action validation") {
    CHECK_NOTHROW(validate_action(z3_rotation()));
    CHECK_NOTHROW(validate_action(trivial_action(FiniteGroup::cyclic(4), 2)));
    CHECK_NOTHROW(validate_action(translation_action(FiniteGroup::symmetric3())));
    FiniteAction bad = z3_rotation();
    bad.act[2] = {1, 2, 0};  // now act[1]∘act[1] != act[2]
    CHECK_THROWS_AS(validate_action(bad), Error);
    FiniteAction collapse = z3_rotation();
    collapse.act[1] = {0, 0, 1};  // not a bijection
    CHECK_THROWS_AS(validate_action(collapse), Error);
}

TEST_CASE("point mass at the identity is the convolution unit") {
    Rng rng(311);
    const FiniteAction a = z3_rotation();
    const CrossedElement u = crossed_unit(a);
    for (int trial = 0; trial < 5; ++trial) {
        const CrossedElement f = random_crossed(a, rng);
        CHECK(crossed_distance(twisted_convolution(f, u), f) == 0.0);
        CHECK(crossed_distance(twisted_convolution(u, f), f) == 0.0);
    }
}

TEST_CASE("twisted convolution associates") {
    Rng rng(313);
    const FiniteAction a = translation_action(FiniteGroup::symmetric3());
    for (int trial = 0; trial < 5; ++trial) {
        const CrossedElement f = random_crossed(a, rng);
        const CrossedElement g = random_crossed(a, rng);
        const CrossedElement h = random_crossed(a, rng);
        const CrossedElement left =
            twisted_convolution(twisted_convolution(f, g), h);
        const CrossedElement right =
            twisted_convolution(f, twisted_convolution(g, h));
        CHECK(crossed_distance(left, right) <= 1e-12);
    }
}

TEST_CASE("regular pair satisfies the covariance identity exactly") {
    Rng rng(317);
    const FiniteAction a = z3_rotation();
    const RegularPair pair = regular_pair(a, 0, Exponent(3.0));
    for (std::size_t t = 0; t < a.group.order(); ++t) {
        const std::size_t tinv = a.group.inverse(t);
        std::vector<cx> h(a.point_count);
        for (cx& v : h) v = rng.complex_normal();
        std::vector<cx> moved(a.point_count);
        for (std::size_t x = 0; x < a.point_count; ++x) {
            moved[x] = h[a.act[tinv][x]];
        }
        const Operator lhs = pair.translation(t)
                                  .mul(pair.multiplication(h))
                                  .mul(pair.translation(tinv));
        const Operator rhs = pair.multiplication(moved);
        CHECK(lhs.sub(rhs).max_abs() == 0.0);
    }
}

TEST_CASE("integrated form of the unit is the identity") {
    const FiniteAction a = z3_rotation();
    const RegularPair pair = regular_pair(a, 0, Exponent(1.5));
    const Operator u = integrated_form(pair, crossed_unit(a));
    CHECK(u.sub(Operator::identity(pair.space)).max_abs() == 0.0);

    SearchConfig cfg;
    cfg.rng_seed = 317;
    for (double pv : {1.0, 1.5, 2.0, 3.0}) {
        const NormEstimate est =
            reduced_norm(crossed_unit(a), Exponent(pv), cfg);
        CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("integrated form is multiplicative") {
    Rng rng(331);
    const FiniteAction a = z3_rotation();
    const RegularPair pair = regular_pair(a, 0, Exponent(3.0));
    for (int trial = 0; trial < 5; ++trial) {
        const CrossedElement f = random_crossed(a, rng);
        const CrossedElement g = random_crossed(a, rng);
        const Operator lhs = integrated_form(pair, twisted_convolution(f, g));
        const Operator rhs =
            integrated_form(pair, f).mul(integrated_form(pair, g));
        CHECK(lhs.sub(rhs).max_abs() <= 1e-12);
    }
}

TEST_CASE("amplified seed dimension must be a multiple of the point count") {
    const FiniteAction a = z3_rotation();
    CHECK_NOTHROW(regular_pair(a, 6, Exponent(3.0)));
    CHECK_THROWS_AS(regular_pair(a, 4, Exponent(3.0)), Error);
}

TEST_CASE("alternating word parsing round-trips") {
    const std::vector<CantorLetter> w = parse_cantor_word("ab^2a");
    REQUIRE(w.size() == 3);
    CHECK(w[0] == CantorLetter::A);
    CHECK(w[1] == CantorLetter::B2);
    CHECK(w[2] == CantorLetter::A);
    CHECK(cantor_word_to_string(w) == "ab^2a");
    CHECK(parse_cantor_word("ab2a") == w);
    CHECK(parse_cantor_word("b").at(0) == CantorLetter::B);
    CHECK_THROWS_AS(parse_cantor_word("abc"), Error);
    CHECK(letter_order(CantorLetter::A) == 2);
    CHECK(letter_order(CantorLetter::B2) == 3);
}

TEST_CASE("boundary generators have the advertised orders") {
    for (std::size_t depth = 3; depth <= 6; ++depth) {
        const OrderCheckReport rep = order_check(depth);
        CHECK(rep.depth == depth);
        CHECK(rep.a_squared_identity);
        CHECK(rep.b_cubed_identity);
        CHECK(rep.min_prefix_a == depth);
        CHECK(rep.min_prefix_b == depth);
    }
    CHECK_THROWS_AS(order_check(2), Error);
}

TEST_CASE("alternating word counts follow the two-letter recursion") {
    // depth d holds 2^{floor(d/2)} + 2^{ceil(d/2)} words across both
    // starting factors
    CHECK(enumerate_alternating_words(0).size() == 1);
    CHECK(enumerate_alternating_words(3).size() == 6);
    CHECK(enumerate_alternating_words(8).size() == 32);
    for (const AlternatingWord& w : enumerate_alternating_words(5)) {
        CHECK_NOTHROW(validate_alternating(w));
    }
}

TEST_CASE("single letter action merges and prepends") {
    AlternatingWord x;
    x.letters = {CantorLetter::B, CantorLetter::A, CantorLetter::B};
    // a . (b a b) prepends
    const AlternatingWord ax = cantor_act(CantorLetter::A, x);
    REQUIRE(ax.depth() == 4);
    CHECK(ax.letters[0] == CantorLetter::A);
    // b . (b a b) merges the leading letter into b^2
    const AlternatingWord bx = cantor_act(CantorLetter::B, x);
    REQUIRE(bx.depth() == 3);
    CHECK(bx.letters[0] == CantorLetter::B2);
    // b^2 . (b a b) cancels the leading letter
    const AlternatingWord b2x = cantor_act(CantorLetter::B2, x);
    REQUIRE(b2x.depth() == 2);
    CHECK(b2x.letters[0] == CantorLetter::A);
}

TEST_CASE("fixed point census frozen values") {
    const std::vector<CantorLetter> ab = parse_cantor_word("ab");
    const CensusResult at8 = fixed_point_census(ab, 8);
    CHECK(at8.word_count == 32);
    CHECK(at8.fixed_count == 2);
    CHECK(at8.fraction == doctest::Approx(0.0625).epsilon(1e-15));

    CHECK(fixed_point_census(parse_cantor_word("a"), 6).fixed_count == 0);
    CHECK(fixed_point_census(parse_cantor_word("b"), 5).fixed_count == 0);

    // the fraction for ab never increases with depth
    double prev = 1.0;
    for (std::size_t depth = 4; depth <= 9; ++depth) {
        const CensusResult c = fixed_point_census(ab, depth);
        CHECK(c.fraction <= prev + 1e-15);
        prev = c.fraction;
    }
}

TEST_CASE("orbit equivalence data verifies on matching rotations") {
    const FiniteAction sigma = z3_rotation();
    const FiniteAction rho = z3_rotation();
    CoeData data;
    data.theta = {0, 1, 2};
    data.c_h = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
    data.c_g = data.c_h;
    const CoeReport good = coe_verify(data, sigma, rho);
    CHECK(good.pass);
    CHECK(good.violations.empty());

    CoeData skewed = data;
    skewed.theta = {1, 2, 0};  // conjugating by a rotation still works
    CHECK(coe_verify(skewed, sigma, rho).pass);

    CoeData broken = data;
    broken.c_h[1][0] = 2;
    const CoeReport bad = coe_verify(broken, sigma, rho);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.violations.empty());

    CoeData notbij = data;
    notbij.theta = {0, 0, 2};
    CHECK_THROWS_AS(coe_verify(notbij, sigma, rho), Error);

    CoeData undersized = data;
    undersized.c_h.pop_back();
    CHECK_THROWS_AS(coe_verify(undersized, sigma, rho), Error);
}

}  // TEST_SUITE
