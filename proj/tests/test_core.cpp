// Weighted l^p substrate: norms, duality pairing, change of variables,
// Clarkson inequalities. Expected values are hand-computed.

#include <cmath>
#include <limits>

#include "doctest.h"
#include "lpa/core.hpp"
#include "lpa/rng.hpp"

using namespace lpa;

TEST_SUITE("core") {

TEST_CASE("weighted norm matches hand computation") {
    WeightedSpace s({2.0, 0.5});
    Vec x(s, {cx(3.0, 0.0), cx(0.0, -4.0)});
    // p = 1: 2*3 + 0.5*4 = 8; p = 2: sqrt(2*9 + 0.5*16) = sqrt(26)
    CHECK(vec_norm(x, Exponent(1.0)) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(vec_norm(x, Exponent(2.0)) ==
          doctest::Approx(std::sqrt(26.0)).epsilon(1e-14));
    CHECK(vec_norm(x, Exponent(3.0)) ==
          doctest::Approx(std::cbrt(2.0 * 27.0 + 0.5 * 64.0)).epsilon(1e-14));
}

TEST_CASE("exponent validation") {
    CHECK_NOTHROW(Exponent(1.0));
    CHECK_NOTHROW(Exponent(17.5));
    CHECK_THROWS_AS(Exponent(0.99), Error);
    CHECK_THROWS_AS(Exponent(0.0), Error);
    CHECK(Exponent(2.0).is_two());
    CHECK_FALSE(Exponent(2.1).is_two());
    CHECK(Exponent(1.0).conjugate() ==
          std::numeric_limits<double>::infinity());
    CHECK(Exponent(3.0).conjugate() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("weights must be positive") {
    CHECK_THROWS_AS(WeightedSpace({1.0, 0.0}), Error);
    CHECK_THROWS_AS(WeightedSpace({1.0, -2.0}), Error);
}

TEST_CASE("duality map realizes the norming identity") {
    Rng rng(11);
    for (double pv : {1.5, 2.0, 3.0, 4.0}) {
        const Exponent p(pv);
        WeightedSpace s({0.7, 1.3, 2.1});
        Vec x = Vec::zero(s);
        for (cx& e : x.entries) e = rng.complex_normal();
        const Vec y = duality_map(x, p);
        const double lhs = pairing(x, y).real();
        const double rhs = std::pow(vec_norm(x, p), pv);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(std::abs(pairing(x, y).imag()) < 1e-12);
    }
}

TEST_CASE("permutation validation") {
    CHECK_NOTHROW(validate_permutation({2, 0, 1}, 3));
    CHECK_THROWS_AS(validate_permutation({0, 0, 1}, 3), Error);
    CHECK_THROWS_AS(validate_permutation({0, 3, 1}, 3), Error);
    CHECK_THROWS_AS(validate_permutation({0, 1}, 3), Error);
    const std::vector<std::size_t> perm = {2, 0, 1};
    const auto inv = invert_permutation(perm);
    for (std::size_t j = 0; j < 3; ++j) CHECK(inv[perm[j]] == j);
}

TEST_CASE("Radon-Nikodym ratios and change of variables") {
    WeightedSpace s({1.0, 2.0, 4.0});
    const std::vector<std::size_t> perm = {1, 2, 0};  // phi(j) = perm[j]
    const Vec rn = rn_derivative(s, perm);
    // value at atom i is w(phi^{-1}(i)) / w(i)
    CHECK(rn.entries[0].real() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(rn.entries[1].real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rn.entries[2].real() == doctest::Approx(0.5).epsilon(1e-15));

    Rng rng(5);
    Vec f = Vec::zero(s);
    for (cx& e : f.entries) e = rng.complex_normal();
    const auto rep = change_of_variables_check(f, perm, Exponent(3.0));
    CHECK(rep.difference < 1e-12);
}

TEST_CASE("operator application and algebra") {
    WeightedSpace s = WeightedSpace::unit(2);
    Operator a(s, s, {cx(1, 0), cx(2, 0), cx(3, 0), cx(4, 0)});
    Vec x(s, {cx(1, 0), cx(1, 0)});
    const Vec y = a.apply(x);
    CHECK(y.entries[0] == cx(3, 0));
    CHECK(y.entries[1] == cx(7, 0));
    const Operator sq = a.mul(a);
    CHECK(sq.at(0, 0) == cx(7, 0));
    CHECK(sq.at(1, 1) == cx(22, 0));
    CHECK(a.add(a).at(1, 0) == cx(6, 0));
    CHECK(a.sub(a).max_abs() == 0.0);
    CHECK(a.scale(cx(0, 1)).at(0, 1) == cx(0, 2));
}

TEST_CASE("dimension mismatches are rejected") {
    WeightedSpace s2 = WeightedSpace::unit(2);
    WeightedSpace s3 = WeightedSpace::unit(3);
    Operator a = Operator::identity(s2);
    Vec x = Vec::zero(s3);
    CHECK_THROWS_AS(a.apply(x), Error);
    CHECK_THROWS_AS(a.mul(Operator::identity(s3)), Error);
    CHECK_THROWS_AS(pairing(Vec::zero(s2), Vec::zero(s3)), Error);
}

TEST_CASE("Clarkson direction by exponent") {
    WeightedSpace s({1.0, 1.5});
    Vec x(s, {cx(1.0, 0.3), cx(-0.4, 0.2)});
    Vec y(s, {cx(0.2, -1.1), cx(0.8, 0.5)});
    const auto high = clarkson_check(x, y, Exponent(3.0));
    CHECK(high.relation == ClarksonRelation::Ge);
    CHECK(high.direction_holds);
    CHECK(high.lhs > high.rhs);
    const auto low = clarkson_check(x, y, Exponent(1.5));
    CHECK(low.relation == ClarksonRelation::Le);
    CHECK(low.direction_holds);
    CHECK(low.lhs < low.rhs);
    const auto two = clarkson_check(x, y, Exponent(2.0));
    CHECK(two.relation == ClarksonRelation::Both);
    CHECK(two.equality);  // parallelogram law
}

TEST_CASE("Clarkson equality exactly on disjoint supports") {
    WeightedSpace s({0.5, 2.0, 1.0});
    Vec x(s, {cx(1.2, -0.7), cx(0, 0), cx(0.3, 0.1)});
    Vec y(s, {cx(0, 0), cx(-0.9, 0.4), cx(0, 0)});
    for (double pv : {1.0, 1.5, 3.0, 4.0}) {
        const auto rec = clarkson_check(x, y, Exponent(pv));
        CHECK(rec.direction_holds);
        CHECK(rec.equality);
    }
    // overlap on the third atom: strict for p != 2
    y.entries[2] = cx(0.5, -0.2);
    for (double pv : {1.0, 1.5, 3.0, 4.0}) {
        const auto rec = clarkson_check(x, y, Exponent(pv));
        CHECK(rec.direction_holds);
        CHECK_FALSE(rec.equality);
    }
}

TEST_CASE("dual ascent direction maximizes the pairing on the unit sphere") {
    Rng rng(5);
    WeightedSpace s({1.0, 3.0});
    Vec z(s, {cx(0.5, 0.5), cx(-1.0, 2.0)});
    for (double pv : {1.5, 3.0}) {
        const Exponent p(pv);
        const Vec d = dual_ascent_direction(z, p.conjugate());
        CHECK(vec_norm(d, p) == doctest::Approx(1.0).epsilon(1e-12));
        const double attained = pairing(d, z).real();
        for (int trial = 0; trial < 50; ++trial) {
            Vec u = Vec::zero(s);
            for (cx& e : u.entries) e = rng.complex_normal();
            const double un = vec_norm(u, p);
            for (cx& e : u.entries) e /= un;
            CHECK(pairing(u, z).real() <= attained + 1e-12);
        }
    }
    // p' = infinity concentrates all mass on the dominant coordinate
    const Vec d1 = dual_ascent_direction(z, Exponent(1.0).conjugate());
    CHECK(vec_norm(d1, Exponent(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d1.entries[0] == cx(0.0, 0.0));
}

TEST_CASE("weighted adjoint reproduces the pairing") {
    Rng rng(3);
    WeightedSpace dom({1.0, 0.5, 2.0});
    WeightedSpace cod({1.5, 1.0});
    Operator a = Operator::zero(dom, cod);
    for (cx& e : a.a) e = rng.complex_normal();
    Vec x = Vec::zero(dom);
    for (cx& e : x.entries) e = rng.complex_normal();
    Vec y = Vec::zero(cod);
    for (cx& e : y.entries) e = rng.complex_normal();
    // <Ax, y>_cod == <x, A*y>_dom
    const cx lhs = pairing(a.apply(x), y);
    const cx rhs = pairing(x, weighted_adjoint_apply(a, y));
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("seeded rng is reproducible and forkable") {
    Rng a(42);
    Rng b(42);
    for (int k = 0; k < 100; ++k) CHECK(a.bits() == b.bits());
    Rng c(42);
    c.bits();  // desync
    CHECK(c.uniform() >= 0.0);
    Rng f1 = Rng(7).fork(1);
    Rng f2 = Rng(7).fork(2);
    CHECK(f1.bits() != f2.bits());
    const auto perm = Rng(9).permutation(6);
    CHECK_NOTHROW(validate_permutation(perm, 6));
}

}  // TEST_SUITE
