// Group algebra machinery: convolution against translation matrices, the
// order-two norm table, isometry-group verification, homomorphism
// recovery, sharp duality, and subgroup/quotient norm relations.

#include <cmath>

#include "doctest.h"
#include "lpa/groupalg.hpp"
#include "lpa/rng.hpp"

using namespace lpa;

TEST_SUITE("groupalg") {

TEST_CASE("group constructions validate") {
    CHECK_NOTHROW(validate_group(FiniteGroup::cyclic(5)));
    CHECK_NOTHROW(validate_group(FiniteGroup::symmetric3()));
    const FiniteGroup v4 =
        FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK_NOTHROW(validate_group(v4));
    CHECK(v4.order() == 4);
    for (std::size_t g = 0; g < v4.order(); ++g) {
        CHECK(v4.op(g, v4.inverse(g)) == v4.identity);
        CHECK(v4.op(g, g) == v4.identity);  // every element is an involution
    }
    FiniteGroup broken = FiniteGroup::cyclic(3);
    broken.table[1][1] = 1;  // 1*1 = 1 breaks associativity/inverses
    CHECK_THROWS_AS(validate_group(broken), Error);
}

TEST_CASE("sym(3) is nonabelian with the right element orders") {
    const FiniteGroup s3 = FiniteGroup::symmetric3();
    CHECK(s3.order() == 6);
    bool commutes = true;
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            if (s3.op(a, b) != s3.op(b, a)) commutes = false;
        }
    }
    CHECK_FALSE(commutes);
    std::size_t involutions = 0, threes = 0;
    for (std::size_t g = 0; g < 6; ++g) {
        if (g == s3.identity) continue;
        if (s3.op(g, g) == s3.identity) {
            ++involutions;
        } else {
            ++threes;
        }
    }
    CHECK(involutions == 3);
    CHECK(threes == 2);
}

TEST_CASE("convolution of point masses is the point mass of the product") {
    const FiniteGroup s3 = FiniteGroup::symmetric3();
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            const GroupFunction c = convolve(delta(s3, a), delta(s3, b));
            for (std::size_t g = 0; g < 6; ++g) {
                const double expect = (g == s3.op(a, b)) ? 1.0 : 0.0;
                CHECK(std::abs(c.values[g] - expect) == 0.0);
            }
        }
    }
}

TEST_CASE("convolution matrix of a point mass is the left translation") {
    const FiniteGroup z5 = FiniteGroup::cyclic(5);
    for (std::size_t s = 0; s < 5; ++s) {
        const Operator lhs = conv_matrix(delta(z5, s));
        const Operator rhs = left_translation(z5, s);
        CHECK(lhs.sub(rhs).max_abs() == 0.0);
    }
}

TEST_CASE("convolution matrices are multiplicative") {
    Rng rng(211);
    const FiniteGroup s3 = FiniteGroup::symmetric3();
    GroupFunction f{s3, {}}, g{s3, {}};
    f.values.resize(6);
    g.values.resize(6);
    for (cx& v : f.values) v = rng.complex_normal();
    for (cx& v : g.values) v = rng.complex_normal();
    const Operator lhs = conv_matrix(convolve(f, g));
    const Operator rhs = conv_matrix(f).mul(conv_matrix(g));
    CHECK(lhs.sub(rhs).max_abs() <= 1e-13);
}

TEST_CASE("translations have norm one at every exponent") {
    const FiniteGroup z4 = FiniteGroup::cyclic(4);
    SearchConfig cfg;
    cfg.rng_seed = 211;
    for (std::size_t s = 0; s < 4; ++s) {
        for (double pv : {1.0, 2.0, 3.5}) {
            const NormEstimate est =
                fp_lambda_norm(delta(z4, s), Exponent(pv), cfg);
            CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("order-two norm table") {
    SearchConfig cfg;
    cfg.rng_seed = 223;
    const cx minus_i(0.0, -1.0);
    CHECK(z2_norm(1.0, minus_i, Exponent(1.0), cfg).lower_bound ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(z2_norm(1.0, minus_i, Exponent(2.0), cfg).lower_bound ==
          doctest::Approx(1.0).epsilon(1e-10));
    const double v4 = z2_norm(1.0, minus_i, Exponent(4.0), cfg).lower_bound;
    CHECK(v4 == doctest::Approx(1.189207115002721).epsilon(1e-7));
    CHECK(v4 > 1.0);
    CHECK(v4 < std::sqrt(2.0));
    // spectrum (1, -1) produces the coordinate swap, norm one at every p
    CHECK(z2_norm(1.0, -1.0, Exponent(3.0), cfg).lower_bound ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(z2_norm(3.0, 1.0, Exponent(2.0), cfg).lower_bound ==
          doctest::Approx(3.0).epsilon(1e-9));
    // the same value through the group-function route
    GroupFunction f{FiniteGroup::cyclic(2), {cx(0.5, 0), cx(0.5, 0)}};
    CHECK(fp_lambda_norm(f, Exponent(3.0), cfg).lower_bound ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("isometry group verification on a small group") {
    SearchConfig cfg;
    cfg.rng_seed = 227;
    const IsomVerifyReport rep =
        isom_group_verify(FiniteGroup::cyclic(3), Exponent(1.5), 20, cfg);
    CHECK(rep.phase_count == 4);
    CHECK(rep.translations_checked == 12);
    CHECK(rep.all_translations_pass);
    CHECK(rep.translation_failures.empty());
    CHECK(rep.trials == 20);
    CHECK(rep.all_random_fail);
    CHECK(rep.random_violations.empty());
}

TEST_CASE("multiplication table recovered from translations") {
    for (const FiniteGroup& g :
         {FiniteGroup::cyclic(4), FiniteGroup::symmetric3()}) {
        const RecoveredGroup rec = recover_group(g, Exponent(3.0));
        CHECK(rec.matches_input);
        CHECK(rec.table == g.table);
    }
}

TEST_CASE("homomorphism decomposition recovers theta and gamma") {
    const FiniteGroup z4 = FiniteGroup::cyclic(4);
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const std::vector<std::size_t> ident = {0, 1, 2, 3};
    const std::vector<cx> tw = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};

    const HomDecomposition d =
        hom_decompose(build_hom_candidate(z4, z4, ident, tw), Exponent(3.0));
    CHECK(d.theta == ident);
    for (std::size_t g = 0; g < 4; ++g) {
        CHECK(std::abs(d.gamma[g] - tw[g]) <= 1e-13);
    }
    CHECK(d.injective);

    const std::vector<std::size_t> mod2 = {0, 1, 0, 1};
    const std::vector<cx> flat(4, cx(1, 0));
    const HomDecomposition q =
        hom_decompose(build_hom_candidate(z4, z2, mod2, flat), Exponent(3.0));
    CHECK(q.theta == mod2);
    CHECK_FALSE(q.injective);
}

TEST_CASE("non-homomorphic image sets are rejected") {
    const FiniteGroup z3 = FiniteGroup::cyclic(3);
    // images that are not phase translations at all
    std::vector<Operator> images;
    WeightedSpace s = WeightedSpace::unit(3);
    images.push_back(Operator::identity(s));
    Operator dense = Operator::identity(s);
    dense.at(0, 1) = 0.5;
    images.push_back(dense);
    images.push_back(dense);
    HomCandidate h{z3, z3, images};
    CHECK_THROWS_AS(hom_decompose(h, Exponent(3.0)), Error);

    // phase translations that fail the homomorphism law
    HomCandidate h2 = build_hom_candidate(
        z3, z3, {0, 1, 2}, {cx(1, 0), cx(1, 0), cx(1, 0)});
    h2.images[2] = left_translation(z3, 1);
    try {
        hom_decompose(h2, Exponent(3.0));
        FAIL("expected a homomorphism failure");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::NotHomomorphism);
    }
}

TEST_CASE("sharp transposes convolution and preserves norms across duality") {
    Rng rng(229);
    const FiniteGroup s3 = FiniteGroup::symmetric3();
    SearchConfig cfg;
    cfg.rng_seed = 229;
    for (int trial = 0; trial < 5; ++trial) {
        GroupFunction f{s3, {}};
        f.values.resize(6);
        for (cx& v : f.values) v = rng.complex_normal();
        const DualityReport rep = duality_check(f, Exponent(3.0), cfg);
        CHECK(rep.transpose_exact);
        CHECK(rep.difference <= 1e-6);
    }
    GroupFunction f{s3, {}};
    for (std::size_t g = 0; g < 6; ++g) {
        f.values.push_back(cx(1.0 + double(g), 0.5 * double(g)));
    }
    CHECK_THROWS_AS(duality_check(f, Exponent(1.0), cfg), Error);
    // sharp permutes values along inversion, so applying it twice is exact
    const GroupFunction fs = sharp(sharp(f));
    for (std::size_t g = 0; g < 6; ++g) CHECK(fs.values[g] == f.values[g]);
}

TEST_CASE("subgroup inclusion is isometric") {
    Rng rng(233);
    SearchConfig cfg;
    cfg.rng_seed = 233;
    const FiniteGroup z4 = FiniteGroup::cyclic(4);
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<cx> fv = {rng.complex_normal(),
                                    rng.complex_normal()};
        const SubgroupReport rep =
            subgroup_isometry_check(z4, {0, 2}, fv, Exponent(3.0), cfg);
        CHECK(rep.equal);
        CHECK(rep.difference <= 1e-6);
    }
    CHECK_THROWS_AS(subgroup_from_indices(z4, {0, 1, 2}), Error);
}

TEST_CASE("quotient pushforward is contractive") {
    Rng rng(239);
    SearchConfig cfg;
    cfg.rng_seed = 239;
    const FiniteGroup z6 = FiniteGroup::cyclic(6);
    for (int trial = 0; trial < 5; ++trial) {
        GroupFunction f{z6, {}};
        f.values.resize(6);
        for (cx& v : f.values) v = rng.complex_normal();
        const QuotientReport rep =
            quotient_contraction_check(z6, {0, 2, 4}, f, Exponent(3.0), cfg);
        CHECK(rep.quotient_order == 2);
        CHECK(rep.contractive);
    }
    // {e, (01)} is not normal in sym(3)
    const FiniteGroup s3 = FiniteGroup::symmetric3();
    GroupFunction f{s3, std::vector<cx>(6, cx(1, 0))};
    try {
        quotient_contraction_check(s3, {0, 1}, f, Exponent(3.0), cfg);
        FAIL("expected a normality failure");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::InvalidNormalSubgroup);
    }
}

}  // TEST_SUITE
