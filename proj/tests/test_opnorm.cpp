// Norm estimator and oracle against closed forms:
//   * [[1,1],[1,-1]] has p->p norm max(2^{1/p}, 2^{1-1/p});
//   * the all-ones 2x2 matrix has norm 2 for every p;
//   * p = 1 and p = infinity norms have exact column/row formulas;
//   * exp(i pi/4 [[0,1],[1,0]]) has p = 4 norm 2^{1/4}.

#include <cmath>

#include "doctest.h"
#include "lpa/linalg.hpp"
#include "lpa/opnorm.hpp"
#include "lpa/rng.hpp"

using namespace lpa;

namespace {

Operator hadamard2() {
    WeightedSpace s = WeightedSpace::unit(2);
    return Operator(s, s, {cx(1, 0), cx(1, 0), cx(1, 0), cx(-1, 0)});
}

Operator random_square(Rng& rng, std::size_t n, bool weighted) {
    std::vector<double> wd(n, 1.0), wc(n, 1.0);
    if (weighted) {
        for (double& w : wd) w = rng.uniform(0.5, 2.0);
        for (double& w : wc) w = rng.uniform(0.5, 2.0);
    }
    Operator a{WeightedSpace(wd), WeightedSpace(wc)};
    a.a.resize(n * n);
    for (cx& e : a.a) e = rng.complex_normal();
    return a;
}

}  // namespace

TEST_SUITE("opnorm") {

TEST_CASE("hadamard norms across exponents") {
    const Operator h = hadamard2();
    const auto expect = [](double pv) {
        return std::max(std::pow(2.0, 1.0 / pv), std::pow(2.0, 1.0 - 1.0 / pv));
    };
    SearchConfig cfg;
    cfg.rng_seed = 1;
    CHECK(opnorm(h, Exponent(1.0), cfg).lower_bound ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(opnorm(h, Exponent(2.0), cfg).lower_bound ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(opnorm(h, Exponent(1.5), cfg).lower_bound ==
          doctest::Approx(expect(1.5)).epsilon(1e-9));
    CHECK(opnorm(h, Exponent(4.0), cfg).lower_bound ==
          doctest::Approx(1.681792830507429).epsilon(1e-9));
}

TEST_CASE("all-ones matrix has norm two for every exponent") {
    WeightedSpace s = WeightedSpace::unit(2);
    const Operator j(s, s, {cx(1, 0), cx(1, 0), cx(1, 0), cx(1, 0)});
    SearchConfig cfg;
    cfg.rng_seed = 2;
    for (double pv : {1.0, 1.5, 2.0, 3.0, 4.0}) {
        CHECK(opnorm(j, Exponent(pv), cfg).lower_bound ==
              doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("identity has norm one on any weighted space") {
    WeightedSpace s({0.3, 1.0, 4.5});
    const Operator id = Operator::identity(s);
    SearchConfig cfg;
    for (double pv : {1.0, 2.5, 4.0}) {
        CHECK(opnorm(id, Exponent(pv), cfg).lower_bound ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact p=1 and p=inf formulas match brute force") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.index(3);
        const Operator a = random_square(rng, n, true);
        double col = 0.0;
        for (std::size_t jcol = 0; jcol < n; ++jcol) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += a.codomain.weights[i] * std::abs(a.at(i, jcol));
            }
            col = std::max(col, sum / a.domain.weights[jcol]);
        }
        CHECK(norm_p1_exact(a) == doctest::Approx(col).epsilon(1e-13));
    }
}

TEST_CASE("estimator attains the exact p=1 norm") {
    Rng rng(23);
    SearchConfig cfg;
    cfg.rng_seed = 23;
    for (int trial = 0; trial < 10; ++trial) {
        const Operator a = random_square(rng, 3, true);
        CHECK(opnorm(a, Exponent(1.0), cfg).lower_bound ==
              doctest::Approx(norm_p1_exact(a)).epsilon(1e-12));
    }
}

TEST_CASE("estimator matches the weighted singular value at p=2") {
    Rng rng(29);
    SearchConfig cfg;
    cfg.rng_seed = 29;
    cfg.max_iterations = 2000;
    cfg.convergence_tol = 1e-15;
    for (int trial = 0; trial < 10; ++trial) {
        const Operator a = random_square(rng, 3, true);
        CHECK(opnorm(a, Exponent(2.0), cfg).lower_bound ==
              doctest::Approx(weighted_sigma_max(a)).epsilon(1e-9));
    }
}

TEST_CASE("oracle brackets the estimator on small matrices") {
    Rng rng(31);
    SearchConfig cfg;
    cfg.rng_seed = 31;
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 2 + rng.index(2);
        const Operator a = random_square(rng, n, true);
        for (double pv : {1.5, 3.0, 4.0}) {
            const Exponent p(pv);
            const NormEstimate est = opnorm(a, p, cfg);
            const NormEstimate orc = opnorm_oracle(a, p);
            REQUIRE(orc.certified);
            REQUIRE(orc.upper_bound.has_value());
            CHECK(orc.lower_bound <= *orc.upper_bound + 1e-12);
            CHECK(est.lower_bound <= *orc.upper_bound + 1e-9);
            CHECK(std::abs(est.lower_bound - orc.lower_bound) <=
                  1e-3 * orc.lower_bound);
        }
    }
}

TEST_CASE("oracle refuses dimensions above three") {
    Rng rng(37);
    const Operator a = random_square(rng, 4, false);
    try {
        opnorm_oracle(a, Exponent(3.0));
        FAIL("expected a scope error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::OracleScope);
        CHECK(is_scope_error(e.kind));
    }
}

TEST_CASE("matrix exponential of the symmetric flip at p=4") {
    WeightedSpace s = WeightedSpace::unit(2);
    const Operator sx(s, s, {cx(0, 0), cx(1, 0), cx(1, 0), cx(0, 0)});
    const Operator u = expm(sx, cx(0.0, 0.78539816339744830961));  // pi/4
    SearchConfig cfg;
    cfg.rng_seed = 41;
    CHECK(opnorm(u, Exponent(4.0), cfg).lower_bound ==
          doctest::Approx(1.189207115002721).epsilon(1e-9));
    // unitary, so the p = 2 norm stays at one
    CHECK(opnorm(u, Exponent(2.0), cfg).lower_bound ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("invertible isometry detection") {
    WeightedSpace s({1.0, 2.0, 0.5});
    // weighted permutation with phases: an isometry for every p
    Operator t = Operator::zero(s, s);
    const std::vector<std::size_t> perm = {1, 2, 0};
    for (std::size_t j = 0; j < 3; ++j) {
        const double ratio =
            std::pow(s.weights[j] / s.weights[perm[j]], 1.0 / 3.0);
        t.at(perm[j], j) = cx(0, 1) * ratio;
    }
    CHECK(is_invertible_isometry(t, Exponent(3.0)));
    CHECK_FALSE(is_invertible_isometry(t.scale(0.9), Exponent(3.0)));

    // rotation by 45 degrees: isometric only at p = 2
    WeightedSpace u2 = WeightedSpace::unit(2);
    const double c = std::sqrt(0.5);
    const Operator rot(u2, u2, {cx(c, 0), cx(-c, 0), cx(c, 0), cx(c, 0)});
    CHECK(is_invertible_isometry(rot, Exponent(2.0)));
    CHECK_FALSE(is_invertible_isometry(rot, Exponent(3.0)));

    // singular matrices are reported, not thrown
    const Operator zero = Operator::zero(u2, u2);
    CHECK_FALSE(is_invertible_isometry(zero, Exponent(3.0)));
}

TEST_CASE("conjugated norm equals the norm of the conjugated matrix") {
    Rng rng(43);
    WeightedSpace s = WeightedSpace::unit(3);
    Operator x = random_square(rng, 3, false);
    Operator conj = Operator::zero(s, s);
    const double d[3] = {1.0, 2.0, 0.5};
    for (std::size_t i = 0; i < 3; ++i) conj.at(i, i) = d[i];
    SearchConfig cfg;
    cfg.rng_seed = 43;
    const double direct = opnorm(x, Exponent(3.0), cfg).lower_bound;
    const double via = conjugated_norm(x, conj, Exponent(3.0), cfg).lower_bound;
    CHECK(via > 0.0);
    // conjugation by a non-scalar diagonal genuinely moves the norm
    CHECK(via != doctest::Approx(direct).epsilon(1e-12));

    const Operator singular = Operator::zero(s, s);
    try {
        conjugated_norm(x, singular, Exponent(3.0), cfg);
        FAIL("expected invalid conjugator");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::InvalidConjugator);
    }
}

TEST_CASE("estimates are reproducible for a fixed seed") {
    Rng rng(47);
    const Operator a = random_square(rng, 3, true);
    SearchConfig cfg;
    cfg.rng_seed = 1234;
    const NormEstimate first = opnorm(a, Exponent(3.0), cfg);
    const NormEstimate second = opnorm(a, Exponent(3.0), cfg);
    CHECK(first.lower_bound == second.lower_bound);
    CHECK(first.iterations == second.iterations);
    CHECK(first.starts == second.starts);
}

TEST_CASE("search config validation") {
    SearchConfig cfg;
    cfg.starts = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

}  // TEST_SUITE
