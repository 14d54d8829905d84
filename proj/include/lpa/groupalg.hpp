#pragma once

// Convolution algebras of finite groups acting on l^p(G).
//
// A function f on G convolves as (f * xi)(s) = sum_t f(t) xi(t^{-1} s),
// which is the matrix M[s, u] = f(s u^{-1}) applied to xi.  Left
// translations Lt_g are the convolution matrices of point masses, and the
// closed span of {Lt_g} with the inherited operator norm is the reduced
// group algebra at exponent p.  For finite groups the reduced and
// universal norms coincide, so a single norm engine serves both.
//
// Structure results realized here:
//   * the invertible isometries of the algebra are exactly the phase
//     multiples of translations when p != 2;
//   * unital contractive homomorphisms between two such algebras are
//     induced by a group homomorphism theta and a circle-valued gamma,
//     via Lt_g -> gamma(g) Lt_{theta(g)};
//   * the flip f#(s) = f(s^{-1}) transposes convolution matrices and
//     exchanges the norms at conjugate exponents;
//   * subgroups include isometrically, quotients push forward
//     contractively.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lpa/core.hpp"
#include "lpa/opnorm.hpp"

namespace lpa {

struct FiniteGroup {
    std::vector<std::string> elements;
    std::vector<std::vector<std::size_t>> table;  // table[a][b] = a * b
    std::size_t identity = 0;

    std::size_t order() const { return elements.size(); }
    std::size_t op(std::size_t a, std::size_t b) const { return table[a][b]; }
    std::size_t inverse(std::size_t a) const;

    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
    static FiniteGroup symmetric3();
};

// Exhaustive check of associativity, identity and inverses; throws
// InvalidArgument on failure.
void validate_group(const FiniteGroup& g);

bool same_group(const FiniteGroup& a, const FiniteGroup& b);

struct GroupFunction {
    FiniteGroup group;
    std::vector<cx> values;
};

void validate_group_function(const GroupFunction& f);

GroupFunction delta(const FiniteGroup& g, std::size_t at);

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

Operator conv_matrix(const GroupFunction& f);

Operator left_translation(const FiniteGroup& g, std::size_t s);

NormEstimate fp_lambda_norm(const GroupFunction& f, Exponent p,
                            const SearchConfig& cfg = SearchConfig{});

// Norm of a + b . generator in the order-two group algebra, computed from
// the spectrum pair (a, b) through the matrix (1/2) [[a+b, a-b], [a-b, a+b]].
NormEstimate z2_norm(cx a, cx b, Exponent p,
                     const SearchConfig& cfg = SearchConfig{});

struct IsomVerifyReport {
    std::size_t phase_count = 0;
    std::size_t translations_checked = 0;
    bool all_translations_pass = false;
    std::vector<std::string> translation_failures;
    std::size_t trials = 0;
    std::size_t resamples = 0;       // rejected draws too close to the
                                     // phase-translation set
    bool all_random_fail = false;
    std::vector<std::string> random_violations;
    double distance_floor = 0.0;
};

IsomVerifyReport isom_group_verify(const FiniteGroup& g, Exponent p,
                                   std::size_t trials,
                                   const SearchConfig& cfg = SearchConfig{},
                                   double tol = 1e-6,
                                   double distance_floor = 0.1);

struct RecoveredGroup {
    std::vector<std::vector<std::size_t>> table;
    bool matches_input = false;
};

RecoveredGroup recover_group(const FiniteGroup& g, Exponent p);

struct HomCandidate {
    FiniteGroup source;
    FiniteGroup target;
    std::vector<Operator> images;  // one operator on l^p(target) per source
                                   // element
};

struct HomDecomposition {
    std::vector<std::size_t> theta;  // group homomorphism source -> target
    std::vector<cx> gamma;           // circle-valued homomorphism on source
    bool injective = false;
};

HomDecomposition hom_decompose(const HomCandidate& h, Exponent p,
                               double tol = 1e-6);

// Convenience inverse of hom_decompose for tests and round-trips.
HomCandidate build_hom_candidate(const FiniteGroup& source,
                                 const FiniteGroup& target,
                                 const std::vector<std::size_t>& theta,
                                 const std::vector<cx>& gamma);

GroupFunction sharp(const GroupFunction& f);

struct DualityReport {
    bool transpose_exact = false;
    double norm_f = 0.0;        // at p
    double norm_sharp = 0.0;    // at the conjugate exponent
    double difference = 0.0;
};

DualityReport duality_check(const GroupFunction& f, Exponent p,
                            const SearchConfig& cfg = SearchConfig{});

struct SubgroupReport {
    double norm_subgroup = 0.0;
    double norm_ambient = 0.0;
    double difference = 0.0;
    bool equal = false;
};

// h_indices lists the subgroup as indices into g's element order;
// f_values aligns with h_indices.
SubgroupReport subgroup_isometry_check(const FiniteGroup& g,
                                       const std::vector<std::size_t>& h_indices,
                                       const std::vector<cx>& f_values,
                                       Exponent p,
                                       const SearchConfig& cfg = SearchConfig{},
                                       double tol = 1e-6);

struct QuotientReport {
    double norm_ambient = 0.0;
    double norm_quotient = 0.0;
    bool contractive = false;
    std::size_t quotient_order = 0;
};

QuotientReport quotient_contraction_check(
    const FiniteGroup& g, const std::vector<std::size_t>& n_indices,
    const GroupFunction& f, Exponent p,
    const SearchConfig& cfg = SearchConfig{}, double tol = 1e-6);

// Subgroup helper shared by the checks above: builds the subgroup as a
// standalone FiniteGroup; throws InvalidSubgroup when not closed.
FiniteGroup subgroup_from_indices(const FiniteGroup& g,
                                  const std::vector<std::size_t>& h_indices);

}  // namespace lpa
