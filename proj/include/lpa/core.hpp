/*
 * core.hpp — weighted ℓ^p_n substrate
 *
 * Models L^p of a weighted counting measure on finitely many atoms:
 *
 *   ∥x∥_p = (Σ_i w_i |x_i|^p)^{1/p},          w_i > 0
 *
 * together with the machinery every other component is built on: the weighted
 * pairing ⟨x,y⟩ = Σ_i w_i x_i ȳ_i, the norming (duality) map
 * y_i = sign(x_i)|x_i|^{p−1}, Radon–Nikodym weight ratios for permuted atoms,
 * and Clarkson's inequality
 *
 *   ∥x+y∥_p^p + ∥x−y∥_p^p  ≷  2(∥x∥_p^p + ∥y∥_p^p)   (≥ for p ≥ 2, ≤ for p ≤ 2)
 *
 * with equality, when p ≠ 2, exactly on disjointly supported pairs.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpa {

using cx = std::complex<double>;

// ----------------------------------------------------------------- error model

enum class ErrorKind {
    DimensionMismatch,
    InvalidArgument,
    InvalidPermutation,
    EmptyOperator,
    OracleScope,     // certification requested above the supported dimension
    ExponentTwo,     // operation refuses p = 2 (decomposition not unique there)
    NotIsometry,
    NotSpatial,
    NonSpatialImage,
    NotHomomorphism,
    InvalidSubgroup,
    InvalidNormalSubgroup,
    InvalidConjugator,
    ArityMismatch,
    ActionMismatch,
    TruncationUnderflow,
    CoverageGap,
    AlgebraRelation,
};

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

// True for error kinds that signal "outside this tool's scope" rather than bad
// input; the CLI maps these to a distinct exit code.
bool is_scope_error(ErrorKind k);
const char* error_kind_name(ErrorKind k);

// ----------------------------------------------------------------- basic types

struct WeightedSpace {
    std::vector<double> weights;  // strictly positive, one per atom

    WeightedSpace() = default;
    explicit WeightedSpace(std::vector<double> w);
    static WeightedSpace unit(std::size_t n);

    std::size_t dim() const { return weights.size(); }
    bool operator==(const WeightedSpace&) const = default;
};

struct Vec {
    WeightedSpace space;
    std::vector<cx> entries;

    Vec() = default;
    Vec(WeightedSpace s, std::vector<cx> e);
    static Vec zero(const WeightedSpace& s);

    std::size_t dim() const { return entries.size(); }
};

// Dense complex matrix acting ℓ^p(domain) → ℓ^p(codomain); row-major, entry
// (i, j) couples codomain atom i to domain atom j.
struct Operator {
    WeightedSpace domain;
    WeightedSpace codomain;
    std::vector<cx> a;

    Operator() = default;
    Operator(WeightedSpace dom, WeightedSpace cod);
    Operator(WeightedSpace dom, WeightedSpace cod, std::vector<cx> entries);
    static Operator identity(const WeightedSpace& s);
    static Operator zero(const WeightedSpace& dom, const WeightedSpace& cod);

    std::size_t rows() const { return codomain.dim(); }
    std::size_t cols() const { return domain.dim(); }
    cx& at(std::size_t i, std::size_t j) { return a[i * cols() + j]; }
    const cx& at(std::size_t i, std::size_t j) const { return a[i * cols() + j]; }
    bool square() const { return rows() == cols(); }

    Vec apply(const Vec& x) const;
    Operator mul(const Operator& rhs) const;
    Operator add(const Operator& rhs) const;
    Operator sub(const Operator& rhs) const;
    Operator scale(cx c) const;
    double max_abs() const;
};

// Hölder exponent p ∈ [1, ∞); the conjugate p' = p/(p−1) may be +∞ (p = 1) and
// is only ever consumed by internal duality steps that handle ∞ explicitly.
struct Exponent {
    double p = 2.0;

    Exponent() = default;
    Exponent(double value);  // validates 1 ≤ p < ∞
    double conjugate() const;
    bool is_two(double tol = 0.0) const;
};

// Permutation of n atoms given as images: perm[j] = φ(j). Throws
// InvalidPermutation unless a bijection.
void validate_permutation(const std::vector<std::size_t>& perm, std::size_t n);
std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& perm);

// -------------------------------------------------------------- lp operations

double vec_norm(const Vec& x, Exponent p);

// sign(x_i)·|x_i|^{p−1} with complex sign and sign(0) = 0; satisfies
// ⟨x, y⟩ = ∥x∥_p^p for the weighted pairing. Requires p > 1 or x ≠ 0 (at p = 1
// the dual-norm identity degenerates on the zero vector).
Vec duality_map(const Vec& x, Exponent p);

// Weighted pairing ⟨x,y⟩ = Σ_i w_i x_i conj(y_i); both vectors must share the space.
cx pairing(const Vec& x, const Vec& y);

// Atomwise d(μ∘perm⁻¹)/dμ: value at atom i is w(perm⁻¹(i)) / w(i).
Vec rn_derivative(const WeightedSpace& space, const std::vector<std::size_t>& perm);

struct ChangeOfVariablesReport {
    double lhs = 0;         // ∫ f dμ
    double rhs = 0;         // ∫ (f∘perm⁻¹)·rn dμ
    double difference = 0;  // |lhs − rhs|
};

// Both sides of the change-of-variables identity evaluated atomically; the two
// sums are rearrangements of each other, so the difference is rounding only.
// Complex f is integrated as-is; the report carries the real parts' mismatch
// plus the imaginary mismatch folded into `difference`.
ChangeOfVariablesReport change_of_variables_check(const Vec& f,
                                                 const std::vector<std::size_t>& perm,
                                                 Exponent p);

enum class ClarksonRelation { Ge, Le, Both };  // lhs ≥ rhs, lhs ≤ rhs, equality (p = 2)

struct ClarksonRecord {
    double lhs = 0;
    double rhs = 0;
    ClarksonRelation relation = ClarksonRelation::Both;
    bool equality = false;
    bool direction_holds = false;
};

ClarksonRecord clarkson_check(const Vec& x, const Vec& y, Exponent p, double tol = 1e-9);

// ------------------------------------------------------------------- internals
// (shared with the norm-estimation machinery; exposed for tests)

// Unit-pairing maximizer step: the vector of unit ∥·∥_{p} norm maximizing
// Re⟨x, z⟩ over the weighted sphere, i.e. the normalized duality map at the
// conjugate exponent. `pprime` may be +∞ (handled by argmax concentration).
Vec dual_ascent_direction(const Vec& z, double pprime);

// Adjoint with respect to the weighted pairings on both sides:
// (A☆y)_j = (1/w_j) Σ_i v_i conj(a_ij) y_i.
Vec weighted_adjoint_apply(const Operator& A, const Vec& y);

}  // namespace lpa
