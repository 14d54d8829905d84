/*
 * opnorm.hpp — p→p operator norm estimation and small-instance certification
 *
 * The estimator runs the dual ascent ("power method" for mixed subordinate
 * norms): from a unit vector x,
 *
 *   y = A x;   z = A☆ dual_p(y);   x ← normalize(dual_{p'}(z)),
 *
 * where A☆ is the adjoint for the weighted pairings and dual_p is the norming
 * map. Each step is nondecreasing in ∥Ax∥_p, so every start yields a monotone
 * sequence of lower bounds. Extremizers at p ≠ 2 tend to concentrate on few
 * atoms, so the start menu mixes seeded random vectors with all coordinate
 * vectors and phase-grid combinations of coordinate pairs (all pairs in low
 * dimension, nearby-index bands once the pair count would exceed a budget).
 *
 * Computing the exact norm is NP-hard in general; dimensions ≤ 3 get a
 * certified bracket instead: an exhaustive magnitude-simplex × phase-grid scan
 * of the unit sphere, ascent-polished, with the upper bound taken as the best
 * of a covering (Lipschitz) bound at the grid scale and Riesz–Thorin
 * interpolation through the exactly known p = 1, 2, ∞ norms.
 */

#pragma once

#include <optional>

#include "lpa/core.hpp"

namespace lpa {

struct SearchConfig {
    std::size_t starts = 16;          // seeded random starts (coordinate menus are always added)
    std::size_t max_iterations = 300;
    double convergence_tol = 1e-13;
    std::uint64_t rng_seed = 0;
    std::size_t certify_max_dim = 3;
    std::size_t grid_resolution = 16;

    void validate() const;
};

struct NormEstimate {
    double lower_bound = 0.0;
    Vec witness;                        // unit vector with ∥A·witness∥ = lower_bound
    bool certified = false;
    std::optional<double> upper_bound;  // present when certified
    double certification_gap = 0.0;     // upper − lower when certified
    std::size_t iterations = 0;         // total ascent iterations spent
    std::size_t starts = 0;             // starts actually explored
};

NormEstimate opnorm(const Operator& A, Exponent p, const SearchConfig& cfg = {});

// Certified bracket for domains of dimension ≤ 3 (OracleScope error above).
NormEstimate opnorm_oracle(const Operator& A, Exponent p, std::size_t grid_resolution = 16);

// Exact closed forms on weighted atomic spaces.
double norm_p1_exact(const Operator& A);    // max_j (Σ_i v_i |a_ij|) / w_j
double norm_pinf_exact(const Operator& A);  // max_i Σ_j |a_ij| (w_j/... flat: sup norm)

// A invertible (reciprocal condition ≥ 1e-10) with ∥A∥_p ≤ 1+tol and
// ∥A⁻¹∥_p ≤ 1+tol. Singular input returns false rather than throwing.
bool is_invertible_isometry(const Operator& A, Exponent p, double tol = 1e-6,
                            const SearchConfig& cfg = {});

// ∥x∥_s = ∥s x s⁻¹∥_p. Throws InvalidConjugator when s is singular.
NormEstimate conjugated_norm(const Operator& x, const Operator& s, Exponent p,
                             const SearchConfig& cfg = {});

}  // namespace lpa
