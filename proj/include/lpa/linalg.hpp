/*
 * linalg.hpp — dense complex helpers for small matrices
 *
 * Everything here targets the instance sizes this toolkit actually meets
 * (n ≤ ~130): partial-pivot LU inversion with a reciprocal condition estimate,
 * scaling-and-squaring matrix exponential, and a cyclic Jacobi eigensolver for
 * Hermitian matrices (used as the p = 2 singular-value reference).
 */

#pragma once

#include "lpa/core.hpp"

namespace lpa {

struct InverseResult {
    bool ok = false;        // false when numerically singular
    Operator inverse;       // valid only when ok
    double rcond = 0.0;     // 1 / (∥A∥₁ ∥A⁻¹∥₁), 0 when singular
};

// Inverse via LU with partial pivoting. `threshold` is the rcond floor below
// which the matrix is declared singular.
InverseResult invert(const Operator& A, double threshold = 1e-10);

// Unweighted max absolute column sum / row sum (the classical 1- and ∞-norms
// of the raw matrix, no space weights).
double one_norm(const Operator& A);
double inf_norm(const Operator& A);
double frobenius_norm(const Operator& A);

// exp(c·A) by scaling-and-squaring of the Taylor series; the series is summed
// until the term norm falls below 1e-17× the partial sum, keeping the tail
// under 1e-13 after squaring at these sizes.
Operator expm(const Operator& A, cx c);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
// Input must be Hermitian to working precision; the routine symmetrizes.
std::vector<double> hermitian_eigenvalues(const Operator& A);

// Largest singular value of A as a map ℓ²(domain weights) → ℓ²(codomain
// weights): top eigenvalue of B*B for B = D_v^{1/2} A D_w^{−1/2}.
double weighted_sigma_max(const Operator& A);

}  // namespace lpa
