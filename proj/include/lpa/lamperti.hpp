#pragma once

// Spatial structure of invertible isometries and partial isometries on
// weighted l^p spaces with atomic measure.
//
// For p != 2 every invertible isometry of l^p_n(w) is a weighted
// permutation: there is a unique bijection phi of the atoms and a unique
// unimodular phase vector f with
//
//     (T x)_i = f_i (w(phi^{-1}(i)) / w(i))^{1/p} x_{phi^{-1}(i)}.
//
// The weight-ratio power makes each column an isometric image of the
// corresponding basis vector; the phases absorb the remaining freedom.
// A partial variant maps a subset E of atoms onto a subset F through a
// bijection phi: E -> F with phases carried on F; its reverse is the
// partial isometry built from (F, E, phi^{-1}, conj(f) o phi^{-1}), and
// the two compose to the coordinate projections onto E and F.
//
// Hermitian elements are detected dynamically: a is hermitian when
// exp(i t a) is a contraction for every real t.  At p != 2 this pins a
// to the real diagonal, which is also the largest self-adjoint-like
// subalgebra ("core") of the full matrix algebra.

#include <cstddef>
#include <optional>
#include <vector>

#include "lpa/core.hpp"
#include "lpa/opnorm.hpp"

namespace lpa {

struct SpatialIsometry {
    WeightedSpace space;
    std::vector<std::size_t> perm;   // perm[j] = phi(j)
    std::vector<cx> phases;          // phases[i], attached to the range atom i
};

// Throws InvalidArgument / InvalidPermutation when the data is malformed.
void validate_spatial_isometry(const SpatialIsometry& si);

Operator build_spatial_isometry(const SpatialIsometry& si, Exponent p);

// Inverse problem: recover (perm, phases) from a matrix.  Refuses p = 2,
// where the decomposition is not unique.
SpatialIsometry lamperti_decompose(const Operator& a, Exponent p,
                                   double tol = 1e-6,
                                   const SearchConfig& cfg = SearchConfig{});

// Composition helper: build(compose(s1, s2)) = build(s1) * build(s2).
SpatialIsometry compose_spatial(const SpatialIsometry& s1,
                                const SpatialIsometry& s2);

struct DistanceReport {
    double analytic = 0.0;        // max(sup_i |f_i - g_i|, 2 [phi != psi])
    double estimate = 0.0;        // opnorm of the difference matrix
    double phase_sup = 0.0;
    bool same_permutation = false;
    bool agree = false;           // |analytic - estimate| <= tol
};

DistanceReport isometry_distance(const SpatialIsometry& s1,
                                 const SpatialIsometry& s2, Exponent p,
                                 double tol = 1e-6,
                                 const SearchConfig& cfg = SearchConfig{});

struct SpatialQuadruple {
    WeightedSpace space;
    std::vector<std::size_t> domain_set;       // E, strictly increasing
    std::vector<std::size_t> range_set;        // F = phi(E), increasing
    std::vector<std::ptrdiff_t> bijection;     // bijection[j] = phi(j) for
                                               // j in E, -1 elsewhere
    std::vector<cx> phases;                    // phases[i] used for i in F
};

void validate_spatial_quadruple(const SpatialQuadruple& q);

struct PartialIsometryPair {
    Operator forward;
    Operator reverse;
};

PartialIsometryPair build_spatial_partial_isometry(const SpatialQuadruple& q,
                                                   Exponent p);

struct ClassifyResult {
    bool spatial = false;
    std::optional<SpatialQuadruple> quadruple;
    std::string reason;                  // empty when spatial
    std::ptrdiff_t offending_row = -1;
    std::ptrdiff_t offending_column = -1;
};

ClassifyResult classify_spatial(const Operator& s, Exponent p,
                                double tol = 1e-6);

std::vector<double> default_hermitian_grid();

bool hermitian_test(const Operator& a, Exponent p,
                    const std::vector<double>& t_grid = {},
                    double tol = 1e-6,
                    const SearchConfig& cfg = SearchConfig{});

struct CoreReport {
    std::vector<bool> diagonal;               // per generator
    std::vector<double> off_diagonal_mass;    // largest off-diagonal modulus
    bool all_pass = false;
};

CoreReport core_check(const std::vector<Operator>& generators, Exponent p,
                      double tol = 1e-9);

struct TwoExponentReport {
    SpatialIsometry decomposition;
    bool weight_preserving = false;
    double worst_ratio_deviation = 0.0;  // max_i |w(phi^{-1}(i))/w(i) - 1|
};

// Requires A to be an invertible isometry at both exponents; the
// decomposition is taken at whichever of p, q differs from 2.
TwoExponentReport two_exponent_check(const Operator& a, Exponent p, Exponent q,
                                     double tol = 1e-6,
                                     const SearchConfig& cfg = SearchConfig{});

}  // namespace lpa
