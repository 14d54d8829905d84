#pragma once

// Relation machinery for Leavitt-type algebras and their truncated
// spatial representations.
//
// The algebra on generators s_1..s_n, t_1..t_n carries the relations
//
//     t_j s_k = delta_{jk} 1        and        sum_j s_j t_j = 1.
//
// The first relation alone rewrites any word into the form s_mu t_nu;
// adding the second as the directed rule
//
//     s_n t_n -> 1 - sum_{j<n} s_j t_j
//
// yields a confluent system, so equality of elements is decidable by
// comparing normal forms.
//
// A concrete spatial model acts on the integer lattice through
// s_j e_m = e_{nm+j} and t_j e_m = e_{(m-j)/n} when n divides m - j,
// else 0.  Truncating to a window [-N, N] keeps the index arithmetic
// exact; the relations are asserted on the interior indices whose
// length-two composition images never leave the window, so truncation
// cannot manufacture failures.
//
// Graph relations generalize this: a finite directed graph carries
// vertex idempotents e_v and edge partial isometries s_a, t_a subject to
// five relations; the range-sum relation is only meaningful at vertices
// that receive an edge, and vertices without incoming edges are reported
// as exempt rather than failed.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lpa/core.hpp"
#include "lpa/opnorm.hpp"

namespace lpa {

enum class LetterKind { S, T };

struct LeavittLetter {
    LetterKind kind;
    std::size_t index;  // 1-based, in 1..n

    bool operator==(const LeavittLetter&) const = default;
};

struct LeavittWord {
    std::size_t n = 2;
    std::vector<LeavittLetter> letters;  // empty word = the unit
    cx coefficient{1.0, 0.0};
};

using LeavittCombination = std::vector<LeavittWord>;

LeavittCombination leavitt_multiply(const LeavittCombination& a,
                                    const LeavittCombination& b);

// Canonical form: no t-letter directly before an s-letter, no s_n t_n
// junction, like words merged, zero coefficients dropped, words sorted.
LeavittCombination leavitt_normal_form(const LeavittCombination& expr);

std::string leavitt_to_string(const LeavittCombination& expr);

struct TruncatedRep {
    static constexpr long kTruncated = std::numeric_limits<long>::min();
    static constexpr long kKernel = kTruncated + 1;

    std::size_t n = 2;
    long radius = 0;  // window is [-radius, radius]
    Exponent p{2.0};
    // image index per generator and window position, or a sentinel
    std::vector<std::vector<long>> s_map;
    std::vector<std::vector<long>> t_map;

    std::size_t dim() const { return static_cast<std::size_t>(2 * radius + 1); }
    std::size_t pos(long m) const { return static_cast<std::size_t>(m + radius); }
};

TruncatedRep truncated_cuntz_rep(std::size_t n, long radius, Exponent p);

Operator rep_generator(const TruncatedRep& rep, LetterKind kind,
                       std::size_t index);

std::vector<long> rep_interior(const TruncatedRep& rep);

struct CuntzRelationReport {
    std::size_t interior_count = 0;
    std::vector<long> interior;
    bool relations_hold = false;
    std::vector<std::string> violations;
};

CuntzRelationReport cuntz_relation_check(const TruncatedRep& rep);

struct SpatialSystemVerdict {
    bool spatial = false;
    std::string failure;              // empty when spatial
    double worst_cross_error = 0.0;   // relative norm disagreement
    std::size_t samples = 0;
};

// images[j][k] realizes the matrix unit e_{jk}; the system must satisfy
// the matrix-unit relations up to tol or an AlgebraRelation error is
// raised.  The verdict then reports whether every image is spatial with
// the transposed image as its reverse, cross-validated by comparing
// norms of random linear combinations against their matrix norms.
SpatialSystemVerdict spatial_matrix_system_check(
    const std::vector<std::vector<Operator>>& images, Exponent p,
    const SearchConfig& cfg = SearchConfig{}, double tol = 1e-9,
    std::size_t samples = 20);

struct DirectedGraph {
    std::size_t vertex_count = 0;
    std::vector<std::string> vertex_names;                  // optional
    std::vector<std::pair<std::size_t, std::size_t>> edges; // (d(a), r(a))
};

void validate_graph(const DirectedGraph& q);

DirectedGraph line_graph(std::size_t n);
DirectedGraph loop_graph(std::size_t loops);

struct GraphEdgeOps {
    Operator s;
    Operator t;
};

struct GraphAssignment {
    std::vector<Operator> vertex_ops;
    std::vector<GraphEdgeOps> edge_ops;
};

// Canonical assignment realizing the line graph inside the full matrix
// algebra: e_{v_i} = E_{ii}, s_{a_i} = E_{i+1,i}, t_{a_i} = E_{i,i+1}.
GraphAssignment line_graph_matrix_assignment(std::size_t n);

struct GraphRelationReport {
    bool all_pass = false;
    double max_deviation = 0.0;
    std::vector<std::string> violations;
    std::vector<std::size_t> exempt_vertices;  // no incoming edge
    bool unit_partition = false;  // sum of vertex idempotents = identity
    std::size_t span_dimension = 0;
};

// columns_mask restricts every identity check to the listed basis
// columns (used for windowed representations); empty means all columns.
GraphRelationReport graph_relation_check(
    const DirectedGraph& q, const GraphAssignment& assignment,
    double tol = 1e-10, const std::vector<std::size_t>& columns_mask = {},
    bool compute_span = true);

}  // namespace lpa
