#pragma once

// Crossed products of finite group actions and the order-2 / order-3
// boundary action on alternating words.
//
// An action of G on a finite set X turns functions G -> C(X) into an
// algebra under the twisted convolution
//
//     (f * g)(s) = sum_t f(t) alpha_t(g(t^{-1} s)),
//     (alpha_t h)(x) = h(t^{-1} . x),
//
// whose unit is the point mass at the group identity.  A regular pair
// on l^p(G x X) represents this algebra concretely: multiplication
// operators twisted along the orbit, composed with left translations in
// the group coordinate.  The reduced norm of an element is the operator
// norm of its integrated form under that pair.
//
// The boundary action: points are finite alternating words whose letters
// come from an order-2 factor {a} and an order-3 factor {b, b^2}.  A
// generator g acts by left concatenation followed by free reduction:
// same-factor letters merge (or cancel, shortening the word), different-
// factor letters prepend.  Acting can grow or shrink depth by one, so
// comparisons are made on the common defined prefix and truncation is
// reported rather than guessed.

#include <cstddef>
#include <string>
#include <vector>

#include "lpa/core.hpp"
#include "lpa/groupalg.hpp"
#include "lpa/opnorm.hpp"

namespace lpa {

struct FiniteAction {
    FiniteGroup group;
    std::size_t point_count = 0;
    std::vector<std::vector<std::size_t>> act;  // act[g][x]
};

void validate_action(const FiniteAction& a);
bool same_action(const FiniteAction& a, const FiniteAction& b);

FiniteAction trivial_action(const FiniteGroup& g, std::size_t points);
FiniteAction translation_action(const FiniteGroup& g);

struct CrossedElement {
    FiniteAction action;
    std::vector<std::vector<cx>> values;  // values[g][x]
};

void validate_crossed(const CrossedElement& f);

CrossedElement crossed_unit(const FiniteAction& a);

CrossedElement twisted_convolution(const CrossedElement& f,
                                   const CrossedElement& g);

struct RegularPair {
    FiniteAction action;
    std::size_t base_dim = 0;  // dimension of the seed representation
    Exponent p{2.0};
    WeightedSpace space;       // l^p(G x base)

    Operator multiplication(const std::vector<cx>& h) const;
    Operator translation(std::size_t t) const;
};

// base_rep_dim = 0 picks the full multiplication representation on
// l^p(X); otherwise it must be a positive multiple of |X| (amplification
// by identity blocks).
RegularPair regular_pair(const FiniteAction& action, std::size_t base_rep_dim,
                         Exponent p);

Operator integrated_form(const RegularPair& pair, const CrossedElement& f);

NormEstimate reduced_norm(const CrossedElement& f, Exponent p,
                          const SearchConfig& cfg = SearchConfig{});

enum class CantorLetter { A, B, B2 };

int letter_order(CantorLetter l);  // 2 for A, 3 for B and B2

struct AlternatingWord {
    std::vector<CantorLetter> letters;

    std::size_t depth() const { return letters.size(); }
    bool operator==(const AlternatingWord&) const = default;
};

void validate_alternating(const AlternatingWord& x);

AlternatingWord cantor_act(CantorLetter g, const AlternatingWord& x);

// Applies the letters right to left, as function composition reads.
AlternatingWord cantor_act_word(const std::vector<CantorLetter>& word,
                                const AlternatingWord& x);

// Parses strings such as "ab^2a" (also accepting "b2" for the square).
std::vector<CantorLetter> parse_cantor_word(const std::string& text);
std::string cantor_word_to_string(const std::vector<CantorLetter>& word);

std::vector<AlternatingWord> enumerate_alternating_words(std::size_t depth);

struct OrderCheckReport {
    std::size_t depth = 0;
    std::size_t word_count = 0;
    bool a_squared_identity = false;
    bool b_cubed_identity = false;
    std::size_t min_prefix_a = 0;
    std::size_t min_prefix_b = 0;
};

OrderCheckReport order_check(std::size_t depth);

struct CensusResult {
    std::size_t fixed_count = 0;
    std::size_t truncated_count = 0;  // orbits too short to compare
    std::size_t word_count = 0;
    double fraction = 0.0;
};

CensusResult fixed_point_census(const std::vector<CantorLetter>& g,
                                std::size_t depth);

struct CoeData {
    std::vector<std::size_t> theta;               // bijection X -> Y
    std::vector<std::vector<std::size_t>> c_h;    // [g][x] -> element of H
    std::vector<std::vector<std::size_t>> c_g;    // [h][y] -> element of G
};

struct CoeReport {
    bool pass = false;
    std::vector<std::string> violations;
};

// Verifies theta(sigma_g(x)) = rho_{c_h(g,x)}(theta(x)) and the
// symmetric identity through theta^{-1}, for every generator and point.
CoeReport coe_verify(const CoeData& data, const FiniteAction& sigma,
                     const FiniteAction& rho);

}  // namespace lpa
