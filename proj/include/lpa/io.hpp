#pragma once

// JSON wire formats and the request dispatcher.
//
// Complex scalars travel as [re, im] (bare numbers are accepted on
// input and mean a real value).  Operators are {"rows": [[..], ..]}
// with optional "weights" / "codomain_weights"; groups are either a
// name such as "Z4", "Z2xZ2", "S3" or an explicit
// {"elements": [..], "table": [[..]]}; actions bundle a group with a
// point count and an action table.  Every dispatcher response carries
// the echoed command, the seed, a digest of the request, and the
// command-specific outputs; errors carry a kind and a message instead.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "lpa/core.hpp"
#include "lpa/cuntz.hpp"
#include "lpa/dynamics.hpp"
#include "lpa/groupalg.hpp"
#include "lpa/lamperti.hpp"
#include "lpa/opnorm.hpp"

namespace lpa {

using json = nlohmann::ordered_json;

cx parse_complex(const json& j);
Exponent parse_exponent(const json& j);
WeightedSpace parse_space(const json& j, std::size_t dim);
Operator parse_operator(const json& j);
Vec parse_vec(const json& j);
FiniteGroup parse_group(const json& j);
GroupFunction parse_group_function(const FiniteGroup& g, const json& j);
FiniteAction parse_action(const json& j);
std::vector<std::vector<cx>> parse_crossed_values(const FiniteAction& a,
                                                  const json& j);
DirectedGraph parse_graph(const json& j);
GraphAssignment parse_assignment(const json& j);
AlternatingWord parse_alternating_word(const json& j);
HomCandidate parse_hom_candidate(const json& j);

json complex_json(cx v);
json vec_json(const Vec& v);
json complex_list_json(const std::vector<cx>& values);
json operator_json(const Operator& a);
json estimate_json(const NormEstimate& est, bool include_witness = true);
json alternating_word_json(const AlternatingWord& x);

std::uint64_t fnv1a(const std::string& text);

struct DispatchResult {
    int status = 0;  // 0 ok, 2 validation, 3 scope, 64 unknown command
    std::string body;
};

// Evaluates one JSON request of the form {"command": ..., ...}.  Never
// throws; failures are encoded in the status and an error body.
DispatchResult dispatch_request(const std::string& request_text);

}  // namespace lpa
