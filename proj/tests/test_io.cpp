// Wire format parsers, serializers, and the JSON request dispatcher.

#include <string>

#include "doctest.h"
#include "lpa/io.hpp"

using namespace lpa;

TEST_SUITE("io") {

TEST_CASE("complex scalars parse from bare numbers and pairs") {
    CHECK(parse_complex(json(2.5)) == cx(2.5, 0.0));
    CHECK(parse_complex(json::parse("[1.5]")) == cx(1.5, 0.0));
    CHECK(parse_complex(json::parse("[0, -1]")) == cx(0.0, -1.0));
    CHECK_THROWS_AS(parse_complex(json::parse("\"x\"")), Error);
    CHECK_THROWS_AS(parse_complex(json::parse("[1, 2, 3]")), Error);
    CHECK(complex_json(cx(3.0, -4.0)) == json::parse("[3.0, -4.0]"));
}

TEST_CASE("operators parse with default and explicit weights") {
    const json plain = json::parse(R"({"rows": [[1, 0], [0, [0, 1]]]})");
    const Operator a = parse_operator(plain);
    CHECK(a.rows() == 2);
    CHECK(a.at(1, 1) == cx(0.0, 1.0));
    CHECK(a.domain.weights == std::vector<double>{1.0, 1.0});

    const json weighted = json::parse(
        R"({"rows": [[1, 0], [0, 1]], "weights": [2, 0.5]})");
    const Operator b = parse_operator(weighted);
    CHECK(b.domain.weights == std::vector<double>{2.0, 0.5});
    CHECK(b.codomain.weights == b.domain.weights);

    // round-trip through the serializer
    CHECK(parse_operator(operator_json(b)).sub(b).max_abs() == 0.0);
    CHECK_FALSE(operator_json(a).contains("weights"));
    CHECK(operator_json(b).contains("weights"));

    CHECK_THROWS_AS(parse_operator(json::parse(R"({"rows": [[1], [2, 3]]})")),
                    Error);
    CHECK_THROWS_AS(
        parse_operator(json::parse(
            R"({"rows": [[1, 0], [0, 1]], "weights": [1, 0]})")),
        Error);
}

TEST_CASE("group names resolve to the standard catalog") {
    CHECK(parse_group(json("Z4")).order() == 4);
    CHECK(parse_group(json("S3")).order() == 6);
    const FiniteGroup v4 = parse_group(json("Z2xZ2"));
    CHECK(v4.order() == 4);
    for (std::size_t g = 0; g < 4; ++g) CHECK(v4.op(g, g) == 0);
    CHECK(parse_group(json("Z2xZ3")).order() == 6);
    CHECK_THROWS_AS(parse_group(json("Q8")), Error);
    CHECK_THROWS_AS(parse_group(json("Z0")), Error);
}

TEST_CASE("explicit tables parse with identity detection") {
    const json table = json::parse(
        R"({"table": [[1, 0], [0, 1]], "elements": ["u", "e"]})");
    const FiniteGroup g = parse_group(table);
    CHECK(g.order() == 2);
    CHECK(g.identity == 1);
    CHECK(g.elements[1] == "e");
    CHECK_THROWS_AS(parse_group(json::parse(R"({"table": [[0, 1], [0, 1]]})")),
                    Error);
}

TEST_CASE("group functions accept the order-two spectrum form") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const GroupFunction f =
        parse_group_function(z2, json::parse(R"({"a": 1, "b": [0, -1]})"));
    REQUIRE(f.values.size() == 2);
    // spectrum (a, b) maps to the coefficient pair ((a+b)/2, (a-b)/2)
    CHECK(f.values[0] == cx(0.5, -0.5));
    CHECK(f.values[1] == cx(0.5, 0.5));
    const GroupFunction direct =
        parse_group_function(z2, json::parse("[1, [2, 1]]"));
    CHECK(direct.values[1] == cx(2.0, 1.0));
    CHECK_THROWS_AS(
        parse_group_function(FiniteGroup::cyclic(3),
                             json::parse(R"({"a": 1, "b": 2})")),
        Error);
}

TEST_CASE("graphs parse with named vertices") {
    const json named = json::parse(
        R"({"vertices": ["v", "w"], "edges": [{"d": "v", "r": "w"}]})");
    const DirectedGraph q = parse_graph(named);
    CHECK(q.vertex_count == 2);
    REQUIRE(q.edges.size() == 1);
    CHECK(q.edges[0] == std::pair<std::size_t, std::size_t>{0, 1});
    const DirectedGraph counted = parse_graph(
        json::parse(R"({"vertices": 3, "edges": [{"d": 0, "r": 2}]})"));
    CHECK(counted.vertex_count == 3);
    CHECK_THROWS_AS(
        parse_graph(json::parse(
            R"({"vertices": ["v"], "edges": [{"d": "v", "r": "z"}]})")),
        Error);
}

TEST_CASE("alternating words parse from strings and letter arrays") {
    const AlternatingWord from_string =
        parse_alternating_word(json("ab^2a"));
    const AlternatingWord from_array =
        parse_alternating_word(json::parse(R"(["a", "b^2", "a"])"));
    CHECK(from_string == from_array);
    CHECK(from_string.depth() == 3);
    const json round = alternating_word_json(from_string);
    CHECK(round["depth"] == 3);
    CHECK_THROWS_AS(parse_alternating_word(json("aa")), Error);
}

TEST_CASE("digest is stable fnv-1a") {
    CHECK(fnv1a("") == 14695981039346656037ULL);
    CHECK(fnv1a("a") == 12638187200555641996ULL);
    CHECK(fnv1a("abc") != fnv1a("acb"));
}

TEST_CASE("dispatcher answers a norm request") {
    const std::string req = R"({
        "command": "opnorm",
        "matrix": {"rows": [[1, 0], [0, 1]]},
        "p": 1.5
    })";
    const DispatchResult res = dispatch_request(req);
    REQUIRE(res.status == 0);
    const json body = json::parse(res.body);
    CHECK(body["command"] == "opnorm");
    CHECK(body["seed"] == 0);
    CHECK(body["inputs_digest"].get<std::string>().size() == 16);
    CHECK(body["outputs"]["lower_bound"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dispatcher surfaces validation, scope, and unknown errors") {
    CHECK(dispatch_request("this is not json").status == 2);
    CHECK(dispatch_request(R"({"p": 3})").status == 2);

    const DispatchResult unknown =
        dispatch_request(R"({"command": "frobnicate"})");
    CHECK(unknown.status == 64);
    CHECK(json::parse(unknown.body)["error"]["kind"] == "UnknownCommand");

    const DispatchResult scope = dispatch_request(R"({
        "command": "lamperti-decompose",
        "matrix": {"rows": [[1, 0], [0, 1]]},
        "p": 2
    })");
    CHECK(scope.status == 3);
    const json body = json::parse(scope.body);
    CHECK(body["error"]["kind"] == "ExponentTwo");
    CHECK_FALSE(body["error"]["message"].get<std::string>().empty());

    CHECK(dispatch_request(R"({"command": "suite", "name": "nope"})").status ==
          64);
}

TEST_CASE("dispatcher output is byte-stable") {
    const std::string req = R"({
        "command": "group-norm",
        "group": "Z2",
        "f": {"a": 1, "b": [0, -1]},
        "p": 4,
        "seed": 5
    })";
    const DispatchResult first = dispatch_request(req);
    const DispatchResult second = dispatch_request(req);
    REQUIRE(first.status == 0);
    CHECK(first.body == second.body);
    const json body = json::parse(first.body);
    CHECK(body["seed"] == 5);
    CHECK(body["outputs"]["lower_bound"].get<double>() ==
          doctest::Approx(1.189207115002721).epsilon(1e-6));
}

TEST_CASE("dispatcher runs census and acting commands") {
    const DispatchResult census = dispatch_request(R"({
        "command": "dyn-census",
        "word": "ab",
        "depth": 8
    })");
    REQUIRE(census.status == 0);
    const json body = json::parse(census.body);
    CHECK(body["outputs"]["word_count"] == 32);
    CHECK(body["outputs"]["fixed_count"] == 2);
    CHECK(body["outputs"]["fraction"].get<double>() ==
          doctest::Approx(0.0625).epsilon(1e-15));

    const DispatchResult act = dispatch_request(R"({
        "command": "dyn-act",
        "word": "b",
        "point": "bab"
    })");
    REQUIRE(act.status == 0);
    const json out = json::parse(act.body)["outputs"];
    CHECK(out["output"]["letters"][0] == "b2");
    CHECK(out["output"]["depth"] == 3);
}

}  // TEST_SUITE
