#include <cstdio>
#include <string>

#include "lpa/io.hpp"
#include "lpa/suite.hpp"

namespace lpa {

namespace {

struct UnknownCommand {
    std::string name;
};

const json& field(const json& req, const char* key) {
    if (!req.contains(key)) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string("missing field \"") + key + '"');
    }
    return req[key];
}

SearchConfig make_config(const json& req, std::uint64_t seed) {
    SearchConfig cfg;
    cfg.rng_seed = seed;
    if (req.contains("starts")) {
        cfg.starts = req["starts"].get<std::size_t>();
    }
    cfg.validate();
    return cfg;
}

std::string digest_hex(const json& req) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(req.dump())));
    return std::string(buf);
}

json handle_opnorm(const json& req, std::uint64_t seed) {
    const Operator a = parse_operator(field(req, "matrix"));
    const Exponent p = parse_exponent(field(req, "p"));
    const SearchConfig cfg = make_config(req, seed);
    const NormEstimate est = req.value("certify", false)
                                 ? opnorm_oracle(a, p, cfg.grid_resolution)
                                 : opnorm(a, p, cfg);
    return estimate_json(est);
}

json handle_lamperti_decompose(const json& req, std::uint64_t seed) {
    const Operator a = parse_operator(field(req, "matrix"));
    const Exponent p = parse_exponent(field(req, "p"));
    const double tol = req.value("tol", 1e-6);
    const SpatialIsometry si =
        lamperti_decompose(a, p, tol, make_config(req, seed));
    json out;
    out["perm"] = si.perm;
    out["phases"] = complex_list_json(si.phases);
    out["weights"] = si.space.weights;
    return out;
}

json handle_lamperti_classify(const json& req, std::uint64_t) {
    const Operator a = parse_operator(field(req, "matrix"));
    const Exponent p = parse_exponent(field(req, "p"));
    const double tol = req.value("tol", 1e-6);
    const ClassifyResult r = classify_spatial(a, p, tol);
    json out;
    out["spatial"] = r.spatial;
    if (r.quadruple) {
        json q;
        q["domain_set"] = r.quadruple->domain_set;
        q["range_set"] = r.quadruple->range_set;
        q["bijection"] = r.quadruple->bijection;
        q["phases"] = complex_list_json(r.quadruple->phases);
        out["quadruple"] = std::move(q);
    } else {
        out["reason"] = r.reason;
        out["offending_row"] = r.offending_row;
        out["offending_column"] = r.offending_column;
    }
    return out;
}

json handle_group_norm(const json& req, std::uint64_t seed) {
    const FiniteGroup g = parse_group(field(req, "group"));
    const GroupFunction f = parse_group_function(g, field(req, "f"));
    const Exponent p = parse_exponent(field(req, "p"));
    return estimate_json(fp_lambda_norm(f, p, make_config(req, seed)));
}

json handle_group_verify_isom(const json& req, std::uint64_t seed) {
    const FiniteGroup g = parse_group(field(req, "group"));
    const Exponent p = parse_exponent(field(req, "p"));
    const std::size_t trials = req.value("trials", std::size_t{100});
    const double tol = req.value("tol", 1e-6);
    const double floor = req.value("distance_floor", 0.1);
    const IsomVerifyReport r =
        isom_group_verify(g, p, trials, make_config(req, seed), tol, floor);
    json out;
    out["phase_count"] = r.phase_count;
    out["translations_checked"] = r.translations_checked;
    out["all_translations_pass"] = r.all_translations_pass;
    out["translation_failures"] = r.translation_failures;
    out["trials"] = r.trials;
    out["resamples"] = r.resamples;
    out["all_random_fail"] = r.all_random_fail;
    out["random_violations"] = r.random_violations;
    out["distance_floor"] = r.distance_floor;
    out["pass"] = r.all_translations_pass && r.all_random_fail;
    return out;
}

json handle_group_hom(const json& req, std::uint64_t) {
    const HomCandidate h = parse_hom_candidate(field(req, "hom"));
    const Exponent p = parse_exponent(field(req, "p"));
    const double tol = req.value("tol", 1e-6);
    const HomDecomposition d = hom_decompose(h, p, tol);
    json out;
    out["theta"] = d.theta;
    out["gamma"] = complex_list_json(d.gamma);
    out["injective"] = d.injective;
    return out;
}

json handle_cuntz_rep(const json& req, std::uint64_t seed) {
    const std::size_t n = req.value("n", std::size_t{2});
    const long radius = field(req, "window").get<long>();
    const Exponent p = parse_exponent(field(req, "p"));
    const TruncatedRep rep = truncated_cuntz_rep(n, radius, p);
    json out;
    out["n"] = rep.n;
    out["radius"] = rep.radius;
    out["dim"] = rep.dim();
    if (!req.value("check", true)) return out;

    const CuntzRelationReport rr = cuntz_relation_check(rep);
    out["interior_count"] = rr.interior_count;
    out["interior"] = rr.interior;
    out["relations_hold"] = rr.relations_hold;
    out["violations"] = rr.violations;
    const SearchConfig cfg = make_config(req, seed);
    json s_norms = json::array();
    json t_norms = json::array();
    for (std::size_t j = 1; j <= n; ++j) {
        s_norms.push_back(
            opnorm(rep_generator(rep, LetterKind::S, j), p, cfg).lower_bound);
        t_norms.push_back(
            opnorm(rep_generator(rep, LetterKind::T, j), p, cfg).lower_bound);
    }
    json norms;
    norms["s"] = std::move(s_norms);
    norms["t"] = std::move(t_norms);
    out["generator_norms"] = std::move(norms);
    return out;
}

json handle_cuntz_graph(const json& req, std::uint64_t) {
    const DirectedGraph q = parse_graph(field(req, "graph"));
    const GraphAssignment assignment = parse_assignment(field(req, "assignment"));
    const double tol = req.value("tol", 1e-10);
    const GraphRelationReport r = graph_relation_check(q, assignment, tol);
    json out;
    out["all_pass"] = r.all_pass;
    out["max_deviation"] = r.max_deviation;
    out["violations"] = r.violations;
    out["exempt_vertices"] = r.exempt_vertices;
    out["unit_partition"] = r.unit_partition;
    out["span_dimension"] = r.span_dimension;
    return out;
}

json handle_dyn_act(const json& req, std::uint64_t) {
    const json& word_field = field(req, "word");
    if (!word_field.is_string()) {
        throw Error(ErrorKind::InvalidArgument, "\"word\" must be a string");
    }
    const std::vector<CantorLetter> word =
        parse_cantor_word(word_field.get<std::string>());
    const AlternatingWord point = parse_alternating_word(field(req, "point"));
    const AlternatingWord image = cantor_act_word(word, point);
    json out;
    out["word"] = cantor_word_to_string(word);
    out["input"] = alternating_word_json(point);
    out["output"] = alternating_word_json(image);
    return out;
}

json handle_dyn_order_check(const json& req, std::uint64_t) {
    const OrderCheckReport r =
        order_check(field(req, "depth").get<std::size_t>());
    json out;
    out["depth"] = r.depth;
    out["word_count"] = r.word_count;
    out["a_squared_identity"] = r.a_squared_identity;
    out["b_cubed_identity"] = r.b_cubed_identity;
    out["min_prefix_a"] = r.min_prefix_a;
    out["min_prefix_b"] = r.min_prefix_b;
    out["pass"] = r.a_squared_identity && r.b_cubed_identity;
    return out;
}

json handle_dyn_census(const json& req, std::uint64_t) {
    const json& word_field = field(req, "word");
    if (!word_field.is_string()) {
        throw Error(ErrorKind::InvalidArgument, "\"word\" must be a string");
    }
    const std::vector<CantorLetter> word =
        parse_cantor_word(word_field.get<std::string>());
    const CensusResult r =
        fixed_point_census(word, field(req, "depth").get<std::size_t>());
    json out;
    out["word"] = cantor_word_to_string(word);
    out["depth"] = field(req, "depth").get<std::size_t>();
    out["word_count"] = r.word_count;
    out["fixed_count"] = r.fixed_count;
    out["truncated_count"] = r.truncated_count;
    out["fraction"] = r.fraction;
    return out;
}

json handle_dyn_crossed_norm(const json& req, std::uint64_t seed) {
    const FiniteAction action = parse_action(field(req, "action"));
    CrossedElement f{action, parse_crossed_values(action, field(req, "f"))};
    validate_crossed(f);
    const Exponent p = parse_exponent(field(req, "p"));
    return estimate_json(reduced_norm(f, p, make_config(req, seed)),
                         /*include_witness=*/false);
}

json handle_dyn_coe(const json& req, std::uint64_t) {
    const json& data = field(req, "data");
    const FiniteAction sigma = parse_action(field(data, "sigma"));
    const FiniteAction rho = parse_action(field(data, "rho"));
    CoeData coe;
    coe.theta = field(data, "theta").get<std::vector<std::size_t>>();
    coe.c_h =
        field(data, "c_h").get<std::vector<std::vector<std::size_t>>>();
    coe.c_g =
        field(data, "c_g").get<std::vector<std::vector<std::size_t>>>();
    const CoeReport r = coe_verify(coe, sigma, rho);
    json out;
    out["pass"] = r.pass;
    out["violations"] = r.violations;
    return out;
}

json handle_suite(const json& req, std::uint64_t seed) {
    const json& name_field = field(req, "name");
    if (!name_field.is_string()) {
        throw Error(ErrorKind::InvalidArgument, "\"name\" must be a string");
    }
    const std::string name = name_field.get<std::string>();
    const std::optional<int> id = criterion_id(name);
    if (!id) throw UnknownCommand{"suite " + name};
    json options = json::object();
    if (req.contains("depth")) options["depth"] = req["depth"];
    std::vector<int> ids;
    if (*id != 0) ids.push_back(*id);
    return suite_report_json(run_suite(std::move(ids), seed, options));
}

json route(const std::string& command, const json& req, std::uint64_t seed) {
    if (command == "opnorm") return handle_opnorm(req, seed);
    if (command == "lamperti-decompose") {
        return handle_lamperti_decompose(req, seed);
    }
    if (command == "lamperti-classify") {
        return handle_lamperti_classify(req, seed);
    }
    if (command == "group-norm") return handle_group_norm(req, seed);
    if (command == "group-verify-isom") {
        return handle_group_verify_isom(req, seed);
    }
    if (command == "group-hom") return handle_group_hom(req, seed);
    if (command == "cuntz-rep") return handle_cuntz_rep(req, seed);
    if (command == "cuntz-graph") return handle_cuntz_graph(req, seed);
    if (command == "dyn-act") return handle_dyn_act(req, seed);
    if (command == "dyn-order-check") return handle_dyn_order_check(req, seed);
    if (command == "dyn-census") return handle_dyn_census(req, seed);
    if (command == "dyn-crossed-norm") {
        return handle_dyn_crossed_norm(req, seed);
    }
    if (command == "dyn-coe") return handle_dyn_coe(req, seed);
    if (command == "suite") return handle_suite(req, seed);
    throw UnknownCommand{command};
}

std::string error_body(const std::string& command, const std::string& kind,
                       const std::string& message) {
    json body;
    body["command"] = command;
    json err;
    err["kind"] = kind;
    err["message"] = message;
    body["error"] = std::move(err);
    return body.dump(2) + "\n";
}

}  // namespace

DispatchResult dispatch_request(const std::string& request_text) {
    std::string command = "?";
    try {
        const json req = json::parse(request_text);
        if (!req.is_object() || !req.contains("command") ||
            !req["command"].is_string()) {
            throw Error(ErrorKind::InvalidArgument,
                        "requests are objects with a \"command\" string");
        }
        command = req["command"].get<std::string>();
        const std::uint64_t seed = req.value("seed", std::uint64_t{0});
        json outputs = route(command, req, seed);
        json body;
        body["command"] = command;
        body["seed"] = seed;
        body["inputs_digest"] = digest_hex(req);
        body["outputs"] = std::move(outputs);
        return DispatchResult{0, body.dump(2) + "\n"};
    } catch (const UnknownCommand& u) {
        return DispatchResult{
            64, error_body(command, "UnknownCommand",
                           "unknown command: " + u.name)};
    } catch (const Error& e) {
        const int status = is_scope_error(e.kind) ? 3 : 2;
        return DispatchResult{
            status, error_body(command, error_kind_name(e.kind), e.what())};
    } catch (const json::exception& e) {
        return DispatchResult{2,
                              error_body(command, "InvalidArgument", e.what())};
    } catch (const std::exception& e) {
        return DispatchResult{2,
                              error_body(command, "InternalError", e.what())};
    }
}

}  // namespace lpa
