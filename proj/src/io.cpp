#include "lpa/io.hpp"

#include <cmath>

namespace lpa {

namespace {

[[noreturn]] void bad(const std::string& message) {
    throw Error(ErrorKind::InvalidArgument, message);
}

double expect_number(const json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

const json& expect_array(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    return j;
}

std::size_t expect_index(const json& j, const char* what) {
    if (!j.is_number_unsigned()) {
        bad(std::string(what) + " must be a nonnegative integer");
    }
    return j.get<std::size_t>();
}

}  // namespace

cx parse_complex(const json& j) {
    if (j.is_number()) return cx(j.get<double>(), 0.0);
    if (j.is_array() && (j.size() == 1 || j.size() == 2)) {
        const double re = expect_number(j[0], "real part");
        const double im = j.size() == 2 ? expect_number(j[1], "imaginary part")
                                        : 0.0;
        return cx(re, im);
    }
    bad("complex values must be numbers or [re, im] pairs");
}

Exponent parse_exponent(const json& j) {
    const double p = expect_number(j, "exponent");
    if (!(p >= 1.0) || !std::isfinite(p)) {
        bad("exponent must be a finite number at least 1");
    }
    return Exponent(p);
}

WeightedSpace parse_space(const json& j, std::size_t dim) {
    const json& arr = expect_array(j, "weights");
    if (arr.size() != dim) bad("weight count does not match dimension");
    WeightedSpace space;
    for (const json& w : arr) {
        const double value = expect_number(w, "weight");
        if (!(value > 0.0) || !std::isfinite(value)) {
            bad("weights must be positive");
        }
        space.weights.push_back(value);
    }
    return space;
}

Operator parse_operator(const json& j) {
    if (!j.is_object() || !j.contains("rows")) {
        bad("operators must be objects with a \"rows\" field");
    }
    const json& rows = expect_array(j["rows"], "rows");
    if (rows.empty()) bad("operator needs at least one row");
    const std::size_t m = rows.size();
    const std::size_t n = expect_array(rows[0], "row").size();
    if (n == 0) bad("operator needs at least one column");

    WeightedSpace domain = j.contains("weights")
                               ? parse_space(j["weights"], n)
                               : WeightedSpace::unit(n);
    WeightedSpace codomain;
    if (j.contains("codomain_weights")) {
        codomain = parse_space(j["codomain_weights"], m);
    } else if (m == n) {
        codomain = domain;
    } else {
        codomain = WeightedSpace::unit(m);
    }

    Operator a = Operator::zero(domain, codomain);
    for (std::size_t i = 0; i < m; ++i) {
        const json& row = expect_array(rows[i], "row");
        if (row.size() != n) bad("operator rows must have equal length");
        for (std::size_t k = 0; k < n; ++k) {
            a.at(i, k) = parse_complex(row[k]);
        }
    }
    return a;
}

Vec parse_vec(const json& j) {
    const json& entries = j.is_object() && j.contains("entries")
                              ? expect_array(j["entries"], "entries")
                              : expect_array(j, "vector");
    if (entries.empty()) bad("vector needs at least one entry");
    Vec v;
    for (const json& e : entries) v.entries.push_back(parse_complex(e));
    v.space = (j.is_object() && j.contains("weights"))
                  ? parse_space(j["weights"], v.entries.size())
                  : WeightedSpace::unit(v.entries.size());
    return v;
}

namespace {

FiniteGroup parse_group_name(const std::string& name) {
    const auto parse_atom = [](const std::string& atom) -> FiniteGroup {
        if (atom == "S3" || atom == "s3") return FiniteGroup::symmetric3();
        if ((atom.size() > 1) && (atom[0] == 'Z' || atom[0] == 'z')) {
            std::size_t n = 0;
            for (std::size_t k = 1; k < atom.size(); ++k) {
                if (atom[k] < '0' || atom[k] > '9') {
                    bad("unknown group name: " + atom);
                }
                n = 10 * n + static_cast<std::size_t>(atom[k] - '0');
            }
            if (n == 0 || n > 64) bad("cyclic order out of range: " + atom);
            return FiniteGroup::cyclic(n);
        }
        bad("unknown group name: " + atom);
    };
    std::vector<FiniteGroup> factors;
    std::string current;
    for (char c : name) {
        if (c == 'x' || c == 'X') {
            factors.push_back(parse_atom(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    factors.push_back(parse_atom(current));
    FiniteGroup g = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        g = FiniteGroup::product(g, factors[k]);
    }
    return g;
}

}  // namespace

FiniteGroup parse_group(const json& j) {
    if (j.is_string()) {
        FiniteGroup g = parse_group_name(j.get<std::string>());
        validate_group(g);
        return g;
    }
    if (!j.is_object() || !j.contains("table")) {
        bad("groups must be names or objects with a \"table\" field");
    }
    FiniteGroup g;
    const json& table = expect_array(j["table"], "table");
    const std::size_t n = table.size();
    for (const json& row : table) {
        const json& r = expect_array(row, "table row");
        if (r.size() != n) bad("group table must be square");
        std::vector<std::size_t> out;
        for (const json& e : r) out.push_back(expect_index(e, "table entry"));
        g.table.push_back(std::move(out));
    }
    if (j.contains("elements")) {
        const json& names = expect_array(j["elements"], "elements");
        if (names.size() != n) bad("element count must match the table");
        for (const json& e : names) {
            if (!e.is_string()) bad("element names must be strings");
            g.elements.push_back(e.get<std::string>());
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            g.elements.push_back("g" + std::to_string(k));
        }
    }
    if (j.contains("identity")) {
        g.identity = expect_index(j["identity"], "identity");
    } else {
        bool found = false;
        for (std::size_t a = 0; a < n && !found; ++a) {
            bool ok = true;
            for (std::size_t b = 0; b < n; ++b) {
                if (g.table[a][b] != b || g.table[b][a] != b) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g.identity = a;
                found = true;
            }
        }
        if (!found) bad("group table has no identity element");
    }
    validate_group(g);
    return g;
}

GroupFunction parse_group_function(const FiniteGroup& g, const json& j) {
    if (j.is_object() && j.contains("a") && j.contains("b")) {
        if (g.order() != 2) {
            bad("spectrum form (a, b) only applies to the order-two group");
        }
        const cx a = parse_complex(j["a"]);
        const cx b = parse_complex(j["b"]);
        return GroupFunction{g, {(a + b) / 2.0, (a - b) / 2.0}};
    }
    const json& values = j.is_object() && j.contains("values")
                             ? expect_array(j["values"], "values")
                             : expect_array(j, "group function");
    if (values.size() != g.order()) {
        bad("group function must list one value per element");
    }
    GroupFunction f{g, {}};
    for (const json& v : values) f.values.push_back(parse_complex(v));
    return f;
}

FiniteAction parse_action(const json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("act")) {
        bad("actions must carry \"group\", \"points\" and \"act\"");
    }
    FiniteAction a;
    a.group = parse_group(j["group"]);
    if (j.contains("points")) {
        const json& pts = j["points"];
        if (pts.is_array()) {
            a.point_count = pts.size();
        } else {
            a.point_count = expect_index(pts, "points");
        }
    }
    const json& act = expect_array(j["act"], "act");
    if (a.point_count == 0 && !act.empty()) {
        a.point_count = expect_array(act[0], "act row").size();
    }
    for (const json& row : act) {
        const json& r = expect_array(row, "act row");
        std::vector<std::size_t> out;
        for (const json& e : r) out.push_back(expect_index(e, "act entry"));
        a.act.push_back(std::move(out));
    }
    validate_action(a);
    return a;
}

std::vector<std::vector<cx>> parse_crossed_values(const FiniteAction& a,
                                                  const json& j) {
    const json& values = j.is_object() && j.contains("values")
                             ? expect_array(j["values"], "values")
                             : expect_array(j, "crossed element");
    if (values.size() != a.group.order()) {
        bad("crossed element must list one row per group element");
    }
    std::vector<std::vector<cx>> out;
    for (const json& row : values) {
        const json& r = expect_array(row, "crossed element row");
        if (r.size() != a.point_count) {
            bad("crossed element rows must cover every point");
        }
        std::vector<cx> vals;
        for (const json& e : r) vals.push_back(parse_complex(e));
        out.push_back(std::move(vals));
    }
    return out;
}

DirectedGraph parse_graph(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        bad("graphs must carry \"vertices\" and \"edges\"");
    }
    DirectedGraph q;
    const json& vertices = j["vertices"];
    if (vertices.is_array()) {
        q.vertex_count = vertices.size();
        for (const json& v : vertices) {
            if (!v.is_string()) bad("vertex names must be strings");
            q.vertex_names.push_back(v.get<std::string>());
        }
    } else {
        q.vertex_count = expect_index(vertices, "vertices");
    }
    const auto resolve = [&](const json& v, const char* what) -> std::size_t {
        if (v.is_string()) {
            const std::string name = v.get<std::string>();
            for (std::size_t k = 0; k < q.vertex_names.size(); ++k) {
                if (q.vertex_names[k] == name) return k;
            }
            bad(std::string(what) + " names unknown vertex " + name);
        }
        return expect_index(v, what);
    };
    for (const json& e : expect_array(j["edges"], "edges")) {
        if (!e.is_object() || !e.contains("d") || !e.contains("r")) {
            bad("edges must be objects with \"d\" and \"r\"");
        }
        q.edges.emplace_back(resolve(e["d"], "edge domain"),
                             resolve(e["r"], "edge range"));
    }
    validate_graph(q);
    return q;
}

GraphAssignment parse_assignment(const json& j) {
    if (!j.is_object() || !j.contains("vertex_ops") ||
        !j.contains("edge_ops")) {
        bad("assignments must carry \"vertex_ops\" and \"edge_ops\"");
    }
    GraphAssignment assignment;
    for (const json& v : expect_array(j["vertex_ops"], "vertex_ops")) {
        assignment.vertex_ops.push_back(parse_operator(v));
    }
    for (const json& e : expect_array(j["edge_ops"], "edge_ops")) {
        if (!e.is_object() || !e.contains("s") || !e.contains("t")) {
            bad("edge operators must be objects with \"s\" and \"t\"");
        }
        assignment.edge_ops.push_back(
            GraphEdgeOps{parse_operator(e["s"]), parse_operator(e["t"])});
    }
    return assignment;
}

AlternatingWord parse_alternating_word(const json& j) {
    AlternatingWord x;
    if (j.is_string()) {
        x.letters = parse_cantor_word(j.get<std::string>());
    } else {
        const json& letters = j.is_object() && j.contains("letters")
                                  ? expect_array(j["letters"], "letters")
                                  : expect_array(j, "word");
        for (const json& l : letters) {
            if (!l.is_string()) bad("letters must be strings");
            const std::string s = l.get<std::string>();
            if (s == "a") {
                x.letters.push_back(CantorLetter::A);
            } else if (s == "b") {
                x.letters.push_back(CantorLetter::B);
            } else if (s == "b2" || s == "b^2") {
                x.letters.push_back(CantorLetter::B2);
            } else {
                bad("unknown letter: " + s);
            }
        }
    }
    validate_alternating(x);
    return x;
}

HomCandidate parse_hom_candidate(const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
        !j.contains("images")) {
        bad("hom candidates carry \"source\", \"target\" and \"images\"");
    }
    HomCandidate h;
    h.source = parse_group(j["source"]);
    h.target = parse_group(j["target"]);
    for (const json& m : expect_array(j["images"], "images")) {
        h.images.push_back(parse_operator(m));
    }
    return h;
}

json complex_json(cx v) { return json::array({v.real(), v.imag()}); }

json vec_json(const Vec& v) {
    json out = json::array();
    for (const cx& e : v.entries) out.push_back(complex_json(e));
    return out;
}

json complex_list_json(const std::vector<cx>& values) {
    json out = json::array();
    for (const cx& e : values) out.push_back(complex_json(e));
    return out;
}

json operator_json(const Operator& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.codomain.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < a.domain.dim(); ++k) {
            row.push_back(complex_json(a.at(i, k)));
        }
        rows.push_back(std::move(row));
    }
    json out;
    out["rows"] = std::move(rows);
    const auto unit = [](const WeightedSpace& s) {
        for (double w : s.weights) {
            if (w != 1.0) return false;
        }
        return true;
    };
    if (!unit(a.domain)) out["weights"] = a.domain.weights;
    if (!unit(a.codomain) && a.codomain.weights != a.domain.weights) {
        out["codomain_weights"] = a.codomain.weights;
    }
    return out;
}

json estimate_json(const NormEstimate& est, bool include_witness) {
    json out;
    out["lower_bound"] = est.lower_bound;
    out["certified"] = est.certified;
    if (est.upper_bound) {
        out["upper_bound"] = *est.upper_bound;
        out["certification_gap"] = est.certification_gap;
    }
    out["iterations"] = est.iterations;
    out["starts"] = est.starts;
    if (include_witness) out["witness"] = vec_json(est.witness);
    return out;
}

json alternating_word_json(const AlternatingWord& x) {
    json letters = json::array();
    for (CantorLetter l : x.letters) {
        letters.push_back(l == CantorLetter::A
                              ? "a"
                              : (l == CantorLetter::B ? "b" : "b2"));
    }
    json out;
    out["letters"] = std::move(letters);
    out["depth"] = x.depth();
    return out;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

}  // namespace lpa
