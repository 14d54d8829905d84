#include "lpa/cuntz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>

#include "lpa/lamperti.hpp"
#include "lpa/rng.hpp"

namespace lpa {

namespace {

void validate_combination(const LeavittCombination& expr) {
    if (expr.empty()) return;
    const std::size_t n = expr.front().n;
    if (n < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "Leavitt algebra needs at least two generators");
    }
    for (const LeavittWord& w : expr) {
        if (w.n != n) {
            throw Error(ErrorKind::ArityMismatch,
                        "words from different Leavitt algebras cannot mix");
        }
        for (const LeavittLetter& l : w.letters) {
            if (l.index == 0 || l.index > n) {
                throw Error(ErrorKind::InvalidArgument,
                            "letter index out of range");
            }
        }
    }
}

// Applies t_j s_k -> delta_{jk} until no t precedes an s.  Returns false
// when the word collapses to zero.
bool contract_ts(LeavittWord& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
            if (w.letters[i].kind == LetterKind::T &&
                w.letters[i + 1].kind == LetterKind::S) {
                if (w.letters[i].index != w.letters[i + 1].index) return false;
                w.letters.erase(w.letters.begin() +
                                    static_cast<std::ptrdiff_t>(i),
                                w.letters.begin() +
                                    static_cast<std::ptrdiff_t>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    return true;
}

std::string word_key(const LeavittWord& w) {
    std::string key;
    for (const LeavittLetter& l : w.letters) {
        key.push_back(l.kind == LetterKind::S ? 'a' : 'b');
        char buf[16];
        std::snprintf(buf, sizeof buf, "%05zu", l.index);
        key += buf;
    }
    return key;
}

}  // namespace

LeavittCombination leavitt_multiply(const LeavittCombination& a,
                                    const LeavittCombination& b) {
    validate_combination(a);
    validate_combination(b);
    if (!a.empty() && !b.empty() && a.front().n != b.front().n) {
        throw Error(ErrorKind::ArityMismatch,
                    "words from different Leavitt algebras cannot mix");
    }
    LeavittCombination out;
    for (const LeavittWord& wa : a) {
        for (const LeavittWord& wb : b) {
            LeavittWord w;
            w.n = wa.n;
            w.letters = wa.letters;
            w.letters.insert(w.letters.end(), wb.letters.begin(),
                             wb.letters.end());
            w.coefficient = wa.coefficient * wb.coefficient;
            out.push_back(std::move(w));
        }
    }
    return out;
}

LeavittCombination leavitt_normal_form(const LeavittCombination& expr) {
    validate_combination(expr);
    std::deque<LeavittWord> work(expr.begin(), expr.end());
    std::map<std::string, LeavittWord> merged;

    while (!work.empty()) {
        LeavittWord w = std::move(work.front());
        work.pop_front();
        if (!contract_ts(w)) continue;

        // Words are now s_mu t_nu; rewrite an s_n t_n junction.
        std::size_t s_count = 0;
        while (s_count < w.letters.size() &&
               w.letters[s_count].kind == LetterKind::S) {
            ++s_count;
        }
        const bool junction = s_count > 0 && s_count < w.letters.size() &&
                              w.letters[s_count - 1].index == w.n &&
                              w.letters[s_count].index == w.n;
        if (junction) {
            LeavittWord base = w;
            base.letters.erase(base.letters.begin() +
                                   static_cast<std::ptrdiff_t>(s_count) - 1,
                               base.letters.begin() +
                                   static_cast<std::ptrdiff_t>(s_count) + 1);
            work.push_back(std::move(base));
            for (std::size_t j = 1; j < w.n; ++j) {
                LeavittWord alt = w;
                alt.letters[s_count - 1].index = j;
                alt.letters[s_count].index = j;
                alt.coefficient = -w.coefficient;
                work.push_back(std::move(alt));
            }
            continue;
        }

        const std::string key = word_key(w);
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, std::move(w));
        } else {
            it->second.coefficient += w.coefficient;
        }
    }

    std::vector<std::pair<std::string, LeavittWord>> items(merged.begin(),
                                                           merged.end());
    std::sort(items.begin(), items.end(),
              [](const auto& lhs, const auto& rhs) {
                  if (lhs.second.letters.size() != rhs.second.letters.size()) {
                      return lhs.second.letters.size() <
                             rhs.second.letters.size();
                  }
                  return lhs.first < rhs.first;
              });
    LeavittCombination out;
    for (auto& item : items) {
        if (item.second.coefficient != cx(0.0, 0.0)) {
            out.push_back(std::move(item.second));
        }
    }
    return out;
}

std::string leavitt_to_string(const LeavittCombination& expr) {
    if (expr.empty()) return "0";
    std::string text;
    for (std::size_t k = 0; k < expr.size(); ++k) {
        const LeavittWord& w = expr[k];
        if (k > 0) text += " + ";
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%g,%g)", w.coefficient.real(),
                      w.coefficient.imag());
        text += buf;
        if (w.letters.empty()) {
            text += "*1";
            continue;
        }
        for (const LeavittLetter& l : w.letters) {
            std::snprintf(buf, sizeof buf, "*%c%zu",
                          l.kind == LetterKind::S ? 's' : 't', l.index);
            text += buf;
        }
    }
    return text;
}

TruncatedRep truncated_cuntz_rep(std::size_t n, long radius, Exponent p) {
    if (n < 2) {
        throw Error(ErrorKind::InvalidArgument, "need at least two isometries");
    }
    if (radius < static_cast<long>(n)) {
        throw Error(ErrorKind::InvalidArgument,
                    "window radius must be at least the generator count");
    }
    TruncatedRep rep;
    rep.n = n;
    rep.radius = radius;
    rep.p = p;
    rep.s_map.assign(n, std::vector<long>(rep.dim(), TruncatedRep::kTruncated));
    rep.t_map.assign(n, std::vector<long>(rep.dim(), TruncatedRep::kTruncated));
    const long ln = static_cast<long>(n);
    for (long j = 1; j <= ln; ++j) {
        for (long m = -radius; m <= radius; ++m) {
            const long s_img = ln * m + j;
            rep.s_map[static_cast<std::size_t>(j - 1)][rep.pos(m)] =
                (std::labs(s_img) <= radius) ? s_img : TruncatedRep::kTruncated;
            long t_img;
            if ((m - j) % ln != 0) {
                t_img = TruncatedRep::kKernel;
            } else {
                const long q = (m - j) / ln;
                t_img = (std::labs(q) <= radius) ? q : TruncatedRep::kTruncated;
            }
            rep.t_map[static_cast<std::size_t>(j - 1)][rep.pos(m)] = t_img;
        }
    }
    return rep;
}

Operator rep_generator(const TruncatedRep& rep, LetterKind kind,
                       std::size_t index) {
    if (index == 0 || index > rep.n) {
        throw Error(ErrorKind::InvalidArgument, "generator index out of range");
    }
    const auto& map =
        (kind == LetterKind::S) ? rep.s_map[index - 1] : rep.t_map[index - 1];
    const WeightedSpace space = WeightedSpace::unit(rep.dim());
    Operator out = Operator::zero(space, space);
    for (long m = -rep.radius; m <= rep.radius; ++m) {
        const long img = map[rep.pos(m)];
        if (img != TruncatedRep::kTruncated && img != TruncatedRep::kKernel) {
            out.at(rep.pos(img), rep.pos(m)) = cx(1.0, 0.0);
        }
    }
    return out;
}

std::vector<long> rep_interior(const TruncatedRep& rep) {
    const long ln = static_cast<long>(rep.n);
    const long radius = rep.radius;

    // Evaluates one generator on the untruncated lattice; false when the
    // image is zero rather than out of range.
    const auto step = [&](LetterKind kind, long j, long m, long* out) {
        if (kind == LetterKind::S) {
            *out = ln * m + j;
            return true;
        }
        if ((m - j) % ln != 0) return false;
        *out = (m - j) / ln;
        return true;
    };

    std::vector<long> interior;
    for (long m = -radius; m <= radius; ++m) {
        bool ok = true;
        for (int first = 0; first < 2 && ok; ++first) {
            const LetterKind k1 = first == 0 ? LetterKind::S : LetterKind::T;
            for (long j = 1; j <= ln && ok; ++j) {
                long v1;
                if (!step(k1, j, m, &v1)) continue;
                if (std::labs(v1) > radius) {
                    ok = false;
                    break;
                }
                for (int second = 0; second < 2 && ok; ++second) {
                    const LetterKind k2 =
                        second == 0 ? LetterKind::S : LetterKind::T;
                    for (long l = 1; l <= ln; ++l) {
                        long v2;
                        if (!step(k2, l, v1, &v2)) continue;
                        if (std::labs(v2) > radius) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
        }
        if (ok) interior.push_back(m);
    }
    return interior;
}

CuntzRelationReport cuntz_relation_check(const TruncatedRep& rep) {
    CuntzRelationReport report;
    report.interior = rep_interior(rep);
    report.interior_count = report.interior.size();

    const auto apply = [&](LetterKind kind, std::size_t j, long m) -> long {
        const auto& map =
            (kind == LetterKind::S) ? rep.s_map[j - 1] : rep.t_map[j - 1];
        return map[rep.pos(m)];
    };
    const auto real_index = [](long v) {
        return v != TruncatedRep::kTruncated && v != TruncatedRep::kKernel;
    };
    char msg[128];

    for (long m : report.interior) {
        for (std::size_t k = 1; k <= rep.n; ++k) {
            const long mid = apply(LetterKind::S, k, m);
            if (!real_index(mid)) {
                std::snprintf(msg, sizeof msg,
                              "s_%zu undefined at interior index %ld", k, m);
                report.violations.emplace_back(msg);
                continue;
            }
            for (std::size_t j = 1; j <= rep.n; ++j) {
                const long res = apply(LetterKind::T, j, mid);
                if (j == k) {
                    if (res != m) {
                        std::snprintf(msg, sizeof msg,
                                      "t_%zu s_%zu e_%ld != e_%ld", j, k, m, m);
                        report.violations.emplace_back(msg);
                    }
                } else if (res != TruncatedRep::kKernel) {
                    std::snprintf(msg, sizeof msg,
                                  "t_%zu s_%zu e_%ld is not zero", j, k, m);
                    report.violations.emplace_back(msg);
                }
            }
        }

        std::size_t contributions = 0;
        for (std::size_t j = 1; j <= rep.n; ++j) {
            const long down = apply(LetterKind::T, j, m);
            if (down == TruncatedRep::kKernel) continue;
            if (!real_index(down)) {
                std::snprintf(msg, sizeof msg,
                              "t_%zu truncated at interior index %ld", j, m);
                report.violations.emplace_back(msg);
                continue;
            }
            const long up = apply(LetterKind::S, j, down);
            if (up != m) {
                std::snprintf(msg, sizeof msg,
                              "s_%zu t_%zu e_%ld != e_%ld", j, j, m, m);
                report.violations.emplace_back(msg);
                continue;
            }
            ++contributions;
        }
        if (contributions != 1) {
            std::snprintf(msg, sizeof msg,
                          "sum_j s_j t_j e_%ld has %zu contributions", m,
                          contributions);
            report.violations.emplace_back(msg);
        }
    }
    report.relations_hold = report.violations.empty();
    return report;
}

SpatialSystemVerdict spatial_matrix_system_check(
    const std::vector<std::vector<Operator>>& images, Exponent p,
    const SearchConfig& cfg, double tol, std::size_t samples) {
    const std::size_t n = images.size();
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "empty matrix-unit system");
    }
    for (const auto& row : images) {
        if (row.size() != n) {
            throw Error(ErrorKind::DimensionMismatch,
                        "matrix-unit system must be square");
        }
    }
    const WeightedSpace space = images[0][0].domain;
    for (const auto& row : images) {
        for (const Operator& m : row) {
            if (m.domain.weights != space.weights ||
                m.codomain.weights != space.weights) {
                throw Error(ErrorKind::DimensionMismatch,
                            "all images must act on one space");
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                for (std::size_t m = 0; m < n; ++m) {
                    const Operator prod = images[j][k].mul(images[l][m]);
                    const Operator expect = (k == l)
                                                ? images[j][m]
                                                : Operator::zero(space, space);
                    if (prod.sub(expect).max_abs() > tol) {
                        throw Error(ErrorKind::AlgebraRelation,
                                    "matrix-unit relation fails");
                    }
                }
            }
        }
    }
    Operator unit_sum = Operator::zero(space, space);
    for (std::size_t j = 0; j < n; ++j) unit_sum = unit_sum.add(images[j][j]);
    if (unit_sum.sub(Operator::identity(space)).max_abs() > tol) {
        throw Error(ErrorKind::AlgebraRelation,
                    "diagonal images do not sum to the identity");
    }

    SpatialSystemVerdict verdict;
    char msg[128];
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const ClassifyResult cls = classify_spatial(images[j][k], p);
            if (!cls.spatial) {
                std::snprintf(msg, sizeof msg,
                              "image (%zu,%zu) is not spatial: %s", j, k,
                              cls.reason.c_str());
                verdict.failure = msg;
                return verdict;
            }
            const PartialIsometryPair pair =
                build_spatial_partial_isometry(*cls.quadruple, p);
            if (pair.reverse.sub(images[k][j]).max_abs() > 10.0 * tol) {
                std::snprintf(msg, sizeof msg,
                              "reverse of image (%zu,%zu) is not image "
                              "(%zu,%zu)",
                              j, k, k, j);
                verdict.failure = msg;
                return verdict;
            }
        }
    }

    Rng rng = Rng(cfg.rng_seed).fork(0x6d61747269786eULL);
    const WeightedSpace small = WeightedSpace::unit(n);
    for (std::size_t trial = 0; trial < samples; ++trial) {
        Operator x = Operator::zero(small, small);
        Operator lifted = Operator::zero(space, space);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const cx c = rng.complex_normal();
                x.at(j, k) = c;
                lifted = lifted.add(images[j][k].scale(c));
            }
        }
        const double direct = opnorm(x, p, cfg).lower_bound;
        const double via_images = opnorm(lifted, p, cfg).lower_bound;
        const double err =
            std::abs(direct - via_images) / std::max(1.0, direct);
        verdict.worst_cross_error = std::max(verdict.worst_cross_error, err);
        ++verdict.samples;
        if (err > 1e-3) {
            std::snprintf(msg, sizeof msg,
                          "norm of a random combination deviates by %.3e",
                          err);
            verdict.failure = msg;
            return verdict;
        }
    }
    verdict.spatial = true;
    return verdict;
}

void validate_graph(const DirectedGraph& q) {
    if (q.vertex_count == 0) {
        throw Error(ErrorKind::InvalidArgument, "graph needs a vertex");
    }
    if (!q.vertex_names.empty() && q.vertex_names.size() != q.vertex_count) {
        throw Error(ErrorKind::InvalidArgument,
                    "vertex name count mismatch");
    }
    for (const auto& e : q.edges) {
        if (e.first >= q.vertex_count || e.second >= q.vertex_count) {
            throw Error(ErrorKind::InvalidArgument,
                        "edge endpoint out of range");
        }
    }
}

DirectedGraph line_graph(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "line_graph(0)");
    DirectedGraph q;
    q.vertex_count = n;
    for (std::size_t i = 0; i < n; ++i) {
        q.vertex_names.push_back("v" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) q.edges.emplace_back(i, i + 1);
    return q;
}

DirectedGraph loop_graph(std::size_t loops) {
    DirectedGraph q;
    q.vertex_count = 1;
    q.vertex_names.push_back("v");
    for (std::size_t i = 0; i < loops; ++i) q.edges.emplace_back(0, 0);
    return q;
}

GraphAssignment line_graph_matrix_assignment(std::size_t n) {
    const WeightedSpace space = WeightedSpace::unit(n);
    GraphAssignment assignment;
    for (std::size_t i = 0; i < n; ++i) {
        Operator e = Operator::zero(space, space);
        e.at(i, i) = cx(1.0, 0.0);
        assignment.vertex_ops.push_back(std::move(e));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Operator s = Operator::zero(space, space);
        Operator t = Operator::zero(space, space);
        s.at(i + 1, i) = cx(1.0, 0.0);
        t.at(i, i + 1) = cx(1.0, 0.0);
        assignment.edge_ops.push_back(GraphEdgeOps{std::move(s), std::move(t)});
    }
    return assignment;
}

namespace {

class SpanBasis {
  public:
    explicit SpanBasis(std::size_t length) : length_(length) {}

    bool add(const Operator& op) {
        std::vector<cx> v(length_);
        for (std::size_t k = 0; k < length_; ++k) v[k] = op.a[k];
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const cx factor = v[pivots_[r]];
            if (factor != cx(0.0, 0.0)) {
                for (std::size_t k = 0; k < length_; ++k) {
                    v[k] -= factor * rows_[r][k];
                }
            }
        }
        std::size_t pivot = 0;
        double best = 0.0;
        for (std::size_t k = 0; k < length_; ++k) {
            const double mag = std::abs(v[k]);
            if (mag > best) {
                best = mag;
                pivot = k;
            }
        }
        if (best <= 1e-9) return false;
        const cx inv = cx(1.0, 0.0) / v[pivot];
        for (auto& e : v) e *= inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

  private:
    std::size_t length_;
    std::vector<std::vector<cx>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace

GraphRelationReport graph_relation_check(
    const DirectedGraph& q, const GraphAssignment& assignment, double tol,
    const std::vector<std::size_t>& columns_mask, bool compute_span) {
    validate_graph(q);
    if (assignment.vertex_ops.size() != q.vertex_count ||
        assignment.edge_ops.size() != q.edges.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "assignment does not match the graph");
    }
    if (q.vertex_count == 0 || assignment.vertex_ops.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty assignment");
    }
    const WeightedSpace space = assignment.vertex_ops.front().domain;
    const std::size_t d = space.dim();
    const auto check_space = [&](const Operator& op) {
        if (op.domain.weights != space.weights ||
            op.codomain.weights != space.weights) {
            throw Error(ErrorKind::DimensionMismatch,
                        "all assigned operators must act on one space");
        }
    };
    for (const Operator& op : assignment.vertex_ops) check_space(op);
    for (const GraphEdgeOps& pair : assignment.edge_ops) {
        check_space(pair.s);
        check_space(pair.t);
    }
    std::vector<std::size_t> mask = columns_mask;
    if (mask.empty()) {
        for (std::size_t m = 0; m < d; ++m) mask.push_back(m);
    } else {
        for (std::size_t m : mask) {
            if (m >= d) {
                throw Error(ErrorKind::InvalidArgument,
                            "mask column out of range");
            }
        }
    }

    GraphRelationReport report;
    const auto col_dev = [&](const Operator& diff) {
        double dev = 0.0;
        for (std::size_t m : mask) {
            for (std::size_t i = 0; i < d; ++i) {
                dev = std::max(dev, std::abs(diff.at(i, m)));
            }
        }
        return dev;
    };
    char msg[128];
    const auto record = [&](double dev, const char* what) {
        report.max_deviation = std::max(report.max_deviation, dev);
        if (dev > tol) {
            std::snprintf(msg, sizeof msg, "%s deviates by %.3e", what, dev);
            report.violations.emplace_back(msg);
        }
    };

    const auto& ev = assignment.vertex_ops;
    for (std::size_t v = 0; v < q.vertex_count; ++v) {
        for (std::size_t w = 0; w < q.vertex_count; ++w) {
            const Operator expect =
                (v == w) ? ev[v] : Operator::zero(space, space);
            char what[64];
            std::snprintf(what, sizeof what, "(1) e_%zu e_%zu", v, w);
            record(col_dev(ev[v].mul(ev[w]).sub(expect)), what);
        }
    }
    for (std::size_t a = 0; a < q.edges.size(); ++a) {
        const auto [dom, ran] = q.edges[a];
        const Operator& s = assignment.edge_ops[a].s;
        const Operator& t = assignment.edge_ops[a].t;
        char what[64];
        std::snprintf(what, sizeof what, "(2) e_r s_%zu", a);
        record(col_dev(ev[ran].mul(s).sub(s)), what);
        std::snprintf(what, sizeof what, "(2) s_%zu e_d", a);
        record(col_dev(s.mul(ev[dom]).sub(s)), what);
        std::snprintf(what, sizeof what, "(3) t_%zu e_r", a);
        record(col_dev(t.mul(ev[ran]).sub(t)), what);
        std::snprintf(what, sizeof what, "(3) e_d t_%zu", a);
        record(col_dev(ev[dom].mul(t).sub(t)), what);
    }
    for (std::size_t a = 0; a < q.edges.size(); ++a) {
        for (std::size_t b = 0; b < q.edges.size(); ++b) {
            const Operator expect = (a == b)
                                        ? ev[q.edges[b].first]
                                        : Operator::zero(space, space);
            char what[64];
            std::snprintf(what, sizeof what, "(4) t_%zu s_%zu", a, b);
            record(col_dev(assignment.edge_ops[a]
                               .t.mul(assignment.edge_ops[b].s)
                               .sub(expect)),
                   what);
        }
    }
    for (std::size_t v = 0; v < q.vertex_count; ++v) {
        Operator sum = Operator::zero(space, space);
        bool receiving = false;
        for (std::size_t a = 0; a < q.edges.size(); ++a) {
            if (q.edges[a].second == v) {
                receiving = true;
                sum = sum.add(
                    assignment.edge_ops[a].s.mul(assignment.edge_ops[a].t));
            }
        }
        if (!receiving) {
            report.exempt_vertices.push_back(v);
            continue;
        }
        char what[64];
        std::snprintf(what, sizeof what, "(5) range sum at vertex %zu", v);
        record(col_dev(sum.sub(ev[v])), what);
    }

    Operator unit = Operator::zero(space, space);
    for (const Operator& e : ev) unit = unit.add(e);
    report.unit_partition =
        col_dev(unit.sub(Operator::identity(space))) <= tol;
    report.all_pass = report.violations.empty();

    if (compute_span) {
        std::vector<Operator> atoms;
        atoms.push_back(Operator::identity(space));
        for (const Operator& e : ev) atoms.push_back(e);
        for (const GraphEdgeOps& pair : assignment.edge_ops) {
            atoms.push_back(pair.s);
            atoms.push_back(pair.t);
        }
        SpanBasis basis(d * d);
        std::deque<Operator> work(atoms.begin(), atoms.end());
        while (!work.empty()) {
            const Operator current = std::move(work.front());
            work.pop_front();
            if (!basis.add(current)) continue;
            for (const Operator& g : atoms) {
                work.push_back(g.mul(current));
                work.push_back(current.mul(g));
            }
        }
        report.span_dimension = basis.rank();
    }
    return report;
}

}  // namespace lpa
