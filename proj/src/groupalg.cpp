#include "lpa/groupalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lpa/rng.hpp"

namespace lpa {

namespace {

std::size_t find_inverse(const FiniteGroup& g, std::size_t a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
        if (g.op(a, b) == g.identity) return b;
    }
    throw Error(ErrorKind::InvalidArgument, "element has no inverse");
}

double rayleigh(const Operator& m, const Vec& x, Exponent p) {
    const double nx = vec_norm(x, p);
    if (nx == 0.0) return 0.0;
    return vec_norm(m.apply(x), p) / nx;
}

}  // namespace

std::size_t FiniteGroup::inverse(std::size_t a) const {
    return find_inverse(*this, a);
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic(0)");
    FiniteGroup g;
    g.identity = 0;
    for (std::size_t k = 0; k < n; ++k) g.elements.push_back(std::to_string(k));
    g.table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
    }
    return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    const std::size_t na = a.order(), nb = b.order();
    g.identity = a.identity * nb + b.identity;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            g.elements.push_back("(" + a.elements[i] + "," + b.elements[j] + ")");
        }
    }
    g.table.assign(na * nb, std::vector<std::size_t>(na * nb, 0));
    for (std::size_t i = 0; i < na * nb; ++i) {
        for (std::size_t j = 0; j < na * nb; ++j) {
            const std::size_t ai = i / nb, bi = i % nb;
            const std::size_t aj = j / nb, bj = j % nb;
            g.table[i][j] = a.op(ai, aj) * nb + b.op(bi, bj);
        }
    }
    return g;
}

FiniteGroup FiniteGroup::symmetric3() {
    // Permutations of {0,1,2} in one-line notation; composition acts on
    // the left: (st)(x) = s(t(x)).
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                             {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    const char* names[6] = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
    FiniteGroup g;
    g.identity = 0;
    for (int k = 0; k < 6; ++k) g.elements.push_back(names[k]);
    g.table.assign(6, std::vector<std::size_t>(6, 0));
    for (int s = 0; s < 6; ++s) {
        for (int t = 0; t < 6; ++t) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[s][perms[t][x]];
            for (int k = 0; k < 6; ++k) {
                if (comp[0] == perms[k][0] && comp[1] == perms[k][1] &&
                    comp[2] == perms[k][2]) {
                    g.table[s][t] = static_cast<std::size_t>(k);
                    break;
                }
            }
        }
    }
    return g;
}

void validate_group(const FiniteGroup& g) {
    const std::size_t n = g.order();
    if (n == 0 || g.table.size() != n || g.identity >= n) {
        throw Error(ErrorKind::InvalidArgument, "malformed group data");
    }
    for (const auto& row : g.table) {
        if (row.size() != n) {
            throw Error(ErrorKind::InvalidArgument, "ragged group table");
        }
        for (std::size_t v : row) {
            if (v >= n) {
                throw Error(ErrorKind::InvalidArgument,
                            "group table entry out of range");
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (g.op(g.identity, a) != a || g.op(a, g.identity) != a) {
            throw Error(ErrorKind::InvalidArgument, "identity law fails");
        }
    }
    for (std::size_t a = 0; a < n; ++a) find_inverse(g, a);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c))) {
                    throw Error(ErrorKind::InvalidArgument,
                                "associativity fails");
                }
            }
        }
    }
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
    return a.identity == b.identity && a.table == b.table;
}

void validate_group_function(const GroupFunction& f) {
    if (f.values.size() != f.group.order()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "group function has the wrong number of values");
    }
}

GroupFunction delta(const FiniteGroup& g, std::size_t at) {
    if (at >= g.order()) {
        throw Error(ErrorKind::InvalidArgument, "delta index out of range");
    }
    GroupFunction f{g, std::vector<cx>(g.order(), cx(0.0, 0.0))};
    f.values[at] = cx(1.0, 0.0);
    return f;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
    validate_group_function(f);
    validate_group_function(g);
    if (!same_group(f.group, g.group)) {
        throw Error(ErrorKind::InvalidArgument,
                    "convolution requires one common group");
    }
    const std::size_t n = f.group.order();
    GroupFunction out{f.group, std::vector<cx>(n, cx(0.0, 0.0))};
    for (std::size_t s = 0; s < n; ++s) {
        cx acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            acc += f.values[t] *
                   g.values[f.group.op(f.group.inverse(t), s)];
        }
        out.values[s] = acc;
    }
    return out;
}

Operator conv_matrix(const GroupFunction& f) {
    validate_group_function(f);
    const std::size_t n = f.group.order();
    const WeightedSpace space = WeightedSpace::unit(n);
    Operator m = Operator::zero(space, space);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t u = 0; u < n; ++u) {
            m.at(s, u) = f.values[f.group.op(s, f.group.inverse(u))];
        }
    }
    return m;
}

Operator left_translation(const FiniteGroup& g, std::size_t s) {
    return conv_matrix(delta(g, s));
}

NormEstimate fp_lambda_norm(const GroupFunction& f, Exponent p,
                            const SearchConfig& cfg) {
    return opnorm(conv_matrix(f), p, cfg);
}

NormEstimate z2_norm(cx a, cx b, Exponent p, const SearchConfig& cfg) {
    GroupFunction f{FiniteGroup::cyclic(2), {(a + b) / 2.0, (a - b) / 2.0}};
    return fp_lambda_norm(f, p, cfg);
}

IsomVerifyReport isom_group_verify(const FiniteGroup& g, Exponent p,
                                   std::size_t trials,
                                   const SearchConfig& cfg, double tol,
                                   double distance_floor) {
    if (p.is_two()) {
        throw Error(ErrorKind::ExponentTwo,
                    "isometry-group structure is special at p = 2");
    }
    validate_group(g);
    const std::size_t n = g.order();
    const cx phases[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};

    IsomVerifyReport rep;
    rep.phase_count = 4;
    rep.distance_floor = distance_floor;
    rep.trials = trials;

    std::vector<Operator> translations;
    translations.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        translations.push_back(left_translation(g, s));
    }

    rep.all_translations_pass = true;
    for (const cx& ph : phases) {
        for (std::size_t s = 0; s < n; ++s) {
            ++rep.translations_checked;
            if (!is_invertible_isometry(translations[s].scale(ph), p, tol,
                                        cfg)) {
                rep.all_translations_pass = false;
                char msg[96];
                std::snprintf(msg, sizeof msg,
                              "phase (%g,%g) translate %zu fails", ph.real(),
                              ph.imag(), s);
                rep.translation_failures.emplace_back(msg);
            }
        }
    }

    Rng rng(cfg.rng_seed);
    const std::size_t attempt_cap = 1000 * std::max<std::size_t>(trials, 1);
    std::size_t attempts = 0;
    rep.all_random_fail = true;
    for (std::size_t t = 0; t < trials; ++t) {
        GroupFunction f{g, {}};
        double dist = 0.0;
        for (;;) {
            if (++attempts > attempt_cap) {
                throw Error(ErrorKind::InvalidArgument,
                            "rejection sampling failed to clear the distance "
                            "floor");
            }
            f.values.assign(n, cx(0, 0));
            double norm2 = 0.0;
            for (std::size_t s = 0; s < n; ++s) {
                f.values[s] = rng.complex_normal();
                norm2 += std::norm(f.values[s]);
            }
            const double scale = 1.0 / std::sqrt(norm2);
            for (auto& v : f.values) v *= scale;

            const Operator m = conv_matrix(f);
            double m2 = 0.0;
            for (const cx& e : m.a) m2 += std::norm(e);
            double best = -1.0;
            for (std::size_t s = 0; s < n; ++s) {
                cx inner(0.0, 0.0);
                const Operator& tr = translations[s];
                for (std::size_t k = 0; k < m.a.size(); ++k) {
                    inner += m.a[k] * std::conj(tr.a[k]);
                }
                const double d2 =
                    m2 + static_cast<double>(n) - 2.0 * std::abs(inner);
                const double d = std::sqrt(std::max(0.0, d2));
                if (best < 0.0 || d < best) best = d;
            }
            dist = best;
            if (dist >= distance_floor) break;
            ++rep.resamples;
        }
        if (is_invertible_isometry(conv_matrix(f), p, tol, cfg)) {
            rep.all_random_fail = false;
            char msg[96];
            std::snprintf(msg, sizeof msg,
                          "trial %zu passed at distance %.3f", t, dist);
            rep.random_violations.emplace_back(msg);
        }
    }
    return rep;
}

RecoveredGroup recover_group(const FiniteGroup& g, Exponent p) {
    if (p.is_two()) {
        throw Error(ErrorKind::ExponentTwo,
                    "group recovery from isometries requires p != 2");
    }
    validate_group(g);
    const std::size_t n = g.order();
    std::vector<Operator> translations;
    for (std::size_t s = 0; s < n; ++s) {
        translations.push_back(left_translation(g, s));
    }

    RecoveredGroup rec;
    rec.table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Operator prod = translations[a].mul(translations[b]);
            cx phase(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(prod.at(i, 0)) > 0.5) {
                    phase = prod.at(i, 0);
                    break;
                }
            }
            bool matched = false;
            for (std::size_t k = 0; k < n; ++k) {
                if (prod.sub(translations[k].scale(phase)).max_abs() <= 1e-12) {
                    rec.table[a][b] = k;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                throw Error(ErrorKind::NonSpatialImage,
                            "product of translations is not a translation");
            }
        }
    }
    rec.matches_input = (rec.table == g.table);
    return rec;
}

HomDecomposition hom_decompose(const HomCandidate& h, Exponent p, double tol) {
    if (p.is_two()) {
        throw Error(ErrorKind::ExponentTwo,
                    "homomorphism structure requires p != 2");
    }
    validate_group(h.source);
    validate_group(h.target);
    const std::size_t ns = h.source.order();
    const std::size_t nt = h.target.order();
    if (h.images.size() != ns) {
        throw Error(ErrorKind::DimensionMismatch,
                    "need one image per source element");
    }
    for (const Operator& m : h.images) {
        if (m.domain.dim() != nt || m.codomain.dim() != nt) {
            throw Error(ErrorKind::DimensionMismatch,
                        "image has the wrong dimension");
        }
    }
    const Operator identity = Operator::identity(WeightedSpace::unit(nt));
    if (h.images[h.source.identity].sub(identity).max_abs() > tol) {
        throw Error(ErrorKind::InvalidArgument,
                    "image of the identity must be the identity operator");
    }

    std::vector<Operator> translations;
    for (std::size_t s = 0; s < nt; ++s) {
        translations.push_back(left_translation(h.target, s));
    }

    HomDecomposition dec;
    dec.theta.assign(ns, 0);
    dec.gamma.assign(ns, cx(1.0, 0.0));
    for (std::size_t gidx = 0; gidx < ns; ++gidx) {
        const Operator& m = h.images[gidx];
        cx phase(0.0, 0.0);
        for (const cx& e : m.a) {
            if (std::abs(e) > 0.5) {
                phase = e;
                break;
            }
        }
        if (std::abs(std::abs(phase) - 1.0) > tol) {
            throw Error(ErrorKind::NonSpatialImage,
                        "image of " + h.source.elements[gidx] +
                            " is not a phase times a translation");
        }
        bool matched = false;
        for (std::size_t k = 0; k < nt; ++k) {
            if (m.sub(translations[k].scale(phase)).max_abs() <= tol) {
                dec.theta[gidx] = k;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw Error(ErrorKind::NonSpatialImage,
                        "image of " + h.source.elements[gidx] +
                            " is not a phase times a translation");
        }
        dec.gamma[gidx] = phase;
    }

    for (std::size_t a = 0; a < ns; ++a) {
        for (std::size_t b = 0; b < ns; ++b) {
            const std::size_t ab = h.source.op(a, b);
            if (dec.theta[ab] != h.target.op(dec.theta[a], dec.theta[b])) {
                throw Error(ErrorKind::NotHomomorphism,
                            "translation part fails the homomorphism law");
            }
            if (std::abs(dec.gamma[ab] - dec.gamma[a] * dec.gamma[b]) >
                2.0 * tol) {
                throw Error(ErrorKind::NotHomomorphism,
                            "phase part fails the homomorphism law");
            }
        }
    }

    std::vector<std::size_t> sorted = dec.theta;
    std::sort(sorted.begin(), sorted.end());
    dec.injective =
        std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return dec;
}

HomCandidate build_hom_candidate(const FiniteGroup& source,
                                 const FiniteGroup& target,
                                 const std::vector<std::size_t>& theta,
                                 const std::vector<cx>& gamma) {
    if (theta.size() != source.order() || gamma.size() != source.order()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "theta and gamma must cover the source group");
    }
    HomCandidate h{source, target, {}};
    for (std::size_t g = 0; g < source.order(); ++g) {
        h.images.push_back(left_translation(target, theta[g]).scale(gamma[g]));
    }
    return h;
}

GroupFunction sharp(const GroupFunction& f) {
    validate_group_function(f);
    GroupFunction out{f.group, std::vector<cx>(f.group.order())};
    for (std::size_t s = 0; s < f.group.order(); ++s) {
        out.values[s] = f.values[f.group.inverse(s)];
    }
    return out;
}

DualityReport duality_check(const GroupFunction& f, Exponent p,
                            const SearchConfig& cfg) {
    if (p.p <= 1.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "duality_check requires p > 1");
    }
    validate_group_function(f);
    const Operator m = conv_matrix(f);
    const Operator ms = conv_matrix(sharp(f));
    DualityReport rep;
    rep.transpose_exact = true;
    const std::size_t n = f.group.order();
    for (std::size_t i = 0; i < n && rep.transpose_exact; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m.at(i, j) != ms.at(j, i)) {
                rep.transpose_exact = false;
                break;
            }
        }
    }
    rep.norm_f = fp_lambda_norm(f, p, cfg).lower_bound;
    rep.norm_sharp = fp_lambda_norm(sharp(f), p.conjugate(), cfg).lower_bound;
    rep.difference = std::abs(rep.norm_f - rep.norm_sharp);
    return rep;
}

FiniteGroup subgroup_from_indices(const FiniteGroup& g,
                                  const std::vector<std::size_t>& h_indices) {
    validate_group(g);
    const std::size_t n = g.order();
    std::vector<std::ptrdiff_t> position(n, -1);
    for (std::size_t k = 0; k < h_indices.size(); ++k) {
        const std::size_t idx = h_indices[k];
        if (idx >= n || position[idx] >= 0) {
            throw Error(ErrorKind::InvalidSubgroup,
                        "subgroup indices must be distinct elements");
        }
        position[idx] = static_cast<std::ptrdiff_t>(k);
    }
    FiniteGroup h;
    for (std::size_t idx : h_indices) h.elements.push_back(g.elements[idx]);
    h.table.assign(h_indices.size(),
                   std::vector<std::size_t>(h_indices.size(), 0));
    bool has_identity = false;
    for (std::size_t a = 0; a < h_indices.size(); ++a) {
        if (h_indices[a] == g.identity) {
            h.identity = a;
            has_identity = true;
        }
        for (std::size_t b = 0; b < h_indices.size(); ++b) {
            const std::size_t prod = g.op(h_indices[a], h_indices[b]);
            if (position[prod] < 0) {
                throw Error(ErrorKind::InvalidSubgroup,
                            "subset is not closed under the group operation");
            }
            h.table[a][b] = static_cast<std::size_t>(position[prod]);
        }
    }
    if (!has_identity) {
        throw Error(ErrorKind::InvalidSubgroup,
                    "subgroup must contain the identity");
    }
    validate_group(h);
    return h;
}

SubgroupReport subgroup_isometry_check(const FiniteGroup& g,
                                       const std::vector<std::size_t>& h_indices,
                                       const std::vector<cx>& f_values,
                                       Exponent p, const SearchConfig& cfg,
                                       double tol) {
    const FiniteGroup h = subgroup_from_indices(g, h_indices);
    if (f_values.size() != h.order()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "function values must align with the subgroup");
    }
    const GroupFunction fh{h, f_values};
    const NormEstimate sub = fp_lambda_norm(fh, p, cfg);

    GroupFunction fg{g, std::vector<cx>(g.order(), cx(0.0, 0.0))};
    for (std::size_t k = 0; k < h_indices.size(); ++k) {
        fg.values[h_indices[k]] = f_values[k];
    }
    const Operator mg = conv_matrix(fg);
    double ambient = opnorm(mg, p, cfg).lower_bound;

    // The subgroup witness extends by zero without changing its ratio, so
    // the ambient estimate can only be sharpened by it.
    Vec lifted = Vec::zero(mg.domain);
    for (std::size_t k = 0; k < h_indices.size(); ++k) {
        lifted.entries[h_indices[k]] = sub.witness.entries[k];
    }
    ambient = std::max(ambient, rayleigh(mg, lifted, p));

    SubgroupReport rep;
    rep.norm_subgroup = sub.lower_bound;
    rep.norm_ambient = ambient;
    rep.difference = std::abs(rep.norm_subgroup - rep.norm_ambient);
    rep.equal = rep.difference <= tol;
    return rep;
}

QuotientReport quotient_contraction_check(
    const FiniteGroup& g, const std::vector<std::size_t>& n_indices,
    const GroupFunction& f, Exponent p, const SearchConfig& cfg, double tol) {
    validate_group_function(f);
    if (!same_group(f.group, g)) {
        throw Error(ErrorKind::InvalidArgument,
                    "function must live on the ambient group");
    }
    const FiniteGroup nsub = subgroup_from_indices(g, n_indices);
    (void)nsub;
    std::vector<bool> in_n(g.order(), false);
    for (std::size_t idx : n_indices) in_n[idx] = true;
    for (std::size_t s = 0; s < g.order(); ++s) {
        for (std::size_t idx : n_indices) {
            if (!in_n[g.op(g.op(s, idx), g.inverse(s))]) {
                throw Error(ErrorKind::InvalidNormalSubgroup,
                            "subgroup is not normal");
            }
        }
    }

    const std::size_t n = g.order();
    std::vector<std::ptrdiff_t> coset(n, -1);
    std::vector<std::size_t> reps;
    for (std::size_t s = 0; s < n; ++s) {
        if (coset[s] >= 0) continue;
        const auto id = static_cast<std::ptrdiff_t>(reps.size());
        reps.push_back(s);
        for (std::size_t idx : n_indices) coset[g.op(s, idx)] = id;
    }

    FiniteGroup q;
    q.table.assign(reps.size(), std::vector<std::size_t>(reps.size(), 0));
    for (std::size_t a = 0; a < reps.size(); ++a) {
        q.elements.push_back(g.elements[reps[a]] + "N");
        if (coset[g.identity] == static_cast<std::ptrdiff_t>(a)) q.identity = a;
        for (std::size_t b = 0; b < reps.size(); ++b) {
            q.table[a][b] =
                static_cast<std::size_t>(coset[g.op(reps[a], reps[b])]);
        }
    }
    q.identity = static_cast<std::size_t>(coset[g.identity]);
    validate_group(q);

    GroupFunction pushed{q, std::vector<cx>(reps.size(), cx(0.0, 0.0))};
    for (std::size_t a = 0; a < reps.size(); ++a) {
        for (std::size_t idx : n_indices) {
            pushed.values[a] += f.values[g.op(reps[a], idx)];
        }
    }

    const NormEstimate quot = fp_lambda_norm(pushed, p, cfg);
    const Operator mg = conv_matrix(f);
    double ambient = opnorm(mg, p, cfg).lower_bound;

    // Lifting the quotient witness along s -> sN keeps its ratio, which
    // makes the contraction inequality robust against estimator gaps.
    Vec lifted = Vec::zero(mg.domain);
    for (std::size_t s = 0; s < n; ++s) {
        lifted.entries[s] =
            quot.witness.entries[static_cast<std::size_t>(coset[s])];
    }
    ambient = std::max(ambient, rayleigh(mg, lifted, p));

    QuotientReport rep;
    rep.norm_ambient = ambient;
    rep.norm_quotient = quot.lower_bound;
    rep.contractive = rep.norm_quotient <= rep.norm_ambient + tol;
    rep.quotient_order = reps.size();
    return rep;
}

}  // namespace lpa
