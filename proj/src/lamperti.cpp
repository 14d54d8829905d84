#include "lpa/lamperti.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lpa/linalg.hpp"

namespace lpa {

namespace {

constexpr double kSupportRelative = 1e-10;

double weight_ratio_power(const WeightedSpace& space, std::size_t from,
                          std::size_t to, Exponent p) {
    return std::pow(space.weights[from] / space.weights[to], 1.0 / p.p);
}

void require_square(const Operator& a, const char* who) {
    if (a.domain.dim() == 0) {
        throw Error(ErrorKind::EmptyOperator,
                    std::string(who) + ": empty operator");
    }
    if (a.domain.weights != a.codomain.weights) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(who) +
                        ": operator must act on a single weighted space");
    }
}

}  // namespace

void validate_spatial_isometry(const SpatialIsometry& si) {
    const std::size_t n = si.space.dim();
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "spatial isometry on dimension 0");
    }
    validate_permutation(si.perm, n);
    if (si.phases.size() != n) {
        throw Error(ErrorKind::InvalidArgument,
                    "phase count does not match dimension");
    }
    for (const cx& ph : si.phases) {
        if (std::abs(std::abs(ph) - 1.0) > 1e-9) {
            throw Error(ErrorKind::InvalidArgument, "phase is not unimodular");
        }
    }
}

Operator build_spatial_isometry(const SpatialIsometry& si, Exponent p) {
    validate_spatial_isometry(si);
    const std::size_t n = si.space.dim();
    Operator out = Operator::zero(si.space, si.space);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = si.perm[j];
        out.at(i, j) = si.phases[i] * weight_ratio_power(si.space, j, i, p);
    }
    return out;
}

SpatialIsometry lamperti_decompose(const Operator& a, Exponent p, double tol,
                                   const SearchConfig& cfg) {
    if (p.is_two()) {
        throw Error(ErrorKind::ExponentTwo,
                    "decomposition is not unique at p = 2");
    }
    require_square(a, "lamperti_decompose");
    if (!is_invertible_isometry(a, p, tol, cfg)) {
        throw Error(ErrorKind::NotIsometry,
                    "operator is not an invertible isometry at this exponent");
    }

    const std::size_t n = a.domain.dim();
    const double threshold = kSupportRelative * a.max_abs();
    SpatialIsometry si;
    si.space = a.domain;
    si.perm.assign(n, 0);
    si.phases.assign(n, cx(0.0, 0.0));
    std::vector<bool> row_used(n, false);

    for (std::size_t j = 0; j < n; ++j) {
        std::ptrdiff_t hit = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(a.at(i, j)) > threshold) {
                if (hit >= 0) {
                    throw Error(ErrorKind::NotSpatial,
                                "column " + std::to_string(j) +
                                    " has more than one supported entry");
                }
                hit = static_cast<std::ptrdiff_t>(i);
            }
        }
        if (hit < 0) {
            throw Error(ErrorKind::NotSpatial,
                        "column " + std::to_string(j) + " vanishes");
        }
        const auto i = static_cast<std::size_t>(hit);
        if (row_used[i]) {
            throw Error(ErrorKind::NotSpatial,
                        "row " + std::to_string(i) + " supports two columns");
        }
        row_used[i] = true;
        si.perm[j] = i;
        const cx phase = a.at(i, j) / weight_ratio_power(a.domain, j, i, p);
        if (std::abs(std::abs(phase) - 1.0) > tol) {
            throw Error(ErrorKind::NotSpatial,
                        "entry modulus incompatible with the weight ratio");
        }
        si.phases[i] = phase;
    }
    return si;
}

SpatialIsometry compose_spatial(const SpatialIsometry& s1,
                                const SpatialIsometry& s2) {
    validate_spatial_isometry(s1);
    validate_spatial_isometry(s2);
    if (s1.space.weights != s2.space.weights) {
        throw Error(ErrorKind::DimensionMismatch,
                    "compose_spatial: mismatched spaces");
    }
    const std::size_t n = s1.space.dim();
    SpatialIsometry out;
    out.space = s1.space;
    out.perm.resize(n);
    out.phases.resize(n);
    const std::vector<std::size_t> inv1 = invert_permutation(s1.perm);
    for (std::size_t j = 0; j < n; ++j) out.perm[j] = s1.perm[s2.perm[j]];
    for (std::size_t i = 0; i < n; ++i) {
        out.phases[i] = s1.phases[i] * s2.phases[inv1[i]];
    }
    return out;
}

DistanceReport isometry_distance(const SpatialIsometry& s1,
                                 const SpatialIsometry& s2, Exponent p,
                                 double tol, const SearchConfig& cfg) {
    validate_spatial_isometry(s1);
    validate_spatial_isometry(s2);
    if (s1.space.weights != s2.space.weights) {
        throw Error(ErrorKind::DimensionMismatch,
                    "isometry_distance: mismatched spaces");
    }
    DistanceReport rep;
    rep.same_permutation = (s1.perm == s2.perm);
    for (std::size_t i = 0; i < s1.phases.size(); ++i) {
        rep.phase_sup = std::max(rep.phase_sup,
                                 std::abs(s1.phases[i] - s2.phases[i]));
    }
    rep.analytic = rep.same_permutation ? rep.phase_sup
                                        : std::max(rep.phase_sup, 2.0);
    const Operator diff =
        build_spatial_isometry(s1, p).sub(build_spatial_isometry(s2, p));
    rep.estimate = opnorm(diff, p, cfg).lower_bound;
    rep.agree = std::abs(rep.analytic - rep.estimate) <= tol;
    return rep;
}

void validate_spatial_quadruple(const SpatialQuadruple& q) {
    const std::size_t n = q.space.dim();
    if (q.bijection.size() != n || q.phases.size() != n) {
        throw Error(ErrorKind::InvalidArgument,
                    "quadruple arrays must cover every atom");
    }
    std::vector<bool> in_domain(n, false), in_range(n, false);
    for (std::size_t j : q.domain_set) {
        if (j >= n || in_domain[j]) {
            throw Error(ErrorKind::InvalidArgument, "bad domain subset");
        }
        in_domain[j] = true;
    }
    for (std::size_t i : q.range_set) {
        if (i >= n || in_range[i]) {
            throw Error(ErrorKind::InvalidArgument, "bad range subset");
        }
        in_range[i] = true;
    }
    std::vector<bool> hit(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (in_domain[j]) {
            const std::ptrdiff_t img = q.bijection[j];
            if (img < 0 || img >= static_cast<std::ptrdiff_t>(n) ||
                !in_range[static_cast<std::size_t>(img)] ||
                hit[static_cast<std::size_t>(img)]) {
                throw Error(ErrorKind::InvalidArgument,
                            "bijection must map the domain subset onto the "
                            "range subset");
            }
            hit[static_cast<std::size_t>(img)] = true;
        } else if (q.bijection[j] >= 0) {
            throw Error(ErrorKind::InvalidArgument,
                        "bijection defined off the domain subset");
        }
    }
    for (std::size_t i : q.range_set) {
        if (!hit[i]) {
            throw Error(ErrorKind::InvalidArgument,
                        "range subset not fully covered");
        }
        if (std::abs(std::abs(q.phases[i]) - 1.0) > 1e-9) {
            throw Error(ErrorKind::InvalidArgument,
                        "phase on the range subset is not unimodular");
        }
    }
}

PartialIsometryPair build_spatial_partial_isometry(const SpatialQuadruple& q,
                                                   Exponent p) {
    validate_spatial_quadruple(q);
    Operator fwd = Operator::zero(q.space, q.space);
    Operator rev = Operator::zero(q.space, q.space);
    for (std::size_t j : q.domain_set) {
        const auto i = static_cast<std::size_t>(q.bijection[j]);
        const double ratio = weight_ratio_power(q.space, j, i, p);
        fwd.at(i, j) = q.phases[i] * ratio;
        rev.at(j, i) = std::conj(q.phases[i]) *
                       weight_ratio_power(q.space, i, j, p);
    }
    return PartialIsometryPair{fwd, rev};
}

ClassifyResult classify_spatial(const Operator& s, Exponent p, double tol) {
    if (p.is_two()) {
        throw Error(ErrorKind::ExponentTwo,
                    "spatial classification is not unique at p = 2");
    }
    require_square(s, "classify_spatial");
    const std::size_t n = s.domain.dim();
    const double threshold = kSupportRelative * s.max_abs();

    ClassifyResult res;
    SpatialQuadruple q;
    q.space = s.domain;
    q.bijection.assign(n, -1);
    q.phases.assign(n, cx(1.0, 0.0));
    std::vector<std::ptrdiff_t> row_owner(n, -1);

    for (std::size_t j = 0; j < n; ++j) {
        std::ptrdiff_t hit = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(s.at(i, j)) <= threshold) continue;
            if (hit >= 0) {
                res.reason = "column has two supported entries";
                res.offending_column = static_cast<std::ptrdiff_t>(j);
                return res;
            }
            hit = static_cast<std::ptrdiff_t>(i);
        }
        if (hit < 0) continue;
        const auto i = static_cast<std::size_t>(hit);
        if (row_owner[i] >= 0) {
            res.reason = "row supports two columns";
            res.offending_row = static_cast<std::ptrdiff_t>(i);
            return res;
        }
        row_owner[i] = static_cast<std::ptrdiff_t>(j);
        const double ratio = weight_ratio_power(s.domain, j, i, p);
        const cx phase = s.at(i, j) / ratio;
        if (std::abs(std::abs(phase) - 1.0) > tol) {
            res.reason = "entry modulus deviates from the weight-ratio power";
            res.offending_row = static_cast<std::ptrdiff_t>(i);
            res.offending_column = static_cast<std::ptrdiff_t>(j);
            return res;
        }
        q.domain_set.push_back(j);
        q.bijection[j] = static_cast<std::ptrdiff_t>(i);
        q.phases[i] = phase;
        q.range_set.push_back(i);
    }
    std::sort(q.range_set.begin(), q.range_set.end());
    res.spatial = true;
    res.quadruple = std::move(q);
    return res;
}

std::vector<double> default_hermitian_grid() {
    // Both signs matter: a generator whose forward semigroup contracts can
    // still expand backwards, and only the full group detects that.
    std::vector<double> grid;
    const double pi = 3.14159265358979323846;
    for (int k = -32; k <= 32; ++k) {
        if (k != 0) grid.push_back(pi * k / 32.0);
    }
    return grid;
}

bool hermitian_test(const Operator& a, Exponent p,
                    const std::vector<double>& t_grid, double tol,
                    const SearchConfig& cfg) {
    require_square(a, "hermitian_test");
    const std::vector<double>& grid =
        t_grid.empty() ? default_hermitian_grid() : t_grid;
    for (double t : grid) {
        const Operator e = expm(a, cx(0.0, t));
        if (opnorm(e, p, cfg).lower_bound > 1.0 + tol) return false;
    }
    return true;
}

CoreReport core_check(const std::vector<Operator>& generators, Exponent p,
                      double tol) {
    if (p.is_two()) {
        throw Error(ErrorKind::ExponentTwo,
                    "the diagonal core is only distinguished at p != 2");
    }
    CoreReport rep;
    rep.all_pass = true;
    for (const Operator& g : generators) {
        require_square(g, "core_check");
        double mass = 0.0;
        for (std::size_t i = 0; i < g.codomain.dim(); ++i) {
            for (std::size_t j = 0; j < g.domain.dim(); ++j) {
                if (i != j) mass = std::max(mass, std::abs(g.at(i, j)));
            }
        }
        const bool ok = mass <= tol * std::max(1.0, g.max_abs());
        rep.diagonal.push_back(ok);
        rep.off_diagonal_mass.push_back(mass);
        if (!ok) rep.all_pass = false;
    }
    return rep;
}

TwoExponentReport two_exponent_check(const Operator& a, Exponent p, Exponent q,
                                     double tol, const SearchConfig& cfg) {
    if (p.p == q.p) {
        throw Error(ErrorKind::InvalidArgument,
                    "two_exponent_check needs two distinct exponents");
    }
    char msg[64];
    if (!is_invertible_isometry(a, p, tol, cfg)) {
        std::snprintf(msg, sizeof msg, "not an invertible isometry at p=%g", p.p);
        throw Error(ErrorKind::NotIsometry, msg);
    }
    if (!is_invertible_isometry(a, q, tol, cfg)) {
        std::snprintf(msg, sizeof msg, "not an invertible isometry at p=%g", q.p);
        throw Error(ErrorKind::NotIsometry, msg);
    }
    const Exponent r = p.is_two() ? q : p;
    TwoExponentReport rep;
    rep.decomposition = lamperti_decompose(a, r, tol, cfg);
    const std::vector<std::size_t> inv =
        invert_permutation(rep.decomposition.perm);
    for (std::size_t i = 0; i < inv.size(); ++i) {
        const double ratio = a.domain.weights[inv[i]] / a.domain.weights[i];
        rep.worst_ratio_deviation =
            std::max(rep.worst_ratio_deviation, std::abs(ratio - 1.0));
    }
    rep.weight_preserving = rep.worst_ratio_deviation <= tol;
    return rep;
}

}  // namespace lpa
