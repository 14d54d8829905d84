#include "lpa/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpa {

bool is_scope_error(ErrorKind k) {
    return k == ErrorKind::OracleScope || k == ErrorKind::ExponentTwo;
}

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidPermutation: return "InvalidPermutation";
        case ErrorKind::EmptyOperator: return "EmptyOperator";
        case ErrorKind::OracleScope: return "OracleScope";
        case ErrorKind::ExponentTwo: return "ExponentTwo";
        case ErrorKind::NotIsometry: return "NotIsometry";
        case ErrorKind::NotSpatial: return "NotSpatial";
        case ErrorKind::NonSpatialImage: return "NonSpatialImage";
        case ErrorKind::NotHomomorphism: return "NotHomomorphism";
        case ErrorKind::InvalidSubgroup: return "InvalidSubgroup";
        case ErrorKind::InvalidNormalSubgroup: return "InvalidNormalSubgroup";
        case ErrorKind::InvalidConjugator: return "InvalidConjugator";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::ActionMismatch: return "ActionMismatch";
        case ErrorKind::TruncationUnderflow: return "TruncationUnderflow";
        case ErrorKind::CoverageGap: return "CoverageGap";
        case ErrorKind::AlgebraRelation: return "AlgebraRelation";
    }
    return "Unknown";
}

WeightedSpace::WeightedSpace(std::vector<double> w) : weights(std::move(w)) {
    for (double wi : weights)
        if (!(wi > 0.0) || !std::isfinite(wi))
            throw Error(ErrorKind::InvalidArgument, "atom weights must be strictly positive and finite");
}

WeightedSpace WeightedSpace::unit(std::size_t n) {
    return WeightedSpace(std::vector<double>(n, 1.0));
}

Vec::Vec(WeightedSpace s, std::vector<cx> e) : space(std::move(s)), entries(std::move(e)) {
    if (space.dim() != entries.size())
        throw Error(ErrorKind::DimensionMismatch, "vector entry count does not match atom count");
}

Vec Vec::zero(const WeightedSpace& s) {
    return Vec(s, std::vector<cx>(s.dim(), cx(0.0, 0.0)));
}

Operator::Operator(WeightedSpace dom, WeightedSpace cod)
    : domain(std::move(dom)), codomain(std::move(cod)), a(domain.dim() * codomain.dim(), cx(0.0, 0.0)) {}

Operator::Operator(WeightedSpace dom, WeightedSpace cod, std::vector<cx> entries)
    : domain(std::move(dom)), codomain(std::move(cod)), a(std::move(entries)) {
    if (a.size() != domain.dim() * codomain.dim())
        throw Error(ErrorKind::DimensionMismatch, "matrix size does not match atom counts");
}

Operator Operator::identity(const WeightedSpace& s) {
    Operator id(s, s);
    for (std::size_t i = 0; i < s.dim(); ++i) id.at(i, i) = 1.0;
    return id;
}

Operator Operator::zero(const WeightedSpace& dom, const WeightedSpace& cod) {
    return Operator(dom, cod);
}

Vec Operator::apply(const Vec& x) const {
    if (x.dim() != cols())
        throw Error(ErrorKind::DimensionMismatch, "operator/vector dimension mismatch");
    Vec y = Vec::zero(codomain);
    for (std::size_t i = 0; i < rows(); ++i) {
        cx acc(0.0, 0.0);
        const cx* row = a.data() + i * cols();
        for (std::size_t j = 0; j < cols(); ++j) acc += row[j] * x.entries[j];
        y.entries[i] = acc;
    }
    return y;
}

Operator Operator::mul(const Operator& rhs) const {
    if (cols() != rhs.rows())
        throw Error(ErrorKind::DimensionMismatch, "operator product dimension mismatch");
    Operator out(rhs.domain, codomain);
    const std::size_t n = cols();
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cx lik = at(i, k);
            if (lik == cx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j)
                out.at(i, j) += lik * rhs.at(k, j);
        }
    return out;
}

Operator Operator::add(const Operator& rhs) const {
    if (rows() != rhs.rows() || cols() != rhs.cols())
        throw Error(ErrorKind::DimensionMismatch, "operator sum dimension mismatch");
    Operator out = *this;
    for (std::size_t k = 0; k < a.size(); ++k) out.a[k] += rhs.a[k];
    return out;
}

Operator Operator::sub(const Operator& rhs) const {
    if (rows() != rhs.rows() || cols() != rhs.cols())
        throw Error(ErrorKind::DimensionMismatch, "operator difference dimension mismatch");
    Operator out = *this;
    for (std::size_t k = 0; k < a.size(); ++k) out.a[k] -= rhs.a[k];
    return out;
}

Operator Operator::scale(cx c) const {
    Operator out = *this;
    for (cx& v : out.a) v *= c;
    return out;
}

double Operator::max_abs() const {
    double m = 0.0;
    for (const cx& v : a) m = std::max(m, std::abs(v));
    return m;
}

Exponent::Exponent(double value) : p(value) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::InvalidArgument, "exponent must satisfy 1 <= p < inf");
}

double Exponent::conjugate() const {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

bool Exponent::is_two(double tol) const { return std::abs(p - 2.0) <= tol; }

void validate_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
    if (perm.size() != n)
        throw Error(ErrorKind::InvalidPermutation, "permutation length does not match atom count");
    std::vector<bool> seen(n, false);
    for (std::size_t v : perm) {
        if (v >= n || seen[v])
            throw Error(ErrorKind::InvalidPermutation, "permutation is not a bijection of the atoms");
        seen[v] = true;
    }
}

std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& perm) {
    validate_permutation(perm, perm.size());
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
    return inv;
}

double vec_norm(const Vec& x, Exponent p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double m = std::abs(x.entries[i]);
        if (m == 0.0) continue;
        acc += x.space.weights[i] * (p.p == 1.0 ? m : std::pow(m, p.p));
    }
    return p.p == 1.0 ? acc : std::pow(acc, 1.0 / p.p);
}

static cx complex_sign(cx v) {
    const double m = std::abs(v);
    return m == 0.0 ? cx(0.0, 0.0) : v / m;
}

Vec duality_map(const Vec& x, Exponent p) {
    if (p.p == 1.0) {
        bool all_zero = true;
        for (const cx& v : x.entries)
            if (v != cx(0.0, 0.0)) { all_zero = false; break; }
        if (all_zero)
            throw Error(ErrorKind::InvalidArgument, "duality map at p = 1 requires a nonzero vector");
    }
    Vec y = Vec::zero(x.space);
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double m = std::abs(x.entries[i]);
        if (m == 0.0) continue;
        y.entries[i] = complex_sign(x.entries[i]) * std::pow(m, p.p - 1.0);
    }
    return y;
}

cx pairing(const Vec& x, const Vec& y) {
    if (x.dim() != y.dim())
        throw Error(ErrorKind::DimensionMismatch, "pairing requires equal dimensions");
    cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < x.dim(); ++i)
        acc += x.space.weights[i] * x.entries[i] * std::conj(y.entries[i]);
    return acc;
}

Vec rn_derivative(const WeightedSpace& space, const std::vector<std::size_t>& perm) {
    validate_permutation(perm, space.dim());
    const auto inv = invert_permutation(perm);
    Vec rn = Vec::zero(space);
    for (std::size_t i = 0; i < space.dim(); ++i)
        rn.entries[i] = space.weights[inv[i]] / space.weights[i];
    return rn;
}

ChangeOfVariablesReport change_of_variables_check(const Vec& f,
                                                 const std::vector<std::size_t>& perm,
                                                 Exponent) {
    validate_permutation(perm, f.dim());
    const Vec rn = rn_derivative(f.space, perm);
    const auto inv = invert_permutation(perm);
    cx lhs(0.0, 0.0), rhs(0.0, 0.0);
    for (std::size_t i = 0; i < f.dim(); ++i) {
        lhs += f.space.weights[i] * f.entries[i];
        rhs += f.space.weights[i] * f.entries[inv[i]] * rn.entries[i];
    }
    ChangeOfVariablesReport rep;
    rep.lhs = lhs.real();
    rep.rhs = rhs.real();
    rep.difference = std::abs(lhs - rhs);
    return rep;
}

ClarksonRecord clarkson_check(const Vec& x, const Vec& y, Exponent p, double tol) {
    if (x.dim() != y.dim() || x.space.weights != y.space.weights)
        throw Error(ErrorKind::DimensionMismatch, "Clarkson check requires one common space");
    Vec sum = Vec::zero(x.space), diff = Vec::zero(x.space);
    for (std::size_t i = 0; i < x.dim(); ++i) {
        sum.entries[i] = x.entries[i] + y.entries[i];
        diff.entries[i] = x.entries[i] - y.entries[i];
    }
    ClarksonRecord rec;
    rec.lhs = std::pow(vec_norm(sum, p), p.p) + std::pow(vec_norm(diff, p), p.p);
    rec.rhs = 2.0 * (std::pow(vec_norm(x, p), p.p) + std::pow(vec_norm(y, p), p.p));
    rec.relation = p.p > 2.0 ? ClarksonRelation::Ge
                 : p.p < 2.0 ? ClarksonRelation::Le
                             : ClarksonRelation::Both;
    rec.equality = std::abs(rec.lhs - rec.rhs) <= tol;
    switch (rec.relation) {
        case ClarksonRelation::Ge: rec.direction_holds = rec.lhs >= rec.rhs - tol; break;
        case ClarksonRelation::Le: rec.direction_holds = rec.lhs <= rec.rhs + tol; break;
        case ClarksonRelation::Both: rec.direction_holds = rec.equality; break;
    }
    return rec;
}

Vec dual_ascent_direction(const Vec& z, double pprime) {
    Vec x = Vec::zero(z.space);
    if (std::isinf(pprime)) {
        // ℓ^1-sphere maximizer of Re⟨x,z⟩: all mass on the largest |z_i|.
        std::size_t best = 0;
        double bm = -1.0;
        for (std::size_t i = 0; i < z.dim(); ++i) {
            const double m = std::abs(z.entries[i]);
            if (m > bm) { bm = m; best = i; }
        }
        if (bm == 0.0) return x;
        x.entries[best] = complex_sign(z.entries[best]) / z.space.weights[best];
        return x;
    }
    for (std::size_t i = 0; i < z.dim(); ++i) {
        const double m = std::abs(z.entries[i]);
        if (m == 0.0) continue;
        x.entries[i] = complex_sign(z.entries[i]) * std::pow(m, pprime - 1.0);
    }
    // Normalize in the ground norm p = (p')' so the next residual is comparable.
    const double p = pprime / (pprime - 1.0);
    const double n = vec_norm(x, Exponent(p));
    if (n > 0.0)
        for (cx& v : x.entries) v /= n;
    return x;
}

Vec weighted_adjoint_apply(const Operator& A, const Vec& y) {
    if (y.dim() != A.rows())
        throw Error(ErrorKind::DimensionMismatch, "adjoint/vector dimension mismatch");
    Vec z = Vec::zero(A.domain);
    for (std::size_t j = 0; j < A.cols(); ++j) {
        cx acc(0.0, 0.0);
        for (std::size_t i = 0; i < A.rows(); ++i)
            acc += A.codomain.weights[i] * std::conj(A.at(i, j)) * y.entries[i];
        z.entries[j] = acc / A.domain.weights[j];
    }
    return z;
}

}  // namespace lpa
