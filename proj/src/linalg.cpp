#include "lpa/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace lpa {

double one_norm(const Operator& A) {
    double best = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < A.rows(); ++i) s += std::abs(A.at(i, j));
        best = std::max(best, s);
    }
    return best;
}

double inf_norm(const Operator& A) {
    double best = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += std::abs(A.at(i, j));
        best = std::max(best, s);
    }
    return best;
}

double frobenius_norm(const Operator& A) {
    double s = 0.0;
    for (const cx& v : A.a) s += std::norm(v);
    return std::sqrt(s);
}

InverseResult invert(const Operator& A, double threshold) {
    InverseResult res;
    if (!A.square())
        throw Error(ErrorKind::DimensionMismatch, "inverse requires a square operator");
    const std::size_t n = A.rows();
    if (n == 0) throw Error(ErrorKind::EmptyOperator, "inverse of a zero-dimensional operator");

    // Augmented Gauss-Jordan with partial pivoting.
    std::vector<cx> m = A.a;
    Operator inv = Operator::identity(A.domain);
    // The inverse maps codomain back to domain.
    inv.domain = A.codomain;
    inv.codomain = A.domain;

    auto M = [&](std::size_t i, std::size_t j) -> cx& { return m[i * n + j]; };
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double pm = std::abs(M(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(M(r, col));
            if (cand > pm) { pm = cand; piv = r; }
        }
        if (pm == 0.0) return res;  // exactly singular
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(M(piv, j), M(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        const cx d = M(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            M(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cx f = M(r, col);
            if (f == cx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                M(r, j) -= f * M(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }

    const double na = one_norm(A), ni = one_norm(inv);
    res.rcond = (na > 0.0 && ni > 0.0) ? 1.0 / (na * ni) : 0.0;
    if (res.rcond < threshold) return res;
    res.ok = true;
    res.inverse = std::move(inv);
    return res;
}

Operator expm(const Operator& A, cx c) {
    if (!A.square())
        throw Error(ErrorKind::DimensionMismatch, "matrix exponential requires a square operator");
    Operator B = A.scale(c);
    const double scale = one_norm(B);
    int squarings = 0;
    if (scale > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(scale / 0.5)));
        B = B.scale(1.0 / std::ldexp(1.0, squarings));
    }
    Operator term = Operator::identity(B.domain);
    Operator sum = term;
    for (int k = 1; k <= 60; ++k) {
        term = term.mul(B).scale(1.0 / k);
        sum = sum.add(term);
        if (one_norm(term) <= 1e-17 * std::max(1.0, one_norm(sum))) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum.mul(sum);
    return sum;
}

std::vector<double> hermitian_eigenvalues(const Operator& A) {
    if (!A.square())
        throw Error(ErrorKind::DimensionMismatch, "eigenvalues require a square operator");
    const std::size_t n = A.rows();
    std::vector<cx> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = 0.5 * (A.at(i, j) + std::conj(A.at(j, i)));
    auto M = [&](std::size_t i, std::size_t j) -> cx& { return m[i * n + j]; };

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(M(i, j));
        if (off <= 1e-28 * std::max(1.0, frobenius_norm(A))) break;
        for (std::size_t pp = 0; pp < n; ++pp)
            for (std::size_t q = pp + 1; q < n; ++q) {
                const cx apq = M(pp, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                // Unitary rotation U with U[p,p]=U[q,q]=c, U[p,q]=−s·e^{iα},
                // U[q,p]=s·e^{−iα}, α = arg(apq); U*MU annihilates (p,q) when
                // tan 2θ = 2|apq| / (app − aqq).
                const double app = M(pp, pp).real(), aqq = M(q, q).real();
                const cx phase = apq / g;
                const double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {  // M ← M·U
                    const cx mkp = M(k, pp), mkq = M(k, q);
                    M(k, pp) = c * mkp + s * std::conj(phase) * mkq;
                    M(k, q) = -s * phase * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // M ← U*·M
                    const cx mpk = M(pp, k), mqk = M(q, k);
                    M(pp, k) = c * mpk + s * phase * mqk;
                    M(q, k) = -s * std::conj(phase) * mpk + c * mqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = M(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double weighted_sigma_max(const Operator& A) {
    // B = D_v^{1/2} A D_w^{−1/2} carries the weighted ℓ² geometry to the flat one.
    Operator B = A;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            B.at(i, j) *= std::sqrt(A.codomain.weights[i]) / std::sqrt(A.domain.weights[j]);
    // Top eigenvalue of B*B.
    Operator BtB(B.domain, B.domain);
    for (std::size_t i = 0; i < B.cols(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            cx acc(0.0, 0.0);
            for (std::size_t k = 0; k < B.rows(); ++k)
                acc += std::conj(B.at(k, i)) * B.at(k, j);
            BtB.at(i, j) = acc;
        }
    const auto eig = hermitian_eigenvalues(BtB);
    return eig.empty() ? 0.0 : std::sqrt(std::max(0.0, eig.back()));
}

}  // namespace lpa
