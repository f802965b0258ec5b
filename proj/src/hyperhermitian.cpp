#include "qpot/hyperhermitian.hpp"

#include <algorithm>
#include <cmath>

#include "qpot/errors.hpp"

namespace qpot {

HyperHermitianMatrix::HyperHermitianMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {
    if (n < 1) throw InvalidInput("HyperHermitianMatrix: size must be >= 1");
}

HyperHermitianMatrix HyperHermitianMatrix::from_entries(
    const std::vector<std::vector<Quaternion>>& a, double tol) {
    const int n = static_cast<int>(a.size());
    HyperHermitianMatrix m(n);
    double scale = 0.0;
    for (const auto& row : a) {
        if (static_cast<int>(row.size()) != n)
            throw InvalidInput("HyperHermitianMatrix: ragged entry table");
        for (const auto& q : row) scale = std::max(scale, q.norm());
    }
    const double bound = tol * std::max(1.0, scale);
    for (int i = 0; i < n; ++i) {
        if (!a[i][i].is_real(bound))
            throw InvalidInput("HyperHermitianMatrix: diagonal entry not real");
        for (int j = 0; j < n; ++j) {
            const Quaternion diff = a[j][i] - a[i][j].conj();
            if (diff.norm() > bound)
                throw InvalidInput("HyperHermitianMatrix: symmetry violation A[b][a] != conj(A[a][b])");
        }
    }
    // Store the exactly symmetrized values so downstream checks are bit-stable.
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Quaternion q = (a[i][j] + a[j][i].conj()) * 0.5;
            if (i == j) q = Quaternion(q.w);
            m.set(i, j, q);
        }
    return m;
}

HyperHermitianMatrix HyperHermitianMatrix::symmetrize(
    const std::vector<std::vector<Quaternion>>& a) {
    const int n = static_cast<int>(a.size());
    HyperHermitianMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(a[i].size()) != n)
            throw InvalidInput("HyperHermitianMatrix: ragged entry table");
        for (int j = i; j < n; ++j) {
            Quaternion q = (a[i][j] + a[j][i].conj()) * 0.5;
            if (i == j) q = Quaternion(q.w);
            m.set(i, j, q);
        }
    }
    return m;
}

const Quaternion& HyperHermitianMatrix::at(int alpha, int beta) const {
    return e_[static_cast<size_t>(alpha) * n_ + beta];
}

void HyperHermitianMatrix::set(int alpha, int beta, const Quaternion& q) {
    if (alpha == beta && !q.is_real(1e-12 * std::max(1.0, q.norm())))
        throw InvalidInput("HyperHermitianMatrix: diagonal entry must be real");
    e_[static_cast<size_t>(alpha) * n_ + beta] = q;
    e_[static_cast<size_t>(beta) * n_ + alpha] = q.conj();
    if (alpha == beta) e_[static_cast<size_t>(alpha) * n_ + beta] = Quaternion(q.w);
}

double HyperHermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& q : e_) s += q.norm_sq();
    return std::sqrt(s);
}

Eigen::MatrixXcd complexify(const HyperHermitianMatrix& a) {
    const int n = a.size();
    Eigen::MatrixXcd c(2 * n, 2 * n);
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            // Per-entry left-regular representation q = z + w j -> [[z, w], [-conj(w), conj(z)]]
            // with z = w0 + x0 i and w = y0 + z0 i.  complex_split returns the j-left
            // components q = z1 + j z2, so w = conj(z2).  This block map is a faithful
            // algebra homomorphism (checked on the unit table), which is what makes
            // det(complexify(A)) = moore_det(A)^2 hold for every n.
            const ComplexPair p = complex_split(a.at(al, be));
            const std::complex<double> w = std::conj(p.z2);
            c(2 * al, 2 * be) = p.z1;
            c(2 * al, 2 * be + 1) = w;
            c(2 * al + 1, 2 * be) = -std::conj(w);
            c(2 * al + 1, 2 * be + 1) = std::conj(p.z1);
        }
    return c;
}

Eigen::VectorXd complexification_eigenvalues(const HyperHermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(complexify(a), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw SolverError("complexification eigenvalue computation failed");
    return es.eigenvalues(); // sorted ascending
}

double moore_det(const HyperHermitianMatrix& a) {
    const Eigen::VectorXd ev = complexification_eigenvalues(a);
    const int n = a.size();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    double det = 1.0;
    for (int i = 0; i < n; ++i) {
        const double lo = ev(2 * i), hi = ev(2 * i + 1);
        if (std::abs(hi - lo) > 1e-8 * scale)
            throw SolverError("moore_det: eigenvalue pairing failure (non-hyperhermitian or ill-conditioned input)");
        det *= 0.5 * (lo + hi);
    }
    return det;
}

bool is_psd(const HyperHermitianMatrix& a, double tol) {
    const Eigen::VectorXd ev = complexification_eigenvalues(a);
    const double scale = ev.cwiseAbs().maxCoeff();
    return ev(0) >= -tol * scale;
}

} // namespace qpot
