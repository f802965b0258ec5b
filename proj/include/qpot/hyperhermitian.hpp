#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpot/quaternion.hpp"

namespace qpot {

// n x n quaternionic matrix with A[b][a] = conj(A[a][b]) and real diagonal.
// Entries are validated on construction; the diagonal imaginary parts must be
// below 1e-12 relative to the matrix scale.
class HyperHermitianMatrix {
  public:
    explicit HyperHermitianMatrix(int n);

    // Validates hyperhermitian symmetry within tol (absolute, on top of a
    // relative scale factor) and throws InvalidInput on violation.
    static HyperHermitianMatrix from_entries(const std::vector<std::vector<Quaternion>>& a,
                                             double tol = 1e-12);

    // Averages A with its conjugate transpose; used to clean numerically
    // asymmetric Hessians before downstream spectral work.
    static HyperHermitianMatrix symmetrize(const std::vector<std::vector<Quaternion>>& a);

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] const Quaternion& at(int alpha, int beta) const;

    // Sets A[alpha][beta] and the conjugate mirror entry. Throws InvalidInput
    // for a non-real diagonal assignment.
    void set(int alpha, int beta, const Quaternion& q);

    [[nodiscard]] double frobenius_norm() const;

  private:
    int n_;
    std::vector<Quaternion> e_; // row-major n*n
};

// 2n x 2n complex matrix image of a hyperhermitian matrix under the blockwise
// map q = z + w j |-> [[z, w], [-conj(w), conj(z)]] (w = y + z i, i.e. the
// right-coefficient split; equals conj of complex_split().z2). Entrywise this
// is the faithful left-regular representation of H over C, so the map is an
// algebra homomorphism and det(complexify(A)) = moore_det(A)^2. Hermitian with
// eigenvalues of even multiplicity.
Eigen::MatrixXcd complexify(const HyperHermitianMatrix& a);

// Sorted (ascending) eigenvalues of the complexification.
Eigen::VectorXd complexification_eigenvalues(const HyperHermitianMatrix& a);

// Moore determinant: eigenvalues of complexify(a) pair up; the determinant is
// the product of one representative per pair. Throws SolverError when a pair
// gap exceeds 1e-8 relative to the spectral scale.
double moore_det(const HyperHermitianMatrix& a);

// All complexification eigenvalues >= -tol * spectral scale.
bool is_psd(const HyperHermitianMatrix& a, double tol = 1e-10);

} // namespace qpot
