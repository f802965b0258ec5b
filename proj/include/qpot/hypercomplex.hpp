#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpot/field.hpp"
#include "qpot/hyperhermitian.hpp"
#include "qpot/quaternion.hpp"

namespace qpot {

// Point of H^n carried in real coordinates x_0..x_{4n-1} with
// q_i = x_{4i} + x_{4i+1} i + x_{4i+2} j + x_{4i+3} k and complex coordinates
// z_j = x_{2j} + (-1)^j x_{2j+1} i (so q_i = z_{2i} + j z_{2i+1}).
struct CoordinatePoint {
    int n = 1;
    std::vector<double> x; // size 4n

    explicit CoordinatePoint(int n_);
    static CoordinatePoint from_quaternions(std::span<const Quaternion> q);
    static CoordinatePoint from_complex(std::span<const std::complex<double>> z);

    [[nodiscard]] Quaternion quaternion(int i) const;
    void set_quaternion(int i, const Quaternion& q);
    [[nodiscard]] std::complex<double> complex_coord(int j) const;
    void set_complex_coord(int j, const std::complex<double>& z);
};

// Right action of the hypercomplex structures on coordinate vector fields:
// (d_{x_a}) S = sign * d_{x_axis} where the frame d_{x_{4i+m}} corresponds to
// the quaternion unit e_m in slot i and S multiplies by i, j or k on the right.
enum class Structure { I, J, K };

struct SignedAxis {
    int axis;
    int sign; // +1 or -1
};

SignedAxis structure_action(Structure s, int axis, int n);

// Derivative path selection: Auto uses the analytic polynomial route when the
// field carries one, FiniteDifference forces central differences with step
// h * (1 + max|p_m|).
enum class DerivativeMode { Auto, FiniteDifference, Analytic };

// Full 4n x 4n matrix of second partials at p.
Eigen::MatrixXd real_hessian(const ScalarField& u, std::span<const double> p,
                             double h = 1e-3, DerivativeMode mode = DerivativeMode::Auto);

// Quaternionic Hessian entries before hyperhermitian symmetrization:
// entry(alpha, beta) = sum_{a,b} e_a * d^2 u / dx_{4alpha+a} dx_{4beta+b} * c_b
// with e_0..e_3 = 1,i,j,k and c_0 = 1, c_b = -e_b.
std::vector<std::vector<Quaternion>> quaternionic_hessian_entries(
    const ScalarField& u, std::span<const double> p, double h = 1e-3,
    DerivativeMode mode = DerivativeMode::Auto);

// Symmetrized hyperhermitian Hessian.
HyperHermitianMatrix quaternionic_hessian(const ScalarField& u, std::span<const double> p,
                                          double h = 1e-3,
                                          DerivativeMode mode = DerivativeMode::Auto);

// Coefficients of ddJ u as a 2-form sum_{i<j} c(i,j) dz_i ^ dz_j, stored as the
// full antisymmetric (2n)x(2n) complex array. trace_pairs() = sum_k c(2k,2k+1)
// equals Laplacian(u)/4 (the Delta = 4 ddJ bridge).
struct TwoFormCoefficients {
    int n = 1;
    Eigen::MatrixXcd c;

    [[nodiscard]] std::complex<double> trace_pairs() const;
};

TwoFormCoefficients ddj_coefficients(const ScalarField& u, std::span<const double> p,
                                     double h = 1e-3,
                                     DerivativeMode mode = DerivativeMode::Auto);

// Monge-Ampere density (n!/4^n) * moore_det(quaternionic_hessian), the density
// of (ddJ u)^n against the standard 2n-form basis.
double ma_density(const ScalarField& u, std::span<const double> p, double h = 1e-3,
                  DerivativeMode mode = DerivativeMode::Auto);

// Pointwise subharmonicity check: hyperhermitian Hessian PSD at every point.
bool is_qpsh_pointwise(const ScalarField& u, std::span<const double> p, double h = 1e-3,
                       DerivativeMode mode = DerivativeMode::Auto);
bool is_qpsh_pointwise(const ScalarField& u, const std::vector<std::vector<double>>& points,
                       double h = 1e-3, DerivativeMode mode = DerivativeMode::Auto);

// Laplacian over all 4n coordinates (sum of the real Hessian diagonal).
double laplacian(const ScalarField& u, std::span<const double> p, double h = 1e-3,
                 DerivativeMode mode = DerivativeMode::Auto);

} // namespace qpot
