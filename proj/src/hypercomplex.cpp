#include "qpot/hypercomplex.hpp"

#include <algorithm>
#include <cmath>

#include "qpot/errors.hpp"

namespace qpot {

CoordinatePoint::CoordinatePoint(int n_) : n(n_), x(static_cast<size_t>(4 * n_), 0.0) {
    if (n_ < 1) throw InvalidInput("CoordinatePoint: n must be >= 1");
}

CoordinatePoint CoordinatePoint::from_quaternions(std::span<const Quaternion> q) {
    CoordinatePoint p(static_cast<int>(q.size()));
    for (int i = 0; i < p.n; ++i) p.set_quaternion(i, q[i]);
    return p;
}

CoordinatePoint CoordinatePoint::from_complex(std::span<const std::complex<double>> z) {
    if (z.size() % 2 != 0) throw InvalidInput("CoordinatePoint: odd complex coordinate count");
    CoordinatePoint p(static_cast<int>(z.size() / 2));
    for (int j = 0; j < 2 * p.n; ++j) p.set_complex_coord(j, z[j]);
    return p;
}

Quaternion CoordinatePoint::quaternion(int i) const {
    return {x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
}

void CoordinatePoint::set_quaternion(int i, const Quaternion& q) {
    x[4 * i] = q.w;
    x[4 * i + 1] = q.x;
    x[4 * i + 2] = q.y;
    x[4 * i + 3] = q.z;
}

std::complex<double> CoordinatePoint::complex_coord(int j) const {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return {x[2 * j], sign * x[2 * j + 1]};
}

void CoordinatePoint::set_complex_coord(int j, const std::complex<double>& z) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    x[2 * j] = z.real();
    x[2 * j + 1] = sign * z.imag();
}

SignedAxis structure_action(Structure s, int axis, int n) {
    if (axis < 0 || axis >= 4 * n) throw InvalidInput("structure_action: axis out of range");
    const int block = axis / 4;
    const int a = axis % 4;
    // Right multiplication tables on the frame (1, i, j, k):
    // by i: 1->i, i->-1, j->-k, k->j
    // by j: 1->j, i->k,  j->-1, k->-i
    // by k: 1->k, i->-j, j->i,  k->-1
    static constexpr int target[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int sign[3][4] = {{1, -1, -1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}};
    const int si = static_cast<int>(s);
    return {4 * block + target[si][a], sign[si][a]};
}

namespace {

double fd_step(std::span<const double> p, double h) {
    double m = 0.0;
    for (double v : p) m = std::max(m, std::abs(v));
    return h * (1.0 + m);
}

void check_point(const ScalarField& u, std::span<const double> p) {
    if (static_cast<int>(p.size()) != u.real_dim())
        throw InvalidInput("field point dimension mismatch");
}

} // namespace

Eigen::MatrixXd real_hessian(const ScalarField& u, std::span<const double> p, double h,
                             DerivativeMode mode) {
    check_point(u, p);
    const int d = u.real_dim();
    Eigen::MatrixXd out(d, d);
    const bool analytic =
        mode == DerivativeMode::Analytic || (mode == DerivativeMode::Auto && u.has_analytic());
    if (analytic) {
        if (!u.has_analytic())
            throw InvalidInput("real_hessian: analytic mode requested without polynomial backend");
        for (int m = 0; m < d; ++m) {
            const Polynomial dm = u.poly->derivative(m);
            for (int l = m; l < d; ++l) {
                const double v = dm.derivative(l).eval(p);
                out(m, l) = v;
                out(l, m) = v;
            }
        }
        return out;
    }
    const double s = fd_step(p, h);
    std::vector<double> q(p.begin(), p.end());
    const double center = u(q);
    for (int m = 0; m < d; ++m) {
        q[m] = p[m] + s;
        const double up = u(q);
        q[m] = p[m] - s;
        const double dn = u(q);
        q[m] = p[m];
        out(m, m) = (up - 2.0 * center + dn) / (s * s);
        for (int l = m + 1; l < d; ++l) {
            q[m] = p[m] + s; q[l] = p[l] + s;
            const double pp = u(q);
            q[l] = p[l] - s;
            const double pm = u(q);
            q[m] = p[m] - s; q[l] = p[l] + s;
            const double mp = u(q);
            q[l] = p[l] - s;
            const double mm = u(q);
            q[m] = p[m]; q[l] = p[l];
            const double v = (pp - pm - mp + mm) / (4.0 * s * s);
            out(m, l) = v;
            out(l, m) = v;
        }
    }
    return out;
}

std::vector<std::vector<Quaternion>> quaternionic_hessian_entries(const ScalarField& u,
                                                                  std::span<const double> p,
                                                                  double h, DerivativeMode mode) {
    const Eigen::MatrixXd d2 = real_hessian(u, p, h, mode);
    const int n = u.n;
    // prod[a][b] = e_a * c_b with c_0 = 1 and c_b = -e_b for b >= 1.
    static const Quaternion e[4] = {Quaternion(1.0), quat_i, quat_j, quat_k};
    Quaternion prod[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) prod[a][b] = (b == 0) ? e[a] : e[a] * (-e[b]);
    std::vector<std::vector<Quaternion>> out(n, std::vector<Quaternion>(n));
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            Quaternion acc;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    acc += d2(4 * al + a, 4 * be + b) * prod[a][b];
            out[al][be] = acc;
        }
    return out;
}

HyperHermitianMatrix quaternionic_hessian(const ScalarField& u, std::span<const double> p,
                                          double h, DerivativeMode mode) {
    return HyperHermitianMatrix::symmetrize(quaternionic_hessian_entries(u, p, h, mode));
}

std::complex<double> TwoFormCoefficients::trace_pairs() const {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) acc += c(2 * k, 2 * k + 1);
    return acc;
}

TwoFormCoefficients ddj_coefficients(const ScalarField& u, std::span<const double> p, double h,
                                     DerivativeMode mode) {
    const Eigen::MatrixXd d2 = real_hessian(u, p, h, mode);
    const int n = u.n;
    const int m2 = 2 * n;
    // zd(i, m) = d^2 u / dz_i dzbar_m from real second partials, with the
    // alternating imaginary-part convention z_j = x_{2j} + (-1)^j x_{2j+1} i.
    const std::complex<double> im(0.0, 1.0);
    Eigen::MatrixXcd zd(m2, m2);
    for (int i = 0; i < m2; ++i) {
        const double si = (i % 2 == 0) ? 1.0 : -1.0;
        for (int m = 0; m < m2; ++m) {
            const double sm = (m % 2 == 0) ? 1.0 : -1.0;
            zd(i, m) = 0.25 * (d2(2 * i, 2 * m) + sm * im * d2(2 * i, 2 * m + 1) -
                               si * im * d2(2 * i + 1, 2 * m) +
                               si * sm * d2(2 * i + 1, 2 * m + 1));
        }
    }
    auto b = [&](int i, int j) {
        const int jbar = (j % 2 == 0) ? j + 1 : j - 1;
        const double sign = (j % 2 == 1) ? 1.0 : -1.0; // (-1)^{j+1}
        return sign * zd(i, jbar);
    };
    TwoFormCoefficients out;
    out.n = n;
    out.c = Eigen::MatrixXcd::Zero(m2, m2);
    for (int i = 0; i < m2; ++i)
        for (int j = i + 1; j < m2; ++j) {
            const std::complex<double> v = b(i, j) - b(j, i);
            out.c(i, j) = v;
            out.c(j, i) = -v;
        }
    return out;
}

double ma_density(const ScalarField& u, std::span<const double> p, double h,
                  DerivativeMode mode) {
    const HyperHermitianMatrix hess = quaternionic_hessian(u, p, h, mode);
    double factorial = 1.0;
    for (int k = 2; k <= u.n; ++k) factorial *= k;
    return factorial / std::pow(4.0, u.n) * moore_det(hess);
}

bool is_qpsh_pointwise(const ScalarField& u, std::span<const double> p, double h,
                       DerivativeMode mode) {
    return is_psd(quaternionic_hessian(u, p, h, mode));
}

bool is_qpsh_pointwise(const ScalarField& u, const std::vector<std::vector<double>>& points,
                       double h, DerivativeMode mode) {
    return std::all_of(points.begin(), points.end(), [&](const std::vector<double>& p) {
        return is_qpsh_pointwise(u, p, h, mode);
    });
}

double laplacian(const ScalarField& u, std::span<const double> p, double h,
                 DerivativeMode mode) {
    return real_hessian(u, p, h, mode).trace();
}

} // namespace qpot
