#include "doctest.h"

#include <complex>
#include <random>

#include "qpot/quaternion.hpp"

using namespace qpot;

namespace {

Quaternion random_quat(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    return {d(rng), d(rng), d(rng), d(rng)};
}

} // namespace

TEST_CASE("unit quaternion multiplication table") {
    const Quaternion one(1.0);
    CHECK(quat_i * quat_i == -one);
    CHECK(quat_j * quat_j == -one);
    CHECK(quat_k * quat_k == -one);
    CHECK(quat_i * quat_j == quat_k);
    CHECK(quat_j * quat_k == quat_i);
    CHECK(quat_k * quat_i == quat_j);
    CHECK(quat_j * quat_i == -quat_k);
    CHECK(quat_k * quat_j == -quat_i);
    CHECK(quat_i * quat_k == -quat_j);
    CHECK(quat_i * quat_j * quat_k == -one);
}

TEST_CASE("product properties on random quaternions") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const Quaternion a = random_quat(rng);
        const Quaternion b = random_quat(rng);
        const Quaternion c = random_quat(rng);

        // Associativity.
        const Quaternion l = (a * b) * c;
        const Quaternion r = a * (b * c);
        CHECK((l - r).norm() <= 1e-12 * (1.0 + l.norm()));

        // Distributivity.
        const Quaternion d1 = a * (b + c);
        const Quaternion d2 = a * b + a * c;
        CHECK((d1 - d2).norm() <= 1e-12 * (1.0 + d1.norm()));

        // Norm is multiplicative.
        CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));

        // Conjugation is an anti-automorphism.
        const Quaternion cj = (a * b).conj();
        const Quaternion cj2 = b.conj() * a.conj();
        CHECK((cj - cj2).norm() <= 1e-12 * (1.0 + cj.norm()));

        // q * conj(q) is the real number |q|^2.
        const Quaternion nq = a * a.conj();
        CHECK(nq.is_real(1e-13 * (1.0 + a.norm_sq())));
        CHECK(nq.w == doctest::Approx(a.norm_sq()).epsilon(1e-13));
    }
}

TEST_CASE("real scalars embed centrally") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        const Quaternion a = random_quat(rng);
        const Quaternion s(1.7);
        const Quaternion l = s * a;
        const Quaternion r = a * s;
        CHECK((l - r).norm() <= 1e-14);
        CHECK((l - a * 1.7).norm() <= 1e-14);
    }
}

TEST_CASE("complex split round trip and multiplication model") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        const Quaternion q = random_quat(rng);
        const ComplexPair p = complex_split(q);
        const Quaternion back = from_complex_pair(p);
        CHECK((q - back).norm() <= 1e-15);

        // q = z1 + j z2 reconstructs component-wise.
        CHECK(p.z1.real() == doctest::Approx(q.w).epsilon(1e-15));
        CHECK(p.z1.imag() == doctest::Approx(q.x).epsilon(1e-15));
        CHECK(p.z2.real() == doctest::Approx(q.y).epsilon(1e-15));
        CHECK(p.z2.imag() == doctest::Approx(-q.z).epsilon(1e-15));

        // Product rule of the split model: (a1, a2)(b1, b2) =
        // (a1 b1 - conj(a2) b2, a2 b1 + conj(a1) b2) for q = z1 + j z2.
        const Quaternion w = random_quat(rng);
        const ComplexPair pw = complex_split(w);
        const ComplexPair prod = complex_split(q * w);
        const std::complex<double> e1 =
            p.z1 * pw.z1 - std::conj(p.z2) * pw.z2;
        const std::complex<double> e2 =
            p.z2 * pw.z1 + std::conj(p.z1) * pw.z2;
        CHECK(std::abs(prod.z1 - e1) <= 1e-12 * (1.0 + std::abs(e1)));
        CHECK(std::abs(prod.z2 - e2) <= 1e-12 * (1.0 + std::abs(e2)));
    }
}

TEST_CASE("j times complex number conjugates through") {
    // j z = conj(z) j for complex z = w + x i embedded as a quaternion.
    const Quaternion z{0.3, -1.2, 0.0, 0.0};
    const Quaternion zc = z.conj();
    const Quaternion lhs = quat_j * z;
    const Quaternion rhs = zc * quat_j;
    CHECK((lhs - rhs).norm() <= 1e-15);
}
