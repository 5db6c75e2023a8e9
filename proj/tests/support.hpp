#pragma once

#include <random>
#include <vector>

#include "skewgeom/skewgeom.hpp"

// Shared test helpers: seeded generators and independent oracles.  The
// oracles recompute products through the defining expansions (ambient
// cross/dot products plus basis expansion), never through the closed
// forms they are checking.

namespace testsupport {

using namespace skewgeom;

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    Scalar uniform(Scalar lo, Scalar hi) {
        return std::uniform_real_distribution<Scalar>(lo, hi)(engine);
    }
    Vec3 vec3(Scalar lo = -2.0, Scalar hi = 2.0) {
        return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    }
    Vec2 vec2(Scalar lo = -2.0, Scalar hi = 2.0) { return {uniform(lo, hi), uniform(lo, hi)}; }

    /// Random basis with the 2-norm condition number of [e1 e2 e3] bounded.
    Frame frame(Scalar max_condition = 1e4) {
        for (;;) {
            const Vec3 e1 = vec3(), e2 = vec3(), e3 = vec3();
            const Scalar det = Mat3::from_columns(e1, e2, e3).det();
            if (std::abs(det) < 1e-3) continue;
            Frame f = frame_from_vectors(e1, e2, e3);
            const EigenSym3 eig = eigen_sym3(f.gram);
            const Scalar lo = std::min({eig.values[0], eig.values[1], eig.values[2]});
            const Scalar hi = std::max({eig.values[0], eig.values[1], eig.values[2]});
            if (lo <= 0.0) continue;
            if (std::sqrt(hi / lo) > max_condition) continue;
            return f;
        }
    }

    /// Uniform random proper rotation from a unit quaternion.
    Mat3 rotation3() {
        std::normal_distribution<Scalar> n(0.0, 1.0);
        Scalar q0 = n(engine), q1 = n(engine), q2 = n(engine), q3 = n(engine);
        const Scalar s = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
        q0 /= s;
        q1 /= s;
        q2 /= s;
        q3 /= s;
        Mat3 r;
        r.m = {{{1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 - q0 * q3), 2 * (q1 * q3 + q0 * q2)},
                {2 * (q1 * q2 + q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3), 2 * (q2 * q3 - q0 * q1)},
                {2 * (q1 * q3 - q0 * q2), 2 * (q2 * q3 + q0 * q1), 1 - 2 * (q1 * q1 + q2 * q2)}}};
        return r;
    }

    Mat2 rotation2() { return Mat2::rotation(uniform(0.0, 2.0 * 3.14159265358979324)); }
};

// -- brute-force epsilon machinery ------------------------------------------------

/// Levi-Civita by direct case enumeration (independent of the library path).
inline Scalar eps_table(int i, int j, int k) {
    if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) || (i == 3 && j == 1 && k == 2))
        return 1.0;
    if ((i == 1 && j == 3 && k == 2) || (i == 3 && j == 2 && k == 1) || (i == 2 && j == 1 && k == 3))
        return -1.0;
    return 0.0;
}

inline Scalar contraction1_bruteforce(int m, int n, int p, int i, int j, int k) {
    return eps_table(m, n, p) * eps_table(i, j, k);
}
inline Scalar contraction2_bruteforce(int m, int n, int i, int j) {
    Scalar s = 0.0;
    for (int k = 1; k <= 3; ++k) s += eps_table(m, n, k) * eps_table(i, j, k);
    return s;
}
inline Scalar contraction3_bruteforce(int m, int i) {
    Scalar s = 0.0;
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) s += eps_table(m, j, k) * eps_table(i, j, k);
    return s;
}
inline Scalar contraction4_bruteforce() {
    Scalar s = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) s += eps_table(i, j, k) * eps_table(i, j, k);
    return s;
}

// -- structural-constant summation oracles ----------------------------------------

/// C^k_ij from the defining expansion: expand the ambient cross product of
/// the basis vectors back in the basis.
inline Scalar struct_constant_oracle(const Frame& f, int k, int i, int j) {
    const Vec3 cross = f.basis_vector(i).cross(f.basis_vector(j));
    const Vec3 coeffs = expand_in_frame(cross, f);
    return coeffs[k - 1];
}

/// Vector product through the structural-constant sum.
inline Vec3 vector_product_oracle(const Vec3& a, const Vec3& b, const Frame& f) {
    Vec3 out{};
    for (int k = 1; k <= 3; ++k) {
        Scalar sum = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                sum += a[i - 1] * b[j - 1] * struct_constant_oracle(f, k, i, j);
            }
        out[k - 1] = sum;
    }
    return out;
}

/// Mixed product through the structural-constant sum, with c_ijk taken from
/// ambient determinants of the basis vectors.
inline Scalar mixed_product_oracle(const Vec3& a, const Vec3& b, const Vec3& c, const Frame& f) {
    Scalar sum = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                const Scalar cijk =
                    Mat3::from_rows(f.basis_vector(i), f.basis_vector(j), f.basis_vector(k)).det();
                sum += a[i - 1] * b[j - 1] * c[k - 1] * cijk;
            }
    return sum;
}

}  // namespace testsupport
