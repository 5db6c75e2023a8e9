#pragma once

#include <algorithm>

#include "skewgeom/core.hpp"
#include "skewgeom/frame.hpp"

// Levi-Civita machinery and the three products over arbitrary bases.
//
// The products use the closed forms driven by the Gram matrix and the
// orientation sign; the structural-constant summation route is kept as a
// cross-check oracle in the test suite.  Public indices are 1-based to
// match the usual tensor notation; storage is 0-based.

namespace skewgeom {

/// Levi-Civita symbol over index triples 1..3.
inline Scalar epsilon(int i, int j, int k) {
    require_index3(i);
    require_index3(j);
    require_index3(k);
    if (i == j || j == k || i == k) return 0.0;
    // parity of the permutation (i,j,k) of (1,2,3)
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

// -- contraction identities --------------------------------------------------
// Closed forms relating epsilon and the Kronecker delta.  The equivalent
// brute-force sums over epsilon products live in the tests as oracles.

/// epsilon^{mnp} epsilon_{ijk} as a 3x3 delta determinant.
inline Scalar first_contraction(int m, int n, int p, int i, int j, int k) {
    const Mat3 d = Mat3::from_rows({kronecker(m, i), kronecker(m, j), kronecker(m, k)},
                                   {kronecker(n, i), kronecker(n, j), kronecker(n, k)},
                                   {kronecker(p, i), kronecker(p, j), kronecker(p, k)});
    return d.det();
}

/// sum_k epsilon^{mnk} epsilon_{ijk} as a 2x2 delta determinant.
inline Scalar second_contraction(int m, int n, int i, int j) {
    return kronecker(m, i) * kronecker(n, j) - kronecker(m, j) * kronecker(n, i);
}

/// sum_{jk} epsilon^{mjk} epsilon_{ijk} = 2 delta^m_i.
inline Scalar third_contraction(int m, int i) { return 2.0 * kronecker(m, i); }

/// sum_{ijk} epsilon^{ijk} epsilon_{ijk} = 6.
inline Scalar fourth_contraction() { return 6.0; }

// -- products in a skew-angular basis ----------------------------------------

/// (a,b) = sum_{ij} a^i b^j g_ij.
inline Scalar scalar_product(const Vec3& a, const Vec3& b, const Frame& f) {
    return a.dot(f.gram * b);
}

inline Scalar metric_norm(const Vec3& a, const Frame& f) {
    return std::sqrt(std::max(0.0, scalar_product(a, a, f)));
}

/// (a,b,c) = sign * sqrt(det G) * det[a; b; c] with sign = frame orientation.
inline Scalar mixed_product(const Vec3& a, const Vec3& b, const Vec3& c, const Frame& f) {
    const Scalar det = Mat3::from_rows(a, b, c).det();
    return f.orientation * f.sqrt_det_gram * det;
}

/// [a,b]^k = sign * sqrt(det G) * sum_{ijq} a^i b^j eps_ijq g^{qk}.
inline Vec3 vector_product(const Vec3& a, const Vec3& b, const Frame& f) {
    // sum over q of a^i b^j eps_ijq is the coordinate cross product
    const Vec3 w = a.cross(b);
    return (f.gram_inv * w) * (f.orientation * f.sqrt_det_gram);
}

// -- structural constants ------------------------------------------------------

/// Expansion coefficients C^k_ij of [e_i, e_j] in the basis itself.
/// Antisymmetric in (i,j).
struct VectorStructConstants {
    // storage [k-1][i-1][j-1]
    std::array<std::array<std::array<Scalar, 3>, 3>, 3> c{};

    Scalar at(int k, int i, int j) const {
        require_index3(k);
        require_index3(i);
        require_index3(j);
        return c[k - 1][i - 1][j - 1];
    }
};

/// Mixed products c_ijk = (e_i, e_j, e_k); completely antisymmetric and
/// equal to the oriented volume times epsilon.
struct MixedStructConstants {
    std::array<std::array<std::array<Scalar, 3>, 3>, 3> c{};

    Scalar at(int i, int j, int k) const {
        require_index3(i);
        require_index3(j);
        require_index3(k);
        return c[i - 1][j - 1][k - 1];
    }
};

/// C^k_ij = sign * sqrt(det G) * sum_q eps_ijq g^{qk}.
inline VectorStructConstants vector_struct_constants(const Frame& f) {
    VectorStructConstants out;
    const Scalar v = f.orientation * f.sqrt_det_gram;
    for (int k = 1; k <= 3; ++k)
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                Scalar sum = 0.0;
                for (int q = 1; q <= 3; ++q) {
                    sum += epsilon(i, j, q) * f.gram_inv(q - 1, k - 1);
                }
                out.c[k - 1][i - 1][j - 1] = v * sum;
            }
    return out;
}

/// c_ijk = oriented volume * eps_ijk.
inline MixedStructConstants mixed_struct_constants(const Frame& f) {
    MixedStructConstants out;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                out.c[i - 1][j - 1][k - 1] = f.oriented_volume * epsilon(i, j, k);
            }
    return out;
}

/// Max deviation over all index triples of the two relations tying the
/// structural constants together: c_ijk = sum_q C^q_ij g_qk and
/// C^k_ij = sum_q c_ijq g^{qk}.
inline Scalar struct_constants_relation_check(const Frame& f) {
    const VectorStructConstants cv = vector_struct_constants(f);
    const MixedStructConstants cm = mixed_struct_constants(f);
    Scalar worst = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                Scalar lower = 0.0;  // sum_q C^q_ij g_qk
                Scalar raise = 0.0;  // sum_q c_ijq g^{qk}
                for (int q = 1; q <= 3; ++q) {
                    lower += cv.at(q, i, j) * f.gram(q - 1, k - 1);
                    raise += cm.at(i, j, q) * f.gram_inv(q - 1, k - 1);
                }
                worst = std::max(worst, std::abs(cm.at(i, j, k) - lower));
                worst = std::max(worst, std::abs(cv.at(k, i, j) - raise));
            }
    return worst;
}

// -- identity theorems ---------------------------------------------------------

/// b (a,c) - c (a,b); equals [a,[b,c]] for every frame.
inline Vec3 triple_product_expand(const Vec3& a, const Vec3& b, const Vec3& c, const Frame& f) {
    return b * scalar_product(a, c, f) - c * scalar_product(a, b, f);
}

/// Metric norm of [a,[b,c]] + [b,[c,a]] + [c,[a,b]]; zero up to roundoff.
inline Scalar jacobi_residual(const Vec3& a, const Vec3& b, const Vec3& c, const Frame& f) {
    const Vec3 sum = vector_product(a, vector_product(b, c, f), f) +
                     vector_product(b, vector_product(c, a, f), f) +
                     vector_product(c, vector_product(a, b, f), f);
    return metric_norm(sum, f);
}

/// (a,b,c)(x,y,z) as the determinant of the matrix of pairwise scalar
/// products.
inline Scalar mixed_product_pair(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x,
                                 const Vec3& y, const Vec3& z, const Frame& f) {
    const Mat3 products = Mat3::from_rows(
        {scalar_product(a, x, f), scalar_product(b, x, f), scalar_product(c, x, f)},
        {scalar_product(a, y, f), scalar_product(b, y, f), scalar_product(c, y, f)},
        {scalar_product(a, z, f), scalar_product(b, z, f), scalar_product(c, z, f)});
    return products.det();
}

}  // namespace skewgeom
