#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "skewgeom/core.hpp"

// Bases anchored to one global reference ONB: Gram matrices, transition
// matrices, coordinate transformations and linear-dependence predicates.
// Coordinate triples carry upper indices; matrices use the upper index
// as the row number.

namespace skewgeom {

// Relative tolerance below which a basis counts as coplanar.
inline constexpr Scalar kDegenerateBasisTol = 1e-12;

/// A basis of three non-coplanar vectors given in the ambient reference ONB,
/// together with its metric data.
///
/// Invariants (established by frame_from_vectors):
///   - gram(i,j) = dot(e_i, e_j), det(gram) > 0
///   - gram * gram_inv = identity
///   - oriented_volume^2 = det(gram), orientation = sign(oriented_volume)
struct Frame {
    Vec3 e1, e2, e3;
    SymMat3 gram;
    SymMat3 gram_inv;
    Scalar oriented_volume = 1.0;  // det[e1 e2 e3] in the ambient ONB
    int orientation = +1;          // +1 right, -1 left
    Scalar sqrt_det_gram = 1.0;    // computed from the Gram matrix, not from the ambient determinant

    const Vec3& basis_vector(int i) const {
        require_index3(i);
        return i == 1 ? e1 : (i == 2 ? e2 : e3);
    }

    /// The ambient reference ONB itself (right-handed by construction).
    static Frame reference() {
        Frame f;
        f.e1 = {1.0, 0.0, 0.0};
        f.e2 = {0.0, 1.0, 0.0};
        f.e3 = {0.0, 0.0, 1.0};
        return f;
    }
};

inline Frame frame_from_vectors(const Vec3& e1, const Vec3& e2, const Vec3& e3) {
    require_finite(e1, "e1");
    require_finite(e2, "e2");
    require_finite(e3, "e3");
    const Scalar vol = Mat3::from_columns(e1, e2, e3).det();
    const Scalar scale = e1.norm() * e2.norm() * e3.norm();
    if (std::abs(vol) <= kDegenerateBasisTol * scale || vol == 0.0) {
        throw DegenerateBasis();
    }
    Frame f;
    f.e1 = e1;
    f.e2 = e2;
    f.e3 = e3;
    f.gram = SymMat3{e1.dot(e1), e1.dot(e2), e1.dot(e3), e2.dot(e2), e2.dot(e3), e3.dot(e3)};
    f.gram_inv = f.gram.inverse();
    f.oriented_volume = vol;
    f.orientation = vol > 0.0 ? +1 : -1;
    f.sqrt_det_gram = std::sqrt(f.gram.det());
    return f;
}

/// Ambient position of the vector with the given coordinates in frame f:
/// x^1 e1 + x^2 e2 + x^3 e3.
inline Vec3 reconstruct(const Vec3& coords, const Frame& f) {
    return f.e1 * coords.x + f.e2 * coords.y + f.e3 * coords.z;
}

/// Unique coefficients expanding an ambient vector in the basis of f.
inline Vec3 expand_in_frame(const Vec3& v_ambient, const Frame& f) {
    require_finite(v_ambient, "vector");
    return Mat3::from_columns(f.e1, f.e2, f.e3).inverse() * v_ambient;
}

/// Direct transition matrix S (columns = new basis vectors expanded in the
/// old basis) and its inverse T.  S*T = T*S = identity.
struct TransitionPair {
    Mat3 s;
    Mat3 t;
};

inline TransitionPair transition_between(const Frame& from, const Frame& to) {
    TransitionPair p;
    const Mat3 old_inv = Mat3::from_columns(from.e1, from.e2, from.e3).inverse();
    p.s = Mat3::from_columns(old_inv * to.e1, old_inv * to.e2, old_inv * to.e3);
    p.t = p.s.inverse();
    // one Newton step on the inverse tightens S*T to the identity
    Mat3 residual = p.s * p.t;
    for (int i = 0; i < 3; ++i) residual(i, i) -= 1.0;
    const Mat3 correction = p.t * residual;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p.t(i, j) -= correction(i, j);
    return p;
}

enum class TransformDirection { direct, inverse };

/// Coordinate change under a basis transition: direct applies T (old
/// coordinates to new), inverse applies S.
inline Vec3 transform_coordinates(const Vec3& x, const TransitionPair& pair,
                                  TransformDirection direction) {
    return direction == TransformDirection::direct ? pair.t * x : pair.s * x;
}

/// Kronecker delta over index pairs 1..3.
inline Scalar kronecker(int i, int j) {
    require_index3(i);
    require_index3(j);
    return i == j ? 1.0 : 0.0;
}

/// Rank-style dependence test: one vector is dependent iff zero, two iff
/// collinear, three iff coplanar, four or more always.
inline bool linear_dependence(std::span<const Vec3> vectors) {
    if (vectors.empty()) throw EmptyInput("linear_dependence needs at least one vector");
    for (const Vec3& v : vectors) require_finite(v, "vector");
    if (vectors.size() >= 4) return true;
    const Scalar tol = kDegenerateBasisTol;
    if (vectors.size() == 1) {
        return vectors[0].norm() <= tol * std::max(1.0, vectors[0].norm());
    }
    if (vectors.size() == 2) {
        const Scalar scale = vectors[0].norm() * vectors[1].norm();
        return vectors[0].cross(vectors[1]).norm() <= tol * std::max(1.0, scale);
    }
    const Scalar scale = vectors[0].norm() * vectors[1].norm() * vectors[2].norm();
    const Scalar det = Mat3::from_columns(vectors[0], vectors[1], vectors[2]).det();
    return std::abs(det) <= tol * std::max(1.0, scale);
}

inline bool linear_dependence(const std::vector<Vec3>& vectors) {
    return linear_dependence(std::span<const Vec3>(vectors));
}

}  // namespace skewgeom
