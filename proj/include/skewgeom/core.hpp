#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

// Small fixed-size vector/matrix types shared by the whole kernel.
// All matrices are stored row-major; an upper index is a row number,
// a lower index is a column number.

namespace skewgeom {

using Scalar = double;

// ---------------------------------------------------------------------------
// Errors

struct KernelError : std::runtime_error {
    explicit KernelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateBasis : KernelError {
    explicit DegenerateBasis(const std::string& msg = "basis vectors are coplanar")
        : KernelError(msg) {}
};
struct EmptyInput : KernelError {
    explicit EmptyInput(const std::string& msg = "empty input") : KernelError(msg) {}
};
struct IndexOutOfRange : KernelError {
    explicit IndexOutOfRange(const std::string& msg = "index out of range 1..3")
        : KernelError(msg) {}
};
struct ZeroAxis : KernelError {
    explicit ZeroAxis(const std::string& msg = "axis vector is numerically zero")
        : KernelError(msg) {}
};
struct NotRepresentable : KernelError {
    explicit NotRepresentable(const std::string& msg) : KernelError(msg) {}
};
struct ParallelPlanes : KernelError {
    explicit ParallelPlanes(const std::string& msg = "plane normals are parallel")
        : KernelError(msg) {}
};
struct PointNotOnCurve : KernelError {
    explicit PointNotOnCurve(const std::string& msg = "point does not lie on the curve")
        : KernelError(msg) {}
};
struct UndefinedForCircle : KernelError {
    explicit UndefinedForCircle(const std::string& msg = "directrix is undefined for a circle")
        : KernelError(msg) {}
};
struct InvalidShape : KernelError {
    explicit InvalidShape(const std::string& msg) : KernelError(msg) {}
};
struct NotSecondOrder : KernelError {
    explicit NotSecondOrder(const std::string& msg = "quadratic part vanishes")
        : KernelError(msg) {}
};
struct NonOrthogonalRotation : KernelError {
    explicit NonOrthogonalRotation(const std::string& msg = "rotation matrix is not orthogonal")
        : KernelError(msg) {}
};
struct NonFiniteInput : KernelError {
    explicit NonFiniteInput(const std::string& msg = "non-finite value") : KernelError(msg) {}
};
struct InvalidForm : KernelError {
    explicit InvalidForm(const std::string& msg) : KernelError(msg) {}
};

// ---------------------------------------------------------------------------
// Vectors

struct Vec2 {
    Scalar x = 0.0;
    Scalar y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(Scalar s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(Scalar s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    // Dot product in the ambient reference frame (identity metric).
    constexpr Scalar dot(const Vec2& o) const { return x * o.x + y * o.y; }
    Scalar norm() const { return std::sqrt(dot(*this)); }
};

inline constexpr Vec2 operator*(Scalar s, const Vec2& v) { return v * s; }

struct Vec3 {
    Scalar x = 0.0;
    Scalar y = 0.0;
    Scalar z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(Scalar s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(Scalar s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }

    // Dot and cross in the ambient reference ONB.  Metric-aware products
    // over arbitrary bases live in tensor.hpp.
    constexpr Scalar dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    Scalar norm() const { return std::sqrt(dot(*this)); }

    constexpr Scalar operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Scalar& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline constexpr Vec3 operator*(Scalar s, const Vec3& v) { return v * s; }

inline bool is_finite(Scalar s) { return std::isfinite(s); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }
inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// ---------------------------------------------------------------------------
// Matrices

struct Mat2 {
    // m[row][col]
    std::array<std::array<Scalar, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};

    static constexpr Mat2 identity() { return {}; }
    static Mat2 rotation(Scalar phi) {
        const Scalar c = std::cos(phi), s = std::sin(phi);
        Mat2 r;
        r.m = {{{c, -s}, {s, c}}};
        return r;
    }

    Scalar operator()(int r, int c) const { return m[r][c]; }
    Scalar& operator()(int r, int c) { return m[r][c]; }

    Vec2 operator*(const Vec2& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    Mat2 transposed() const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[j][i];
        return r;
    }
    Scalar det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

struct Mat3 {
    std::array<std::array<Scalar, 3>, 3> m{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};

    static constexpr Mat3 identity() { return {}; }

    // Columns are the given vectors (basis vectors go into columns).
    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m = {{{c0.x, c1.x, c2.x}, {c0.y, c1.y, c2.y}, {c0.z, c1.z, c2.z}}};
        return r;
    }
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        Mat3 r;
        r.m = {{{r0.x, r0.y, r0.z}, {r1.x, r1.y, r1.z}, {r2.x, r2.y, r2.z}}};
        return r;
    }

    Scalar operator()(int r, int c) const { return m[r][c]; }
    Scalar& operator()(int r, int c) { return m[r][c]; }

    Vec3 column(int c) const { return {m[0][c], m[1][c], m[2][c]}; }
    Vec3 row(int r) const { return {m[r][0], m[r][1], m[r][2]}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }
    Scalar det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    // Closed-form inverse by adjugate/cofactors; deterministic and
    // branch-free at this size.  Caller guarantees non-degeneracy.
    Mat3 inverse() const {
        const Scalar d = det();
        Mat3 r;
        r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
        r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
        r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
        r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
        r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
        r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
        r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
        r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
        r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
        return r;
    }

    Scalar max_abs() const {
        Scalar r = 0.0;
        for (const auto& row : m)
            for (Scalar v : row) r = std::max(r, std::abs(v));
        return r;
    }
};

// Symmetric 3x3 matrix; entry (i,j) and (j,i) share storage so the
// symmetry invariant is structural.
struct SymMat3 {
    Scalar xx = 1.0, xy = 0.0, xz = 0.0, yy = 1.0, yz = 0.0, zz = 1.0;

    static constexpr SymMat3 identity() { return {}; }

    Scalar operator()(int r, int c) const {
        // six independent entries, shared across the diagonal
        const int a = std::min(r, c), b = std::max(r, c);
        if (a == 0) return b == 0 ? xx : (b == 1 ? xy : xz);
        if (a == 1) return b == 1 ? yy : yz;
        return zz;
    }

    Vec3 operator*(const Vec3& v) const {
        return {xx * v.x + xy * v.y + xz * v.z,
                xy * v.x + yy * v.y + yz * v.z,
                xz * v.x + yz * v.y + zz * v.z};
    }

    Scalar det() const {
        return xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) + xz * (xy * yz - yy * xz);
    }

    Mat3 to_mat() const {
        Mat3 r;
        r.m = {{{xx, xy, xz}, {xy, yy, yz}, {xz, yz, zz}}};
        return r;
    }

    SymMat3 inverse() const {
        const Scalar d = det();
        SymMat3 r;
        r.xx = (yy * zz - yz * yz) / d;
        r.xy = (xz * yz - xy * zz) / d;
        r.xz = (xy * yz - xz * yy) / d;
        r.yy = (xx * zz - xz * xz) / d;
        r.yz = (xy * xz - xx * yz) / d;
        r.zz = (xx * yy - xy * xy) / d;
        return r;
    }
};

struct SymMat2 {
    Scalar xx = 1.0, xy = 0.0, yy = 1.0;

    static constexpr SymMat2 identity() { return {}; }

    Scalar operator()(int r, int c) const {
        if (r == 0 && c == 0) return xx;
        if (r == 1 && c == 1) return yy;
        return xy;
    }
    Vec2 operator*(const Vec2& v) const {
        return {xx * v.x + xy * v.y, xy * v.x + yy * v.y};
    }
    Scalar det() const { return xx * yy - xy * xy; }
    SymMat2 inverse() const {
        const Scalar d = det();
        return {yy / d, -xy / d, xx / d};
    }
};

// ---------------------------------------------------------------------------
// Small helpers

inline void require_index3(int i) {
    if (i < 1 || i > 3) throw IndexOutOfRange();
}

inline void require_finite(Scalar s, const char* what) {
    if (!std::isfinite(s)) throw NonFiniteInput(std::string(what) + " is not finite");
}
inline void require_finite(const Vec3& v, const char* what) {
    if (!is_finite(v)) throw NonFiniteInput(std::string(what) + " is not finite");
}
inline void require_finite(const Vec2& v, const char* what) {
    if (!is_finite(v)) throw NonFiniteInput(std::string(what) + " is not finite");
}

}  // namespace skewgeom
