#pragma once

#include <array>
#include <span>
#include <string>

#include "thurston/ring.hpp"

namespace thurston {

/// Column vector (a, b).
struct Vec2 {
    RingElement a;
    RingElement b;

    friend bool operator==(const Vec2& x, const Vec2& y) { return x.a == y.a && x.b == y.b; }
    std::string to_string() const;
};

/// [[a, c], [b, d]]; the columns are (a, b) and (c, d).
struct Mat2 {
    RingElement a;
    RingElement c;
    RingElement b;
    RingElement d;

    static Mat2 identity(const Ring& r);
    static Mat2 from_columns(const Vec2& first, const Vec2& second);

    RingElement det() const { return a * d - b * c; }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.c == y.c && x.b == y.b && x.d == y.d;
    }
    std::string to_string() const;
};

Vec2 operator+(const Vec2& x, const Vec2& y);
Vec2 operator*(const RingElement& s, const Vec2& v);
Vec2 operator*(const Mat2& m, const Vec2& v);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(const RingElement& s, const Mat2& m);

/// <A, B> = det of the matrix with columns A, B.
RingElement form(const Vec2& x, const Vec2& y);
Mat2 adjugate(const Mat2& m);
/// Throws NotAUnit.
Mat2 inverse(const Mat2& m);

/// R_ijkl = <A_i, A_j><A_k, A_l>, indices 1-based.
RingElement cross_symbol(std::span<const Vec2, 4> pts, int i, int j, int k, int l);
/// (R_1423, R_1324).
Vec2 cross_ratio(const Vec2& a1, const Vec2& a2, const Vec2& a3, const Vec2& a4);

/// Pairwise forms are all units.
bool is_admissible(std::span<const Vec2> pts);

/// X with X*A = (1,0) and X*B = (0,1). Throws FormNotUnit.
Mat2 normalize_pair(const Vec2& x, const Vec2& y);

/// The unique A4 with cross_ratio(A1, A2, A3, A4) = v. Throws NotAdmissible
/// when the triple is not admissible.
Vec2 fourth_point(const Vec2& a1, const Vec2& a2, const Vec2& a3, const Vec2& v);

/// A point of the projective line: a vector (a, b) with (a, b) = R.
class ProjPoint {
public:
    /// Throws NotAdmissible for a vector that is not unimodular.
    explicit ProjPoint(Vec2 rep);

    const Vec2& rep() const noexcept { return rep_; }
    const Ring& ring() const { return rep_.a.ring(); }
    std::string to_string() const;

    /// Equal up to a unit scalar; decided by scanning the units.
    friend bool operator==(const ProjPoint& x, const ProjPoint& y);

private:
    Vec2 rep_;
};

/// An element of PGL(2, R), kept as any representative with unit determinant.
class PGLElement {
public:
    /// Throws NotAUnit unless det is a unit.
    explicit PGLElement(Mat2 rep);
    static PGLElement identity(const Ring& r) { return PGLElement(Mat2::identity(r)); }

    const Mat2& rep() const noexcept { return rep_; }
    PGLElement inverse() const;

    friend PGLElement operator*(const PGLElement& x, const PGLElement& y) { return PGLElement(x.rep_ * y.rep_); }

private:
    Mat2 rep_;
};

/// X * adj(Y) is a scalar matrix.
bool pgl_equal(const PGLElement& x, const PGLElement& y);
ProjPoint apply_pgl(const PGLElement& x, const ProjPoint& p);

/// The unique class X with [X A_i] = [B_i]. Throws NotAdmissible.
PGLElement mobius_from_triples(std::span<const Vec2, 3> from, std::span<const Vec2, 3> to);
PGLElement mobius_from_triples(std::span<const ProjPoint, 3> from, std::span<const ProjPoint, 3> to);

} // namespace thurston
