#include "thurston/cross_ratio.hpp"

namespace thurston {

std::string Vec2::to_string() const { return "(" + a.to_string() + "," + b.to_string() + ")"; }

Mat2 Mat2::identity(const Ring& r) { return {r.one(), r.zero(), r.zero(), r.one()}; }

Mat2 Mat2::from_columns(const Vec2& first, const Vec2& second) { return {first.a, second.a, first.b, second.b}; }

std::string Mat2::to_string() const {
    return "[[" + a.to_string() + "," + c.to_string() + "],[" + b.to_string() + "," + d.to_string() + "]]";
}

Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.a + y.a, x.b + y.b}; }

Vec2 operator*(const RingElement& s, const Vec2& v) { return {s * v.a, s * v.b}; }

Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.a + m.c * v.b, m.b * v.a + m.d * v.b}; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.c * y.b, x.a * y.c + x.c * y.d, x.b * y.a + x.d * y.b, x.b * y.c + x.d * y.d};
}

Mat2 operator*(const RingElement& s, const Mat2& m) { return {s * m.a, s * m.c, s * m.b, s * m.d}; }

RingElement form(const Vec2& x, const Vec2& y) { return x.a * y.b - x.b * y.a; }

Mat2 adjugate(const Mat2& m) { return {m.d, -m.c, -m.b, m.a}; }

Mat2 inverse(const Mat2& m) { return m.det().inverse() * adjugate(m); }

RingElement cross_symbol(std::span<const Vec2, 4> pts, int i, int j, int k, int l) {
    return form(pts[i - 1], pts[j - 1]) * form(pts[k - 1], pts[l - 1]);
}

Vec2 cross_ratio(const Vec2& a1, const Vec2& a2, const Vec2& a3, const Vec2& a4) {
    return {form(a1, a4) * form(a2, a3), form(a1, a3) * form(a2, a4)};
}

bool is_admissible(std::span<const Vec2> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (!form(pts[i], pts[j]).is_unit()) return false;
        }
    }
    return true;
}

Mat2 normalize_pair(const Vec2& x, const Vec2& y) {
    const RingElement f = form(x, y);
    if (!f.is_unit()) throw Error(Errc::FormNotUnit, "<" + x.to_string() + "," + y.to_string() + "> = " + f.to_string());
    return f.inverse() * adjugate(Mat2::from_columns(x, y));
}

Vec2 fourth_point(const Vec2& a1, const Vec2& a2, const Vec2& a3, const Vec2& v) {
    const std::array<Vec2, 3> triple{a1, a2, a3};
    if (!is_admissible(triple)) throw Error(Errc::NotAdmissible, "triple " + a1.to_string() + a2.to_string() + a3.to_string());
    const Mat2 n = normalize_pair(a1, a2);
    const Vec2 p3 = n * a3;
    // cross ratios scale by det^2 under a linear map
    const RingElement s = n.det() * n.det();
    const RingElement c1 = s * v.a;
    const RingElement c2 = s * v.b;
    const Vec2 p4{-(c2 * p3.b.inverse()), -(c1 * p3.a.inverse())};
    const Vec2 a4 = inverse(n) * p4;
    if (!(cross_ratio(a1, a2, a3, a4) == v)) {
        throw Error(Errc::ConventionViolation, "fourth point does not reproduce the cross ratio");
    }
    return a4;
}

ProjPoint::ProjPoint(Vec2 rep) : rep_(std::move(rep)) {
    require_same_ring(rep_.a, rep_.b);
    if (!ring().generates_unit_ideal(rep_.a.index(), rep_.b.index())) {
        throw Error(Errc::NotAdmissible, rep_.to_string() + " is not a point of the projective line");
    }
}

std::string ProjPoint::to_string() const { return "[" + rep_.a.to_string() + "," + rep_.b.to_string() + "]"; }

bool operator==(const ProjPoint& x, const ProjPoint& y) {
    require_same_ring(x.rep_.a, y.rep_.a);
    const Ring& r = x.ring();
    const auto xa = x.rep_.a.index(), xb = x.rep_.b.index();
    const auto ya = y.rep_.a.index(), yb = y.rep_.b.index();
    for (auto u : r.unit_indices()) {
        if (r.mul(u, ya) == xa && r.mul(u, yb) == xb) return true;
    }
    return false;
}

PGLElement::PGLElement(Mat2 rep) : rep_(std::move(rep)) {
    if (!rep_.det().is_unit()) throw Error(Errc::NotAUnit, "determinant of " + rep_.to_string() + " is not a unit");
}

PGLElement PGLElement::inverse() const { return PGLElement(adjugate(rep_)); }

bool pgl_equal(const PGLElement& x, const PGLElement& y) {
    const Mat2 m = x.rep() * adjugate(y.rep());
    return m.c.is_zero() && m.b.is_zero() && m.a == m.d;
}

ProjPoint apply_pgl(const PGLElement& x, const ProjPoint& p) { return ProjPoint(x.rep() * p.rep()); }

namespace {

// D*N sending the triple to (1,0), (0,1), (1,1) up to scalars.
Mat2 standard_frame(std::span<const Vec2, 3> t) {
    if (!is_admissible(t)) {
        throw Error(Errc::NotAdmissible, "triple " + t[0].to_string() + t[1].to_string() + t[2].to_string());
    }
    const Mat2 n = normalize_pair(t[0], t[1]);
    const Vec2 p3 = n * t[2];
    const Ring& r = p3.a.ring();
    const Mat2 d{p3.a.inverse(), r.zero(), r.zero(), p3.b.inverse()};
    return d * n;
}

} // namespace

PGLElement mobius_from_triples(std::span<const Vec2, 3> from, std::span<const Vec2, 3> to) {
    const Mat2 fa = standard_frame(from);
    const Mat2 fb = standard_frame(to);
    return PGLElement(inverse(fb) * fa);
}

PGLElement mobius_from_triples(std::span<const ProjPoint, 3> from, std::span<const ProjPoint, 3> to) {
    const std::array<Vec2, 3> a{from[0].rep(), from[1].rep(), from[2].rep()};
    const std::array<Vec2, 3> b{to[0].rep(), to[1].rep(), to[2].rep()};
    return mobius_from_triples(a, b);
}

} // namespace thurston
