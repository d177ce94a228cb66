#include "thurston/developing.hpp"

namespace thurston {

bool TetLabeling::admissible() const {
    const std::array<Vec2, 4> reps{labels[0].rep(), labels[1].rep(), labels[2].rep(), labels[3].rep()};
    return is_admissible(reps);
}

std::string TetLabeling::to_string() const {
    std::string out = "tet " + std::to_string(tet) + ":";
    for (const auto& l : labels) out += " " + l.to_string();
    return out;
}

bool operator==(const TetLabeling& a, const TetLabeling& b) { return a.tet == b.tet && a.labels == b.labels; }

DualPath path_from_steps(const Triangulation& tri, const std::vector<DualStep>& steps) {
    if (steps.empty()) throw Error(Errc::InvalidPath, "a path needs at least one step");
    DualPath p{steps.front().tet, {}};
    int at = p.start;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (s.tet != at) {
            throw Error(Errc::InvalidPath, "step " + std::to_string(i) + " starts in tet " + std::to_string(s.tet) +
                                               " but the path is in tet " + std::to_string(at));
        }
        if (s.face < 0 || s.face > 3 || s.tet < 0 || s.tet >= tri.tet_count() || !tri.is_glued(s.tet, s.face)) {
            throw Error(Errc::InvalidPath, "step " + std::to_string(i) + " crosses no interior face");
        }
        p.faces.push_back(s.face);
        at = tri.neighbor(s.tet, s.face);
    }
    return p;
}

std::vector<int> path_tets(const Triangulation& tri, const DualPath& path) {
    if (path.start < 0 || path.start >= tri.tet_count()) throw Error(Errc::InvalidPath, "start tet out of range");
    std::vector<int> out{path.start};
    for (std::size_t i = 0; i < path.faces.size(); ++i) {
        const int f = path.faces[i];
        if (f < 0 || f > 3 || !tri.is_glued(out.back(), f)) {
            throw Error(Errc::InvalidPath, "step " + std::to_string(i) + " crosses no interior face");
        }
        out.push_back(tri.neighbor(out.back(), f));
    }
    return out;
}

DualPath reversed(const Triangulation& tri, const DualPath& path) {
    const auto tets = path_tets(tri, path);
    DualPath r{tets.back(), {}};
    for (std::size_t i = path.faces.size(); i-- > 0;) r.faces.push_back(tri.gluing_perm(tets[i], path.faces[i])[path.faces[i]]);
    return r;
}

DualPath concatenate(const Triangulation& tri, const DualPath& first, const DualPath& second) {
    if (path_tets(tri, first).back() != second.start) throw Error(Errc::InvalidPath, "paths do not meet");
    DualPath out = first;
    out.faces.insert(out.faces.end(), second.faces.begin(), second.faces.end());
    path_tets(tri, out);
    return out;
}

namespace {

// Position symmetries that preserve the cross ratio.
constexpr std::array<std::array<int, 4>, 4> kKlein{{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};

void require_units(const HTESolution& z, int tets) {
    if (z.tet_count() != tets) throw Error(Errc::NotUnitHTE, "HTE data does not match the triangulation");
    for (int t = 0; t < tets; ++t) {
        for (int m = 0; m < 3; ++m) {
            const Quad q{t, m};
            if (!z.assigned(q) || !z[q].is_unit()) {
                throw Error(Errc::NotUnitHTE, "z at quad " + std::to_string(t) + "." + std::to_string(m) + " is not a unit");
            }
        }
    }
}

bool quad_matches(const HTESolution& z, int tet, const std::array<Vec2, 4>& v, int m) {
    const auto& o = quad_vertex_order(m);
    const Vec2 cr = cross_ratio(v[o[0]], v[o[1]], v[o[2]], v[o[3]]);
    const Ring& r = cr.a.ring();
    if (!r.generates_unit_ideal(cr.a.index(), cr.b.index())) return false;
    return ProjPoint(cr) == quad_cross_ratio_target(z, {tet, m});
}

// Fills the label at vertex g from the other three via quad 0.
TetLabeling complete(const HTESolution& z, int tet, std::array<Vec2, 4> v, int g) {
    const auto& o = quad_vertex_order(0);
    std::array<int, 4> order{};
    for (const auto& k : kKlein) {
        if (o[k[3]] == g) order = {o[k[0]], o[k[1]], o[k[2]], o[k[3]]};
    }
    const RingElement& zq = z[{tet, 0}];
    const RingElement& zn = z[{tet, 1}];
    v[g] = fourth_point(v[order[0]], v[order[1]], v[order[2]], {zq, -zn});
    for (int m = 0; m < 3; ++m) {
        if (!quad_matches(z, tet, v, m)) {
            throw Error(Errc::ConventionViolation, "cross ratio of quad " + std::to_string(tet) + "." + std::to_string(m) +
                                                       " misses its target");
        }
    }
    return {tet, {ProjPoint(v[0]), ProjPoint(v[1]), ProjPoint(v[2]), ProjPoint(v[3])}};
}

} // namespace

TetLabeling seed_labeling(const Combinatorics& c, const HTESolution& z, int tet) {
    const Triangulation& tri = c.triangulation();
    require_units(z, tri.tet_count());
    if (tet < 0 || tet >= tri.tet_count()) throw Error(Errc::InvalidPath, "seed tet out of range");
    const Ring& r = z.ring;
    std::array<Vec2, 4> v{Vec2{r.one(), r.zero()}, Vec2{r.zero(), r.one()}, Vec2{r.one(), r.one()}, Vec2{r.zero(), r.zero()}};
    return complete(z, tet, v, 3);
}

TetLabeling extend_across_face(const Combinatorics& c, const HTESolution& z, const TetLabeling& from, int face) {
    const Triangulation& tri = c.triangulation();
    require_units(z, tri.tet_count());
    if (face < 0 || face > 3 || !tri.is_glued(from.tet, face)) {
        throw Error(Errc::InvalidPath, "face " + std::to_string(from.tet) + "." + std::to_string(face) + " is not interior");
    }
    if (!from.admissible()) throw Error(Errc::NotAdmissible, "source labeling is not admissible");
    const int to = tri.neighbor(from.tet, face);
    const Perm4& p = tri.gluing_perm(from.tet, face);
    std::array<Vec2, 4> v{from.labels[0].rep(), from.labels[0].rep(), from.labels[0].rep(), from.labels[0].rep()};
    for (int k = 0; k < 4; ++k) {
        if (k != face) v[p[k]] = from.labels[k].rep();
    }
    return complete(z, to, v, p[face]);
}

std::vector<TetLabeling> develop_path(const Combinatorics& c, const HTESolution& z, const DualPath& path,
                                      const TetLabeling& initial) {
    path_tets(c.triangulation(), path);
    if (initial.tet != path.start) throw Error(Errc::InvalidPath, "initial labeling is not on the start tet");
    std::vector<TetLabeling> out{initial};
    for (int f : path.faces) out.push_back(extend_across_face(c, z, out.back(), f));
    return out;
}

PGLElement holonomy_of_loop(const Combinatorics& c, const HTESolution& z, const DualPath& loop, const TetLabeling& initial) {
    const auto dev = develop_path(c, z, loop, initial);
    const TetLabeling& last = dev.back();
    if (last.tet != initial.tet) throw Error(Errc::InvalidPath, "path does not close");
    const std::array<ProjPoint, 3> from{last.labels[0], last.labels[1], last.labels[2]};
    const std::array<ProjPoint, 3> to{initial.labels[0], initial.labels[1], initial.labels[2]};
    PGLElement x = mobius_from_triples(from, to);
    if (!(apply_pgl(x, last.labels[3]) == initial.labels[3])) {
        throw Error(Errc::ConventionViolation, "holonomy depends on the chosen vertex triple");
    }
    return x;
}

namespace {

DualPath edge_loop(const Combinatorics& c, int edge) {
    return path_from_steps(c.triangulation(), c.dual_edge_cycle(edge));
}

} // namespace

PGLElement edge_monodromy(const Combinatorics& c, const HTESolution& z, int edge) {
    const DualPath loop = edge_loop(c, edge);
    return holonomy_of_loop(c, z, loop, seed_labeling(c, z, loop.start));
}

bool edge_monodromy_trivial(const Combinatorics& c, const HTESolution& z, int edge) {
    const DualPath loop = edge_loop(c, edge);
    const auto dev = develop_path(c, z, loop, seed_labeling(c, z, loop.start));
    return dev.back().labels == dev.front().labels;
}

} // namespace thurston
