#include "thurston/pachner.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

namespace thurston {

namespace {

using Tuple = std::array<int, 4>;

// A retriangulated region. Vertices of the removed tetrahedra carry point
// labels; new tetrahedra are given as point tuples.
struct Region {
    std::vector<int> old_tets;
    std::vector<Tuple> old_points;
    std::vector<Tuple> new_tets;
    // old tet index the i-th new tet replaces, or -1 to append
    std::vector<int> placement;
};

std::string face_name(int tet, int face) { return std::to_string(tet) + "." + std::to_string(face); }

int region_index(const Region& reg, int tet) {
    const auto it = std::find(reg.old_tets.begin(), reg.old_tets.end(), tet);
    return it == reg.old_tets.end() ? -1 : static_cast<int>(it - reg.old_tets.begin());
}

std::set<int> face_points(const Tuple& pts, int face) {
    std::set<int> out;
    for (int v = 0; v < 4; ++v) {
        if (v != face) out.insert(pts[v]);
    }
    return out;
}

int position(const Tuple& tuple, int point) {
    for (int k = 0; k < 4; ++k) {
        if (tuple[k] == point) return k;
    }
    return -1;
}

bool internal_face(const Triangulation& tri, const Region& reg, int r, int face) {
    const int tet = reg.old_tets[r];
    if (!tri.is_glued(tet, face)) return false;
    const int r2 = region_index(reg, tri.neighbor(tet, face));
    if (r2 < 0) return false;
    const int face2 = tri.gluing_perm(tet, face)[face];
    return face_points(reg.old_points[r], face) == face_points(reg.old_points[r2], face2);
}

// A new tetrahedron lies on the same side of a region boundary face as the old
// one it shares that face with, so the two orderings (A, B, C, apex) agree in
// sign. Swaps the last two entries when the given order is negative.
Tuple orient(const Triangulation& tri, const Region& reg, Tuple tuple) {
    int verdict = -1;
    for (int k = 0; k < 4; ++k) {
        const auto tri_pts = face_points(tuple, k);
        for (std::size_t r = 0; r < reg.old_tets.size(); ++r) {
            for (int g = 0; g < 4; ++g) {
                if (face_points(reg.old_points[r], g) != tri_pts || internal_face(tri, reg, static_cast<int>(r), g)) continue;
                Perm4 old_order{}, new_order{};
                int n = 0;
                for (int j = 0; j < 4; ++j) {
                    if (j == k) continue;
                    old_order[n] = position(reg.old_points[r], tuple[j]);
                    new_order[n] = j;
                    ++n;
                }
                old_order[3] = g;
                new_order[3] = k;
                const int v = is_odd(old_order) == is_odd(new_order) ? 0 : 1;
                if (verdict >= 0 && verdict != v) throw Error(Errc::ConventionViolation, "region orientation is inconsistent");
                verdict = v;
            }
        }
    }
    if (verdict < 0) throw Error(Errc::ConventionViolation, "a new tetrahedron meets no old boundary face");
    if (verdict == 1) std::swap(tuple[2], tuple[3]);
    return tuple;
}

void glue_checked(Triangulation& tri, int tet, int face, int to, const Perm4& perm) {
    if (!is_odd(perm)) {
        throw Error(Errc::ConventionViolation, "move produced an even gluing at face " + face_name(tet, face));
    }
    tri.glue(tet, face, to, perm);
}

// Retriangulates; fills reg.new_tets with the oriented tuples. Returns the
// result without its edge map, plus the final index of every new tet.
MoveResult retriangulate(const Triangulation& tri, Region& reg) {
    for (auto& t : reg.new_tets) t = orient(tri, reg, t);

    const int n = tri.tet_count();
    const int k = static_cast<int>(reg.new_tets.size());
    std::vector<int> index(k);
    int next = n;
    std::set<int> used;
    for (int i = 0; i < k; ++i) {
        index[i] = reg.placement[i] >= 0 ? reg.placement[i] : next++;
        used.insert(index[i]);
    }
    Triangulation out(next);

    struct Mapped {
        int tet;
        int face;
        Perm4 vmap;
    };
    auto map_side = [&](int tet, int face) -> Mapped {
        const int r = region_index(reg, tet);
        if (r < 0) return {tet, face, identity_perm};
        const auto pts = face_points(reg.old_points[r], face);
        for (int i = 0; i < k; ++i) {
            for (int g = 0; g < 4; ++g) {
                if (face_points(reg.new_tets[i], g) != pts) continue;
                Perm4 vmap{};
                for (int v = 0; v < 4; ++v) vmap[v] = v == face ? g : position(reg.new_tets[i], reg.old_points[r][v]);
                return {index[i], g, vmap};
            }
        }
        throw Error(Errc::ConventionViolation, "boundary face " + face_name(tet, face) + " has no new home");
    };

    for (const auto& gl : tri.gluings()) {
        const int r1 = region_index(reg, gl.tet);
        const int r2 = region_index(reg, gl.to_tet);
        if (r1 < 0 && r2 < 0) {
            out.glue(gl.tet, gl.face, gl.to_tet, gl.perm);
            continue;
        }
        if (r1 >= 0 && internal_face(tri, reg, r1, gl.face)) continue;
        const Mapped a = map_side(gl.tet, gl.face);
        const Mapped b = map_side(gl.to_tet, gl.to_face);
        Perm4 perm{};
        for (int v = 0; v < 4; ++v) perm[a.vmap[v]] = b.vmap[gl.perm[v]];
        glue_checked(out, a.tet, a.face, b.tet, perm);
    }

    for (int i = 0; i < k; ++i) {
        for (int f = 0; f < 4; ++f) {
            const auto pts = face_points(reg.new_tets[i], f);
            for (int j = i + 1; j < k; ++j) {
                for (int g = 0; g < 4; ++g) {
                    if (face_points(reg.new_tets[j], g) != pts) continue;
                    Perm4 perm{};
                    for (int v = 0; v < 4; ++v) perm[v] = v == f ? g : position(reg.new_tets[j], reg.new_tets[i][v]);
                    glue_checked(out, index[i], f, index[j], perm);
                }
            }
        }
    }

    std::vector<int> leftover;
    for (int t : reg.old_tets) {
        if (!used.count(t)) leftover.push_back(t);
    }
    const std::vector<int> compact = out.remove_tetrahedra(leftover);

    MoveResult res{std::move(out), std::vector<int>(n, -1), {}, {}};
    for (int t = 0; t < n; ++t) {
        if (region_index(reg, t) < 0) res.tet_map[t] = compact[t];
    }
    for (int i = 0; i < k; ++i) res.new_tets.push_back(compact[index[i]]);
    return res;
}

// Old edge -> new edge through retained tetrahedra and point labels. An edge
// whose incidences disagree is an error unless it is `split`.
std::vector<int> edge_correspondence(const Combinatorics& before, const Combinatorics& after, const MoveResult& res,
                                     const Region& reg, int split = -1) {
    std::vector<int> out;
    for (const auto& e : before.edges()) {
        std::set<int> images;
        for (const auto& inc : e.incidences) {
            if (res.tet_map[inc.tet] >= 0) {
                images.insert(after.edge_of(res.tet_map[inc.tet], inc.slot));
                continue;
            }
            const int r = region_index(reg, inc.tet);
            const int p = reg.old_points[r][slot_vertices[inc.slot][0]];
            const int q = reg.old_points[r][slot_vertices[inc.slot][1]];
            for (std::size_t i = 0; i < reg.new_tets.size(); ++i) {
                const int a = position(reg.new_tets[i], p);
                const int b = position(reg.new_tets[i], q);
                if (a >= 0 && b >= 0) images.insert(after.edge_of(res.new_tets[i], slot_of(a, b)));
            }
        }
        if (images.size() > 1 && e.id != split) {
            throw Error(Errc::CorrespondenceMismatch, "edge " + std::to_string(e.id) + " has several images");
        }
        out.push_back(images.size() == 1 ? *images.begin() : -1);
    }
    return out;
}

struct Plan {
    Region region;
};

Plan plan_2_3(const Triangulation& tri, Site23 site) {
    const int t = site.tet;
    const int f = site.face;
    if (t < 0 || t >= tri.tet_count() || f < 0 || f > 3) throw Error(Errc::InvalidSite, "no face " + face_name(t, f));
    if (!tri.is_glued(t, f)) throw Error(Errc::InvalidSite, "face " + face_name(t, f) + " is on the boundary");
    const int u = tri.neighbor(t, f);
    if (u == t) throw Error(Errc::InvalidSite, "face " + face_name(t, f) + " is glued to its own tetrahedron");
    const Perm4& pi = tri.gluing_perm(t, f);

    // N = 0, S = 1, vertex w of sigma+ on the shared face is point 2 + w
    Tuple plus{}, minus{};
    for (int w = 0; w < 4; ++w) {
        plus[w] = w == f ? 0 : 2 + w;
        minus[pi[w]] = w == f ? 1 : 2 + w;
    }

    Plan plan;
    Region& reg = plan.region;
    reg.old_tets = {t, u};
    reg.old_points = {plus, minus};
    for (int m = 0; m < 3; ++m) {
        int p = -1, r = -1;
        for (int s = 0; s < 6; ++s) {
            const auto [a, b] = slot_vertices[s];
            if (a != f && b != f && quad_of_slot(s) == m) p = a, r = b;
        }
        const int v = 6 - f - p - r;
        if (!is_odd({f, v, p, r})) {
            reg.new_tets.push_back({0, 1, plus[p], plus[r]});
        } else {
            reg.new_tets.push_back({0, 1, plus[r], plus[p]});
        }
    }
    reg.placement = {t, u, -1};
    return plan;
}

Plan plan_3_2(const Combinatorics& c, int edge) {
    if (edge < 0 || edge >= static_cast<int>(c.edges().size())) {
        throw Error(Errc::InvalidSite, "no edge " + std::to_string(edge));
    }
    const EdgeClass& e = c.edge(edge);
    if (!e.interior || e.self_reversed || e.degree() != 3) {
        throw Error(Errc::InvalidSite, "edge " + std::to_string(edge) + " is not an interior edge of degree 3");
    }
    std::set<int> tets;
    for (const auto& s : e.walk) tets.insert(s.tet);
    if (tets.size() != 3) throw Error(Errc::InvalidSite, "edge " + std::to_string(edge) + " meets a tetrahedron twice");

    // N = 0, S = 1, W_j = 2 + j
    Plan plan;
    Region& reg = plan.region;
    std::vector<std::pair<int, Tuple>> labelled;
    for (int j = 0; j < 3; ++j) {
        const auto& s = e.walk[j];
        Tuple pts{};
        pts[s.v[0]] = 0;
        pts[s.v[1]] = 1;
        pts[s.v[2]] = 2 + j;
        pts[s.v[3]] = 2 + (j + 1) % 3;
        labelled.emplace_back(s.tet, pts);
    }
    std::sort(labelled.begin(), labelled.end());
    for (const auto& [tet, pts] : labelled) {
        reg.old_tets.push_back(tet);
        reg.old_points.push_back(pts);
    }
    reg.new_tets = {{0, 2, 3, 4}, {1, 2, 3, 4}};
    reg.placement = {reg.old_tets[0], reg.old_tets[1]};
    return plan;
}

RingElement region_holonomy(const Region& reg, const ThurstonSolution& x, int p, int q) {
    RingElement w = x.ring.one();
    for (std::size_t r = 0; r < reg.old_tets.size(); ++r) {
        for (int s = 0; s < 6; ++s) {
            const int a = reg.old_points[r][slot_vertices[s][0]];
            const int b = reg.old_points[r][slot_vertices[s][1]];
            if ((a == p && b == q) || (a == q && b == p)) {
                const Quad qd{reg.old_tets[r], quad_of_slot(s)};
                if (!x.assigned(qd)) throw Error(Errc::MissingQuadValue, "no value at a quad of the move site");
                w *= x[qd];
            }
        }
    }
    return w;
}

void require_size(const Triangulation& tri, const ThurstonSolution& x) {
    if (x.tet_count() != tri.tet_count()) {
        throw Error(Errc::MissingQuadValue, "solution covers " + std::to_string(x.tet_count()) + " tetrahedra, expected " +
                                                std::to_string(tri.tet_count()));
    }
}

ThurstonSolution carry_over(const MoveResult& res, const ThurstonSolution& x) {
    ThurstonSolution out(x.ring, res.tri.tet_count());
    for (int t = 0; t < x.tet_count(); ++t) {
        if (res.tet_map[t] >= 0) out.values[res.tet_map[t]] = x.values[t];
    }
    return out;
}

// completion of x placed so that quad `first` holds x
void place_completion(ThurstonSolution& out, int tet, int first, const RingElement& x) {
    const auto c = tet_completion(x);
    for (int k = 0; k < 3; ++k) out[{tet, (first + k) % 3}] = c[k];
}

} // namespace

MoveResult apply_2_3(const Triangulation& tri, Site23 site) {
    Plan plan = plan_2_3(tri, site);
    MoveResult res = retriangulate(tri, plan.region);
    res.edge_map = edge_correspondence(Combinatorics(tri), Combinatorics(res.tri), res, plan.region);
    return res;
}

MoveResult apply_3_2(const Triangulation& tri, int edge) {
    const Combinatorics c(tri);
    Plan plan = plan_3_2(c, edge);
    MoveResult res = retriangulate(tri, plan.region);
    res.edge_map = edge_correspondence(c, Combinatorics(res.tri), res, plan.region);
    return res;
}

ThurstonSolution transfer_solution_2to3(const Triangulation& tri, const ThurstonSolution& x, Site23 site) {
    require_size(tri, x);
    Plan plan = plan_2_3(tri, site);
    const MoveResult res = retriangulate(tri, plan.region);
    ThurstonSolution out = carry_over(res, x);
    for (std::size_t i = 0; i < res.new_tets.size(); ++i) {
        const Tuple& t = plan.region.new_tets[i];
        const RingElement a = region_holonomy(plan.region, x, t[2], t[3]);
        try {
            place_completion(out, res.new_tets[i], 0, a);
        } catch (const Error& e) {
            if (e.code() != Errc::NotAShape) throw;
            throw Error(Errc::NotInLocalization, "a_" + std::to_string(i + 1) + " = " + a.to_string() + " is not a shape");
        }
    }
    return out;
}

ThurstonSolution transfer_solution_3to2(const Triangulation& tri, const ThurstonSolution& x, int edge) {
    require_size(tri, x);
    const Combinatorics c(tri);
    Plan plan = plan_3_2(c, edge);
    const MoveResult res = retriangulate(tri, plan.region);
    ThurstonSolution out = carry_over(res, x);
    for (std::size_t i = 0; i < res.new_tets.size(); ++i) {
        const Tuple& t = plan.region.new_tets[i];
        for (int m = 0; m < 3; ++m) out[{res.new_tets[i], m}] = region_holonomy(plan.region, x, t[0], t[m + 1]);
    }
    return out;
}

namespace {

struct Cut {
    EdgeState at;
    EdgeState next;
};

struct Plan02 {
    int split = -1;
    // arc s_{j+1} .. s_i of the split edge's walk
    std::vector<EdgeState> plus_arc;
};

Cut cut_at(const EdgeClass& e, int i) {
    const int d = static_cast<int>(e.walk.size());
    return {e.walk[i], e.walk[(i + 1) % d]};
}

Plan02 check_site_02(const Combinatorics& c, Move02 kind, const Site02& site) {
    const Triangulation& tri = c.triangulation();
    Plan02 plan;
    if (kind == Move02::TwoThree) {
        if (site.tet < 0 || site.tet >= tri.tet_count() || site.face < 0 || site.face > 3 || !tri.is_glued(site.tet, site.face)) {
            throw Error(Errc::InvalidSite, "face " + face_name(site.tet, site.face) + " is not an interior face");
        }
        return plan;
    }
    if (site.edge < 0 || site.edge >= static_cast<int>(c.edges().size())) {
        throw Error(Errc::InvalidSite, "no edge " + std::to_string(site.edge));
    }
    const EdgeClass& e = c.edge(site.edge);
    const int d = static_cast<int>(e.walk.size());
    if (!e.interior || e.self_reversed) throw Error(Errc::InvalidSite, "edge " + std::to_string(site.edge) + " is not a plain interior edge");
    if (d < 2) throw Error(Errc::InvalidSite, "edge " + std::to_string(site.edge) + " has degree 1");
    if (site.cut_i < 0 || site.cut_i >= d || site.cut_j < 0 || site.cut_j >= d || site.cut_i == site.cut_j) {
        throw Error(Errc::InvalidSite, "cut positions must be two distinct values below " + std::to_string(d));
    }
    const Cut ci = cut_at(e, site.cut_i);
    const Cut cj = cut_at(e, site.cut_j);
    const std::array<int, 2> a{ci.at.tet, ci.at.v[2]}, b{ci.next.tet, ci.next.v[3]};
    const std::array<int, 2> x{cj.at.tet, cj.at.v[2]}, y{cj.next.tet, cj.next.v[3]};
    if ((a == x && b == y) || (a == y && b == x)) throw Error(Errc::InvalidSite, "both cuts cross the same face");
    plan.split = site.edge;
    for (int k = (site.cut_j + 1) % d;; k = (k + 1) % d) {
        plan.plus_arc.push_back(e.walk[k]);
        if (k == site.cut_i) break;
    }
    return plan;
}

MoveResult build_0_2(const Combinatorics& c, Move02 kind, const Site02& site, const Plan02& plan) {
    const Triangulation& tri = c.triangulation();
    Triangulation out = tri;
    const int sp = out.add_tetrahedron();
    const int sm = out.add_tetrahedron();

    if (kind == Move02::TwoThree) {
        const int t = site.tet, f = site.face;
        const int u = tri.neighbor(t, f);
        const Perm4 pi = tri.gluing_perm(t, f);
        out.unglue(t, f);
        // rho: t -> sigma+, f -> 0, the face onto 1 2 3
        Perm4 rho{};
        rho[f] = 0;
        int next = 1;
        std::array<int, 3> face{};
        for (int w = 0; w < 4; ++w) {
            if (w != f) face[next - 1] = w, rho[w] = next++;
        }
        if (!is_odd(rho)) std::swap(rho[face[1]], rho[face[2]]);
        glue_checked(out, t, f, sp, rho);
        // sigma- vertices carry points (P0, P1, P3, P2)
        constexpr Tuple minus_points{0, 1, 3, 2};
        const Perm4 rho_inv = inverse(rho);
        Perm4 to_u{};
        for (int k = 0; k < 4; ++k) to_u[k] = k == 0 ? pi[f] : pi[rho_inv[minus_points[k]]];
        glue_checked(out, sm, 0, u, to_u);
        for (int g = 1; g <= 3; ++g) glue_checked(out, sp, g, sm, {0, 1, 3, 2});
    } else {
        const EdgeClass& e = c.edge(site.edge);
        const Cut ci = cut_at(e, site.cut_i);
        const Cut cj = cut_at(e, site.cut_j);
        out.unglue(ci.at.tet, ci.at.v[2]);
        out.unglue(cj.at.tet, cj.at.v[2]);
        // sigma+ = (P0, P1, P2, P3), sigma- = (P0, P2, P1, P3); the split edge is P2 P3
        auto perm_to = [](const EdgeState& s, int pa, int pb, int pc, int pd) {
            Perm4 p{};
            p[s.v[0]] = pa;
            p[s.v[1]] = pb;
            p[s.v[2]] = pc;
            p[s.v[3]] = pd;
            return p;
        };
        glue_checked(out, ci.at.tet, ci.at.v[2], sp, perm_to(ci.at, 2, 3, 0, 1));
        glue_checked(out, cj.next.tet, cj.next.v[3], sp, perm_to(cj.next, 2, 3, 0, 1));
        glue_checked(out, ci.next.tet, ci.next.v[3], sm, perm_to(ci.next, 1, 3, 2, 0));
        glue_checked(out, cj.at.tet, cj.at.v[2], sm, perm_to(cj.at, 1, 3, 2, 0));
        glue_checked(out, sp, 3, sm, {0, 2, 1, 3});
        glue_checked(out, sp, 2, sm, {0, 2, 1, 3});
    }

    MoveResult res{std::move(out), {}, {}, {sp, sm}};
    for (int t = 0; t < tri.tet_count(); ++t) res.tet_map.push_back(t);
    const Region none;
    res.edge_map = edge_correspondence(c, Combinatorics(res.tri), res, none, plan.split);
    return res;
}

} // namespace

MoveResult apply_0_2(const Triangulation& tri, Move02 kind, const Site02& site) {
    const Combinatorics c(tri);
    return build_0_2(c, kind, site, check_site_02(c, kind, site));
}

ThurstonSolution extend_solution_0_2(const Triangulation& tri, const ThurstonSolution& x, Move02 kind, const Site02& site,
                                     const std::optional<RingElement>& shape) {
    require_size(tri, x);
    const Combinatorics c(tri);
    const Plan02 plan = check_site_02(c, kind, site);
    const MoveResult res = build_0_2(c, kind, site, plan);
    ThurstonSolution out = carry_over(res, x);
    const int sp = res.new_tets[0], sm = res.new_tets[1];
    if (kind == Move02::TwoThree) {
        RingElement s;
        if (shape) {
            s = *shape;
        } else {
            const auto shapes = x.ring.shapes();
            if (shapes.empty()) throw Error(Errc::NotAShape, x.ring.spec() + " has no shapes");
            s = shapes.front();
        }
        place_completion(out, sp, 0, s);
        place_completion(out, sm, 0, s.inverse());
        return out;
    }
    RingElement w = x.ring.one();
    for (const auto& st : plan.plus_arc) {
        const Quad q{st.tet, quad_of_slot(slot_of(st.v[0], st.v[1]))};
        if (!x.assigned(q)) throw Error(Errc::MissingQuadValue, "no value at a quad around the split edge");
        w *= x[q];
    }
    if (!w.is_unit()) throw Error(Errc::NotAShape, "q1+ = " + w.to_string() + "^-1 does not exist");
    const RingElement q1 = w.inverse();
    place_completion(out, sp, 0, q1);
    place_completion(out, sm, 1, q1.inverse());
    return out;
}

std::vector<int> TransferReport::violated() const {
    std::vector<int> out;
    for (const auto& h : edges) {
        if (!h.equal) out.push_back(h.old_edge);
    }
    return out;
}

std::string TransferReport::to_json() const {
    using nlohmann::json;
    json doc{{"all_equal", all_equal}, {"edges", json::array()}};
    for (const auto& h : edges) {
        doc["edges"].push_back({{"old_edge", h.old_edge},
                                {"new_edge", h.new_edge},
                                {"before", h.before.to_string()},
                                {"after", h.after.to_string()},
                                {"equal", h.equal}});
    }
    return doc.dump(2) + "\n";
}

TransferReport verify_holonomy_preservation(const Triangulation& before, const Triangulation& after,
                                            const ThurstonSolution& x_before, const ThurstonSolution& x_after,
                                            const std::vector<int>& edge_map) {
    const Combinatorics cb(before), ca(after);
    if (edge_map.size() != cb.edges().size()) {
        throw Error(Errc::CorrespondenceMismatch, "edge map has " + std::to_string(edge_map.size()) + " entries for " +
                                                      std::to_string(cb.edges().size()) + " edges");
    }
    TransferReport rep;
    for (std::size_t e = 0; e < edge_map.size(); ++e) {
        const int m = edge_map[e];
        if (m < 0) continue;
        if (m >= static_cast<int>(ca.edges().size())) {
            throw Error(Errc::CorrespondenceMismatch, "edge " + std::to_string(e) + " maps to missing edge " + std::to_string(m));
        }
        HolonomyCheck h{static_cast<int>(e), m, edge_holonomy(cb, x_before, static_cast<int>(e)), edge_holonomy(ca, x_after, m), false};
        h.equal = h.before == h.after;
        rep.all_equal = rep.all_equal && h.equal;
        rep.edges.push_back(std::move(h));
    }
    return rep;
}

namespace {

std::vector<Perm4> even_perms() {
    std::vector<Perm4> out;
    Perm4 p = identity_perm;
    do {
        if (!is_odd(p)) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Extends iso from tet `root` (already mapped) over its component.
bool propagate(const Triangulation& a, const Triangulation& b, Isomorphism& iso, std::vector<bool>& taken, int root) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        const int bt = iso.tet_map[t];
        const Perm4& phi = iso.vertex_maps[t];
        for (int f = 0; f < 4; ++f) {
            const int bf = phi[f];
            if (a.is_glued(t, f) != b.is_glued(bt, bf)) return false;
            if (!a.is_glued(t, f)) continue;
            const int u = a.neighbor(t, f);
            const int bu = b.neighbor(bt, bf);
            // phi_u = pi_b * phi_t * pi_a^-1
            const Perm4 phi_u = compose(b.gluing_perm(bt, bf), compose(phi, inverse(a.gluing_perm(t, f))));
            if (iso.tet_map[u] >= 0) {
                if (iso.tet_map[u] != bu || iso.vertex_maps[u] != phi_u) return false;
                continue;
            }
            if (taken[bu]) return false;
            iso.tet_map[u] = bu;
            iso.vertex_maps[u] = phi_u;
            taken[bu] = true;
            stack.push_back(u);
        }
    }
    return true;
}

bool search(const Triangulation& a, const Triangulation& b, Isomorphism& iso, std::vector<bool>& taken) {
    int root = -1;
    for (int t = 0; t < a.tet_count(); ++t) {
        if (iso.tet_map[t] < 0) {
            root = t;
            break;
        }
    }
    if (root < 0) return true;
    static const std::vector<Perm4> perms = even_perms();
    for (int bt = 0; bt < b.tet_count(); ++bt) {
        if (taken[bt]) continue;
        for (const auto& p : perms) {
            Isomorphism trial = iso;
            std::vector<bool> trial_taken = taken;
            trial.tet_map[root] = bt;
            trial.vertex_maps[root] = p;
            trial_taken[bt] = true;
            if (propagate(a, b, trial, trial_taken, root) && search(a, b, trial, trial_taken)) {
                iso = std::move(trial);
                taken = std::move(trial_taken);
                return true;
            }
        }
    }
    return false;
}

} // namespace

std::optional<Isomorphism> find_isomorphism(const Triangulation& a, const Triangulation& b) {
    if (a.tet_count() != b.tet_count() || a.gluings().size() != b.gluings().size()) return std::nullopt;
    Isomorphism iso{std::vector<int>(a.tet_count(), -1), std::vector<Perm4>(a.tet_count(), identity_perm)};
    std::vector<bool> taken(b.tet_count(), false);
    if (!search(a, b, iso, taken)) return std::nullopt;
    return iso;
}

QuadAssignment transport(const Isomorphism& iso, const QuadAssignment& on_a) {
    QuadAssignment out(on_a.ring, on_a.tet_count());
    for (int t = 0; t < on_a.tet_count(); ++t) {
        const Perm4& phi = iso.vertex_maps.at(t);
        for (int m = 0; m < 3; ++m) {
            out[{iso.tet_map.at(t), quad_of_slot(slot_of(phi[0], phi[m + 1]))}] = on_a[{t, m}];
        }
    }
    return out;
}

} // namespace thurston
