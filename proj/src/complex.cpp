#include "thurston/complex.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace thurston {

namespace {

struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::string face_name(int tet, int face) { return std::to_string(tet) + "." + std::to_string(face); }

} // namespace

bool is_permutation(const Perm4& p) noexcept {
    int seen = 0;
    for (int x : p) {
        if (x < 0 || x > 3 || (seen & (1 << x))) return false;
        seen |= 1 << x;
    }
    return true;
}

bool is_odd(const Perm4& p) noexcept {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    return inversions % 2 == 1;
}

Perm4 inverse(const Perm4& p) noexcept {
    Perm4 q{};
    for (int i = 0; i < 4; ++i) q[p[i]] = i;
    return q;
}

Perm4 compose(const Perm4& a, const Perm4& b) noexcept {
    Perm4 c{};
    for (int i = 0; i < 4; ++i) c[i] = a[b[i]];
    return c;
}

int slot_of(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int s = 0; s < 6; ++s) {
        if (slot_vertices[s][0] == a && slot_vertices[s][1] == b) return s;
    }
    throw Error(Errc::InvalidPath, "no edge slot for vertices " + std::to_string(a) + "," + std::to_string(b));
}

// ---------------------------------------------------------------------------
// Triangulation

Triangulation::Triangulation(int tet_count) {
    if (tet_count < 0) throw Error(Errc::SyntaxError, "negative tetrahedron count");
    adj_.resize(tet_count);
}

void Triangulation::check_face(int tet, int face) const {
    if (tet < 0 || tet >= tet_count() || face < 0 || face > 3) {
        throw Error(Errc::InvalidSite, "no face " + face_name(tet, face) + " in a " + std::to_string(tet_count()) +
                                           "-tetrahedron triangulation");
    }
}

bool Triangulation::is_glued(int tet, int face) const {
    check_face(tet, face);
    return adj_[tet][face].tet >= 0;
}

int Triangulation::neighbor(int tet, int face) const {
    check_face(tet, face);
    return adj_[tet][face].tet;
}

const Perm4& Triangulation::gluing_perm(int tet, int face) const {
    check_face(tet, face);
    return adj_[tet][face].perm;
}

void Triangulation::glue(int tet, int face, int to_tet, const Perm4& perm) {
    check_face(tet, face);
    if (!is_permutation(perm)) throw Error(Errc::SyntaxError, "gluing of " + face_name(tet, face) + " is not a permutation");
    const int to_face = perm[face];
    check_face(to_tet, to_face);
    if (tet == to_tet && face == to_face) {
        throw Error(Errc::NonInvolutiveGluing, "face " + face_name(tet, face) + " glued to itself");
    }
    if (!is_odd(perm)) throw Error(Errc::EvenPermutation, "gluing of " + face_name(tet, face) + " is even");
    if (is_glued(tet, face)) throw Error(Errc::FaceNotFree, "face " + face_name(tet, face) + " is already glued");
    if (is_glued(to_tet, to_face)) throw Error(Errc::FaceNotFree, "face " + face_name(to_tet, to_face) + " is already glued");
    adj_[tet][face] = {to_tet, perm};
    adj_[to_tet][to_face] = {tet, inverse(perm)};
}

void Triangulation::unglue(int tet, int face) {
    check_face(tet, face);
    Side& s = adj_[tet][face];
    if (s.tet < 0) return;
    adj_[s.tet][s.perm[face]] = Side{};
    s = Side{};
}

int Triangulation::add_tetrahedron() {
    adj_.emplace_back();
    return tet_count() - 1;
}

std::vector<int> Triangulation::remove_tetrahedra(std::vector<int> tets) {
    std::vector<char> gone(tet_count(), 0);
    for (int t : tets) {
        check_face(t, 0);
        gone[t] = 1;
        for (int f = 0; f < 4; ++f) unglue(t, f);
    }
    std::vector<int> map(tet_count(), -1);
    int next = 0;
    for (int t = 0; t < tet_count(); ++t) {
        if (!gone[t]) map[t] = next++;
    }
    std::vector<std::array<Side, 4>> adj(next);
    for (int t = 0; t < tet_count(); ++t) {
        if (gone[t]) continue;
        for (int f = 0; f < 4; ++f) {
            Side s = adj_[t][f];
            if (s.tet >= 0) s.tet = map[s.tet];
            adj[map[t]][f] = s;
        }
    }
    adj_ = std::move(adj);
    return map;
}

std::vector<FaceGluing> Triangulation::gluings() const {
    std::vector<FaceGluing> out;
    for (int t = 0; t < tet_count(); ++t) {
        for (int f = 0; f < 4; ++f) {
            const Side& s = adj_[t][f];
            if (s.tet < 0) continue;
            const int g = s.perm[f];
            if (std::pair(t, f) < std::pair(s.tet, g)) out.push_back({t, f, s.tet, g, s.perm});
        }
    }
    return out;
}

int Triangulation::boundary_face_count() const {
    int n = 0;
    for (const auto& faces : adj_)
        for (const auto& s : faces) n += s.tet < 0;
    return n;
}

bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.tet_count() == b.tet_count() && a.gluings() == b.gluings();
}

// ---------------------------------------------------------------------------
// File format

Triangulation parse_triangulation(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(Errc::SyntaxError, std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::SyntaxError, "top level must be an object");
    if (!doc.contains("tetrahedra") || !doc["tetrahedra"].is_number_integer()) {
        throw Error(Errc::SyntaxError, "field 'tetrahedra' must be an integer");
    }
    const auto n = doc["tetrahedra"].get<long long>();
    if (n < 1 || n > 100000) throw Error(Errc::SyntaxError, "field 'tetrahedra' must be between 1 and 100000");
    Triangulation tri(static_cast<int>(n));
    if (!doc.contains("gluings")) return tri;
    if (!doc["gluings"].is_array()) throw Error(Errc::SyntaxError, "field 'gluings' must be an array");

    auto field = [](const json& g, const char* name, std::size_t idx, long long hi) {
        const std::string where = "gluing #" + std::to_string(idx) + ": ";
        if (!g.contains(name) || !g[name].is_number_integer()) {
            throw Error(Errc::SyntaxError, where + "field '" + name + "' must be an integer");
        }
        const auto v = g[name].get<long long>();
        if (v < 0 || v > hi) throw Error(Errc::SyntaxError, where + "field '" + name + "' out of range");
        return static_cast<int>(v);
    };

    std::size_t idx = 0;
    for (const auto& g : doc["gluings"]) {
        const std::string where = "gluing #" + std::to_string(idx) + ": ";
        if (!g.is_object()) throw Error(Errc::SyntaxError, where + "must be an object");
        const int tet = field(g, "tet", idx, n - 1);
        const int face = field(g, "face", idx, 3);
        const int to_tet = field(g, "to_tet", idx, n - 1);
        const int to_face = field(g, "to_face", idx, 3);
        if (!g.contains("perm") || !g["perm"].is_array() || g["perm"].size() != 4) {
            throw Error(Errc::SyntaxError, where + "field 'perm' must be an array of 4 integers");
        }
        Perm4 perm{};
        for (int i = 0; i < 4; ++i) {
            if (!g["perm"][i].is_number_integer()) throw Error(Errc::SyntaxError, where + "perm entries must be integers");
            const auto v = g["perm"][i].get<long long>();
            if (v < 0 || v > 3) throw Error(Errc::SyntaxError, where + "perm entries must be in 0..3");
            perm[i] = static_cast<int>(v);
        }
        if (!is_permutation(perm)) throw Error(Errc::SyntaxError, where + "perm is not a bijection");
        if (perm[face] != to_face) throw Error(Errc::SyntaxError, where + "perm[face] must equal to_face");
        if (tet == to_tet && face == to_face) {
            throw Error(Errc::NonInvolutiveGluing, where + "face " + face_name(tet, face) + " glued to itself");
        }
        if (!is_odd(perm)) throw Error(Errc::EvenPermutation, where + "perm is even");
        for (auto [t, f] : {std::pair(tet, face), std::pair(to_tet, to_face)}) {
            if (!tri.is_glued(t, f)) continue;
            const int other = tri.neighbor(t, f);
            const int other_face = tri.gluing_perm(t, f)[f];
            const bool same_pair = (t == tet && other == to_tet && other_face == to_face) ||
                                   (t == to_tet && other == tet && other_face == face);
            if (same_pair) {
                const Perm4 existing = t == tet ? tri.gluing_perm(tet, face) : inverse(tri.gluing_perm(to_tet, to_face));
                if (existing != perm) {
                    throw Error(Errc::NonInvolutiveGluing,
                                where + "pairing of " + face_name(tet, face) + " and " + face_name(to_tet, to_face) +
                                    " contradicts an earlier entry");
                }
            }
            throw Error(Errc::FaceReused, where + "face " + face_name(t, f) + " already used");
        }
        tri.glue(tet, face, to_tet, perm);
        ++idx;
    }
    return tri;
}

std::string serialize_triangulation(const Triangulation& tri) {
    using nlohmann::ordered_json;
    std::string out = "{\n  \"tetrahedra\": " + std::to_string(tri.tet_count()) + ",\n  \"gluings\": [";
    const auto gl = tri.gluings();
    for (std::size_t i = 0; i < gl.size(); ++i) {
        ordered_json g;
        g["tet"] = gl[i].tet;
        g["face"] = gl[i].face;
        g["to_tet"] = gl[i].to_tet;
        g["to_face"] = gl[i].to_face;
        g["perm"] = gl[i].perm;
        out += (i ? ",\n    " : "\n    ") + g.dump();
    }
    out += gl.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

Triangulation glue(const Triangulation& a, const Triangulation& b, const std::vector<FaceGluing>& pairings) {
    Triangulation out(a.tet_count() + b.tet_count());
    for (const auto& g : a.gluings()) out.glue(g.tet, g.face, g.to_tet, g.perm);
    const int shift = a.tet_count();
    for (const auto& g : b.gluings()) out.glue(g.tet + shift, g.face, g.to_tet + shift, g.perm);
    for (const auto& g : pairings) {
        if (g.to_tet < 0 || g.to_tet >= b.tet_count()) throw Error(Errc::InvalidSite, "pairing target outside the second triangulation");
        if (g.perm[g.face] != g.to_face) throw Error(Errc::SyntaxError, "pairing perm[face] must equal to_face");
        out.glue(g.tet, g.face, g.to_tet + shift, g.perm);
    }
    return out;
}

Triangulation glue(const Triangulation& a, const std::vector<FaceGluing>& pairings) {
    Triangulation out = a;
    for (const auto& g : pairings) {
        if (!is_permutation(g.perm) || g.perm[g.face] != g.to_face) {
            throw Error(Errc::SyntaxError, "pairing perm[face] must equal to_face");
        }
        out.glue(g.tet, g.face, g.to_tet, g.perm);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Derived combinatorics

namespace {

EdgeState initial_state(int tet, int slot) {
    EdgeState s{tet, {slot_vertices[slot][0], slot_vertices[slot][1], 0, 0}};
    int k = 2;
    for (int v = 0; v < 4; ++v) {
        if (v != s.v[0] && v != s.v[1]) s.v[k++] = v;
    }
    if (!is_odd(Perm4{s.v[0], s.v[1], s.v[2], s.v[3]})) std::swap(s.v[2], s.v[3]);
    return s;
}

bool same_state(const EdgeState& a, const EdgeState& b) { return a.tet == b.tet && a.v == b.v; }

// Step through the face opposite v[2]; false at the boundary.
bool step_forward(const Triangulation& tri, EdgeState& s) {
    const int f = s.v[2];
    const int u = tri.neighbor(s.tet, f);
    if (u < 0) return false;
    const Perm4& p = tri.gluing_perm(s.tet, f);
    s = {u, {p[s.v[0]], p[s.v[1]], p[s.v[3]], p[s.v[2]]}};
    return true;
}

bool step_backward(const Triangulation& tri, EdgeState& s) {
    const int f = s.v[3];
    const int u = tri.neighbor(s.tet, f);
    if (u < 0) return false;
    const Perm4& p = tri.gluing_perm(s.tet, f);
    s = {u, {p[s.v[0]], p[s.v[1]], p[s.v[3]], p[s.v[2]]}};
    return true;
}

} // namespace

Combinatorics::Combinatorics(Triangulation tri) : tri_(std::move(tri)) {
    const int n = tri_.tet_count();
    const auto gl = tri_.gluings();

    // edges
    DisjointSets slots(6 * n);
    for (const auto& g : gl) {
        for (int s = 0; s < 6; ++s) {
            const int a = slot_vertices[s][0], b = slot_vertices[s][1];
            if (a == g.face || b == g.face) continue;
            slots.unite(6 * g.tet + s, 6 * g.to_tet + slot_of(g.perm[a], g.perm[b]));
        }
    }
    edge_of_.assign(n, {});
    std::vector<int> root_to_id(6 * n, -1);
    for (int i = 0; i < 6 * n; ++i) {
        const int r = slots.find(i);
        if (root_to_id[r] < 0) {
            root_to_id[r] = static_cast<int>(edges_.size());
            EdgeClass e;
            e.id = root_to_id[r];
            edges_.push_back(std::move(e));
        }
        edge_of_[i / 6][i % 6] = root_to_id[r];
    }
    const int max_steps = 12 * n + 2;
    for (auto& e : edges_) {
        int rep = -1;
        for (int i = 0; i < 6 * n && rep < 0; ++i) {
            if (edge_of_[i / 6][i % 6] == e.id) rep = i;
        }
        const EdgeState s0 = initial_state(rep / 6, rep % 6);
        EdgeState s = s0;
        bool interior = false;
        for (int k = 0; k < max_steps; ++k) {
            EdgeState prev = s;
            if (!step_backward(tri_, prev)) break;
            s = prev;
            if (same_state(s, s0)) {
                interior = true;
                break;
            }
        }
        e.interior = interior;
        s = interior ? s0 : s;
        e.walk.push_back(s);
        for (int k = 0; k < max_steps; ++k) {
            if (!step_forward(tri_, s)) break;
            if (interior && same_state(s, s0)) break;
            e.walk.push_back(s);
        }
        std::vector<char> seen(6 * n, 0);
        for (const auto& st : e.walk) {
            const int slot = slot_of(st.v[0], st.v[1]);
            if (seen[6 * st.tet + slot]) {
                e.self_reversed = true;
                continue;
            }
            seen[6 * st.tet + slot] = 1;
            e.incidences.push_back({st.tet, slot});
        }
    }

    // vertices
    DisjointSets corners(4 * n);
    for (const auto& g : gl) {
        for (int v = 0; v < 4; ++v) {
            if (v != g.face) corners.unite(4 * g.tet + v, 4 * g.to_tet + g.perm[v]);
        }
    }
    vertex_of_.assign(n, {});
    std::vector<int> vroot(4 * n, -1);
    for (int i = 0; i < 4 * n; ++i) {
        const int r = corners.find(i);
        if (vroot[r] < 0) {
            vroot[r] = static_cast<int>(vertices_.size());
            vertices_.push_back({vroot[r], {}});
        }
        vertex_of_[i / 4][i % 4] = vroot[r];
        vertices_[vroot[r]].corners.push_back({i / 4, i % 4});
    }

    // vertex links: triangles (t,v), arcs (t,f,v), link vertices (t,v,w)
    DisjointSets link_vertices(16 * n);
    DisjointSets triangles(4 * n);
    std::vector<int> boundary_arcs(vertices_.size(), 0);
    std::vector<int> glued_arcs(vertices_.size(), 0);
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const int u = tri_.neighbor(t, f);
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                const int cls = vertex_of_[t][v];
                if (u < 0) {
                    ++boundary_arcs[cls];
                    continue;
                }
                ++glued_arcs[cls];
                const Perm4& p = tri_.gluing_perm(t, f);
                triangles.unite(4 * t + v, 4 * u + p[v]);
                for (int w = 0; w < 4; ++w) {
                    if (w == v || w == f) continue;
                    link_vertices.unite(16 * t + 4 * v + w, 16 * u + 4 * p[v] + p[w]);
                }
            }
        }
    }
    for (const auto& vc : vertices_) {
        VertexLink link;
        link.vertex_class = vc.id;
        link.triangles = static_cast<int>(vc.corners.size());
        link.edges = boundary_arcs[vc.id] + glued_arcs[vc.id] / 2;
        std::vector<int> vroots, troots;
        for (auto [t, v] : vc.corners) {
            troots.push_back(triangles.find(4 * t + v));
            for (int w = 0; w < 4; ++w) {
                if (w != v) vroots.push_back(link_vertices.find(16 * t + 4 * v + w));
            }
        }
        std::sort(vroots.begin(), vroots.end());
        std::sort(troots.begin(), troots.end());
        link.vertices = static_cast<int>(std::unique(vroots.begin(), vroots.end()) - vroots.begin());
        link.components = static_cast<int>(std::unique(troots.begin(), troots.end()) - troots.begin());
        link.euler_characteristic = link.vertices - link.edges + link.triangles;
        link.closed = boundary_arcs[vc.id] == 0;
        links_.push_back(link);
    }
}

const EdgeClass& Combinatorics::edge(int id) const {
    if (id < 0 || id >= static_cast<int>(edges_.size())) {
        throw Error(Errc::InvalidSite, "no edge e" + std::to_string(id));
    }
    return edges_[id];
}

int Combinatorics::edge_of(int tet, int slot) const {
    if (tet < 0 || tet >= tri_.tet_count() || slot < 0 || slot > 5) {
        throw Error(Errc::InvalidSite, "no edge slot " + std::to_string(tet) + ":" + std::to_string(slot));
    }
    return edge_of_[tet][slot];
}

std::vector<int> Combinatorics::interior_edges() const {
    std::vector<int> out;
    for (const auto& e : edges_) {
        if (e.interior) out.push_back(e.id);
    }
    return out;
}

int Combinatorics::interior_edge_count() const { return static_cast<int>(interior_edges().size()); }

int Combinatorics::vertex_of(int tet, int vertex) const {
    if (tet < 0 || tet >= tri_.tet_count() || vertex < 0 || vertex > 3) {
        throw Error(Errc::InvalidSite, "no vertex " + std::to_string(tet) + ":" + std::to_string(vertex));
    }
    return vertex_of_[tet][vertex];
}

std::vector<Quad> Combinatorics::quads_facing(int id) const {
    std::vector<Quad> out;
    for (const auto& inc : edge(id).incidences) out.push_back({inc.tet, quad_of_slot(inc.slot)});
    return out;
}

std::vector<FaceGluing> Combinatorics::dual_edges() const { return tri_.gluings(); }

std::vector<DualStep> Combinatorics::dual_edge_cycle(int id) const {
    const EdgeClass& e = edge(id);
    if (!e.interior) throw Error(Errc::EdgeNotInterior, "edge e" + std::to_string(id) + " lies on the boundary");
    std::vector<DualStep> out;
    for (const auto& s : e.walk) out.push_back({s.tet, s.v[2]});
    return out;
}

bool Combinatorics::closed() const { return tri_.boundary_face_count() == 0; }

Combinatorics derive(const Triangulation& tri) { return Combinatorics(tri); }

// ---------------------------------------------------------------------------
// Fixtures

int Fixture::edge_id(const Combinatorics& c, const std::string& label) const {
    const auto it = edges.find(label);
    if (it == edges.end()) throw Error(Errc::UnknownFixture, name + " has no edge labelled " + label);
    return c.edge_of(it->second.tet, it->second.slot);
}

Fixture build_T021() {
    Fixture fx{"T021", Triangulation(2), {}, {}};
    fx.tri.glue(0, 3, 1, {0, 2, 1, 3});
    fx.quads = {{"q1+", {0, 0}}, {"q2+", {0, 1}}, {"q3+", {0, 2}},
                {"q1-", {1, 1}}, {"q2-", {1, 0}}, {"q3-", {1, 2}}};
    fx.edges = {{"e1", {0, slot_of(0, 1)}},  {"e2", {0, slot_of(0, 2)}},  {"e3", {0, slot_of(1, 2)}},
                {"e1+", {0, slot_of(2, 3)}}, {"e2+", {0, slot_of(1, 3)}}, {"e3+", {0, slot_of(0, 3)}},
                {"e1-", {1, slot_of(1, 3)}}, {"e2-", {1, slot_of(2, 3)}}, {"e3-", {1, slot_of(0, 3)}}};
    return fx;
}

Fixture build_T022() {
    Fixture fx{"T022", Triangulation(2), {}, {}};
    fx.tri.glue(0, 3, 1, {0, 2, 1, 3});
    fx.tri.glue(0, 2, 1, {0, 2, 1, 3});
    fx.quads = {{"q1+", {0, 0}}, {"q2+", {0, 1}}, {"q3+", {0, 2}},
                {"q1-", {1, 1}}, {"q2-", {1, 0}}, {"q3-", {1, 2}}};
    fx.edges = {{"e1", {0, slot_of(0, 1)}},
                {"e2", {0, slot_of(0, 2)}},
                {"e3", {0, slot_of(1, 2)}},
                {"e0+", {0, slot_of(2, 3)}},
                {"e0-", {1, slot_of(1, 3)}}};
    return fx;
}

Fixture build_T023() {
    Fixture fx{"T023", Triangulation(2), {}, {}};
    for (int f = 1; f < 4; ++f) fx.tri.glue(0, f, 1, {0, 1, 3, 2});
    fx.quads = {{"q1+", {0, 0}}, {"q2+", {0, 1}}, {"q3+", {0, 2}},
                {"q1-", {1, 0}}, {"q2-", {1, 2}}, {"q3-", {1, 1}}};
    fx.edges = {{"e1", {0, slot_of(0, 1)}}, {"e2", {0, slot_of(0, 2)}}, {"e3", {0, slot_of(1, 2)}}};
    return fx;
}

Fixture build_T33() {
    // tetrahedron i has vertices (N, S, p_i, r_i); vertices 2,3 span e_i
    Fixture fx{"T33", Triangulation(3), {}, {}};
    for (int i = 0; i < 3; ++i) fx.tri.glue(i, 2, (i + 1) % 3, {0, 1, 3, 2});
    for (int i = 0; i < 3; ++i) {
        const std::string k = std::to_string(i + 1);
        fx.quads["a" + k] = {i, 0};
        fx.quads["b" + k] = {i, 1};
        fx.quads["c" + k] = {i, 2};
        fx.edges["e" + k] = {i, slot_of(2, 3)};
    }
    fx.edges["e0"] = {0, slot_of(0, 1)};
    fx.edges["e1+"] = {1, slot_of(0, 3)};
    fx.edges["e2+"] = {0, slot_of(0, 2)};
    fx.edges["e3+"] = {0, slot_of(0, 3)};
    fx.edges["e1-"] = {1, slot_of(1, 3)};
    fx.edges["e2-"] = {0, slot_of(1, 2)};
    fx.edges["e3-"] = {0, slot_of(1, 3)};
    return fx;
}

Fixture build_lone_tet() { return Fixture{"tet", Triangulation(1), {}, {}}; }

std::vector<std::string> fixture_names() { return {"T021", "T022", "T023", "T33", "tet"}; }

Fixture fixture_by_name(std::string_view name) {
    if (name == "T021") return build_T021();
    if (name == "T022") return build_T022();
    if (name == "T023") return build_T023();
    if (name == "T33") return build_T33();
    if (name == "tet") return build_lone_tet();
    throw Error(Errc::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
}

} // namespace thurston
