#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "thurston/error.hpp"

namespace thurston {

/// A permutation of {0,1,2,3}, stored as images: p[i] is the image of i.
using Perm4 = std::array<int, 4>;

inline constexpr Perm4 identity_perm{0, 1, 2, 3};

bool is_permutation(const Perm4& p) noexcept;
bool is_odd(const Perm4& p) noexcept;
Perm4 inverse(const Perm4& p) noexcept;
/// (a * b)[i] = a[b[i]].
Perm4 compose(const Perm4& a, const Perm4& b) noexcept;

// Edge slots in a tetrahedron: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
inline constexpr std::array<std::array<int, 2>, 6> slot_vertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int slot_of(int a, int b);
inline constexpr int opposite_slot(int slot) noexcept { return 5 - slot; }
/// Quad m is disjoint from the opposite-edge pair containing {0, m+1}.
inline constexpr int quad_of_slot(int slot) noexcept {
    constexpr int table[6] = {0, 1, 2, 2, 1, 0};
    return table[slot];
}

struct Quad {
    int tet = 0;
    int index = 0;

    friend auto operator<=>(const Quad&, const Quad&) = default;
};

/// Cyclic successor q -> q'.
inline Quad quad_succ(Quad q) noexcept { return {q.tet, (q.index + 1) % 3}; }

struct FaceGluing {
    int tet = 0;
    int face = 0;
    int to_tet = 0;
    int to_face = 0;
    Perm4 perm = identity_perm;

    friend bool operator==(const FaceGluing&, const FaceGluing&) = default;
};

/// Oriented tetrahedra with face pairings. Face f is the face opposite vertex
/// f; a pairing carries vertex v of one tetrahedron to vertex perm[v] of the
/// other and must be odd. Unpaired faces form the boundary.
class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(int tet_count);

    int tet_count() const noexcept { return static_cast<int>(adj_.size()); }
    bool is_glued(int tet, int face) const;
    /// -1 for a boundary face.
    int neighbor(int tet, int face) const;
    const Perm4& gluing_perm(int tet, int face) const;

    /// Glues (tet, face) to (to_tet, perm[face]). Throws FaceNotFree,
    /// EvenPermutation or NonInvolutiveGluing (face onto itself).
    void glue(int tet, int face, int to_tet, const Perm4& perm);
    void unglue(int tet, int face);
    int add_tetrahedron();
    /// Removes the listed tetrahedra, ungluing their faces first. Survivors
    /// keep their relative order; returns old index -> new index (-1 if gone).
    std::vector<int> remove_tetrahedra(std::vector<int> tets);

    /// Each pairing once, from its smaller (tet, face) side, sorted.
    std::vector<FaceGluing> gluings() const;
    int boundary_face_count() const;

    friend bool operator==(const Triangulation& a, const Triangulation& b);

private:
    struct Side {
        int tet = -1;
        Perm4 perm = identity_perm;
    };

    void check_face(int tet, int face) const;

    std::vector<std::array<Side, 4>> adj_;
};

/// Reads `{"tetrahedra": N, "gluings": [...]}`. Throws SyntaxError,
/// NonInvolutiveGluing, EvenPermutation, FaceReused.
Triangulation parse_triangulation(std::string_view text);
std::string serialize_triangulation(const Triangulation& tri);

/// Disjoint union of a and b (b's tetrahedra shifted by a.tet_count()) plus
/// the given pairings; to_tet in a pairing indexes b.
Triangulation glue(const Triangulation& a, const Triangulation& b, const std::vector<FaceGluing>& pairings);
/// Self-gluing of a.
Triangulation glue(const Triangulation& a, const std::vector<FaceGluing>& pairings);

struct EdgeIncidence {
    int tet = 0;
    int slot = 0;

    friend auto operator<=>(const EdgeIncidence&, const EdgeIncidence&) = default;
};

/// A walk state around an edge: the edge is {v[0], v[1]} in `tet`, the
/// ordering v is an odd permutation, the walk leaves through the face
/// opposite v[2] and entered through the face opposite v[3].
struct EdgeState {
    int tet = 0;
    std::array<int, 4> v{};
};

struct EdgeClass {
    int id = 0;
    /// Distinct slots in walk order. For an interior edge the order is cyclic.
    std::vector<EdgeIncidence> incidences;
    /// Full walk. Equal in length to incidences unless the edge is identified
    /// with itself reversed, in which case every slot is visited twice.
    std::vector<EdgeState> walk;
    bool interior = false;
    bool self_reversed = false;

    int degree() const noexcept { return static_cast<int>(incidences.size()); }
};

struct VertexClass {
    int id = 0;
    /// (tet, vertex) pairs, i.e. the normal triangles of the link.
    std::vector<std::array<int, 2>> corners;
};

struct VertexLink {
    int vertex_class = 0;
    int triangles = 0;
    int edges = 0;
    int vertices = 0;
    int euler_characteristic = 0;
    int components = 0;
    bool closed = false;
};

/// Step of a dual-graph path: leave `tet` through `face`.
struct DualStep {
    int tet = 0;
    int face = 0;

    friend bool operator==(const DualStep&, const DualStep&) = default;
};

class Combinatorics {
public:
    explicit Combinatorics(Triangulation tri);

    const Triangulation& triangulation() const noexcept { return tri_; }

    const std::vector<EdgeClass>& edges() const noexcept { return edges_; }
    const EdgeClass& edge(int id) const;
    int edge_of(int tet, int slot) const;
    std::vector<int> interior_edges() const;
    int interior_edge_count() const;

    const std::vector<VertexClass>& vertices() const noexcept { return vertices_; }
    int vertex_of(int tet, int vertex) const;
    const std::vector<VertexLink>& vertex_links() const noexcept { return links_; }

    /// One quad per incidence, in the edge's cyclic order.
    std::vector<Quad> quads_facing(int edge) const;
    /// Interior face pairings, each once.
    std::vector<FaceGluing> dual_edges() const;
    /// The loop of (tet, exit face) around an interior edge. Throws
    /// EdgeNotInterior.
    std::vector<DualStep> dual_edge_cycle(int edge) const;

    bool closed() const;

private:
    Triangulation tri_;
    std::vector<EdgeClass> edges_;
    std::vector<std::array<int, 6>> edge_of_;
    std::vector<VertexClass> vertices_;
    std::vector<std::array<int, 4>> vertex_of_;
    std::vector<VertexLink> links_;
};

Combinatorics derive(const Triangulation& tri);

/// A built-in triangulation with named quads and edges.
struct Fixture {
    std::string name;
    Triangulation tri;
    std::map<std::string, Quad> quads;
    std::map<std::string, EdgeIncidence> edges;

    int edge_id(const Combinatorics& c, const std::string& label) const;
};

/// Two tetrahedra sharing one face. Edges e1,e2,e3 of the shared face,
/// e_i+ / e_i- opposite e_i in each tetrahedron; quads q_i+ / q_i- face e_i.
Fixture build_T021();
/// Two tetrahedra sharing two faces; e1 is the interior edge and e0+ / e0-
/// are the degree-1 boundary edges.
Fixture build_T022();
/// Two tetrahedra sharing the three faces around an interior vertex.
Fixture build_T023();
/// Three tetrahedra around one interior edge e0; a_i faces e0 in the i-th
/// tetrahedron, b_i = a_i', c_i = b_i'.
Fixture build_T33();
Fixture build_lone_tet();

std::vector<std::string> fixture_names();
/// Throws UnknownFixture.
Fixture fixture_by_name(std::string_view name);

} // namespace thurston
