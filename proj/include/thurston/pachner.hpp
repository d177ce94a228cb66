#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thurston/complex.hpp"
#include "thurston/equations.hpp"

namespace thurston {

/// Result of a local move. Edge ids refer to Combinatorics(tri).
struct MoveResult {
    Triangulation tri;
    /// old tet -> new tet, -1 for a removed tet
    std::vector<int> tet_map;
    /// old edge id -> new edge id, -1 when the edge has no single image
    std::vector<int> edge_map;
    /// tetrahedra created by the move, in construction order
    std::vector<int> new_tets;
};

/// 2-3 site: face `face` of `tet` (sigma+), glued to a different tetrahedron
/// (sigma-). The shared triangle's edges e1, e2, e3 are the ones of quad
/// index 0, 1, 2 in sigma+.
struct Site23 {
    int tet = 0;
    int face = 0;
};

/// 0-2 site. For 0-2_3 only tet/face are used: an interior face is opened
/// into a pillow. For 0-2_2, `edge` is an interior edge and cut = {i, j}
/// picks two face crossings of its walk; the lune goes between them.
struct Site02 {
    int tet = 0;
    int face = 0;
    int edge = -1;
    int cut_i = 0;
    int cut_j = 1;
};

enum class Move02 { TwoTwo, TwoThree };

/// sigma+, sigma- become three tetrahedra around a new edge e0. The new
/// tets take sigma+'s index, sigma-'s index, and one appended index; new
/// tet i has vertices (N, S, p, r) with p r spanning e_i. Throws InvalidSite.
MoveResult apply_2_3(const Triangulation& tri, Site23 site);
/// The three tetrahedra around a degree-3 edge become two. Throws InvalidSite.
MoveResult apply_3_2(const Triangulation& tri, int edge);
MoveResult apply_0_2(const Triangulation& tri, Move02 kind, const Site02& site);

/// a_i = x_i * y_i on the new tetrahedra, the rest by completion; other
/// tetrahedra keep their values. Throws NotInLocalization.
ThurstonSolution transfer_solution_2to3(const Triangulation& tri, const ThurstonSolution& x, Site23 site);
/// x_i = b_{i+2} c_{i+1}, y_i = b_{i+1} c_{i+2}. Throws InvalidSite.
ThurstonSolution transfer_solution_3to2(const Triangulation& tri, const ThurstonSolution& x, int edge);
/// 0-2_3: sigma+ gets `shape` (any shape works), sigma- the reciprocals.
/// 0-2_2: q1+ is forced by the split edge. Throws NotAShape.
ThurstonSolution extend_solution_0_2(const Triangulation& tri, const ThurstonSolution& x, Move02 kind, const Site02& site,
                                     const std::optional<RingElement>& shape = std::nullopt);

struct HolonomyCheck {
    int old_edge = 0;
    int new_edge = 0;
    RingElement before;
    RingElement after;
    bool equal = false;
};

struct TransferReport {
    std::vector<HolonomyCheck> edges;
    bool all_equal = true;

    std::vector<int> violated() const;
    std::string to_json() const;
};

/// Compares W_e across the correspondence for every retained edge.
/// Throws CorrespondenceMismatch for a map that does not fit.
TransferReport verify_holonomy_preservation(const Triangulation& before, const Triangulation& after,
                                            const ThurstonSolution& x_before, const ThurstonSolution& x_after,
                                            const std::vector<int>& edge_map);

/// Orientation-preserving isomorphism a -> b.
struct Isomorphism {
    std::vector<int> tet_map;
    std::vector<Perm4> vertex_maps;
};

std::optional<Isomorphism> find_isomorphism(const Triangulation& a, const Triangulation& b);
/// Moves a quad assignment on a to the isomorphic b.
QuadAssignment transport(const Isomorphism& iso, const QuadAssignment& on_a);

} // namespace thurston
