#pragma once

#include <array>
#include <string>
#include <vector>

#include "thurston/complex.hpp"
#include "thurston/cross_ratio.hpp"
#include "thurston/equations.hpp"

namespace thurston {

/// Projective labels of the four normal triangles of one tetrahedron,
/// indexed by the vertex they cut off.
struct TetLabeling {
    int tet = 0;
    std::array<ProjPoint, 4> labels;

    bool admissible() const;
    std::string to_string() const;

    friend bool operator==(const TetLabeling& a, const TetLabeling& b);
};

/// A walk in the dual graph: start tetrahedron, then the face crossed at
/// each step.
struct DualPath {
    int start = 0;
    std::vector<int> faces;

    friend bool operator==(const DualPath&, const DualPath&) = default;
};

/// Throws InvalidPath unless consecutive steps chain through glued faces.
DualPath path_from_steps(const Triangulation& tri, const std::vector<DualStep>& steps);
/// sigma_1 .. sigma_n. Throws InvalidPath at a boundary face.
std::vector<int> path_tets(const Triangulation& tri, const DualPath& path);
DualPath reversed(const Triangulation& tri, const DualPath& path);
/// first, then second; second must start where first ends.
DualPath concatenate(const Triangulation& tri, const DualPath& first, const DualPath& second);

/// Vertices 0, 1, 2 of tet get [1,0], [0,1], [1,1]; vertex 3 is solved.
/// Throws NotUnitHTE unless every z value is a unit.
TetLabeling seed_labeling(const Combinatorics& c, const HTESolution& z, int tet);

/// Copies the three labels on the face through the gluing and solves the
/// fourth. Throws ConventionViolation if a quad of the new tetrahedron
/// misses its cross-ratio target.
TetLabeling extend_across_face(const Combinatorics& c, const HTESolution& z, const TetLabeling& from, int face);

/// One labeling per tetrahedron on the path, initial first.
std::vector<TetLabeling> develop_path(const Combinatorics& c, const HTESolution& z, const DualPath& path,
                                      const TetLabeling& initial);

/// The class sending the final labels of a closed path back to the
/// initial ones, so that the loop "a then b" maps to rho(b) * rho(a).
PGLElement holonomy_of_loop(const Combinatorics& c, const HTESolution& z, const DualPath& loop,
                            const TetLabeling& initial);

/// Holonomy of the dual cycle around an interior edge, from the seed of the
/// cycle's first tetrahedron.
PGLElement edge_monodromy(const Combinatorics& c, const HTESolution& z, int edge);
/// Developing around the edge returns every initial label.
bool edge_monodromy_trivial(const Combinatorics& c, const HTESolution& z, int edge);

} // namespace thurston
