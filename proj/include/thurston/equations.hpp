#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thurston/complex.hpp"
#include "thurston/cross_ratio.hpp"
#include "thurston/ring.hpp"

namespace thurston {

/// A value per quad, indexed by tetrahedron then quad index. Unassigned
/// entries are default-constructed (invalid) elements.
struct QuadAssignment {
    Ring ring;
    std::vector<std::array<RingElement, 3>> values;

    QuadAssignment(Ring r, int tets) : ring(std::move(r)), values(static_cast<std::size_t>(tets)) {}

    int tet_count() const noexcept { return static_cast<int>(values.size()); }
    const RingElement& operator[](Quad q) const { return values.at(q.tet).at(q.index); }
    RingElement& operator[](Quad q) { return values.at(q.tet).at(q.index); }
    bool assigned(Quad q) const { return (*this)[q].valid(); }
    bool complete() const;
    bool all_units() const;

    friend bool operator==(const QuadAssignment& a, const QuadAssignment& b);
};

/// x(q) per quad.
using ThurstonSolution = QuadAssignment;
/// z(q) per quad.
using HTESolution = QuadAssignment;

/// (x, 1/(1-x), (x-1)/x). Throws NotAShape.
std::array<RingElement, 3> tet_completion(const RingElement& x);

struct TetFailure {
    int tet = 0;
    std::string reason;
};

struct EdgeFailure {
    int edge = 0;
    /// W_e for Thurston checks, the defect U_e for HTE checks.
    RingElement value;
};

struct VerifyReport {
    bool ok = true;
    std::vector<TetFailure> tets;
    std::vector<EdgeFailure> edges;
};

/// W_e = product of x(q) over the quads facing e, with multiplicity.
/// Throws MissingQuadValue.
RingElement edge_holonomy(const Combinatorics& c, const QuadAssignment& a, int edge);
/// W_e for every edge, boundary edges included, indexed by edge id.
std::vector<RingElement> edge_holonomies(const Combinatorics& c, const QuadAssignment& a);
/// U_e = prod z(q) - prod (-z(q')).
RingElement hte_edge_defect(const Combinatorics& c, const QuadAssignment& z, int edge);

/// Throw MissingQuadValue when some quad is unassigned or the sizes differ.
VerifyReport verify_thurston(const Combinatorics& c, const ThurstonSolution& x);
VerifyReport verify_hte(const Combinatorics& c, const HTESolution& z);

/// Order in which the solver assigns tetrahedra: greedy by the number of
/// edge incidences already touched, ties to the lower index.
std::vector<int> solver_order(const Combinatorics& c);

/// Every solution, in depth-first order over solver_order and the ring's
/// shape enumeration, truncated at limit. jobs > 1 splits the first
/// branch across threads; the result does not depend on jobs.
std::vector<ThurstonSolution> solve_thurston(const Combinatorics& c, const Ring& r,
                                             std::size_t limit = std::numeric_limits<std::size_t>::max(),
                                             int jobs = 1);

/// z(q1) = x(q1), z(q1') = -1, z(q1'') = 1 - x(q1) with q1 the quad of index
/// base[t] (0 when base is empty). Throws InvalidSolution.
HTESolution thurston_to_hte(const Combinatorics& c, const ThurstonSolution& x, const std::vector<int>& base = {});
/// x(q) = -z(q) / z(q'). Throws NonUnitValue or NotAnHTESolution.
ThurstonSolution hte_to_thurston(const Combinatorics& c, const HTESolution& z);

/// Vertex order (t1, t2, t3, t4) of a tetrahedron for quad index m: the quad
/// separates {t1, t2} from {t3, t4}.
const std::array<int, 4>& quad_vertex_order(int quad_index);

/// z(q) = R_1423 of the vertex-class vectors ordered by quad_vertex_order.
HTESolution hte_from_vertex_vectors(const Combinatorics& c, const std::vector<Vec2>& f);
/// The companion R_1324 values.
QuadAssignment hte_companion_from_vertex_vectors(const Combinatorics& c, const std::vector<Vec2>& f);

/// Every interior edge has even degree.
bool even_degree_criterion(const Combinatorics& c);

/// [z(q), -z(q')]. Throws NonUnitValue.
ProjPoint quad_cross_ratio_target(const HTESolution& z, Quad q);

enum class SolutionKind { Thurston, HTE };

std::string_view solution_kind_name(SolutionKind k);

struct SolutionFile {
    SolutionKind kind = SolutionKind::Thurston;
    QuadAssignment values;
};

/// `{"ring": spec, "kind": "thurston"|"hte", "values": [[v,v,v], ...]}`.
/// A null entry leaves the quad unassigned. Throws ParseError.
SolutionFile parse_solution(std::string_view text);
std::string serialize_solution(const QuadAssignment& a, SolutionKind kind);

} // namespace thurston
