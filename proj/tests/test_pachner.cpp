#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "support.hpp"
#include "thurston/developing.hpp"
#include "thurston/pachner.hpp"

using namespace thurston;
using testsupport::code;
using testsupport::corpus;
using testsupport::error_code;

namespace {

Quad Q(int t, int m) { return {t, m}; }

std::vector<ThurstonSolution> solutions(const Triangulation& tri, const Ring& r, std::size_t limit) {
    return solve_thurston(Combinatorics(tri), r, limit);
}

bool valid_tet(const ThurstonSolution& x, int t) {
    if (!x.assigned(Q(t, 0)) || !x[Q(t, 0)].is_unit() || !(x.ring.one() - x[Q(t, 0)]).is_unit()) return false;
    const auto c = tet_completion(x[Q(t, 0)]);
    return x[Q(t, 1)] == c[1] && x[Q(t, 2)] == c[2];
}

std::vector<Site23> sites_2_3(const Triangulation& tri) {
    std::vector<Site23> out;
    for (int t = 0; t < tri.tet_count(); ++t) {
        for (int f = 0; f < 4; ++f) {
            if (tri.is_glued(t, f) && tri.neighbor(t, f) != t) out.push_back({t, f});
        }
    }
    return out;
}

std::vector<int> sites_3_2(const Triangulation& tri) {
    const Combinatorics c(tri);
    std::vector<int> out;
    for (const auto& e : c.edges()) {
        if (!e.interior || e.self_reversed || e.degree() != 3) continue;
        std::set<int> tets;
        for (const auto& s : e.walk) tets.insert(s.tet);
        if (tets.size() == 3) out.push_back(e.id);
    }
    return out;
}

int new_edge_e0(const MoveResult& res) { return Combinatorics(res.tri).edge_of(res.new_tets[0], slot_of(0, 1)); }

std::vector<Ring> rings() {
    return {Ring::parse("Z/5"), Ring::parse("Z/7"), Ring::parse("Z/9"), Ring::parse("F:2:2:1,1,1"), Ring::parse("Z/15")};
}

} // namespace

TEST(TwoThree, T021BecomesT33) {
    const auto f021 = build_T021();
    const auto f33 = build_T33();
    const MoveResult res = apply_2_3(f021.tri, {0, 3});
    EXPECT_TRUE(res.tri == f33.tri);
    EXPECT_EQ(res.new_tets, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(res.tet_map, (std::vector<int>{-1, -1}));

    const Combinatorics c021(f021.tri), c33(f33.tri);
    for (const char* label : {"e1", "e2", "e3", "e1+", "e2+", "e3+", "e1-", "e2-", "e3-"}) {
        EXPECT_EQ(res.edge_map[f021.edge_id(c021, label)], f33.edge_id(c33, label)) << label;
    }
}

TEST(TwoThree, PlacementKeepsOtherTetrahedra) {
    for (const auto& item : corpus()) {
        for (const Site23 s : sites_2_3(item.tri)) {
            const MoveResult res = apply_2_3(item.tri, s);
            const int u = item.tri.neighbor(s.tet, s.face);
            ASSERT_EQ(res.tri.tet_count(), item.tri.tet_count() + 1) << item.name;
            EXPECT_EQ(res.new_tets, (std::vector<int>{s.tet, u, item.tri.tet_count()})) << item.name;
            for (int t = 0; t < item.tri.tet_count(); ++t) {
                EXPECT_EQ(res.tet_map[t], t == s.tet || t == u ? -1 : t);
            }
            const Combinatorics before(item.tri), after(res.tri);
            EXPECT_EQ(after.edges().size(), before.edges().size() + 1) << item.name;
            EXPECT_EQ(after.vertices().size(), before.vertices().size()) << item.name;
            const EdgeClass& e0 = after.edge(new_edge_e0(res));
            EXPECT_TRUE(e0.interior);
            EXPECT_EQ(e0.degree(), 3);
            std::set<int> images;
            for (int m : res.edge_map) {
                ASSERT_GE(m, 0) << item.name;
                images.insert(m);
            }
            EXPECT_EQ(images.size(), before.edges().size());
            EXPECT_FALSE(images.count(e0.id));
        }
    }
}

TEST(TwoThree, InvalidSites) {
    const auto f021 = build_T021();
    EXPECT_EQ(error_code([&] { apply_2_3(f021.tri, {0, 0}); }), code(Errc::InvalidSite));
    EXPECT_EQ(error_code([&] { apply_2_3(f021.tri, {2, 0}); }), code(Errc::InvalidSite));
    EXPECT_EQ(error_code([&] { apply_2_3(f021.tri, {0, 4}); }), code(Errc::InvalidSite));
    const Triangulation folded = glue(Triangulation(1), {{0, 0, 0, 1, {1, 0, 2, 3}}});
    EXPECT_EQ(error_code([&] { apply_2_3(folded, {0, 0}); }), code(Errc::InvalidSite));
}

TEST(ThreeTwo, T33BecomesT021) {
    const auto f33 = build_T33();
    const Combinatorics c(f33.tri);
    const int e0 = f33.edge_id(c, "e0");
    const MoveResult res = apply_3_2(f33.tri, e0);
    EXPECT_TRUE(testsupport::isomorphic(res.tri, build_T021().tri));
    EXPECT_EQ(res.tri.tet_count(), 2);
    EXPECT_EQ(res.edge_map[e0], -1);
    std::set<int> images;
    for (std::size_t e = 0; e < res.edge_map.size(); ++e) {
        if (static_cast<int>(e) != e0) images.insert(res.edge_map[e]);
    }
    EXPECT_EQ(images.size(), 9u);
    EXPECT_FALSE(images.count(-1));
}

TEST(ThreeTwo, InvalidSites) {
    const auto f33 = build_T33();
    const Combinatorics c(f33.tri);
    EXPECT_EQ(error_code([&] { apply_3_2(f33.tri, f33.edge_id(c, "e1")); }), code(Errc::InvalidSite));
    EXPECT_EQ(error_code([&] { apply_3_2(f33.tri, 99); }), code(Errc::InvalidSite));
    const auto f022 = build_T022();
    const Combinatorics c2(f022.tri);
    EXPECT_EQ(error_code([&] { apply_3_2(f022.tri, f022.edge_id(c2, "e1")); }), code(Errc::InvalidSite));
}

TEST(RoundTrip, TwoThreeThenThreeTwo) {
    int checked = 0;
    for (const auto& item : corpus()) {
        for (const Site23 s : sites_2_3(item.tri)) {
            const MoveResult up = apply_2_3(item.tri, s);
            const MoveResult down = apply_3_2(up.tri, new_edge_e0(up));
            const auto iso = find_isomorphism(down.tri, item.tri);
            ASSERT_TRUE(iso.has_value()) << item.name << " " << s.tet << "." << s.face;
            ++checked;
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(RoundTrip, ThreeTwoThenTwoThree) {
    int checked = 0;
    for (const auto& item : corpus()) {
        for (int e : sites_3_2(item.tri)) {
            const MoveResult down = apply_3_2(item.tri, e);
            // sigma+ face 0 is the new shared triangle
            const MoveResult up = apply_2_3(down.tri, {down.new_tets[0], 0});
            EXPECT_TRUE(find_isomorphism(up.tri, item.tri).has_value()) << item.name;
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(Transfer, T021ToT33Formulas) {
    const auto f021 = build_T021();
    const auto f33 = build_T33();
    for (const Ring& r : rings()) {
        int done = 0, refused = 0;
        for (const auto& x : solutions(f021.tri, r, 10000)) {
            const auto q = [&](const std::string& l) { return x[f021.quads.at(l)]; };
            const std::array<RingElement, 3> a{q("q1+") * q("q1-"), q("q2+") * q("q2-"), q("q3+") * q("q3-")};
            const bool localizable =
                std::all_of(a.begin(), a.end(), [&](const RingElement& v) { return v.is_unit() && (r.one() - v).is_unit(); });
            if (!localizable) {
                EXPECT_EQ(error_code([&] { transfer_solution_2to3(f021.tri, x, {0, 3}); }), code(Errc::NotInLocalization));
                ++refused;
                continue;
            }
            const ThurstonSolution y = transfer_solution_2to3(f021.tri, x, {0, 3});
            const auto p = [&](const std::string& l) { return y[f33.quads.at(l)]; };
            for (int i = 1; i <= 3; ++i) {
                const std::string k = std::to_string(i);
                const std::string k1 = std::to_string(i % 3 + 1);
                const std::string k2 = std::to_string((i + 1) % 3 + 1);
                EXPECT_EQ(p("a" + k), a[i - 1]);
                EXPECT_EQ(p("b" + k), tet_completion(a[i - 1])[1]);
                EXPECT_EQ(p("c" + k), tet_completion(a[i - 1])[2]);
                // x_i = b_{i+2} c_{i+1}, y_i = b_{i+1} c_{i+2}
                EXPECT_EQ(q("q" + k + "+"), p("b" + k2) * p("c" + k1)) << r.spec();
                EXPECT_EQ(q("q" + k + "-"), p("b" + k1) * p("c" + k2)) << r.spec();
            }
            EXPECT_TRUE(verify_thurston(Combinatorics(f33.tri), y).ok) << r.spec();
            ++done;
        }
        // over Z/9 and Z/15 both shapes are 2 mod 3, so 1 - x_i y_i is never a unit
        if (r.characteristic() % 3 == 0) {
            EXPECT_EQ(done, 0) << r.spec();
        } else {
            EXPECT_GT(done, 0) << r.spec();
        }
        if (r.spec() == "Z/5") EXPECT_GT(refused, 0);
    }
}

TEST(Transfer, T33ToT021Formulas) {
    const auto f33 = build_T33();
    const Combinatorics c33(f33.tri);
    const int e0 = f33.edge_id(c33, "e0");
    for (const Ring& r : rings()) {
        const auto sols = solutions(f33.tri, r, 10000);
        EXPECT_EQ(sols.empty(), r.characteristic() % 3 == 0) << r.spec();
        const MoveResult res = apply_3_2(f33.tri, e0);
        const Combinatorics c(res.tri);
        // sigma+ is the new tetrahedron that contains the image of e1+
        const int e1p = res.edge_map[f33.edge_id(c33, "e1+")];
        int plus = -1;
        for (int t : res.new_tets) {
            for (int s = 0; s < 6; ++s) {
                if (c.edge_of(t, s) == e1p) plus = t;
            }
        }
        ASSERT_GE(plus, 0);
        const int minus = res.new_tets[0] == plus ? res.new_tets[1] : res.new_tets[0];
        auto facing = [&](int tet, int edge) {
            for (int s = 0; s < 6; ++s) {
                if (c.edge_of(tet, s) == edge) return Quad{tet, quad_of_slot(s)};
            }
            ADD_FAILURE() << "edge " << edge << " misses tet " << tet;
            return Quad{tet, 0};
        };
        for (const auto& x : sols) {
            const ThurstonSolution y = transfer_solution_3to2(f33.tri, x, e0);
            const auto p = [&](const std::string& l) { return x[f33.quads.at(l)]; };
            for (int i = 1; i <= 3; ++i) {
                const std::string k = std::to_string(i);
                const std::string k1 = std::to_string(i % 3 + 1);
                const std::string k2 = std::to_string((i + 1) % 3 + 1);
                const int ei = res.edge_map[f33.edge_id(c33, "e" + k)];
                EXPECT_EQ(y[facing(plus, ei)], p("b" + k2) * p("c" + k1)) << r.spec();
                EXPECT_EQ(y[facing(minus, ei)], p("b" + k1) * p("c" + k2)) << r.spec();
            }
            EXPECT_TRUE(valid_tet(y, plus));
            EXPECT_TRUE(valid_tet(y, minus));
        }
    }
}

TEST(Transfer, HolonomyPreservedAcrossCorpus) {
    int checked = 0;
    for (const auto& item : corpus()) {
        for (const Ring& r : {Ring::parse("Z/7"), Ring::parse("F:2:2:1,1,1")}) {
            for (const auto& x : solutions(item.tri, r, 12)) {
                for (const Site23 s : sites_2_3(item.tri)) {
                    ThurstonSolution y(r, 0);
                    try {
                        y = transfer_solution_2to3(item.tri, x, s);
                    } catch (const Error& e) {
                        ASSERT_EQ(e.code(), Errc::NotInLocalization);
                        continue;
                    }
                    const MoveResult up = apply_2_3(item.tri, s);
                    const auto rep = verify_holonomy_preservation(item.tri, up.tri, x, y, up.edge_map);
                    EXPECT_TRUE(rep.all_equal) << item.name;
                    EXPECT_TRUE(verify_thurston(Combinatorics(up.tri), y).ok) << item.name;

                    // and back down, onto the original labels
                    const int e0 = new_edge_e0(up);
                    const ThurstonSolution back = transfer_solution_3to2(up.tri, y, e0);
                    const MoveResult down = apply_3_2(up.tri, e0);
                    EXPECT_TRUE(verify_holonomy_preservation(up.tri, down.tri, y, back, down.edge_map).all_equal);
                    std::vector<int> composed;
                    for (int m : up.edge_map) composed.push_back(down.edge_map[m]);
                    bool found = false;
                    for (const auto& iso : testsupport::isomorphisms_inducing(down.tri, item.tri, composed)) {
                        found = found || transport(iso, back) == x;
                    }
                    EXPECT_TRUE(found) << item.name;
                    ++checked;
                }
            }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Transfer, ThreeTwoAcrossCorpus) {
    int checked = 0;
    for (const auto& item : corpus()) {
        for (int e : sites_3_2(item.tri)) {
            for (const auto& x : solutions(item.tri, Ring::parse("Z/7"), 20)) {
                const ThurstonSolution y = transfer_solution_3to2(item.tri, x, e);
                const MoveResult down = apply_3_2(item.tri, e);
                EXPECT_TRUE(verify_holonomy_preservation(item.tri, down.tri, x, y, down.edge_map).all_equal);
                EXPECT_TRUE(verify_thurston(Combinatorics(down.tri), y).ok) << item.name;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(Transfer, MonodromyAroundNewEdge) {
    const Ring r = Ring::parse("Z/7");
    int checked = 0;
    for (const auto& item : corpus()) {
        for (const auto& x : solutions(item.tri, r, 4)) {
            for (const Site23 s : sites_2_3(item.tri)) {
                ThurstonSolution y(r, 0);
                try {
                    y = transfer_solution_2to3(item.tri, x, s);
                } catch (const Error&) {
                    continue;
                }
                const Combinatorics c(apply_2_3(item.tri, s).tri);
                const HTESolution z = thurston_to_hte(c, y);
                for (int e : c.interior_edges()) {
                    EXPECT_TRUE(edge_monodromy_trivial(c, z, e)) << item.name << " edge " << e;
                }
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Transfer, RejectsMismatchedInput) {
    const auto f021 = build_T021();
    const ThurstonSolution empty(Ring::parse("Z/5"), 2);
    EXPECT_EQ(error_code([&] { transfer_solution_2to3(f021.tri, empty, {0, 3}); }), code(Errc::MissingQuadValue));
    const ThurstonSolution small(Ring::parse("Z/5"), 1);
    EXPECT_EQ(error_code([&] { transfer_solution_2to3(f021.tri, small, {0, 3}); }), code(Errc::MissingQuadValue));
}

TEST(ZeroTwo, PillowFixtureBoundary) {
    const auto f = build_T023();
    const Combinatorics c(f.tri);
    for (const Ring& r : rings()) {
        for (const auto& s : r.shapes()) {
            ThurstonSolution x(r, 2);
            const auto p = tet_completion(s);
            const auto m = tet_completion(s.inverse());
            for (int k = 0; k < 3; ++k) x[Q(0, k)] = p[k], x[Q(1, k)] = m[k];
            for (int i = 1; i <= 3; ++i) {
                const std::string k = std::to_string(i);
                EXPECT_EQ(x[f.quads.at("q" + k + "-")], x[f.quads.at("q" + k + "+")].inverse());
            }
            for (const auto& w : edge_holonomies(c, x)) EXPECT_TRUE(w.is_one()) << r.spec();
        }
    }
}

TEST(ZeroTwo, LuneFixtureBoundary) {
    const auto f = build_T022();
    const Combinatorics c(f.tri);
    for (const Ring& r : rings()) {
        for (const auto& s : r.shapes()) {
            if (!s.inverse().is_unit() || !(r.one() - s.inverse()).is_unit()) continue;
            ThurstonSolution x(r, 2);
            const auto p = tet_completion(s);
            const auto m = tet_completion(s.inverse());
            for (int k = 0; k < 3; ++k) x[Q(0, k)] = p[k], x[Q(1, (1 + k) % 3)] = m[k];
            const RingElement q1p = x[f.quads.at("q1+")];
            const RingElement q1m = x[f.quads.at("q1-")];
            EXPECT_EQ(q1m, q1p.inverse());
            EXPECT_EQ(edge_holonomy(c, x, f.edge_id(c, "e0+")), q1p);
            EXPECT_EQ(edge_holonomy(c, x, f.edge_id(c, "e0-")), q1m);
            for (const char* l : {"e1", "e2", "e3"}) EXPECT_TRUE(edge_holonomy(c, x, f.edge_id(c, l)).is_one()) << l;
        }
    }
}

TEST(ZeroTwo, PillowInsertion) {
    int checked = 0;
    for (const auto& item : corpus()) {
        const Triangulation& tri = item.tri;
        for (int t = 0; t < tri.tet_count(); ++t) {
            for (int f = 0; f < 4; ++f) {
                if (!tri.is_glued(t, f)) continue;
                const Site02 site{t, f};
                const MoveResult res = apply_0_2(tri, Move02::TwoThree, site);
                const Combinatorics before(tri), after(res.tri);
                ASSERT_EQ(res.tri.tet_count(), tri.tet_count() + 2);
                EXPECT_EQ(after.edges().size(), before.edges().size() + 3) << item.name;
                EXPECT_EQ(after.vertices().size(), before.vertices().size() + 1) << item.name;
                EXPECT_EQ(after.interior_edge_count(), before.interior_edge_count() + 3) << item.name;
                for (int m : res.edge_map) EXPECT_GE(m, 0);
                for (const auto& x : solutions(tri, Ring::parse("Z/7"), 3)) {
                    for (const auto& s : x.ring.shapes()) {
                        const ThurstonSolution y = extend_solution_0_2(tri, x, Move02::TwoThree, site, s);
                        EXPECT_TRUE(verify_thurston(after, y).ok) << item.name;
                        EXPECT_TRUE(verify_holonomy_preservation(tri, res.tri, x, y, res.edge_map).all_equal);
                    }
                }
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 30);
}

TEST(ZeroTwo, LuneInsertion) {
    int checked = 0, extended = 0;
    for (const auto& item : corpus()) {
        const Combinatorics before(item.tri);
        for (const auto& e : before.edges()) {
            if (!e.interior || e.self_reversed || e.degree() < 2) continue;
            for (int i = 0; i < e.degree(); ++i) {
                for (int j = 0; j < e.degree(); ++j) {
                    const Site02 site{0, 0, e.id, i, j};
                    if (i == j) {
                        EXPECT_EQ(error_code([&] { apply_0_2(item.tri, Move02::TwoTwo, site); }), code(Errc::InvalidSite));
                        continue;
                    }
                    MoveResult res(Triangulation{}, {}, {}, {});
                    try {
                        res = apply_0_2(item.tri, Move02::TwoTwo, site);
                    } catch (const Error& err) {
                        ASSERT_EQ(err.code(), Errc::InvalidSite) << err.what();
                        const auto face = [&](int k) {
                            const auto& s = e.walk[k];
                            const auto& n = e.walk[(k + 1) % e.degree()];
                            return std::set<std::pair<int, int>>{{s.tet, s.v[2]}, {n.tet, n.v[3]}};
                        };
                        EXPECT_EQ(face(i), face(j));
                        continue;
                    }
                    const Combinatorics after(res.tri);
                    EXPECT_EQ(after.edges().size(), before.edges().size() + 2) << item.name;
                    EXPECT_EQ(after.vertices().size(), before.vertices().size()) << item.name;
                    EXPECT_EQ(res.edge_map[e.id], -1);
                    for (const auto& x : solutions(item.tri, Ring::parse("Z/7"), 6)) {
                        ThurstonSolution y(x.ring, 0);
                        try {
                            y = extend_solution_0_2(item.tri, x, Move02::TwoTwo, site);
                        } catch (const Error& err) {
                            ASSERT_EQ(err.code(), Errc::NotAShape);
                            continue;
                        }
                        EXPECT_TRUE(verify_thurston(after, y).ok) << item.name << " edge " << e.id;
                        EXPECT_TRUE(verify_holonomy_preservation(item.tri, res.tri, x, y, res.edge_map).all_equal);
                        EXPECT_EQ(y[Q(res.new_tets[1], 1)], y[Q(res.new_tets[0], 0)].inverse());
                        const HTESolution z = thurston_to_hte(after, y);
                        for (int k : after.interior_edges()) EXPECT_TRUE(edge_monodromy_trivial(after, z, k));
                        ++extended;
                    }
                    ++checked;
                }
            }
        }
    }
    EXPECT_GT(checked, 20);
    EXPECT_GT(extended, 20);
}

TEST(ZeroTwo, InvalidSites) {
    const auto f = build_T021();
    EXPECT_EQ(error_code([&] { apply_0_2(f.tri, Move02::TwoThree, {0, 0}); }), code(Errc::InvalidSite));
    const auto f33 = build_T33();
    const Combinatorics c(f33.tri);
    EXPECT_EQ(error_code([&] { apply_0_2(f33.tri, Move02::TwoTwo, {0, 0, f33.edge_id(c, "e1"), 0, 1}); }),
              code(Errc::InvalidSite));
    EXPECT_EQ(error_code([&] { apply_0_2(f33.tri, Move02::TwoTwo, {0, 0, f33.edge_id(c, "e0"), 0, 3}); }),
              code(Errc::InvalidSite));
}

TEST(Report, MismatchAndJson) {
    const auto f = build_T021();
    const ThurstonSolution x = solutions(f.tri, Ring::parse("Z/5"), 1).front();
    EXPECT_EQ(error_code([&] { verify_holonomy_preservation(f.tri, f.tri, x, x, {0, 1}); }),
              code(Errc::CorrespondenceMismatch));
    std::vector<int> ids(9);
    for (int i = 0; i < 9; ++i) ids[i] = i;
    const auto rep = verify_holonomy_preservation(f.tri, f.tri, x, x, ids);
    EXPECT_TRUE(rep.all_equal);
    EXPECT_TRUE(rep.violated().empty());
    ids[0] = 42;
    EXPECT_EQ(error_code([&] { verify_holonomy_preservation(f.tri, f.tri, x, x, ids); }),
              code(Errc::CorrespondenceMismatch));
    EXPECT_NE(rep.to_json().find("\"all_equal\": true"), std::string::npos);
}

TEST(Isomorphism, RelabelledCopies) {
    std::mt19937 rng(7);
    const auto even = [] {
        std::vector<Perm4> out;
        for (const auto& p : testsupport::all_perms()) {
            if (!is_odd(p)) out.push_back(p);
        }
        return out;
    }();
    for (const auto& item : corpus()) {
        const Triangulation& a = item.tri;
        const int n = a.tet_count();
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Perm4> phi(n);
        for (auto& p : phi) p = even[rng() % even.size()];
        Triangulation b(n);
        for (const auto& g : a.gluings()) {
            b.glue(order[g.tet], phi[g.tet][g.face], order[g.to_tet], compose(phi[g.to_tet], compose(g.perm, inverse(phi[g.tet]))));
        }
        const auto iso = find_isomorphism(a, b);
        ASSERT_TRUE(iso.has_value()) << item.name;
        for (const auto& x : solutions(a, Ring::parse("Z/7"), 3)) {
            const ThurstonSolution y = transport(*iso, x);
            EXPECT_TRUE(verify_thurston(Combinatorics(b), y).ok) << item.name;
            EXPECT_EQ(edge_holonomies(Combinatorics(b), y).size(), edge_holonomies(Combinatorics(a), x).size());
        }
    }
    EXPECT_FALSE(find_isomorphism(build_T021().tri, build_T022().tri).has_value());
}

TEST(Transfer, Z7ShapesTwoAndThree) {
    const Ring r = Ring::parse("Z/7");
    const auto f021 = build_T021();
    const auto f33 = build_T33();
    ThurstonSolution x(r, 2);
    const auto p = tet_completion(r.from_integer(2));
    const auto m = tet_completion(r.from_integer(3));
    for (int k = 0; k < 3; ++k) x[Q(0, k)] = p[k], x[Q(1, k)] = m[k];
    const ThurstonSolution y = transfer_solution_2to3(f021.tri, x, {0, 3});
    EXPECT_EQ(y[f33.quads.at("a1")], r.from_integer(6));
    EXPECT_EQ(y[f33.quads.at("a2")], r.from_integer(4));
    EXPECT_EQ(y[f33.quads.at("a3")], r.from_integer(5));
    EXPECT_TRUE(verify_thurston(Combinatorics(f33.tri), y).ok);
}

TEST(Report, ListsCorruptedEdges) {
    const Ring r = Ring::parse("Z/7");
    const Triangulation t33 = build_T33().tri;
    const auto x = solutions(t33, r, 1).front();
    const Combinatorics c(t33);
    const int e0 = build_T33().edge_id(c, "e0");
    const MoveResult down = apply_3_2(t33, e0);
    ThurstonSolution y = transfer_solution_3to2(t33, x, e0);
    const int t = down.new_tets[0];
    const auto shapes = r.shapes();
    const auto other = std::find_if(shapes.begin(), shapes.end(), [&](const RingElement& s) { return !(s == y[Q(t, 0)]); });
    const auto comp = tet_completion(*other);
    for (int k = 0; k < 3; ++k) y[Q(t, k)] = comp[k];
    const auto rep = verify_holonomy_preservation(t33, down.tri, x, y, down.edge_map);
    EXPECT_FALSE(rep.all_equal);
    const Combinatorics after(down.tri);
    for (int e : rep.violated()) {
        bool touches = false;
        for (const auto& inc : after.edge(down.edge_map[e]).incidences) touches = touches || inc.tet == t;
        EXPECT_TRUE(touches);
    }
    EXPECT_FALSE(rep.violated().empty());
}
