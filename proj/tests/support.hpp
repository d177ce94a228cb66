// Shared helpers for the test binaries: a triangulation corpus, a closed
// census search, and a brute-force isomorphism check.
#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "thurston/complex.hpp"
#include "thurston/error.hpp"
#include "thurston/pachner.hpp"

namespace testsupport {

using thurston::Combinatorics;
using thurston::Errc;
using thurston::Error;
using thurston::Perm4;
using thurston::Triangulation;

inline std::vector<Perm4> all_perms() {
    std::vector<Perm4> out;
    Perm4 p{0, 1, 2, 3};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Returns the Errc thrown by f, or nullopt-equivalent -1 cast when nothing is thrown.
template <class F>
int error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return static_cast<int>(e.code());
    }
    return -1;
}

inline int code(Errc e) { return static_cast<int>(e); }

/// Every closed triangulation with n tetrahedra, built from a perfect
/// matching of the 4n faces and an odd gluing per matched pair, visited in
/// a fixed order. The callback returns false to stop.
inline void closed_census(int n, const std::function<bool(const Triangulation&)>& visit) {
    const int faces = 4 * n;
    std::vector<int> partner(faces, -1);
    std::vector<std::pair<int, int>> pairs;
    const auto perms = all_perms();
    bool stop = false;

    std::function<void(std::size_t, Triangulation&)> assign = [&](std::size_t k, Triangulation& tri) {
        if (stop) return;
        if (k == pairs.size()) {
            if (!visit(tri)) stop = true;
            return;
        }
        const auto [a, b] = pairs[k];
        for (const auto& p : perms) {
            if (p[a % 4] != b % 4 || !thurston::is_odd(p)) continue;
            tri.glue(a / 4, a % 4, b / 4, p);
            assign(k + 1, tri);
            tri.unglue(a / 4, a % 4);
            if (stop) return;
        }
    };

    std::function<void()> match = [&]() {
        if (stop) return;
        int first = -1;
        for (int i = 0; i < faces; ++i) {
            if (partner[i] < 0) {
                first = i;
                break;
            }
        }
        if (first < 0) {
            Triangulation tri(n);
            assign(0, tri);
            return;
        }
        for (int j = first + 1; j < faces; ++j) {
            if (partner[j] >= 0) continue;
            partner[first] = j;
            partner[j] = first;
            pairs.emplace_back(first, j);
            match();
            pairs.pop_back();
            partner[first] = partner[j] = -1;
            if (stop) return;
        }
    };
    match();
}

/// Every triangulation with n tetrahedra, boundary allowed: each face is
/// left free or paired with a later face, then every odd gluing is tried.
inline void full_census(int n, const std::function<void(const Triangulation&)>& visit) {
    const int faces = 4 * n;
    const auto perms = all_perms();
    std::vector<bool> used(faces, false);
    std::vector<std::pair<int, int>> pairs;

    std::function<void(std::size_t, Triangulation&)> assign = [&](std::size_t k, Triangulation& tri) {
        if (k == pairs.size()) {
            visit(tri);
            return;
        }
        const auto [a, b] = pairs[k];
        for (const auto& p : perms) {
            if (p[a % 4] != b % 4 || !thurston::is_odd(p)) continue;
            tri.glue(a / 4, a % 4, b / 4, p);
            assign(k + 1, tri);
            tri.unglue(a / 4, a % 4);
        }
    };

    std::function<void(int)> match = [&](int i) {
        while (i < faces && used[i]) ++i;
        if (i == faces) {
            Triangulation tri(n);
            assign(0, tri);
            return;
        }
        used[i] = true;
        match(i + 1);
        for (int j = i + 1; j < faces; ++j) {
            if (used[j]) continue;
            used[j] = true;
            pairs.emplace_back(i, j);
            match(i + 1);
            pairs.pop_back();
            used[j] = false;
        }
        used[i] = false;
    };
    match(0);
}

inline bool has_reversed_edge(const Combinatorics& c) {
    return std::any_of(c.edges().begin(), c.edges().end(), [](const auto& e) { return e.self_reversed; });
}

inline bool all_interior_even(const Combinatorics& c) {
    for (const auto& e : c.edges()) {
        if (e.interior && e.degree() % 2) return false;
    }
    return true;
}

/// First census member (in census order) with valid edges accepted by pred.
inline Triangulation first_closed(int n, const std::function<bool(const Combinatorics&)>& pred) {
    Triangulation found;
    bool ok = false;
    closed_census(n, [&](const Triangulation& t) {
        Combinatorics c(t);
        if (has_reversed_edge(c) || !pred(c)) return true;
        found = t;
        ok = true;
        return false;
    });
    if (!ok) throw std::runtime_error("census search found nothing");
    return found;
}

struct NamedTriangulation {
    std::string name;
    Triangulation tri;
};

inline std::vector<int> sorted_degrees(const Combinatorics& c) {
    std::vector<int> d;
    for (const auto& e : c.edges()) d.push_back(e.degree());
    std::sort(d.begin(), d.end());
    return d;
}

/// Fixtures, glued and self-glued variants, and closed census finds.
inline const std::vector<NamedTriangulation>& corpus() {
    static const std::vector<NamedTriangulation> items = [] {
        std::vector<NamedTriangulation> v;
        for (const auto& name : thurston::fixture_names()) v.push_back({name, thurston::fixture_by_name(name).tri});
        // lone tetrahedron with two faces folded together
        v.push_back({"tet-folded", thurston::glue(Triangulation(1), {{0, 0, 0, 1, {1, 0, 2, 3}}})});
        // T021 with its two free faces 0.0 and 1.0 identified
        v.push_back({"T021-self", thurston::glue(thurston::build_T021().tri, {{0, 0, 1, 0, {0, 2, 1, 3}}})});
        // T33 with a lone tetrahedron attached on face 0.0
        v.push_back({"T33+tet", thurston::glue(thurston::build_T33().tri, Triangulation(1), {{0, 0, 0, 0, {0, 1, 3, 2}}})});
        v.push_back({"closed1-even", first_closed(1, [](const Combinatorics& c) { return all_interior_even(c); })});
        v.push_back({"closed1-odd", first_closed(1, [](const Combinatorics& c) { return !all_interior_even(c); })});
        v.push_back({"closed2-even-1v", first_closed(2, [](const Combinatorics& c) {
                         return all_interior_even(c) && c.vertices().size() == 1;
                     })});
        v.push_back({"closed2-odd", first_closed(2, [](const Combinatorics& c) {
                         return !all_interior_even(c) && sorted_degrees(c).front() >= 3;
                     })});
        v.push_back({"closed2-torus-link", first_closed(2, [](const Combinatorics& c) {
                         return sorted_degrees(c) == std::vector<int>{6, 6} &&
                                std::all_of(c.vertex_links().begin(), c.vertex_links().end(),
                                            [](const auto& l) { return l.euler_characteristic == 0; });
                     })});
        v.push_back({"closed2-sphere", first_closed(2, [](const Combinatorics& c) {
                         return sorted_degrees(c) == std::vector<int>{2, 2, 2, 2, 2, 2};
                     })});
        return v;
    }();
    return items;
}

/// Brute-force isomorphism: tetrahedron bijection plus a vertex
/// permutation per tetrahedron (orientation preserving or not).
inline bool isomorphic(const Triangulation& a, const Triangulation& b) {
    const int n = a.tet_count();
    if (n != b.tet_count() || a.gluings().size() != b.gluings().size()) return false;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    const auto perms = all_perms();
    std::vector<Perm4> vmap(n);
    do {
        std::function<bool(int)> choose = [&](int t) -> bool {
            if (t == n) return true;
            for (const auto& p : perms) {
                vmap[t] = p;
                bool ok = true;
                // check gluings among tets 0..t under the partial map
                for (int s = 0; s <= t && ok; ++s) {
                    for (int f = 0; f < 4 && ok; ++f) {
                        const int u = a.neighbor(s, f);
                        if (u > t) continue;
                        const int bs = order[s];
                        const int bf = vmap[s][f];
                        if (u < 0) {
                            ok = !b.is_glued(bs, bf);
                            continue;
                        }
                        if (b.neighbor(bs, bf) != order[u]) {
                            ok = false;
                            continue;
                        }
                        const Perm4& pa = a.gluing_perm(s, f);
                        const Perm4& pb = b.gluing_perm(bs, bf);
                        for (int v = 0; v < 4 && ok; ++v) ok = pb[vmap[s][v]] == vmap[u][pa[v]];
                    }
                }
                if (ok && choose(t + 1)) return true;
            }
            return false;
        };
        if (choose(0)) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

/// Orientation-preserving isomorphisms a -> b whose edge map inverts `b_to_a`;
/// entries of -1 are unconstrained.
inline std::vector<thurston::Isomorphism> isomorphisms_inducing(const Triangulation& a, const Triangulation& b, const std::vector<int>& b_to_a) {
    const int n = a.tet_count();
    std::vector<Perm4> even;
    for (const auto& p : all_perms()) {
        if (!thurston::is_odd(p)) even.push_back(p);
    }
    const Combinatorics ca(a), cb(b);
    std::vector<thurston::Isomorphism> out;
    thurston::Isomorphism iso{std::vector<int>(n, -1), std::vector<Perm4>(n)};
    std::vector<bool> taken(n, false);
    std::function<void(int)> choose = [&](int t) {
        if (t == n) {
            for (std::size_t e = 0; e < b_to_a.size(); ++e) {
                if (b_to_a[e] < 0) continue;
                const auto& inc = ca.edge(b_to_a[e]).incidences.front();
                const Perm4& phi = iso.vertex_maps[inc.tet];
                const int s = thurston::slot_of(phi[thurston::slot_vertices[inc.slot][0]], phi[thurston::slot_vertices[inc.slot][1]]);
                if (cb.edge_of(iso.tet_map[inc.tet], s) != static_cast<int>(e)) return;
            }
            out.push_back(iso);
            return;
        }
        for (int bt = 0; bt < n; ++bt) {
            if (taken[bt]) continue;
            for (const auto& p : even) {
                iso.tet_map[t] = bt;
                iso.vertex_maps[t] = p;
                bool ok = true;
                for (int s = 0; s <= t && ok; ++s) {
                    for (int f = 0; f < 4 && ok; ++f) {
                        const int u = a.neighbor(s, f);
                        if (u > t) continue;
                        const int bs = iso.tet_map[s], bf = iso.vertex_maps[s][f];
                        if (u < 0) {
                            ok = !b.is_glued(bs, bf);
                        } else {
                            ok = b.neighbor(bs, bf) == iso.tet_map[u] &&
                                 thurston::compose(b.gluing_perm(bs, bf), iso.vertex_maps[s]) == thurston::compose(iso.vertex_maps[u], a.gluing_perm(s, f));
                        }
                    }
                }
                if (!ok) continue;
                taken[bt] = true;
                choose(t + 1);
                taken[bt] = false;
            }
        }
        iso.tet_map[t] = -1;
    };
    if (n == b.tet_count()) choose(0);
    return out;
}

} // namespace testsupport
