#include "thurston/equations.hpp"

#include <algorithm>
#include <thread>

#include <json.hpp>

namespace thurston {

bool QuadAssignment::complete() const {
    for (const auto& t : values) {
        for (const auto& v : t) {
            if (!v.valid()) return false;
        }
    }
    return true;
}

bool QuadAssignment::all_units() const {
    for (const auto& t : values) {
        for (const auto& v : t) {
            if (!v.valid() || !v.is_unit()) return false;
        }
    }
    return true;
}

bool operator==(const QuadAssignment& a, const QuadAssignment& b) {
    if (!(a.ring == b.ring) || a.values.size() != b.values.size()) return false;
    for (std::size_t t = 0; t < a.values.size(); ++t) {
        for (int m = 0; m < 3; ++m) {
            const auto& x = a.values[t][m];
            const auto& y = b.values[t][m];
            if (x.valid() != y.valid()) return false;
            if (x.valid() && x.index() != y.index()) return false;
        }
    }
    return true;
}

std::array<RingElement, 3> tet_completion(const RingElement& x) {
    const RingElement one = x.ring().one();
    if (!x.is_unit() || !(one - x).is_unit()) throw Error(Errc::NotAShape, x.to_string() + " is not a shape");
    return {x, (one - x).inverse(), (x - one) * x.inverse()};
}

namespace {

std::string quad_name(Quad q) { return "quad " + std::to_string(q.tet) + "." + std::to_string(q.index); }

void require_complete(const Combinatorics& c, const QuadAssignment& a) {
    if (a.tet_count() != c.triangulation().tet_count()) {
        throw Error(Errc::MissingQuadValue, "assignment covers " + std::to_string(a.tet_count()) +
                                                " tetrahedra, triangulation has " +
                                                std::to_string(c.triangulation().tet_count()));
    }
    for (int t = 0; t < a.tet_count(); ++t) {
        for (int m = 0; m < 3; ++m) {
            if (!a.assigned({t, m})) throw Error(Errc::MissingQuadValue, quad_name({t, m}) + " has no value");
        }
    }
}

const RingElement& value_at(const QuadAssignment& a, Quad q) {
    if (q.tet >= a.tet_count() || !a.assigned(q)) throw Error(Errc::MissingQuadValue, quad_name(q) + " has no value");
    return a[q];
}

} // namespace

RingElement edge_holonomy(const Combinatorics& c, const QuadAssignment& a, int edge) {
    RingElement w = a.ring.one();
    for (const Quad& q : c.quads_facing(edge)) w *= value_at(a, q);
    return w;
}

std::vector<RingElement> edge_holonomies(const Combinatorics& c, const QuadAssignment& a) {
    std::vector<RingElement> out;
    for (const auto& e : c.edges()) out.push_back(edge_holonomy(c, a, e.id));
    return out;
}

RingElement hte_edge_defect(const Combinatorics& c, const QuadAssignment& z, int edge) {
    RingElement lhs = z.ring.one();
    RingElement rhs = z.ring.one();
    for (const Quad& q : c.quads_facing(edge)) {
        lhs *= value_at(z, q);
        rhs *= -value_at(z, quad_succ(q));
    }
    return lhs - rhs;
}

VerifyReport verify_thurston(const Combinatorics& c, const ThurstonSolution& x) {
    require_complete(c, x);
    VerifyReport r;
    const RingElement one = x.ring.one();
    for (int t = 0; t < x.tet_count(); ++t) {
        for (int m = 0; m < 3; ++m) {
            const Quad q{t, m};
            if (x[quad_succ(q)] * (one - x[q]) != one) {
                r.tets.push_back({t, "x(q" + std::to_string((m + 1) % 3) + ")(1-x(q" + std::to_string(m) + ")) != 1"});
                break;
            }
        }
    }
    for (int e : c.interior_edges()) {
        RingElement w = edge_holonomy(c, x, e);
        if (!w.is_one()) r.edges.push_back({e, std::move(w)});
    }
    r.ok = r.tets.empty() && r.edges.empty();
    return r;
}

VerifyReport verify_hte(const Combinatorics& c, const HTESolution& z) {
    require_complete(c, z);
    VerifyReport r;
    for (int t = 0; t < z.tet_count(); ++t) {
        const RingElement s = z[{t, 0}] + z[{t, 1}] + z[{t, 2}];
        if (!s.is_zero()) r.tets.push_back({t, "sum = " + s.to_string()});
    }
    for (int e : c.interior_edges()) {
        RingElement u = hte_edge_defect(c, z, e);
        if (!u.is_zero()) r.edges.push_back({e, std::move(u)});
    }
    r.ok = r.tets.empty() && r.edges.empty();
    return r;
}

std::vector<int> solver_order(const Combinatorics& c) {
    const int n = c.triangulation().tet_count();
    std::vector<bool> done(n, false);
    std::vector<bool> touched(c.edges().size(), false);
    std::vector<int> order;
    for (int k = 0; k < n; ++k) {
        int best = -1;
        int best_score = -1;
        for (int t = 0; t < n; ++t) {
            if (done[t]) continue;
            int score = 0;
            for (int s = 0; s < 6; ++s) score += touched[c.edge_of(t, s)] ? 1 : 0;
            if (score > best_score) {
                best = t;
                best_score = score;
            }
        }
        done[best] = true;
        order.push_back(best);
        for (int s = 0; s < 6; ++s) touched[c.edge_of(best, s)] = true;
    }
    return order;
}

namespace {

// Index-level search state shared by all workers.
struct SearchPlan {
    const Ring* ring = nullptr;
    std::vector<int> order;
    std::vector<std::array<std::uint32_t, 3>> triples;
    // per step, the interior edges whose last incidence is assigned there,
    // each as its list of facing quads
    std::vector<std::vector<std::vector<Quad>>> checks;
};

SearchPlan make_plan(const Combinatorics& c, const Ring& r) {
    SearchPlan p;
    p.ring = &r;
    p.order = solver_order(c);
    const int n = static_cast<int>(p.order.size());
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[p.order[k]] = k;
    for (auto s : r.shape_indices()) {
        const auto t = tet_completion(r.from_index(s));
        p.triples.push_back({t[0].index(), t[1].index(), t[2].index()});
    }
    p.checks.resize(n);
    for (int e : c.interior_edges()) {
        const auto quads = c.quads_facing(e);
        int last = 0;
        for (const auto& q : quads) last = std::max(last, pos[q.tet]);
        p.checks[last].push_back(quads);
    }
    return p;
}

class Search {
public:
    Search(const SearchPlan& plan, std::size_t limit) : plan_(plan), limit_(limit), choice_(plan.order.size(), 0) {}

    // Solutions below a fixed first choice, or all when first < 0.
    std::vector<std::vector<std::uint32_t>> run(int first) {
        if (first >= 0) {
            choice_[plan_.order[0]] = static_cast<std::uint32_t>(first);
            if (consistent(0)) descend(1);
        } else {
            descend(0);
        }
        return std::move(found_);
    }

private:
    bool consistent(std::size_t step) const {
        const Ring& r = *plan_.ring;
        for (const auto& quads : plan_.checks[step]) {
            std::uint32_t w = 1;
            for (const auto& q : quads) w = r.mul(w, plan_.triples[choice_[q.tet]][q.index]);
            if (w != 1) return false;
        }
        return true;
    }

    void descend(std::size_t step) {
        if (found_.size() >= limit_) return;
        if (step == plan_.order.size()) {
            found_.push_back(choice_);
            return;
        }
        const int t = plan_.order[step];
        for (std::uint32_t s = 0; s < plan_.triples.size(); ++s) {
            choice_[t] = s;
            if (consistent(step)) descend(step + 1);
            if (found_.size() >= limit_) return;
        }
    }

    const SearchPlan& plan_;
    std::size_t limit_;
    std::vector<std::uint32_t> choice_;
    std::vector<std::vector<std::uint32_t>> found_;
};

} // namespace

std::vector<ThurstonSolution> solve_thurston(const Combinatorics& c, const Ring& r, std::size_t limit, int jobs) {
    std::vector<ThurstonSolution> out;
    if (limit == 0) return out;
    // the index-level check compares against 1 and assumes index 1 is the unit
    if (r.size() < 2 || r.one().index() != 1) throw Error(Errc::ConventionViolation, "ring unit is not index 1");
    const SearchPlan plan = make_plan(c, r);
    std::vector<std::vector<std::uint32_t>> raw;
    const int branches = static_cast<int>(plan.triples.size());
    if (jobs <= 1 || branches <= 1) {
        raw = Search(plan, limit).run(-1);
    } else {
        std::vector<std::vector<std::vector<std::uint32_t>>> per_branch(branches);
        const int workers = std::min(jobs, branches);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int b = w; b < branches; b += workers) per_branch[b] = Search(plan, limit).run(b);
            });
        }
        for (auto& th : pool) th.join();
        for (auto& b : per_branch) {
            for (auto& s : b) {
                if (raw.size() >= limit) break;
                raw.push_back(std::move(s));
            }
        }
    }
    for (const auto& choice : raw) {
        ThurstonSolution x(r, static_cast<int>(choice.size()));
        for (std::size_t t = 0; t < choice.size(); ++t) {
            for (int m = 0; m < 3; ++m) x.values[t][m] = r.from_index(plan.triples[choice[t]][m]);
        }
        out.push_back(std::move(x));
    }
    return out;
}

HTESolution thurston_to_hte(const Combinatorics& c, const ThurstonSolution& x, const std::vector<int>& base) {
    const VerifyReport rep = verify_thurston(c, x);
    if (!rep.ok) throw Error(Errc::InvalidSolution, "input is not a solution of the Thurston equation");
    if (!base.empty() && static_cast<int>(base.size()) != x.tet_count()) {
        throw Error(Errc::InvalidSolution, "base quad choice must list one quad per tetrahedron");
    }
    HTESolution z(x.ring, x.tet_count());
    const RingElement one = x.ring.one();
    for (int t = 0; t < x.tet_count(); ++t) {
        const int b = base.empty() ? 0 : base[t];
        if (b < 0 || b > 2) throw Error(Errc::InvalidSolution, "base quad index out of range");
        const Quad q1{t, b};
        const Quad q2 = quad_succ(q1);
        const Quad q3 = quad_succ(q2);
        z[q1] = x[q1];
        z[q2] = -one;
        z[q3] = one - x[q1];
    }
    return z;
}

ThurstonSolution hte_to_thurston(const Combinatorics& c, const HTESolution& z) {
    require_complete(c, z);
    for (int t = 0; t < z.tet_count(); ++t) {
        for (int m = 0; m < 3; ++m) {
            if (!z[{t, m}].is_unit()) {
                throw Error(Errc::NonUnitValue, quad_name({t, m}) + " value " + z[{t, m}].to_string() + " is not a unit");
            }
        }
    }
    if (!verify_hte(c, z).ok) throw Error(Errc::NotAnHTESolution, "input does not solve the homogeneous equations");
    ThurstonSolution x(z.ring, z.tet_count());
    for (int t = 0; t < z.tet_count(); ++t) {
        for (int m = 0; m < 3; ++m) {
            const Quad q{t, m};
            x[q] = -(z[q] * z[quad_succ(q)].inverse());
        }
    }
    return x;
}

const std::array<int, 4>& quad_vertex_order(int quad_index) {
    static const std::array<std::array<int, 4>, 3> table{{{0, 1, 3, 2}, {0, 2, 1, 3}, {0, 3, 2, 1}}};
    return table.at(quad_index);
}

namespace {

template <class Pick>
QuadAssignment from_vertex_vectors(const Combinatorics& c, const std::vector<Vec2>& f, Pick pick) {
    if (f.size() != c.vertices().size()) {
        throw Error(Errc::InvalidSolution, "expected " + std::to_string(c.vertices().size()) + " vertex vectors");
    }
    const int n = c.triangulation().tet_count();
    QuadAssignment out(f.front().a.ring(), n);
    for (int t = 0; t < n; ++t) {
        for (int m = 0; m < 3; ++m) {
            const auto& o = quad_vertex_order(m);
            const Vec2 cr = cross_ratio(f[c.vertex_of(t, o[0])], f[c.vertex_of(t, o[1])], f[c.vertex_of(t, o[2])],
                                        f[c.vertex_of(t, o[3])]);
            out[{t, m}] = pick(cr);
        }
    }
    return out;
}

} // namespace

HTESolution hte_from_vertex_vectors(const Combinatorics& c, const std::vector<Vec2>& f) {
    return from_vertex_vectors(c, f, [](const Vec2& v) { return v.a; });
}

QuadAssignment hte_companion_from_vertex_vectors(const Combinatorics& c, const std::vector<Vec2>& f) {
    return from_vertex_vectors(c, f, [](const Vec2& v) { return v.b; });
}

bool even_degree_criterion(const Combinatorics& c) {
    for (int e : c.interior_edges()) {
        if (c.edge(e).degree() % 2) return false;
    }
    return true;
}

ProjPoint quad_cross_ratio_target(const HTESolution& z, Quad q) {
    const RingElement& a = value_at(z, q);
    const RingElement& b = value_at(z, quad_succ(q));
    if (!a.is_unit() || !b.is_unit()) {
        throw Error(Errc::NonUnitValue, "cross ratio target at " + quad_name(q) + " needs unit values");
    }
    return ProjPoint({a, -b});
}

std::string_view solution_kind_name(SolutionKind k) { return k == SolutionKind::Thurston ? "thurston" : "hte"; }

SolutionFile parse_solution(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::ParseError, "top level must be an object");
    if (!doc.contains("ring") || !doc["ring"].is_string()) throw Error(Errc::ParseError, "field 'ring' must be a string");
    const Ring ring = Ring::parse(doc["ring"].get<std::string>());
    SolutionKind kind;
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw Error(Errc::ParseError, "field 'kind' must be a string");
    const auto k = doc["kind"].get<std::string>();
    if (k == "thurston") {
        kind = SolutionKind::Thurston;
    } else if (k == "hte") {
        kind = SolutionKind::HTE;
    } else {
        throw Error(Errc::ParseError, "field 'kind' must be \"thurston\" or \"hte\"");
    }
    if (!doc.contains("values") || !doc["values"].is_array()) throw Error(Errc::ParseError, "field 'values' must be an array");
    const auto& vals = doc["values"];
    QuadAssignment a(ring, static_cast<int>(vals.size()));
    for (std::size_t t = 0; t < vals.size(); ++t) {
        const std::string where = "values[" + std::to_string(t) + "]";
        if (!vals[t].is_array() || vals[t].size() != 3) throw Error(Errc::ParseError, where + " must list 3 values");
        for (int m = 0; m < 3; ++m) {
            const auto& v = vals[t][m];
            const std::string at = where + "[" + std::to_string(m) + "]";
            if (v.is_null()) continue;
            if (ring.kind() == Ring::Kind::Zn) {
                if (!v.is_number_integer()) throw Error(Errc::ParseError, at + " must be an integer");
                const auto i = v.get<long long>();
                if (i < 0 || i >= static_cast<long long>(ring.size())) {
                    throw Error(Errc::ParseError, at + " must lie in 0.." + std::to_string(ring.size() - 1));
                }
                a.values[t][m] = ring.from_index(static_cast<std::uint32_t>(i));
            } else {
                if (!v.is_array()) throw Error(Errc::ParseError, at + " must be a coefficient list");
                std::vector<std::uint32_t> coeffs;
                for (const auto& ci : v) {
                    if (!ci.is_number_unsigned()) throw Error(Errc::ParseError, at + " coefficients must be non-negative integers");
                    coeffs.push_back(ci.get<std::uint32_t>());
                }
                a.values[t][m] = ring.from_coefficients(coeffs);
            }
        }
    }
    return {kind, std::move(a)};
}

std::string serialize_solution(const QuadAssignment& a, SolutionKind kind) {
    std::string out = "{\n  \"ring\": \"" + a.ring.spec() + "\",\n  \"kind\": \"" + std::string(solution_kind_name(kind)) +
                      "\",\n  \"values\": [";
    for (int t = 0; t < a.tet_count(); ++t) {
        out += t ? ",\n    [" : "\n    [";
        for (int m = 0; m < 3; ++m) {
            if (m) out += ",";
            out += a.assigned({t, m}) ? a[{t, m}].to_string() : "null";
        }
        out += "]";
    }
    out += a.tet_count() ? "\n  ]\n}\n" : "]\n}\n";
    return out;
}

} // namespace thurston
