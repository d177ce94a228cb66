#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "thurston/developing.hpp"
#include "thurston/pachner.hpp"

namespace thurston::cli {

namespace {

// Thrown for bad command-line values and unreadable files.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

int parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("bad " + what + " '" + s + "'");
    return v;
}

std::pair<int, int> parse_pair(const std::string& s, char sep, const std::string& what) {
    const auto at = s.find(sep);
    if (at == std::string::npos) throw UsageError("bad " + what + " '" + s + "'");
    return {parse_int(s.substr(0, at), what), parse_int(s.substr(at + 1), what)};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string values_line(const std::array<RingElement, 3>& v) {
    std::string s;
    for (int k = 0; k < 3; ++k) {
        if (k) s += " ";
        s += v[k].valid() ? v[k].to_string() : "-";
    }
    return s;
}

void print_assignment(const QuadAssignment& a, std::ostream& out) {
    for (int t = 0; t < a.tet_count(); ++t) out << "  tet " << t << ": " << values_line(a.values[t]) << "\n";
}

// Decimal residue, or coefficients c0,c1,... with optional brackets.
RingElement parse_element(const Ring& r, std::string text) {
    if (r.kind() == Ring::Kind::Zn) {
        const int v = parse_int(text, "element");
        if (v < 0 || static_cast<std::uint32_t>(v) >= r.size()) throw UsageError("element " + text + " out of range");
        return r.from_integer(v);
    }
    text.erase(std::remove_if(text.begin(), text.end(), [](char ch) { return ch == '[' || ch == ']' || ch == ' '; }), text.end());
    std::vector<std::uint32_t> coeffs;
    for (const auto& part : split(text, ',')) {
        const int v = parse_int(part, "coefficient");
        if (v < 0 || static_cast<std::uint32_t>(v) >= r.characteristic()) throw UsageError("coefficient " + part + " out of range");
        coeffs.push_back(static_cast<std::uint32_t>(v));
    }
    if (coeffs.size() != r.degree()) throw UsageError("element needs " + std::to_string(r.degree()) + " coefficients");
    return r.from_coefficients(coeffs);
}

SolutionFile load_solution(const std::string& path) { return parse_solution(read_file(path)); }

ThurstonSolution as_thurston(const Combinatorics& c, const SolutionFile& f) {
    return f.kind == SolutionKind::Thurston ? f.values : hte_to_thurston(c, f.values);
}

HTESolution as_hte(const Combinatorics& c, const SolutionFile& f) {
    return f.kind == SolutionKind::HTE ? f.values : thurston_to_hte(c, f.values);
}

struct Options {
    std::string tri;
    std::string sol;
    std::string ring;
    std::string out;
    std::string sol_out;
    std::string report_out;
    std::string to;
    std::string loop;
    std::string move;
    std::string face;
    std::string cut;
    std::string shape;
    std::string fixture;
    int edge = -1;
    std::size_t limit = 1;
    bool all = false;
    unsigned jobs = 1;
};

int cmd_validate(const Options& o, std::ostream& out) {
    const Triangulation tri = parse_triangulation(read_file(o.tri));
    out << "ok: tets=" << tri.tet_count() << " gluings=" << tri.gluings().size()
        << " boundary_faces=" << tri.boundary_face_count() << "\n";
    return 0;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const Combinatorics c(parse_triangulation(read_file(o.tri)));
    out << "tets=" << c.triangulation().tet_count() << " interior_edges=" << c.interior_edge_count();
    for (int e : c.interior_edges()) out << " degree(e" << e << ")=" << c.edge(e).degree();
    out << "\n";
    out << "edges=" << c.edges().size() << " vertices=" << c.vertices().size() << "\n";
    for (const auto& e : c.edges()) {
        out << "  e" << e.id << " degree=" << e.degree() << (e.interior ? " interior" : " boundary")
            << (e.self_reversed ? " self-reversed" : "") << "\n";
    }
    for (const auto& l : c.vertex_links()) {
        out << "  v" << l.vertex_class << " link: triangles=" << l.triangles << " euler=" << l.euler_characteristic
            << (l.closed ? " closed" : " with boundary") << "\n";
    }
    out << "F3-criterion: " << (even_degree_criterion(c) ? "solvable" : "unsolvable") << "\n";
    return 0;
}

int cmd_shapes(const Options& o, std::ostream& out) {
    const Ring r = Ring::parse(o.ring);
    std::string line;
    for (const auto& s : r.shapes()) line += (line.empty() ? "" : " ") + s.to_string();
    out << line << "\n";
    return 0;
}

std::string numbered_path(const std::string& path, std::size_t k) {
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "-" + std::to_string(k);
    return path.substr(0, dot) + "-" + std::to_string(k) + path.substr(dot);
}

int cmd_solve(const Options& o, std::ostream& out) {
    const Combinatorics c(parse_triangulation(read_file(o.tri)));
    const Ring r = Ring::parse(o.ring);
    if (o.jobs == 0) throw UsageError("--jobs must be positive");
    const std::size_t limit = o.all ? std::numeric_limits<std::size_t>::max() : o.limit;
    const auto sols = solve_thurston(c, r, limit, o.jobs);
    out << "solutions=" << sols.size() << "\n";
    for (std::size_t k = 0; k < sols.size(); ++k) {
        out << "solution " << k << ":\n";
        print_assignment(sols[k], out);
        if (!o.out.empty()) {
            write_file(sols.size() == 1 ? o.out : numbered_path(o.out, k), serialize_solution(sols[k], SolutionKind::Thurston));
        }
    }
    return sols.empty() ? 1 : 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Combinatorics c(parse_triangulation(read_file(o.tri)));
    const SolutionFile f = load_solution(o.sol);
    const VerifyReport rep = f.kind == SolutionKind::Thurston ? verify_thurston(c, f.values) : verify_hte(c, f.values);
    for (const auto& t : rep.tets) out << "tet " << t.tet << ": " << t.reason << "\n";
    for (const auto& e : rep.edges) {
        out << "edge e" << e.edge << ": " << (f.kind == SolutionKind::Thurston ? "W=" : "defect=") << e.value.to_string() << "\n";
    }
    out << (rep.ok ? "ok" : "failed") << " (" << solution_kind_name(f.kind) << ")\n";
    return rep.ok ? 0 : 1;
}

int cmd_convert(const Options& o, std::ostream& out) {
    const Combinatorics c(parse_triangulation(read_file(o.tri)));
    const SolutionFile f = load_solution(o.sol);
    if (o.to == "hte") {
        emit(o.out, serialize_solution(as_hte(c, f), SolutionKind::HTE), out);
    } else {
        emit(o.out, serialize_solution(as_thurston(c, f), SolutionKind::Thurston), out);
    }
    return 0;
}

int cmd_holonomy(const Options& o, std::ostream& out) {
    const Combinatorics c(parse_triangulation(read_file(o.tri)));
    const HTESolution z = as_hte(c, load_solution(o.sol));
    std::vector<DualStep> steps;
    for (const auto& s : split(o.loop, ',')) {
        const auto [t, f] = parse_pair(s, '.', "loop step");
        steps.push_back({t, f});
    }
    const DualPath loop = path_from_steps(c.triangulation(), steps);
    const PGLElement x = holonomy_of_loop(c, z, loop, seed_labeling(c, z, loop.start));
    out << "holonomy " << x.rep().to_string() << "\n";
    out << "identity: " << (pgl_equal(x, PGLElement::identity(z.ring)) ? "yes" : "no") << "\n";
    return 0;
}

int cmd_monodromy(const Options& o, std::ostream& out) {
    const Combinatorics c(parse_triangulation(read_file(o.tri)));
    const HTESolution z = as_hte(c, load_solution(o.sol));
    bool all = true;
    for (int e : c.interior_edges()) {
        const bool trivial = edge_monodromy_trivial(c, z, e);
        all = all && trivial;
        out << "e" << e << ": " << (trivial ? "trivial" : "nontrivial " + edge_monodromy(c, z, e).rep().to_string()) << "\n";
    }
    out << (all ? "all trivial" : "monodromy failure") << "\n";
    return all ? 0 : 1;
}

int cmd_pachner(const Options& o, std::ostream& out) {
    const Triangulation tri = parse_triangulation(read_file(o.tri));
    std::optional<ThurstonSolution> x;
    if (!o.sol.empty()) x = as_thurston(Combinatorics(tri), load_solution(o.sol));

    MoveResult res;
    std::optional<ThurstonSolution> y;
    auto need = [](bool ok, const std::string& msg) {
        if (!ok) throw UsageError(msg);
    };
    if (o.move == "2-3") {
        need(!o.face.empty(), "--move 2-3 needs --face <tet>.<face>");
        const auto [t, f] = parse_pair(o.face, '.', "face");
        res = apply_2_3(tri, {t, f});
        if (x) y = transfer_solution_2to3(tri, *x, {t, f});
    } else if (o.move == "3-2") {
        need(o.edge >= 0, "--move 3-2 needs --edge <id>");
        res = apply_3_2(tri, o.edge);
        if (x) y = transfer_solution_3to2(tri, *x, o.edge);
    } else if (o.move == "0-2_3") {
        need(!o.face.empty(), "--move 0-2_3 needs --face <tet>.<face>");
        const auto [t, f] = parse_pair(o.face, '.', "face");
        const Site02 site{t, f};
        res = apply_0_2(tri, Move02::TwoThree, site);
        if (x) {
            std::optional<RingElement> s;
            if (!o.shape.empty()) s = parse_element(x->ring, o.shape);
            y = extend_solution_0_2(tri, *x, Move02::TwoThree, site, s);
        }
    } else {
        need(o.edge >= 0 && !o.cut.empty(), "--move 0-2_2 needs --edge <id> and --cut <i>,<j>");
        const auto [i, j] = parse_pair(o.cut, ',', "cut");
        const Site02 site{0, 0, o.edge, i, j};
        res = apply_0_2(tri, Move02::TwoTwo, site);
        if (x) y = extend_solution_0_2(tri, *x, Move02::TwoTwo, site);
    }

    emit(o.out, serialize_triangulation(res.tri), out);
    if (!y) return 0;
    const TransferReport rep = verify_holonomy_preservation(tri, res.tri, *x, *y, res.edge_map);
    if (!o.sol_out.empty()) write_file(o.sol_out, serialize_solution(*y, SolutionKind::Thurston));
    if (!o.report_out.empty()) write_file(o.report_out, rep.to_json());
    if (!o.out.empty()) {
        out << "tets=" << res.tri.tet_count() << " retained_edges=" << rep.edges.size() << " holonomy "
            << (rep.all_equal ? "preserved" : "changed") << "\n";
        for (int e : rep.violated()) out << "  e" << e << " changed\n";
    }
    return rep.all_equal ? 0 : 1;
}

int cmd_fixtures(const Options& o, std::ostream& out) {
    if (o.fixture.empty()) {
        for (const auto& n : fixture_names()) out << n << "\n";
        return 0;
    }
    emit(o.out, serialize_triangulation(fixture_by_name(o.fixture).tri), out);
    return 0;
}

bool negative(Errc code) { return code == Errc::NotInLocalization; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gluing equations over finite rings"};
    app.require_subcommand(1);
    Options o;

    auto tri_arg = [&](CLI::App* sub) { sub->add_option("triangulation", o.tri, "triangulation file")->required(); };
    auto sol_arg = [&](CLI::App* sub) { sub->add_option("solution", o.sol, "solution file")->required(); };

    auto* validate = app.add_subcommand("validate", "check a triangulation file");
    tri_arg(validate);
    auto* stats = app.add_subcommand("stats", "edge and vertex table");
    tri_arg(stats);
    auto* shapes = app.add_subcommand("shapes", "list the shapes of a ring");
    shapes->add_option("--ring", o.ring, "ring spec")->required();
    auto* solve = app.add_subcommand("solve", "solve the gluing equations");
    tri_arg(solve);
    solve->add_option("--ring", o.ring, "ring spec")->required();
    solve->add_option("--limit", o.limit, "stop after this many solutions");
    solve->add_flag("--all", o.all, "every solution");
    solve->add_option("--jobs", o.jobs, "worker threads");
    solve->add_option("--out", o.out, "solution file; numbered when several");
    auto* verify = app.add_subcommand("verify", "check a solution file");
    tri_arg(verify);
    sol_arg(verify);
    auto* convert = app.add_subcommand("convert", "convert between thurston and hte data");
    tri_arg(convert);
    sol_arg(convert);
    convert->add_option("--to", o.to, "target kind")->required()->check(CLI::IsMember({"hte", "thurston"}));
    convert->add_option("--out", o.out, "output file");
    auto* holonomy = app.add_subcommand("holonomy", "holonomy of a closed dual path");
    tri_arg(holonomy);
    sol_arg(holonomy);
    holonomy->add_option("--loop", o.loop, "steps t.f,t.f,...")->required();
    auto* monodromy = app.add_subcommand("monodromy", "monodromy around every interior edge");
    tri_arg(monodromy);
    sol_arg(monodromy);
    auto* pachner = app.add_subcommand("pachner", "apply a local move");
    tri_arg(pachner);
    pachner->add_option("--move", o.move, "move kind")->required()->check(CLI::IsMember({"2-3", "3-2", "0-2_2", "0-2_3"}));
    pachner->add_option("--face", o.face, "site face <tet>.<face>");
    pachner->add_option("--edge", o.edge, "site edge id");
    pachner->add_option("--cut", o.cut, "0-2_2 cut positions <i>,<j>");
    pachner->add_option("--sol", o.sol, "solution to carry across");
    pachner->add_option("--shape", o.shape, "0-2_3 shape for the new pillow");
    pachner->add_option("--out", o.out, "new triangulation file");
    pachner->add_option("--sol-out", o.sol_out, "carried solution file");
    pachner->add_option("--report-out", o.report_out, "holonomy report file");
    auto* fixtures = app.add_subcommand("fixtures", "list or print built-in triangulations");
    fixtures->add_option("name", o.fixture, "fixture name");
    fixtures->add_option("--out", o.out, "output file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (stats->parsed()) return cmd_stats(o, out);
        if (shapes->parsed()) return cmd_shapes(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (convert->parsed()) return cmd_convert(o, out);
        if (holonomy->parsed()) return cmd_holonomy(o, out);
        if (monodromy->parsed()) return cmd_monodromy(o, out);
        if (pachner->parsed()) return cmd_pachner(o, out);
        if (fixtures->parsed()) return cmd_fixtures(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return negative(e.code()) ? 1 : 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace thurston::cli
