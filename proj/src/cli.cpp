#include "backdoor/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "backdoor/criterion.hpp"
#include "backdoor/gaussian.hpp"
#include "backdoor/oracle.hpp"
#include "backdoor/search.hpp"
#include "backdoor/separation.hpp"
#include "backdoor/visibility.hpp"

namespace backdoor::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string graph;
    std::string x;
    std::string y;
    std::string w;
    std::string out_dir;
    std::string kind = "dag";
    bool minimal = false;
    bool as_json = false;
    bool backdoor_only = false;
    bool lowered = false;
    int seeds = 20;
    std::uint64_t first_seed = 1;
};

MixedGraph load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read graph file '" + path + "'");
    std::stringstream text;
    text << in.rdbuf();
    try {
        return parse_graph(text.str());
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
}

Vertex single(const MixedGraph& g, const std::string& text, const char* what) {
    VertexSet s = parse_vertex_list(g, text);
    if (s.size() != 1) throw UsageError(std::string(what) + " must name exactly one vertex");
    return *s.begin();
}

json set_json(const MixedGraph& g, const VertexSet& s) { return json(labels(g, s)); }

json path_json(const MixedGraph& g, const Path& p) {
    json names = json::array();
    for (Vertex v : p.vertices) names.push_back(g.name(v));
    return names;
}

int cmd_check(const Options& o, std::ostream& out) {
    const MixedGraph g = load(o.graph);
    const VertexSet x = parse_vertex_list(g, o.x), y = parse_vertex_list(g, o.y), w = parse_vertex_list(g, o.w);
    const CriterionReport r = check_generalized_backdoor(g, x, y, w);
    json j;
    j["schema"] = 1;
    j["command"] = "check";
    j["kind"] = to_string(g.kind());
    j["x"] = set_json(g, x);
    j["y"] = set_json(g, y);
    j["w"] = set_json(g, w);
    j["verdict"] = r.verdict;
    j["failed"] = r.failed ? json(to_string(*r.failed)) : json(nullptr);
    j["vertex"] = r.vertex ? json(g.name(*r.vertex)) : json(nullptr);
    j["path"] = r.path ? json(format_path(g, *r.path)) : json(nullptr);
    j["path_vertices"] = r.path ? path_json(g, *r.path) : json(nullptr);
    out << j.dump(2) << "\n";
    return r.verdict ? 0 : 1;
}

int cmd_find(const Options& o, std::ostream& out) {
    const MixedGraph g = load(o.graph);
    const Vertex x = single(g, o.x, "-x"), y = single(g, o.y, "-y");
    const BackdoorSearch s = find_backdoor_set(g, x, y);
    std::vector<VertexSet> minimal;
    if (o.minimal && s.set) minimal = minimal_backdoor_sets(g, x, y);

    if (o.as_json) {
        json j;
        j["schema"] = 1;
        j["command"] = "find";
        j["kind"] = to_string(g.kind());
        j["x"] = g.name(x);
        j["y"] = g.name(y);
        j["found"] = s.set.has_value();
        j["set"] = s.set ? set_json(g, *s.set) : json(nullptr);
        j["adjacent"] = s.adjacent;
        j["dsep"] = set_json(g, s.dsep);
        j["possible_descendants"] = set_json(g, s.possible_de);
        j["intersection"] = set_json(g, s.intersection);
        j["representative"] = serialize(s.representative.full);
        j["lowered"] = serialize(s.representative.lowered);
        if (o.minimal) {
            json m = json::array();
            for (const VertexSet& v : minimal) m.push_back(set_json(g, v));
            j["minimal"] = m;
        }
        out << j.dump(2) << "\n";
    } else if (s.set) {
        out << format_set(g, *s.set) << "\n";
        for (const VertexSet& v : minimal) out << "minimal: " << format_set(g, v) << "\n";
    } else if (s.adjacent) {
        out << "NONE (adjacent: " << g.name(y) << " in adj(" << g.name(x) << ", R_X))\n";
    } else {
        out << "NONE (intersection: " << format_set(g, s.intersection) << ")\n";
    }
    return s.set ? 0 : 1;
}

int cmd_dsep(const Options& o, std::ostream& out) {
    const MixedGraph g = load(o.graph);
    const Vertex x = single(g, o.x, "-x"), y = single(g, o.y, "-y");
    const VertexSet d = o.lowered ? d_sep_set(construct_representative(g, x).lowered, x, y) : d_sep_set(g, x, y);
    out << format_set(g, d) << "\n";
    return 0;
}

int cmd_visible(const Options& o, std::ostream& out) {
    const MixedGraph g = load(o.graph);
    for (const Edge& e : g.edges()) {
        Vertex a = e.at_u == Mark::Tail ? e.u : e.v, b = e.at_u == Mark::Tail ? e.v : e.u;
        if (!g.directed(a, b)) continue;
        const Visibility v = edge_visibility(g, a, b);
        out << g.name(a) << " --> " << g.name(b) << ": " << (v.visible ? "visible" : "invisible");
        if (v.witness) out << " (witness " << g.name(*v.witness) << ": " << format_path(g, *v.witness_path) << ")";
        out << "\n";
    }
    return 0;
}

int cmd_paths(const Options& o, std::ostream& out) {
    const MixedGraph g = load(o.graph);
    const Vertex x = single(g, o.x, "-x"), y = single(g, o.y, "-y");
    const std::vector<Path> paths = o.backdoor_only ? back_door_paths(g, x, y) : definite_status_paths(g, x, y);
    for (const Path& p : paths) out << format_path(g, p) << "\n";
    return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
    const MixedGraph g = load(o.graph);
    const std::vector<MixedGraph> members = enumerate_cpdag_members(g);
    std::filesystem::path dir(o.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create directory '" + o.out_dir + "': " + ec.message());
    for (size_t k = 0; k < members.size(); ++k) {
        const std::filesystem::path file = dir / ("member_" + std::to_string(k + 1) + ".dag");
        std::ofstream f(file);
        if (!f) throw UsageError("cannot write '" + file.string() + "'");
        f << serialize(members[k]);
        out << file.filename().string() << "\n";
    }
    out << members.size() << " member" << (members.size() == 1 ? "" : "s") << "\n";
    return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
    std::string upper = o.kind;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    const GraphKind kind = parse_kind(upper);
    const auto results = validate_gaussian(kind, o.first_seed, o.seeds);
    double worst = 0;
    long checks = 0;
    char line[128];
    for (const SeedDeviation& r : results) {
        std::snprintf(line, sizeof line, "seed %llu: %d sets, max deviation %.3e\n",
                      static_cast<unsigned long long>(r.seed), r.checks, r.max_deviation);
        out << line;
        worst = std::max(worst, r.max_deviation);
        checks += r.checks;
    }
    const bool ok = worst <= 1e-8;
    std::snprintf(line, sizeof line, "%s: %zu seeds, %ld sets, max deviation %.3e\n", ok ? "PASS" : "FAIL",
                  results.size(), checks, worst);
    out << line;
    return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized back-door criterion toolkit", "backdoor"};
    app.require_subcommand(1);
    Options o;

    auto graph_opt = [&](CLI::App* c) { c->add_option("-g,--graph", o.graph, "Graph file")->required(); };
    auto xy = [&](CLI::App* c) {
        c->add_option("-x", o.x, "Treatment vertex or comma-separated list")->required();
        c->add_option("-y", o.y, "Outcome vertex or comma-separated list")->required();
    };

    CLI::App* check = app.add_subcommand("check", "Test the generalized back-door criterion (JSON report)");
    graph_opt(check);
    xy(check);
    check->add_option("-w", o.w, "Adjustment set, comma-separated; empty for none");

    CLI::App* find = app.add_subcommand("find", "Find a back-door set for a single pair");
    graph_opt(find);
    xy(find);
    find->add_flag("--minimal", o.minimal, "Also list inclusion-minimal sets");
    find->add_flag("--json", o.as_json, "JSON output with diagnostics");

    CLI::App* dsep = app.add_subcommand("dsep", "D-SEP set of a DAG or MAG");
    graph_opt(dsep);
    xy(dsep);
    dsep->add_flag("--lowered", o.lowered, "Use the lowered representative R_X of any graph kind");

    CLI::App* visible = app.add_subcommand("visible", "Visibility of every directed edge");
    graph_opt(visible);

    CLI::App* paths = app.add_subcommand("paths", "Definite status paths between two vertices");
    graph_opt(paths);
    xy(paths);
    paths->add_flag("--backdoor", o.backdoor_only, "Only back-door paths");

    CLI::App* enumerate = app.add_subcommand("enumerate", "Write the member DAGs of a CPDAG");
    graph_opt(enumerate);
    enumerate->add_option("-o,--out", o.out_dir, "Output directory")->required();

    CLI::App* validate = app.add_subcommand("validate-gaussian", "Linear-Gaussian adjustment sweep");
    validate->add_option("--kind", o.kind, "dag, cpdag or mag")->check(CLI::IsMember({"dag", "cpdag", "mag"}));
    validate->add_option("--seeds", o.seeds, "Number of seeds")->check(CLI::NonNegativeNumber);
    validate->add_option("--first-seed", o.first_seed, "First seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (find->parsed()) return cmd_find(o, out);
        if (dsep->parsed()) return cmd_dsep(o, out);
        if (visible->parsed()) return cmd_visible(o, out);
        if (paths->parsed()) return cmd_paths(o, out);
        if (enumerate->parsed()) return cmd_enumerate(o, out);
        if (validate->parsed()) return cmd_validate(o, out);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& c : msg)
            if (c == '\n') c = ' ';
        err << "error: " << msg << "\n";
        return 2;
    }
    return 2;
}

}  // namespace backdoor::cli
