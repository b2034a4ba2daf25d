#include "backdoor/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <sstream>

namespace backdoor {

namespace {

struct TokenMarks {
    std::string_view token;
    Mark at_left;
    Mark at_right;
};

constexpr TokenMarks kTokens[] = {
    {"-->", Mark::Tail, Mark::Arrow},   {"<--", Mark::Arrow, Mark::Tail},
    {"<->", Mark::Arrow, Mark::Arrow},  {"o->", Mark::Circle, Mark::Arrow},
    {"<-o", Mark::Arrow, Mark::Circle}, {"o-o", Mark::Circle, Mark::Circle},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

char mark_char(Mark m) {
    switch (m) {
        case Mark::Tail: return 't';
        case Mark::Arrow: return 'a';
        case Mark::Circle: return 'c';
        case Mark::None: break;
    }
    return '?';
}

std::string describe_pair(const std::string& a, const std::string& b) {
    return "{" + std::min(a, b) + "," + std::max(a, b) + "}";
}

// Kahn's algorithm over the directed edges only.
std::vector<Vertex> directed_topological_order(const MixedGraph& g) {
    const int n = g.size();
    std::vector<int> indegree(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v))
            if (g.directed(w, v)) ++indegree[v];
    std::vector<Vertex> order;
    std::deque<Vertex> ready;
    for (Vertex v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        Vertex v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (Vertex w : g.neighbors(v))
            if (g.directed(v, w) && --indegree[w] == 0) ready.push_back(w);
    }
    return order;
}

template <typename Step>
VertexSet reach(const MixedGraph& g, const VertexSet& sources, Step step) {
    VertexSet seen;
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        if (!g.contains(s)) throw GraphError("unknown vertex id " + std::to_string(s));
        if (seen.insert(s).second) queue.push_back(s);
    }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v))
            if (step(v, w) && seen.insert(w).second) queue.push_back(w);
    }
    return seen;
}

}  // namespace

std::string_view to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::DAG: return "DAG";
        case GraphKind::CPDAG: return "CPDAG";
        case GraphKind::MAG: return "MAG";
        case GraphKind::PAG: return "PAG";
    }
    return "?";
}

GraphKind parse_kind(std::string_view text) {
    text = trim(text);
    if (text == "DAG") return GraphKind::DAG;
    if (text == "CPDAG") return GraphKind::CPDAG;
    if (text == "MAG") return GraphKind::MAG;
    if (text == "PAG") return GraphKind::PAG;
    throw GraphError("unknown graph kind '" + std::string(text) + "'");
}

ParseError::ParseError(int line, const std::string& message)
    : GraphError("line " + std::to_string(line) + ": " + message), line_(line) {}

bool valid_label(std::string_view label) {
    if (label.empty()) return false;
    for (char c : label) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        if (c == '<' || c == '>' || c == 'o' || c == '-' || c == '#') return false;
    }
    return true;
}

bool mark_pair_allowed(GraphKind kind, Mark a, Mark b) {
    if (a == Mark::None || b == Mark::None) return false;
    if (a > b) std::swap(a, b);  // order: Tail < Arrow < Circle
    switch (kind) {
        case GraphKind::DAG:
            return a == Mark::Tail && b == Mark::Arrow;
        case GraphKind::CPDAG:
            return (a == Mark::Tail && b == Mark::Arrow) || (a == Mark::Circle && b == Mark::Circle);
        case GraphKind::MAG:
            return (a == Mark::Tail && b == Mark::Arrow) || (a == Mark::Arrow && b == Mark::Arrow);
        case GraphKind::PAG:
            return a != Mark::Tail || b == Mark::Arrow;
    }
    return false;
}

MixedGraph::MixedGraph(GraphKind kind, std::vector<std::string> names, const std::vector<Edge>& edges)
    : kind_(kind), n_(static_cast<int>(names.size())), names_(std::move(names)) {
    for (Vertex v = 0; v < n_; ++v) {
        if (!valid_label(names_[v])) throw GraphError("invalid vertex label '" + names_[v] + "'");
        if (v > 0 && !(names_[v - 1] < names_[v]))
            throw GraphError("vertex labels must be sorted and unique near '" + names_[v] + "'");
        index_.emplace(names_[v], v);
    }
    marks_.assign(static_cast<size_t>(n_) * n_, Mark::None);
    adjacency_.assign(n_, {});
    for (const Edge& e : edges) {
        if (!contains(e.u) || !contains(e.v)) throw GraphError("edge endpoint out of range");
        if (e.u == e.v) throw GraphError("self-loop at " + names_[e.u]);
        if (adjacent(e.u, e.v))
            throw GraphError("duplicate edge for pair " + describe_pair(names_[e.u], names_[e.v]));
        if (!mark_pair_allowed(kind_, e.at_u, e.at_v)) {
            throw GraphError("illegal edge " + names_[e.u] + " " + std::string(1, mark_char(e.at_u)) + "-" +
                             std::string(1, mark_char(e.at_v)) + " " + names_[e.v] + " for kind " +
                             std::string(to_string(kind_)));
        }
        marks_[static_cast<size_t>(e.u) * n_ + e.v] = e.at_u;
        marks_[static_cast<size_t>(e.v) * n_ + e.u] = e.at_v;
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

    if (has_directed_cycle(*this)) throw GraphError("graph has a directed cycle");
    if (kind_ == GraphKind::MAG && has_almost_directed_cycle(*this))
        throw GraphError("graph has an almost directed cycle");
}

MixedGraph MixedGraph::from_labels(GraphKind kind, std::vector<std::string> names,
                                   const std::vector<LabeledEdge>& edges) {
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw GraphError("duplicate vertex label");
    auto lookup = [&](const std::string& label) {
        auto it = std::lower_bound(names.begin(), names.end(), label);
        if (it == names.end() || *it != label) throw GraphError("unknown vertex '" + label + "'");
        return static_cast<Vertex>(it - names.begin());
    };
    std::vector<Edge> indexed;
    indexed.reserve(edges.size());
    for (const auto& e : edges) {
        Vertex u = lookup(e.u), v = lookup(e.v);
        if (u < v)
            indexed.push_back({u, v, e.at_u, e.at_v});
        else
            indexed.push_back({v, u, e.at_v, e.at_u});
    }
    return MixedGraph(kind, std::move(names), indexed);
}

const std::string& MixedGraph::name(Vertex v) const {
    if (!contains(v)) throw GraphError("unknown vertex id " + std::to_string(v));
    return names_[v];
}

Vertex MixedGraph::index(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw GraphError("unknown vertex '" + std::string(name) + "'");
}

std::optional<Vertex> MixedGraph::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VertexSet MixedGraph::adjacent_set(Vertex v) const {
    return VertexSet(adjacency_[v].begin(), adjacency_[v].end());
}

VertexSet MixedGraph::parents(Vertex v) const {
    VertexSet out;
    for (Vertex w : adjacency_[v])
        if (directed(w, v)) out.insert(w);
    return out;
}

VertexSet MixedGraph::children(Vertex v) const {
    VertexSet out;
    for (Vertex w : adjacency_[v])
        if (directed(v, w)) out.insert(w);
    return out;
}

int MixedGraph::edges_into(Vertex v) const {
    int count = 0;
    for (Vertex w : adjacency_[v])
        if (into(v, w)) ++count;
    return count;
}

std::vector<Edge> MixedGraph::edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adjacency_[u])
            if (u < v) out.push_back({u, v, mark(u, v), mark(v, u)});
    return out;
}

size_t MixedGraph::edge_count() const {
    size_t total = 0;
    for (const auto& adj : adjacency_) total += adj.size();
    return total / 2;
}

MixedGraph MixedGraph::with_edges(GraphKind kind, const std::vector<Edge>& edges) const {
    return MixedGraph(kind, names_, edges);
}

MixedGraph MixedGraph::without_edges(const std::vector<std::pair<Vertex, Vertex>>& pairs) const {
    std::vector<Edge> kept;
    for (const Edge& e : edges()) {
        bool drop = std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) {
            return (p.first == e.u && p.second == e.v) || (p.first == e.v && p.second == e.u);
        });
        if (!drop) kept.push_back(e);
    }
    return with_edges(kind_, kept);
}

bool has_directed_cycle(const MixedGraph& g) {
    return static_cast<int>(directed_topological_order(g).size()) != g.size();
}

bool has_almost_directed_cycle(const MixedGraph& g) {
    for (const Edge& e : g.edges()) {
        if (e.at_u != Mark::Arrow || e.at_v != Mark::Arrow) continue;
        VertexSet an_v = ancestors(g, {e.v});
        VertexSet an_u = ancestors(g, {e.u});
        if (an_v.count(e.u) || an_u.count(e.v)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------

MixedGraph parse_graph(std::string_view text) {
    std::optional<GraphKind> kind;
    std::vector<std::string> names;
    std::set<std::string> name_set;
    std::vector<LabeledEdge> edges;
    std::set<std::pair<std::string, std::string>> pairs;

    auto add_vertex = [&](std::string_view label, int line_no) {
        if (!valid_label(label)) throw ParseError(line_no, "invalid vertex label '" + std::string(label) + "'");
        if (name_set.insert(std::string(label)).second) names.emplace_back(label);
    };

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (!kind) {
            if (line.substr(0, 5) != "kind:") throw ParseError(line_no, "expected 'kind: DAG|CPDAG|MAG|PAG' header");
            try {
                kind = parse_kind(line.substr(5));
            } catch (const GraphError& e) {
                throw ParseError(line_no, e.what());
            }
            continue;
        }
        if (line.substr(0, 7) == "vertex:") {
            auto parts = split_ws(line.substr(7));
            if (parts.size() != 1) throw ParseError(line_no, "expected 'vertex: <name>'");
            add_vertex(parts[0], line_no);
            continue;
        }
        if (line.substr(0, 5) == "kind:") throw ParseError(line_no, "duplicate kind header");

        auto parts = split_ws(line);
        if (parts.size() != 3) throw ParseError(line_no, "expected '<u> <edge> <v>'");
        const TokenMarks* tm = nullptr;
        for (const auto& t : kTokens)
            if (t.token == parts[1]) tm = &t;
        if (!tm) {
            if (parts[1] == "---" || parts[1] == "--o" || parts[1] == "o--")
                throw ParseError(line_no, "edges with a tail opposite a tail or circle are not supported");
            throw ParseError(line_no, "unknown edge token '" + std::string(parts[1]) + "'");
        }
        if (parts[0] == parts[2]) throw ParseError(line_no, "self-loop at " + std::string(parts[0]));
        add_vertex(parts[0], line_no);
        add_vertex(parts[2], line_no);
        std::string a(parts[0]), b(parts[2]);
        auto key = std::minmax(a, b);
        if (!pairs.insert({key.first, key.second}).second)
            throw ParseError(line_no, "duplicate edge for pair " + describe_pair(a, b));
        if (!mark_pair_allowed(*kind, tm->at_left, tm->at_right))
            throw ParseError(line_no, "edge '" + std::string(tm->token) + "' is not allowed in a " +
                                          std::string(to_string(*kind)));
        edges.push_back({a, b, tm->at_left, tm->at_right});
    }
    if (!kind) throw ParseError(line_no, "missing 'kind:' header");
    return MixedGraph::from_labels(*kind, std::move(names), edges);
}

std::string edge_token(const MixedGraph& g, Vertex a, Vertex b) {
    Mark ma = g.mark(a, b), mb = g.mark(b, a);
    for (const auto& t : kTokens)
        if (t.at_left == ma && t.at_right == mb) return std::string(t.token);
    throw GraphError("no edge token for pair " + describe_pair(g.name(a), g.name(b)));
}

std::string serialize(const MixedGraph& g) {
    std::ostringstream out;
    out << "kind: " << to_string(g.kind()) << "\n";
    for (Vertex v = 0; v < g.size(); ++v)
        if (g.neighbors(v).empty()) out << "vertex: " << g.name(v) << "\n";
    for (const Edge& e : g.edges()) {
        // Write arrows pointing right: "C --> B" rather than "B <-- C".
        bool flip = e.at_u == Mark::Arrow && e.at_v != Mark::Arrow;
        Vertex a = flip ? e.v : e.u, b = flip ? e.u : e.v;
        out << g.name(a) << " " << edge_token(g, a, b) << " " << g.name(b) << "\n";
    }
    return out.str();
}

VertexSet vertex_set(const MixedGraph& g, std::span<const std::string> names) {
    VertexSet out;
    for (const auto& n : names) out.insert(g.index(n));
    return out;
}

VertexSet parse_vertex_list(const MixedGraph& g, std::string_view text) {
    VertexSet out;
    if (trim(text).empty()) return out;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (item.empty()) throw GraphError("empty vertex name in list '" + std::string(text) + "'");
        out.insert(g.index(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<std::string> labels(const MixedGraph& g, const VertexSet& s) {
    std::vector<std::string> out;
    for (Vertex v : s) out.push_back(g.name(v));
    return out;
}

std::string format_set(const MixedGraph& g, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    for (Vertex v : s) {
        if (!first) out += ", ";
        out += g.name(v);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------

VertexSet descendants(const MixedGraph& g, const VertexSet& sources) {
    return reach(g, sources, [&](Vertex a, Vertex b) { return g.directed(a, b); });
}

VertexSet ancestors(const MixedGraph& g, const VertexSet& targets) {
    return reach(g, targets, [&](Vertex a, Vertex b) { return g.directed(b, a); });
}

VertexSet possible_descendants(const MixedGraph& g, const VertexSet& sources) {
    return reach(g, sources, [&](Vertex a, Vertex b) { return g.mark(a, b) != Mark::Arrow; });
}

VertexSet possible_ancestors(const MixedGraph& g, const VertexSet& targets) {
    return reach(g, targets, [&](Vertex a, Vertex b) { return g.mark(b, a) != Mark::Arrow; });
}

// ---------------------------------------------------------------------------

void validate_path(const MixedGraph& g, const Path& p) {
    if (p.vertices.size() < 2) throw GraphError("a path needs at least two vertices");
    std::vector<bool> seen(g.size(), false);
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        Vertex v = p.vertices[i];
        if (!g.contains(v)) throw GraphError("unknown vertex id " + std::to_string(v));
        if (seen[v]) throw GraphError("path repeats vertex " + g.name(v));
        seen[v] = true;
        if (i > 0 && !g.adjacent(p.vertices[i - 1], v))
            throw GraphError("path uses non-adjacent pair " + g.name(p.vertices[i - 1]) + ", " + g.name(v));
    }
}

bool is_collider(const MixedGraph& g, Vertex a, Vertex b, Vertex c) {
    return g.mark(b, a) == Mark::Arrow && g.mark(b, c) == Mark::Arrow;
}

bool is_definite_noncollider(const MixedGraph& g, Vertex a, Vertex b, Vertex c) {
    Mark left = g.mark(b, a), right = g.mark(b, c);
    if (left == Mark::Tail || right == Mark::Tail) return true;
    return left == Mark::Circle && right == Mark::Circle && !g.adjacent(a, c);
}

bool is_definite_status(const MixedGraph& g, const Path& p) {
    for (size_t i = 1; i + 1 < p.vertices.size(); ++i) {
        Vertex a = p.vertices[i - 1], b = p.vertices[i], c = p.vertices[i + 1];
        if (!is_collider(g, a, b, c) && !is_definite_noncollider(g, a, b, c)) return false;
    }
    return true;
}

bool is_possibly_directed(const MixedGraph& g, const Path& p) {
    for (size_t i = 1; i < p.vertices.size(); ++i)
        if (g.mark(p.vertices[i - 1], p.vertices[i]) == Mark::Arrow) return false;
    return true;
}

bool is_directed_path(const MixedGraph& g, const Path& p) {
    for (size_t i = 1; i < p.vertices.size(); ++i)
        if (!g.directed(p.vertices[i - 1], p.vertices[i])) return false;
    return true;
}

bool is_into_start(const MixedGraph& g, const Path& p) {
    return g.mark(p.vertices[0], p.vertices[1]) == Mark::Arrow;
}

bool is_out_of_start(const MixedGraph& g, const Path& p) {
    return g.mark(p.vertices[0], p.vertices[1]) == Mark::Tail;
}

std::vector<Path> definite_status_paths(const MixedGraph& g, Vertex x, Vertex y, std::optional<size_t> max_length) {
    if (!g.contains(x) || !g.contains(y)) throw GraphError("unknown vertex");
    if (x == y) throw GraphError("path endpoints must differ");
    std::vector<Path> out;
    std::vector<Vertex> stack{x};
    std::vector<bool> on_path(g.size(), false);
    on_path[x] = true;

    std::function<void()> extend = [&] {
        Vertex v = stack.back();
        if (max_length && stack.size() - 1 >= *max_length) return;
        for (Vertex w : g.neighbors(v)) {
            if (on_path[w]) continue;
            if (stack.size() >= 2) {
                Vertex u = stack[stack.size() - 2];
                if (!is_collider(g, u, v, w) && !is_definite_noncollider(g, u, v, w)) continue;
            }
            stack.push_back(w);
            if (w == y) {
                out.push_back(Path{stack});
            } else {
                on_path[w] = true;
                extend();
                on_path[w] = false;
            }
            stack.pop_back();
        }
    };
    extend();
    return out;
}

std::optional<Path> possibly_directed_definite_status_path(const MixedGraph& g, Vertex x, Vertex y) {
    if (!g.contains(x) || !g.contains(y)) throw GraphError("unknown vertex");
    if (x == y) throw GraphError("path endpoints must differ");
    std::vector<Vertex> parent(g.size(), -1);
    std::vector<bool> seen(g.size(), false);
    std::deque<Vertex> queue{x};
    seen[x] = true;
    while (!queue.empty() && !seen[y]) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (seen[w] || g.mark(v, w) == Mark::Arrow) continue;
            seen[w] = true;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    if (!seen[y]) return std::nullopt;

    Path p;
    for (Vertex v = y; v != -1; v = parent[v]) p.vertices.push_back(v);
    std::reverse(p.vertices.begin(), p.vertices.end());

    if (!is_definite_status(g, p))
        throw std::logic_error("shortest possibly directed path " + format_path(g, p) + " is not of definite status");
    bool arrow_seen = false;
    for (size_t i = 1; i < p.vertices.size(); ++i) {
        Vertex a = p.vertices[i - 1], b = p.vertices[i];
        if (arrow_seen && !g.directed(a, b))
            throw std::logic_error("path " + format_path(g, p) + " is not directed after its first arrowhead");
        if (g.mark(b, a) == Mark::Arrow) arrow_seen = true;
    }
    return p;
}

std::string format_path(const MixedGraph& g, const Path& p) {
    std::string out;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        if (i > 0) out += " " + edge_token(g, p.vertices[i - 1], p.vertices[i]) + " ";
        out += g.name(p.vertices[i]);
    }
    return out;
}

}  // namespace backdoor
