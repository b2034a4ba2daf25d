#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace backdoor {

/// Vertex ids are positions in the graph's sorted label list, so ordering by
/// id is the same as ordering by label.
using Vertex = int;
using VertexSet = std::set<Vertex>;

enum class Mark : std::uint8_t { None, Tail, Arrow, Circle };

enum class GraphKind { DAG, CPDAG, MAG, PAG };

std::string_view to_string(GraphKind kind);
GraphKind parse_kind(std::string_view text);

/// One edge in canonical form: u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Mark at_u = Mark::None;
    Mark at_v = Mark::None;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct LabeledEdge {
    std::string u;
    std::string v;
    Mark at_u = Mark::None;
    Mark at_v = Mark::None;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Partial mixed graph with at most one edge per vertex pair.
///
/// Immutable once built. The constructor validates the mark pairs allowed for
/// the kind and the acyclicity conditions: no directed cycle for every kind,
/// and additionally no almost directed cycle for MAGs.
class MixedGraph {
public:
    /// `names` must be sorted and unique; edge endpoints index into it.
    MixedGraph(GraphKind kind, std::vector<std::string> names, const std::vector<Edge>& edges);

    /// Convenience constructor from labels; sorts the vertex list.
    static MixedGraph from_labels(GraphKind kind, std::vector<std::string> names,
                                  const std::vector<LabeledEdge>& edges);

    GraphKind kind() const { return kind_; }
    int size() const { return n_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Vertex v) const;
    Vertex index(std::string_view name) const;
    std::optional<Vertex> find(std::string_view name) const;
    bool contains(Vertex v) const { return v >= 0 && v < n_; }

    /// Mark at `at` on the edge between `at` and `other`; None if not adjacent.
    Mark mark(Vertex at, Vertex other) const { return marks_[static_cast<size_t>(at) * n_ + other]; }
    bool adjacent(Vertex a, Vertex b) const { return a != b && mark(a, b) != Mark::None; }
    /// a -> b
    bool directed(Vertex a, Vertex b) const { return mark(a, b) == Mark::Tail && mark(b, a) == Mark::Arrow; }
    /// Edge between a and b has an arrowhead at a.
    bool into(Vertex a, Vertex b) const { return mark(a, b) == Mark::Arrow; }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    VertexSet adjacent_set(Vertex v) const;
    VertexSet parents(Vertex v) const;
    VertexSet children(Vertex v) const;
    /// Number of edges with an arrowhead at v.
    int edges_into(Vertex v) const;

    std::vector<Edge> edges() const;
    size_t edge_count() const;

    /// Same vertices, new kind and edge list; runs full validation.
    MixedGraph with_edges(GraphKind kind, const std::vector<Edge>& edges) const;
    MixedGraph without_edges(const std::vector<std::pair<Vertex, Vertex>>& pairs) const;

    friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
        return a.kind_ == b.kind_ && a.names_ == b.names_ && a.marks_ == b.marks_;
    }

private:
    GraphKind kind_;
    int n_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Vertex> index_;
    std::vector<Mark> marks_;
    std::vector<std::vector<Vertex>> adjacency_;
};

bool valid_label(std::string_view label);
bool mark_pair_allowed(GraphKind kind, Mark a, Mark b);

bool has_directed_cycle(const MixedGraph& g);
/// Bidirected edge A <-> B where A is an ancestor of B.
bool has_almost_directed_cycle(const MixedGraph& g);

// ---------------------------------------------------------------------------
// Text format

MixedGraph parse_graph(std::string_view text);
std::string serialize(const MixedGraph& g);
/// Edge token as written from `a` to `b`, e.g. "-->" or "o-o".
std::string edge_token(const MixedGraph& g, Vertex a, Vertex b);

VertexSet vertex_set(const MixedGraph& g, std::span<const std::string> names);
/// Comma separated labels, no spaces; the empty string is the empty set.
VertexSet parse_vertex_list(const MixedGraph& g, std::string_view text);
std::vector<std::string> labels(const MixedGraph& g, const VertexSet& s);
/// "{V1, V3}"
std::string format_set(const MixedGraph& g, const VertexSet& s);

// ---------------------------------------------------------------------------
// Reachability. All sets are reflexive: the sources are included.

VertexSet descendants(const MixedGraph& g, const VertexSet& sources);
VertexSet ancestors(const MixedGraph& g, const VertexSet& targets);
VertexSet possible_descendants(const MixedGraph& g, const VertexSet& sources);
VertexSet possible_ancestors(const MixedGraph& g, const VertexSet& targets);

// ---------------------------------------------------------------------------
// Paths

struct Path {
    std::vector<Vertex> vertices;

    size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    Vertex front() const { return vertices.front(); }
    Vertex back() const { return vertices.back(); }

    friend bool operator==(const Path&, const Path&) = default;
    friend auto operator<=>(const Path&, const Path&) = default;
};

/// Throws GraphError unless p has >= 2 distinct vertices, consecutive ones adjacent.
void validate_path(const MixedGraph& g, const Path& p);

/// `b` is the middle of the triple <a, b, c>.
bool is_collider(const MixedGraph& g, Vertex a, Vertex b, Vertex c);
bool is_definite_noncollider(const MixedGraph& g, Vertex a, Vertex b, Vertex c);
bool is_definite_status(const MixedGraph& g, const Path& p);
/// No edge on p is into its predecessor.
bool is_possibly_directed(const MixedGraph& g, const Path& p);
bool is_directed_path(const MixedGraph& g, const Path& p);
/// First edge has an arrowhead at p.front().
bool is_into_start(const MixedGraph& g, const Path& p);
/// First edge has a tail at p.front().
bool is_out_of_start(const MixedGraph& g, const Path& p);

/// All definite status paths between x and y, in lexicographic order of their
/// vertex sequences. In DAGs and MAGs this is every path.
std::vector<Path> definite_status_paths(const MixedGraph& g, Vertex x, Vertex y,
                                        std::optional<size_t> max_length = std::nullopt);

/// Shortest possibly directed path from x to y, if y is a possible descendant.
/// Throws std::logic_error when the path is not of definite status or breaks the
/// "directed after the first arrowhead" property; that only happens on inputs
/// that are not genuine CPDAGs/PAGs.
std::optional<Path> possibly_directed_definite_status_path(const MixedGraph& g, Vertex x, Vertex y);

/// "X <-> V2 --> Y"
std::string format_path(const MixedGraph& g, const Path& p);

}  // namespace backdoor
