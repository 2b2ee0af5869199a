#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evplan/common.hpp"

namespace evplan::netcore {

using VertexIdx = int;  // dense index into Network::vertices

struct Vertex {
    std::string id;
    std::string zone;
    std::optional<double> x;  // planar coordinates, only used for rendering
    std::optional<double> y;
};

struct Edge {
    VertexIdx a = 0;  // a < b
    VertexIdx b = 0;
    double length = 0.0;  // miles
};

struct RangeConfig {
    double full_range = 0.0;  // R, miles
    double alpha = 0.0;       // fraction of charge guaranteed at trip endpoints

    double usable_radius() const { return alpha * full_range; }
    void validate() const;
};

// Connected undirected road network with per-vertex zone tags and
// round-trip flows keyed by ordered vertex pairs (i < j).
class Network {
public:
    Network(std::vector<Vertex> vertices, std::vector<Edge> edges,
            std::map<std::pair<VertexIdx, VertexIdx>, double> flows);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::map<std::pair<VertexIdx, VertexIdx>, double>& flows() const { return flows_; }

    VertexIdx vertex_index(const std::string& id) const;  // throws on unknown id
    int edge_index(VertexIdx a, VertexIdx b) const;       // -1 when absent
    const std::vector<std::vector<std::pair<VertexIdx, double>>>& adjacency() const {
        return adj_;
    }

    // Assumption check: every edge must be reachable end to end on the
    // guaranteed charge, i.e. length <= 2*alpha*R. Throws ValidationError.
    void validate_range(const RangeConfig& range) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::map<std::pair<VertexIdx, VertexIdx>, double> flows_;
    std::map<std::string, VertexIdx> index_;
    std::map<std::pair<VertexIdx, VertexIdx>, int> edge_index_;
    std::vector<std::vector<std::pair<VertexIdx, double>>> adj_;
};

// A continuous location on the network: a vertex, or an interior point of
// an edge at `offset` miles from the edge's a-vertex. Offsets 0 and
// `length` canonicalize to the vertex form.
struct NetworkPoint {
    bool is_vertex = true;
    VertexIdx vertex = 0;   // valid when is_vertex
    int edge = -1;          // valid when !is_vertex
    double offset = 0.0;    // measured from edge a-vertex

    static NetworkPoint at_vertex(VertexIdx v);
    static NetworkPoint on_edge(const Network& net, int edge, double offset);

    bool operator==(const NetworkPoint&) const = default;
    std::string describe(const Network& net) const;
};

// All-pairs vertex shortest-path distances.
class DistanceTable {
public:
    explicit DistanceTable(std::size_t n) : n_(n), d_(n * n, 0.0) {}
    double operator()(VertexIdx i, VertexIdx j) const { return d_[i * n_ + j]; }
    double& at(VertexIdx i, VertexIdx j) { return d_[i * n_ + j]; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> d_;
};

struct ODPair {
    VertexIdx origin = 0;       // origin < destination
    VertexIdx destination = 0;
    double flow = 0.0;          // round trips per day

    auto key() const { return std::pair{origin, destination}; }
    bool operator==(const ODPair&) const = default;
    auto operator<=>(const ODPair& o) const { return key() <=> o.key(); }
};

// Dijkstra from every vertex. Throws ValidationError naming an unreachable
// vertex pair when the graph is disconnected.
DistanceTable build_distance_table(const Network& net);

// Shortest distance from an arbitrary point to a vertex. Edge-interior
// points route through whichever edge endpoint is cheaper.
double point_vertex_distance(const Network& net, const DistanceTable& table,
                             const NetworkPoint& x, VertexIdx v);

// Shortest distance between two arbitrary points: min over the four
// endpoint routes, plus the direct along-edge distance when both points
// lie on the same edge.
double point_distance(const Network& net, const DistanceTable& table,
                      const NetworkPoint& x1, const NetworkPoint& x2);

// All pairs with positive flow and d(i,j) <= 2*alpha*R, sorted by (i,j).
std::vector<ODPair> build_od_pairs(const Network& net, const DistanceTable& table,
                                   const RangeConfig& range);

// Pairs from `pairs` whose both endpoints are within alpha*R of x.
std::vector<ODPair> coverage_set(const Network& net, const DistanceTable& table,
                                 const NetworkPoint& x, const std::vector<ODPair>& pairs,
                                 double usable_radius);

double covered_flow(const std::vector<ODPair>& coverage);

}  // namespace evplan::netcore
