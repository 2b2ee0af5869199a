#include "evplan/netcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace evplan::netcore {

void RangeConfig::validate() const {
    if (!(full_range > 0.0))
        throw ValidationError("range config: R must be positive");
    if (alpha < 0.0 || alpha > 1.0)
        throw ValidationError("range config: alpha must lie in [0,1]");
}

Network::Network(std::vector<Vertex> vertices, std::vector<Edge> edges,
                 std::map<std::pair<VertexIdx, VertexIdx>, double> flows)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), flows_(std::move(flows)) {
    if (vertices_.empty()) throw ValidationError("network: no vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!index_.emplace(vertices_[i].id, static_cast<VertexIdx>(i)).second)
            throw ValidationError("network: duplicate vertex id '" + vertices_[i].id + "'");
    }
    const int n = static_cast<int>(vertices_.size());
    adj_.resize(vertices_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.a < 0 || ed.b < 0 || ed.a >= n || ed.b >= n)
            throw ValidationError("network: edge references unknown vertex");
        if (ed.a == ed.b)
            throw ValidationError("network: self-loop at vertex '" + vertices_[ed.a].id + "'");
        if (ed.a > ed.b)
            throw ValidationError("network: edge key must have a < b");
        if (!(ed.length > 0.0))
            throw ValidationError("network: nonpositive edge length on (" +
                                  vertices_[ed.a].id + "," + vertices_[ed.b].id + ")");
        if (!edge_index_.emplace(std::pair{ed.a, ed.b}, static_cast<int>(e)).second)
            throw ValidationError("network: duplicate edge (" + vertices_[ed.a].id + "," +
                                  vertices_[ed.b].id + ")");
        adj_[ed.a].push_back({ed.b, ed.length});
        adj_[ed.b].push_back({ed.a, ed.length});
    }
    for (const auto& [key, f] : flows_) {
        if (key.first < 0 || key.second < 0 || key.first >= n || key.second >= n)
            throw ValidationError("network: flow references unknown vertex");
        if (key.first >= key.second)
            throw ValidationError("network: flow key must have i < j");
        if (f < 0.0)
            throw ValidationError("network: negative flow on (" + vertices_[key.first].id +
                                  "," + vertices_[key.second].id + ")");
    }
}

VertexIdx Network::vertex_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("network: unknown vertex id '" + id + "'");
    return it->second;
}

int Network::edge_index(VertexIdx a, VertexIdx b) const {
    if (a > b) std::swap(a, b);
    auto it = edge_index_.find({a, b});
    return it == edge_index_.end() ? -1 : it->second;
}

void Network::validate_range(const RangeConfig& range) const {
    range.validate();
    const double limit = 2.0 * range.usable_radius();
    for (const Edge& e : edges_) {
        if (e.length > limit + kGeomTol) {
            std::ostringstream os;
            os << "network: edge (" << vertices_[e.a].id << "," << vertices_[e.b].id
               << ") has length " << e.length << " exceeding 2*alpha*R = " << limit
               << "; the refueling model requires every edge to be traversable on the "
                  "guaranteed charge";
            throw ValidationError(os.str());
        }
    }
}

NetworkPoint NetworkPoint::at_vertex(VertexIdx v) {
    NetworkPoint p;
    p.is_vertex = true;
    p.vertex = v;
    return p;
}

NetworkPoint NetworkPoint::on_edge(const Network& net, int edge, double offset) {
    const auto& edges = net.edges();
    if (edge < 0 || edge >= static_cast<int>(edges.size()))
        throw ValidationError("network point: unknown edge index");
    const Edge& e = edges[edge];
    if (offset < -kGeomTol || offset > e.length + kGeomTol)
        throw ValidationError("network point: offset outside edge");
    if (offset <= kGeomTol) return at_vertex(e.a);
    if (offset >= e.length - kGeomTol) return at_vertex(e.b);
    NetworkPoint p;
    p.is_vertex = false;
    p.edge = edge;
    p.offset = offset;
    return p;
}

std::string NetworkPoint::describe(const Network& net) const {
    if (is_vertex) return net.vertices()[vertex].id;
    const Edge& e = net.edges()[edge];
    std::ostringstream os;
    os << "(" << net.vertices()[e.a].id << "," << net.vertices()[e.b].id << ")@" << offset;
    return os.str();
}

DistanceTable build_distance_table(const Network& net) {
    const auto n = net.vertices().size();
    DistanceTable table(n);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n);
    using QE = std::pair<double, VertexIdx>;
    for (std::size_t src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[src] = 0.0;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        pq.push({0.0, static_cast<VertexIdx>(src)});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            for (auto [w, len] : net.adjacency()[v]) {
                if (d + len < dist[w]) {
                    dist[w] = d + len;
                    pq.push({dist[w], w});
                }
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (dist[j] == inf)
                throw ValidationError("network is disconnected: no path from '" +
                                      net.vertices()[src].id + "' to '" +
                                      net.vertices()[j].id + "'");
            table.at(static_cast<VertexIdx>(src), static_cast<VertexIdx>(j)) = dist[j];
        }
    }
    return table;
}

double point_vertex_distance(const Network& net, const DistanceTable& table,
                             const NetworkPoint& x, VertexIdx v) {
    if (x.is_vertex) return table(x.vertex, v);
    const Edge& e = net.edges()[x.edge];
    return std::min(table(e.a, v) + x.offset, table(e.b, v) + (e.length - x.offset));
}

double point_distance(const Network& net, const DistanceTable& table,
                      const NetworkPoint& x1, const NetworkPoint& x2) {
    if (x1.is_vertex) return point_vertex_distance(net, table, x2, x1.vertex);
    if (x2.is_vertex) return point_vertex_distance(net, table, x1, x2.vertex);
    const Edge& e1 = net.edges()[x1.edge];
    const Edge& e2 = net.edges()[x2.edge];
    double best = std::min({table(e1.a, e2.a) + x1.offset + x2.offset,
                            table(e1.a, e2.b) + x1.offset + (e2.length - x2.offset),
                            table(e1.b, e2.a) + (e1.length - x1.offset) + x2.offset,
                            table(e1.b, e2.b) + (e1.length - x1.offset) +
                                (e2.length - x2.offset)});
    if (x1.edge == x2.edge) best = std::min(best, std::fabs(x1.offset - x2.offset));
    return best;
}

std::vector<ODPair> build_od_pairs(const Network& net, const DistanceTable& table,
                                   const RangeConfig& range) {
    range.validate();
    const double limit = 2.0 * range.usable_radius();
    std::vector<ODPair> pairs;
    for (const auto& [key, f] : net.flows()) {
        if (f <= 0.0) continue;
        if (table(key.first, key.second) <= limit + kGeomTol)
            pairs.push_back({key.first, key.second, f});
    }
    // flows_ is an ordered map keyed by (i,j), so `pairs` is already lexicographic
    return pairs;
}

std::vector<ODPair> coverage_set(const Network& net, const DistanceTable& table,
                                 const NetworkPoint& x, const std::vector<ODPair>& pairs,
                                 double usable_radius) {
    std::vector<ODPair> out;
    for (const ODPair& q : pairs) {
        if (point_vertex_distance(net, table, x, q.origin) <= usable_radius + kGeomTol &&
            point_vertex_distance(net, table, x, q.destination) <= usable_radius + kGeomTol)
            out.push_back(q);
    }
    return out;
}

double covered_flow(const std::vector<ODPair>& coverage) {
    double total = 0.0;
    for (const ODPair& q : coverage) total += q.flow;
    return total;
}

}  // namespace evplan::netcore
