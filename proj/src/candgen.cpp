#include "evplan/candgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace evplan::candgen {

using netcore::DistanceTable;
using netcore::Network;
using netcore::NetworkPoint;
using netcore::ODPair;
using netcore::VertexIdx;

bool EndpointCatalog::covers(int endpoint, int pair) const {
    const auto& c = endpoints[endpoint].covered;
    return std::binary_search(c.begin(), c.end(), pair);
}

int EndpointCatalog::pair_index(VertexIdx i, VertexIdx j) const {
    ODPair probe{i, j, 0.0};
    auto it = std::lower_bound(pairs.begin(), pairs.end(), probe);
    if (it == pairs.end() || it->key() != probe.key()) return -1;
    return static_cast<int>(it - pairs.begin());
}

std::vector<ODPair> existing_domain(const Network& net, const DistanceTable& table,
                                    const std::vector<ExistingStation>& stations,
                                    const std::vector<ODPair>& pairs, double usable_radius) {
    std::set<ODPair> dom;
    for (const ExistingStation& st : stations) {
        for (const ODPair& q : netcore::coverage_set(net, table, st.location, pairs, usable_radius))
            dom.insert(q);
    }
    return {dom.begin(), dom.end()};
}

std::vector<ODPair> uncovered_pairs(const std::vector<ODPair>& all_pairs,
                                    const std::vector<ODPair>& domain) {
    std::set<std::pair<VertexIdx, VertexIdx>> all;
    for (const ODPair& q : all_pairs) all.insert(q.key());
    for (const ODPair& q : domain)
        if (!all.count(q.key()))
            throw ValidationError("uncovered_pairs: domain pair not present in the full set");
    std::set<std::pair<VertexIdx, VertexIdx>> dom;
    for (const ODPair& q : domain) dom.insert(q.key());
    std::vector<ODPair> out;
    for (const ODPair& q : all_pairs)
        if (!dom.count(q.key())) out.push_back(q);
    return out;
}

double gamma(const Network& net, const DistanceTable& table, VertexIdx k, VertexIdx r,
             int edge, double usable_radius) {
    const netcore::Edge& e = net.edges()[edge];
    return std::min(usable_radius - table(k, r), e.length);
}

double delta(const Network& net, const DistanceTable& table, const ODPair& pair, int edge,
             VertexIdx r, double usable_radius) {
    const netcore::Edge& e = net.edges()[edge];
    const double approach = std::max(table(pair.origin, r), table(pair.destination, r));
    return std::min(usable_radius - approach, e.length);
}

std::vector<RefuelingSegment> type1_segments(const Network& net, const DistanceTable& table,
                                             const ODPair& pair, int edge,
                                             double usable_radius) {
    const netcore::Edge& e = net.edges()[edge];
    std::vector<RefuelingSegment> out;
    // entry scenario via a: l(a,x) <= gamma(origin; a, b), l(b,x) <= gamma(dest; b, a)
    // entry scenario via b: mirrored
    for (int scen = 0; scen < 2; ++scen) {
        const VertexIdx r = scen == 0 ? e.a : e.b;
        const VertexIdx c = scen == 0 ? e.b : e.a;
        const double g_in = gamma(net, table, pair.origin, r, edge, usable_radius);
        const double g_out = gamma(net, table, pair.destination, c, edge, usable_radius);
        if (g_in < -kGeomTol || g_out < -kGeomTol) continue;
        // convert l(r,x) <= g_in, l(c,x) <= g_out into offsets from a
        double lo, hi;
        if (scen == 0) {
            lo = std::max(0.0, e.length - g_out);
            hi = std::min(g_in, e.length);
        } else {
            lo = std::max(0.0, e.length - g_in);
            hi = std::min(g_out, e.length);
        }
        if (lo > hi + kGeomTol) continue;
        hi = std::max(lo, hi);
        out.push_back({edge, lo, hi, pair.key(), TripType::Type1,
                       scen == 0 ? EntryScenario::EntryA : EntryScenario::EntryB});
    }
    return out;
}

std::vector<RefuelingSegment> type2_segments(const Network& net, const DistanceTable& table,
                                             const ODPair& pair, int edge,
                                             double usable_radius) {
    const netcore::Edge& e = net.edges()[edge];
    std::vector<RefuelingSegment> out;
    const double da = delta(net, table, pair, edge, e.a, usable_radius);
    if (da >= -kGeomTol)
        out.push_back({edge, 0.0, std::max(0.0, std::min(da, e.length)), pair.key(),
                       TripType::Type2, EntryScenario::EntryA});
    const double db = delta(net, table, pair, edge, e.b, usable_radius);
    if (db >= -kGeomTol) {
        const double start = std::min(e.length, std::max(0.0, e.length - db));
        out.push_back({edge, start, e.length, pair.key(), TripType::Type2,
                       EntryScenario::EntryB});
    }
    return out;
}

std::vector<RawEndpoint> scan_edge(const Network& net, const DistanceTable& table, int edge,
                                   const std::vector<ODPair>& pairs, double usable_radius) {
    std::vector<RawEndpoint> out;
    for (const ODPair& q : pairs) {
        auto push = [&](const RefuelingSegment& s) {
            out.push_back({s.start, {s.od, s.trip_type, s.scenario}});
            if (s.end > s.start + kGeomTol)
                out.push_back({s.end, {s.od, s.trip_type, s.scenario}});
        };
        for (const RefuelingSegment& s : type1_segments(net, table, q, edge, usable_radius))
            push(s);
        for (const RefuelingSegment& s : type2_segments(net, table, q, edge, usable_radius))
            push(s);
    }
    return out;
}

std::string point_zone(const Network& net, const NetworkPoint& p) {
    if (p.is_vertex) return net.vertices()[p.vertex].zone;
    const netcore::Edge& e = net.edges()[p.edge];
    return p.offset <= e.length - p.offset ? net.vertices()[e.a].zone
                                           : net.vertices()[e.b].zone;
}

EndpointCatalog build_catalog(const Network& net, const DistanceTable& table,
                              const std::vector<ODPair>& pairs, double usable_radius,
                              const std::vector<ExistingStation>& stations) {
    EndpointCatalog catalog;
    catalog.pairs = pairs;
    std::sort(catalog.pairs.begin(), catalog.pairs.end());

    // Collect raw sites: vertex hits dedup by vertex index, interior hits
    // per edge. Offsets within the geometric tolerance merge.
    std::map<VertexIdx, std::vector<EndpointSource>> vertex_sites;
    std::map<int, std::vector<RawEndpoint>> edge_sites;
    for (int e = 0; e < static_cast<int>(net.edges().size()); ++e) {
        for (RawEndpoint& raw : scan_edge(net, table, e, catalog.pairs, usable_radius)) {
            NetworkPoint p = NetworkPoint::on_edge(net, e, raw.offset);
            if (p.is_vertex)
                vertex_sites[p.vertex].push_back(raw.source);
            else
                edge_sites[e].push_back(raw);
        }
    }

    struct Site {
        NetworkPoint location;
        std::vector<EndpointSource> sources;
    };
    std::vector<Site> sites;
    for (auto& [v, sources] : vertex_sites)
        sites.push_back({NetworkPoint::at_vertex(v), std::move(sources)});
    for (auto& [e, raws] : edge_sites) {
        std::sort(raws.begin(), raws.end(),
                  [](const RawEndpoint& a, const RawEndpoint& b) { return a.offset < b.offset; });
        std::size_t i = 0;
        while (i < raws.size()) {
            Site site{NetworkPoint::on_edge(net, e, raws[i].offset), {raws[i].source}};
            std::size_t j = i + 1;
            while (j < raws.size() && raws[j].offset - raws[i].offset <= kGeomTol) {
                site.sources.push_back(raws[j].source);
                ++j;
            }
            sites.push_back(std::move(site));
            i = j;
        }
    }

    // Deterministic order: vertex sites by vertex index precede interior
    // sites ordered by (edge a, edge b, offset).
    auto sort_key = [&](const Site& s) {
        if (s.location.is_vertex)
            return std::tuple(-1, s.location.vertex, 0.0);
        const netcore::Edge& e = net.edges()[s.location.edge];
        return std::tuple(e.a, e.b, s.location.offset);
    };
    std::sort(sites.begin(), sites.end(),
              [&](const Site& a, const Site& b) { return sort_key(a) < sort_key(b); });

    for (Site& s : sites) {
        Endpoint ep;
        ep.id = static_cast<int>(catalog.endpoints.size());
        ep.location = s.location;
        ep.zone = point_zone(net, s.location);
        ep.sources = std::move(s.sources);
        const auto cov =
            netcore::coverage_set(net, table, ep.location, catalog.pairs, usable_radius);
        for (const ODPair& q : cov) {
            ep.covered.push_back(catalog.pair_index(q.origin, q.destination));
            ep.covered_flow += q.flow;
        }
        catalog.endpoints.push_back(std::move(ep));
    }

    for (const ExistingStation& st : stations) {
        ExistingPoint p;
        p.id = st.id;
        p.location = st.location;
        p.zone = point_zone(net, st.location);
        const auto cov =
            netcore::coverage_set(net, table, st.location, catalog.pairs, usable_radius);
        for (const ODPair& q : cov) {
            p.covered.push_back(catalog.pair_index(q.origin, q.destination));
            p.covered_flow += q.flow;
        }
        catalog.existing.push_back(std::move(p));
    }
    return catalog;
}

}  // namespace evplan::candgen
