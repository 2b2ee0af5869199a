#pragma once

#include <string>
#include <utility>
#include <vector>

#include "evplan/netcore.hpp"

namespace evplan::candgen {

struct ExistingStation {
    std::string id;
    netcore::NetworkPoint location;
};

enum class TripType { Type1, Type2 };
enum class EntryScenario { EntryA, EntryB };  // which edge vertex the vehicle enters by

// Contiguous portion of an edge (offsets from the a-vertex) on which a
// station can serve the given O-D pair. start == end is a valid single
// point (the zero-reach case).
struct RefuelingSegment {
    int edge = -1;
    double start = 0.0;
    double end = 0.0;
    std::pair<netcore::VertexIdx, netcore::VertexIdx> od;
    TripType trip_type = TripType::Type1;
    EntryScenario scenario = EntryScenario::EntryA;
};

struct EndpointSource {
    std::pair<netcore::VertexIdx, netcore::VertexIdx> od;
    TripType trip_type;
    EntryScenario scenario;
};

struct Endpoint {
    int id = 0;  // dense index; label is "w<id+1>"
    netcore::NetworkPoint location;
    std::string zone;
    std::vector<EndpointSource> sources;
    std::vector<int> covered;  // indices into EndpointCatalog::pairs
    double covered_flow = 0.0;

    std::string label() const { return "w" + std::to_string(id + 1); }
};

// An existing station made addressable for the scheduling stage.
struct ExistingPoint {
    std::string id;
    netcore::NetworkPoint location;
    std::string zone;
    std::vector<int> covered;
    double covered_flow = 0.0;
};

// The finite dominating set produced by scanning every edge against the
// uncovered O-D pairs, with the per-endpoint coverage structure.
struct EndpointCatalog {
    std::vector<netcore::ODPair> pairs;  // the uncovered set Q, sorted
    std::vector<Endpoint> endpoints;
    std::vector<ExistingPoint> existing;

    bool covers(int endpoint, int pair) const;
    int pair_index(netcore::VertexIdx i, netcore::VertexIdx j) const;  // -1 when absent
};

// Union of the coverage sets of all existing stations.
std::vector<netcore::ODPair> existing_domain(const netcore::Network& net,
                                             const netcore::DistanceTable& table,
                                             const std::vector<ExistingStation>& stations,
                                             const std::vector<netcore::ODPair>& pairs,
                                             double usable_radius);

// Set difference Q = all \ domain. Throws when domain is not a subset.
std::vector<netcore::ODPair> uncovered_pairs(const std::vector<netcore::ODPair>& all_pairs,
                                             const std::vector<netcore::ODPair>& domain);

// Maximum distance travelable along the edge after entering at r with
// alpha*R minus the approach distance from k remaining. May be negative
// (no feasible pass-through via r).
double gamma(const netcore::Network& net, const netcore::DistanceTable& table,
             netcore::VertexIdx k, netcore::VertexIdx r, int edge, double usable_radius);

// Type-2 (U-turn) reach from entry vertex r for the given pair.
double delta(const netcore::Network& net, const netcore::DistanceTable& table,
             const netcore::ODPair& pair, int edge, netcore::VertexIdx r,
             double usable_radius);

std::vector<RefuelingSegment> type1_segments(const netcore::Network& net,
                                             const netcore::DistanceTable& table,
                                             const netcore::ODPair& pair, int edge,
                                             double usable_radius);

std::vector<RefuelingSegment> type2_segments(const netcore::Network& net,
                                             const netcore::DistanceTable& table,
                                             const netcore::ODPair& pair, int edge,
                                             double usable_radius);

// Raw endpoint sites on one edge before cross-edge dedup.
struct RawEndpoint {
    double offset = 0.0;
    EndpointSource source;
};
std::vector<RawEndpoint> scan_edge(const netcore::Network& net,
                                   const netcore::DistanceTable& table, int edge,
                                   const std::vector<netcore::ODPair>& pairs,
                                   double usable_radius);

EndpointCatalog build_catalog(const netcore::Network& net, const netcore::DistanceTable& table,
                              const std::vector<netcore::ODPair>& pairs, double usable_radius,
                              const std::vector<ExistingStation>& stations = {});

// Zone of an arbitrary point: vertex zone, or the nearer edge endpoint's
// zone for interior points (ties go to the a-vertex).
std::string point_zone(const netcore::Network& net, const netcore::NetworkPoint& p);

}  // namespace evplan::candgen
