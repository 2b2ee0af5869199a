#pragma once

#include <map>
#include <string>
#include <vector>

#include "evplan/candgen.hpp"
#include "evplan/milp.hpp"
#include "evplan/netcore.hpp"
#include "evplan/scenario.hpp"

namespace evplan::planner {

using PairKey = std::pair<netcore::VertexIdx, netcore::VertexIdx>;
using OdWeights = std::map<PairKey, double>;

struct Stage1Config {
    double station_cost = 1.0;  // c^f
    double budget = 0.0;        // B^f

    void validate() const;
};

struct FcsPlan {
    std::vector<int> selected;  // endpoint indices into the catalog
    std::vector<int> covered;   // pair indices into catalog.pairs, re-derived from x
    double objective = 0.0;
    std::map<std::string, int> per_zone;
    milp::SolStatus status = milp::SolStatus::Optimal;
};

struct Stage2Config {
    double benefit_rate = 10.0;     // dollars per unit of served flow per period
    double relocation_rate = 20.0;  // dollars per mile
    double unit_cost = 1.0;         // c^m
    double budget = 0.0;            // B^m
    int fleet_size = 1;             // |M|

    void validate() const;
};

// One addressable point of N = existing stations + scan endpoints.
struct PlanPoint {
    std::string label;  // "w17" or the existing-station id
    netcore::NetworkPoint location;
    std::string zone;
    bool is_fcs = false;       // member of N^f
    bool is_existing = false;
    std::vector<int> covered;  // pair indices into catalog.pairs
};

struct StageSets {
    std::vector<PlanPoint> points;  // all of N; is_fcs partitions N^f / N^m
    std::vector<int> qm;            // Q^m as pair indices into catalog.pairs

    int fcs_count() const;
};

enum class Mode { Serve, Charge, Idle };
std::string mode_name(Mode m);

struct Relocation {
    int from_period = 0;  // moves during from_period -> from_period+1
    int mcs = 0;
    int from_point = 0;
    int to_point = 0;
    double miles = 0.0;
};

struct McsSchedule {
    int periods = 0;
    int fleet = 0;
    std::vector<std::vector<int>> assignment;  // [t][m] -> point index, -1 = idle
    std::vector<std::vector<Mode>> modes;      // derived from assignment
    std::vector<std::vector<char>> served;     // [t][qm position] re-derived coverage
    std::vector<Relocation> relocations;
    std::vector<char> activated;               // per MCS
    double objective = 0.0;
    double benefit_total = 0.0;
    double relocation_cost = 0.0;
    milp::SolStatus status = milp::SolStatus::Optimal;
};

struct KpiReport {
    double objective = 0.0;
    double benefit_total = 0.0;
    double relocation_cost = 0.0;
    int fcs_selected = 0;
    int mcs_activated = 0;
    std::map<std::string, int> fcs_per_zone;
    std::map<std::string, int> mcs_serve_visits_per_zone;
};

milp::Model build_stage1(const candgen::EndpointCatalog& catalog, const OdWeights& mu_q,
                         const Stage1Config& config);

FcsPlan solve_stage1(const milp::Model& model, const candgen::EndpointCatalog& catalog,
                     const milp::SolveLimits& limits = {});

StageSets derive_sets(const FcsPlan& plan, const candgen::EndpointCatalog& catalog);

struct Stage2Inputs {
    const StageSets& sets;
    const candgen::EndpointCatalog& catalog;
    const scenario::FlowTensor& tensor;
    const scenario::ScenarioSet& scenario_set;
    const OdWeights& mu_q;
    const netcore::Network& net;
    const netcore::DistanceTable& table;
    Stage2Config config;
    bool normalize_probs = false;
};

milp::Model build_stage2(const Stage2Inputs& in);

McsSchedule solve_stage2(const milp::Model& model, const Stage2Inputs& in,
                         const milp::SolveLimits& limits = {});

KpiReport kpi_report(const FcsPlan& plan, const candgen::EndpointCatalog& catalog,
                     const McsSchedule& schedule, const StageSets& sets);

}  // namespace evplan::planner
