#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evplan/candgen.hpp"
#include "evplan/equity.hpp"
#include "evplan/netcore.hpp"
#include "evplan/planner.hpp"
#include "evplan/scenario.hpp"

namespace evplan::io {

// Network input: a JSON file, or a directory holding vertices.csv,
// edges.csv and flows.csv (headers mandatory).
netcore::Network load_network(const std::string& path);

std::vector<candgen::ExistingStation> load_stations(const std::string& path,
                                                    const netcore::Network& net);

// Zone factor table: CSV rows `zone, factor_1, ...` plus a sidecar JSON
// config declaring factor directions and ordinal label mappings.
equity::ZoneFactorTable load_zone_table(const std::string& csv_path,
                                        const std::string& factors_path);

equity::BwmInput load_bwm(const std::string& path);

scenario::ScenarioSet load_scenario_config(const std::string& path);

struct PipelineConfig {
    std::string network;
    std::string stations;   // optional; empty = no existing stations
    std::string zones;      // optional together with factors/bwm
    std::string factors;
    std::string bwm;
    std::string scenario;
    netcore::RangeConfig range;
    planner::Stage1Config stage1;
    planner::Stage2Config stage2;
    std::string case_label = "A";
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;  // overrides the scenario config seed

    bool has_equity() const { return !zones.empty() && !factors.empty() && !bwm.empty(); }
};

// Referenced paths are resolved relative to the config file's directory.
PipelineConfig load_pipeline_config(const std::string& path);

void write_catalog_json(const std::string& path, const netcore::Network& net,
                        const candgen::EndpointCatalog& catalog);
void write_equity_json(const std::string& path, const equity::BwmResult& bwm,
                       const equity::ZoneFactorTable& table,
                       const std::vector<std::vector<double>>& normalized,
                       const std::map<std::string, double>& mu_z,
                       const planner::OdWeights& mu_q, const netcore::Network& net);
void write_tensor_csv(const std::string& path, const netcore::Network& net,
                      const scenario::FlowTensor& tensor);
void write_plan_json(const std::string& path, const netcore::Network& net,
                     const candgen::EndpointCatalog& catalog, const planner::FcsPlan& plan);
void write_schedule_csv(const std::string& path, const std::string& case_label,
                        const planner::StageSets& sets, const planner::McsSchedule& schedule);
void write_kpi_json(const std::string& path, const std::string& case_label,
                    const planner::KpiReport& kpi);
void write_kpi_csv(const std::string& path, const std::string& case_label,
                   const planner::KpiReport& kpi);

// One schematic frame: network, zone-colored vertices, existing stations,
// candidate endpoints, selected FCSs, and (when period >= 0) the MCS
// positions of that period. Throws when coordinates are missing.
std::string render_svg(const netcore::Network& net, const candgen::EndpointCatalog& catalog,
                       const planner::FcsPlan& plan, const planner::StageSets* sets,
                       const planner::McsSchedule* schedule, int period);

}  // namespace evplan::io
