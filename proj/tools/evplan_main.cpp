#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "evplan/io.hpp"

namespace fs = std::filesystem;
using namespace evplan;

namespace {

struct Options {
    std::string config;
    std::string out_override;
    std::optional<std::uint64_t> seed;
    bool normalize_probs = false;
    long node_limit = -1;
    double time_limit_s = -1;
};

// Lazily computed pipeline state shared by the subcommands.
class Pipeline {
public:
    explicit Pipeline(const Options& opt) : opt_(opt) {
        cfg_ = io::load_pipeline_config(opt.config);
        if (!opt.out_override.empty()) cfg_.out_dir = opt.out_override;
        if (opt.seed) cfg_.seed = opt.seed;
        limits_.node_limit = opt.node_limit;
        limits_.time_limit_s = opt.time_limit_s;
    }

    const io::PipelineConfig& cfg() const { return cfg_; }
    std::string out(const std::string& name) {
        fs::create_directories(cfg_.out_dir);
        return (fs::path(cfg_.out_dir) / name).string();
    }

    const netcore::Network& network() {
        if (!net_) {
            net_.emplace(io::load_network(cfg_.network));
            net_->validate_range(cfg_.range);
            table_.emplace(netcore::build_distance_table(*net_));
        }
        return *net_;
    }
    const netcore::DistanceTable& table() {
        network();
        return *table_;
    }

    const candgen::EndpointCatalog& catalog() {
        if (!catalog_) {
            const netcore::Network& net = network();
            const auto pairs = netcore::build_od_pairs(net, table(), cfg_.range);
            if (pairs.empty())
                std::cerr << "warning: no coverable O-D pairs; catalog is empty\n";
            std::vector<candgen::ExistingStation> stations;
            if (!cfg_.stations.empty()) stations = io::load_stations(cfg_.stations, net);
            const auto domain = candgen::existing_domain(net, table(), stations, pairs,
                                                         cfg_.range.usable_radius());
            const auto uncovered = candgen::uncovered_pairs(pairs, domain);
            catalog_ = candgen::build_catalog(net, table(), uncovered,
                                              cfg_.range.usable_radius(), stations);
        }
        return *catalog_;
    }

    struct Equity {
        equity::BwmResult bwm;
        equity::ZoneFactorTable table;
        std::vector<std::vector<double>> normalized;
        std::map<std::string, double> mu_z;
        planner::OdWeights mu_q;
    };
    const Equity& equity_artifacts() {
        if (!equity_) {
            if (!cfg_.has_equity())
                throw ValidationError("config: zones/factors/bwm files are required here");
            Equity e;
            e.table = io::load_zone_table(cfg_.zones, cfg_.factors);
            e.bwm = equity::solve_bwm(io::load_bwm(cfg_.bwm));
            if (e.bwm.theta.size() != e.table.factors.size())
                throw ValidationError("config: BWM factor count differs from the zone table");
            e.normalized = equity::normalize_factors(e.table);
            e.mu_z = equity::zone_weights(e.table, e.normalized, e.bwm.theta);
            e.mu_q = equity::od_weights(e.mu_z, network(), catalog().pairs);
            equity_ = std::move(e);
        }
        return *equity_;
    }
    planner::OdWeights mu_q() { return cfg_.has_equity() ? equity_artifacts().mu_q : planner::OdWeights{}; }

    const scenario::ScenarioSet& scenario_set() {
        if (!scen_) {
            if (cfg_.scenario.empty())
                throw ValidationError("config: a scenario file is required here");
            scen_ = io::load_scenario_config(cfg_.scenario);
            if (cfg_.seed) scen_->seed = *cfg_.seed;
        }
        return *scen_;
    }
    const scenario::FlowTensor& tensor() {
        if (!tensor_) tensor_ = scenario::generate_flows(catalog().pairs, scenario_set());
        return *tensor_;
    }

    milp::Model stage1_model() { return planner::build_stage1(catalog(), mu_q(), cfg_.stage1); }
    const planner::FcsPlan& plan() {
        if (!plan_) {
            const milp::Model m = stage1_model();
            plan_ = planner::solve_stage1(m, catalog(), limits_);
        }
        return *plan_;
    }
    const planner::StageSets& sets() {
        if (!sets_) sets_ = planner::derive_sets(plan(), catalog());
        return *sets_;
    }
    planner::Stage2Inputs stage2_inputs() {
        mu_q_store_ = mu_q();
        return {sets(),    catalog(), tensor(),    scenario_set(),
                mu_q_store_, network(), table(),   cfg_.stage2,
                opt_.normalize_probs};
    }
    const planner::McsSchedule& schedule() {
        if (!schedule_) {
            if (sets().qm.empty())
                std::cerr << "warning: every pair is covered by an FCS; "
                             "the schedule stage has nothing to serve\n";
            const planner::Stage2Inputs in = stage2_inputs();
            const milp::Model m = planner::build_stage2(in);
            schedule_ = planner::solve_stage2(m, in, limits_);
        }
        return *schedule_;
    }
    planner::KpiReport kpi() {
        return planner::kpi_report(plan(), catalog(), schedule(), sets());
    }

    bool limit_reached() const {
        return (plan_ && plan_->status == milp::SolStatus::LimitReached) ||
               (schedule_ && schedule_->status == milp::SolStatus::LimitReached);
    }

private:
    Options opt_;
    io::PipelineConfig cfg_;
    milp::SolveLimits limits_;
    std::optional<netcore::Network> net_;
    std::optional<netcore::DistanceTable> table_;
    std::optional<candgen::EndpointCatalog> catalog_;
    std::optional<Equity> equity_;
    std::optional<scenario::ScenarioSet> scen_;
    std::optional<scenario::FlowTensor> tensor_;
    std::optional<planner::FcsPlan> plan_;
    std::optional<planner::StageSets> sets_;
    std::optional<planner::McsSchedule> schedule_;
    planner::OdWeights mu_q_store_;
};

void emit_candidates(Pipeline& p) {
    io::write_catalog_json(p.out("catalog.json"), p.network(), p.catalog());
}

void emit_weights(Pipeline& p) {
    const auto& e = p.equity_artifacts();
    io::write_equity_json(p.out("weights.json"), e.bwm, e.table, e.normalized, e.mu_z, e.mu_q,
                          p.network());
}

void emit_plan(Pipeline& p) {
    io::write_plan_json(p.out("plan.json"), p.network(), p.catalog(), p.plan());
}

void emit_schedule(Pipeline& p) {
    const planner::McsSchedule& sched = p.schedule();
    io::write_schedule_csv(p.out("schedule.csv"), p.cfg().case_label, p.sets(), sched);
    const planner::KpiReport kpi = p.kpi();
    io::write_kpi_json(p.out("kpi.json"), p.cfg().case_label, kpi);
    io::write_kpi_csv(p.out("kpi.csv"), p.cfg().case_label, kpi);
}

void emit_render(Pipeline& p) {
    const planner::McsSchedule& sched = p.schedule();
    for (int t = 0; t < sched.periods; ++t) {
        const std::string svg =
            io::render_svg(p.network(), p.catalog(), p.plan(), &p.sets(), &sched, t);
        std::ofstream out(p.out("render_t" + std::to_string(t + 1) + ".svg"),
                          std::ios::binary);
        out << svg;
    }
}

void emit_lp(Pipeline& p) {
    milp::export_lp_file(p.stage1_model(), p.out("stage1.lp"));
    const planner::Stage2Inputs in = p.stage2_inputs();
    milp::export_lp_file(planner::build_stage2(in), p.out("stage2.lp"));
}

void emit_tensor(Pipeline& p) {
    io::write_tensor_csv(p.out("flows.csv"), p.network(), p.tensor());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage fixed + mobile charging station planning toolkit"};
    app.require_subcommand(1);

    Options opt;
    std::uint64_t seed_flag = 0;
    app.add_option("--config", opt.config, "Pipeline config file")->required();
    auto* seed_opt = app.add_option("--seed", seed_flag, "Override the scenario seed");
    app.add_option("--out", opt.out_override, "Override the output directory");
    app.add_flag("--normalize-probs", opt.normalize_probs,
                 "Rescale scenario probabilities to sum to 1");
    app.add_option("--node-limit", opt.node_limit, "Branch-and-bound node limit");
    app.add_option("--time-limit-s", opt.time_limit_s, "Solve time limit in seconds");

    for (const char* name : {"candidates", "weights", "plan", "schedule", "pipeline",
                             "render", "export-lp"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) opt.seed = seed_flag;
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        Pipeline p(opt);
        if (cmd == "candidates") {
            emit_candidates(p);
        } else if (cmd == "weights") {
            emit_weights(p);
        } else if (cmd == "plan") {
            emit_plan(p);
        } else if (cmd == "schedule") {
            emit_schedule(p);
        } else if (cmd == "render") {
            emit_render(p);
        } else if (cmd == "export-lp") {
            emit_lp(p);
        } else {  // pipeline
            emit_candidates(p);
            if (p.cfg().has_equity()) emit_weights(p);
            emit_tensor(p);
            emit_plan(p);
            emit_schedule(p);
        }
        if (p.limit_reached()) {
            std::cerr << "warning: solver limit reached; outputs hold the best incumbent\n";
            return 3;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const milp::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
