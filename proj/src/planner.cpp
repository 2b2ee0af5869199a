#include "evplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace evplan::planner {

void Stage1Config::validate() const {
    if (station_cost <= 0.0) throw ValidationError("stage 1: station cost must be positive");
    if (budget < 0.0) throw ValidationError("stage 1: budget must be nonnegative");
}

void Stage2Config::validate() const {
    if (benefit_rate <= 0.0) throw ValidationError("stage 2: benefit rate must be positive");
    if (relocation_rate <= 0.0)
        throw ValidationError("stage 2: relocation rate must be positive");
    if (unit_cost <= 0.0) throw ValidationError("stage 2: unit cost must be positive");
    if (budget <= 0.0) throw ValidationError("stage 2: budget must be positive");
    if (fleet_size < 1) throw ValidationError("stage 2: fleet size must be at least 1");
}

int StageSets::fcs_count() const {
    int n = 0;
    for (const PlanPoint& p : points) n += p.is_fcs ? 1 : 0;
    return n;
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Serve: return "serve";
        case Mode::Charge: return "charge";
        default: return "idle";
    }
}

namespace {

double mu_of(const OdWeights& mu_q, const PairKey& key) {
    auto it = mu_q.find(key);
    return it == mu_q.end() ? 0.0 : it->second;
}

std::string qname(int pair_idx) { return "q" + std::to_string(pair_idx + 1); }

}  // namespace

milp::Model build_stage1(const candgen::EndpointCatalog& catalog, const OdWeights& mu_q,
                         const Stage1Config& config) {
    config.validate();
    milp::Model m;
    if (catalog.pairs.empty()) return m;  // nothing to cover

    std::vector<int> xvar(catalog.endpoints.size());
    for (std::size_t w = 0; w < catalog.endpoints.size(); ++w)
        xvar[w] = m.add_binary("x_" + catalog.endpoints[w].label());
    std::vector<std::pair<int, double>> objective;
    std::vector<std::pair<int, double>> budget_row;
    for (std::size_t q = 0; q < catalog.pairs.size(); ++q) {
        const netcore::ODPair& pair = catalog.pairs[q];
        const int yq = m.add_binary("y_" + qname(static_cast<int>(q)));
        objective.emplace_back(yq, (1.0 + mu_of(mu_q, pair.key())) * pair.flow);
        std::vector<std::pair<int, double>> cover{{yq, -1.0}};
        for (std::size_t w = 0; w < catalog.endpoints.size(); ++w)
            if (catalog.covers(static_cast<int>(w), static_cast<int>(q)))
                cover.emplace_back(xvar[w], 1.0);
        m.add_constraint("cover_" + qname(static_cast<int>(q)), std::move(cover),
                         milp::Sense::Ge, 0.0);
    }
    for (std::size_t w = 0; w < catalog.endpoints.size(); ++w)
        budget_row.emplace_back(xvar[w], config.station_cost);
    m.add_constraint("budget_f", std::move(budget_row), milp::Sense::Le, config.budget);
    m.set_objective(milp::ObjSense::Maximize, std::move(objective));
    return m;
}

FcsPlan solve_stage1(const milp::Model& model, const candgen::EndpointCatalog& catalog,
                     const milp::SolveLimits& limits) {
    FcsPlan plan;
    if (model.vars().empty()) return plan;  // empty pair set

    milp::Solution sol = milp::solve(model, limits);
    plan.status = sol.status;
    if (sol.status == milp::SolStatus::Infeasible || sol.status == milp::SolStatus::Unbounded)
        throw milp::SolverError("stage 1: solver reported an infeasible or unbounded model");
    if (!sol.has_assignment()) return plan;  // limit hit before any incumbent

    std::set<int> covered;
    std::vector<double> x = sol.values;
    for (std::size_t w = 0; w < catalog.endpoints.size(); ++w) {
        const int idx = model.var_index("x_" + catalog.endpoints[w].label());
        if (sol.values[idx] > 0.5) {
            plan.selected.push_back(static_cast<int>(w));
            plan.per_zone[catalog.endpoints[w].zone]++;
            for (int q : catalog.endpoints[w].covered) covered.insert(q);
        }
    }
    plan.covered.assign(covered.begin(), covered.end());
    // Guard against slack-y optima: evaluate on the coverage actually
    // implied by the chosen sites.
    for (std::size_t q = 0; q < catalog.pairs.size(); ++q)
        x[model.var_index("y_" + qname(static_cast<int>(q)))] =
            covered.count(static_cast<int>(q)) ? 1.0 : 0.0;
    plan.objective = model.eval_objective(x);
    return plan;
}

StageSets derive_sets(const FcsPlan& plan, const candgen::EndpointCatalog& catalog) {
    StageSets sets;
    for (const candgen::ExistingPoint& e : catalog.existing) {
        PlanPoint p;
        p.label = e.id;
        p.location = e.location;
        p.zone = e.zone;
        p.is_fcs = true;
        p.is_existing = true;
        p.covered = e.covered;
        sets.points.push_back(std::move(p));
    }
    const std::set<int> selected(plan.selected.begin(), plan.selected.end());
    for (const candgen::Endpoint& w : catalog.endpoints) {
        PlanPoint p;
        p.label = w.label();
        p.location = w.location;
        p.zone = w.zone;
        p.is_fcs = selected.count(w.id) > 0;
        p.covered = w.covered;
        sets.points.push_back(std::move(p));
    }
    const std::set<int> covered(plan.covered.begin(), plan.covered.end());
    for (std::size_t q = 0; q < catalog.pairs.size(); ++q)
        if (!covered.count(static_cast<int>(q))) sets.qm.push_back(static_cast<int>(q));
    return sets;
}

namespace {

std::string nname(int point) { return "n" + std::to_string(point + 1); }
std::string kname(int t, int m, int point) {
    return "k_t" + std::to_string(t + 1) + "_m" + std::to_string(m + 1) + "_" + nname(point);
}
std::string rname(int t, int m, int from, int to) {
    return "r_t" + std::to_string(t + 1) + "_m" + std::to_string(m + 1) + "_" + nname(from) +
           "_" + nname(to);
}
std::string yname(int t, int pair_idx) {
    return "y_t" + std::to_string(t + 1) + "_" + qname(pair_idx);
}

struct Stage2Shape {
    int periods = 0;
    int fleet = 0;
    int npoints = 0;
    std::vector<double> probs;          // per scenario, possibly normalized
    double prob_sum = 0.0;
    std::vector<int> tensor_index;      // qm position -> tensor pair index
    std::vector<std::vector<double>> dist;  // npoints x npoints
};

Stage2Shape stage2_shape(const Stage2Inputs& in) {
    in.config.validate();
    in.scenario_set.validate();
    Stage2Shape sh;
    sh.periods = in.scenario_set.periods;
    sh.fleet = in.config.fleet_size;
    sh.npoints = static_cast<int>(in.sets.points.size());
    if (in.tensor.periods != sh.periods ||
        in.tensor.scenarios != static_cast<int>(in.scenario_set.scenarios.size()))
        throw ValidationError("stage 2: flow tensor does not match the scenario set");
    for (const scenario::Scenario& s : in.scenario_set.scenarios) {
        sh.probs.push_back(s.probability);
        sh.prob_sum += s.probability;
    }
    if (in.normalize_probs) {
        if (sh.prob_sum <= 0.0)
            throw ValidationError("stage 2: scenario probabilities sum to zero");
        for (double& p : sh.probs) p /= sh.prob_sum;
        sh.prob_sum = 1.0;
    }
    for (int q : in.sets.qm) {
        const PairKey key = in.catalog.pairs[q].key();
        auto it = std::lower_bound(in.tensor.pairs.begin(), in.tensor.pairs.end(), key,
                                   [](const netcore::ODPair& p, const PairKey& k) {
                                       return p.key() < k;
                                   });
        if (it == in.tensor.pairs.end() || it->key() != key)
            throw ValidationError("stage 2: flow tensor is missing pair (" +
                                  in.net.vertices()[key.first].id + ", " +
                                  in.net.vertices()[key.second].id + ")");
        sh.tensor_index.push_back(static_cast<int>(it - in.tensor.pairs.begin()));
    }
    sh.dist.assign(sh.npoints, std::vector<double>(sh.npoints, 0.0));
    for (int i = 0; i < sh.npoints; ++i)
        for (int j = i + 1; j < sh.npoints; ++j)
            sh.dist[i][j] = sh.dist[j][i] = netcore::point_distance(
                in.net, in.table, in.sets.points[i].location, in.sets.points[j].location);
    return sh;
}

}  // namespace

milp::Model build_stage2(const Stage2Inputs& in) {
    const Stage2Shape sh = stage2_shape(in);
    const int T = sh.periods, M = sh.fleet, N = sh.npoints;
    milp::Model model;

    std::vector<std::vector<std::vector<int>>> k(
        T, std::vector<std::vector<int>>(M, std::vector<int>(N)));
    for (int t = 0; t < T; ++t)
        for (int m = 0; m < M; ++m)
            for (int w = 0; w < N; ++w) k[t][m][w] = model.add_binary(kname(t, m, w));

    std::vector<std::pair<int, double>> objective;
    std::vector<std::vector<int>> y(T, std::vector<int>(in.sets.qm.size(), -1));
    for (int t = 0; t < T; ++t) {
        for (std::size_t qi = 0; qi < in.sets.qm.size(); ++qi) {
            const int q = in.sets.qm[qi];
            y[t][qi] = model.add_binary(yname(t, q));
            double coef = 0.0;
            for (std::size_t s = 0; s < sh.probs.size(); ++s)
                coef += sh.probs[s] * in.tensor.at(t, static_cast<int>(s), sh.tensor_index[qi]);
            coef *= in.config.benefit_rate *
                    (1.0 + mu_of(in.mu_q, in.catalog.pairs[q].key()));
            objective.emplace_back(y[t][qi], coef);
        }
    }
    for (int t = 0; t + 1 < T; ++t)
        for (int m = 0; m < M; ++m)
            for (int w = 0; w < N; ++w)
                for (int v = 0; v < N; ++v) {
                    const int r = model.add_binary(rname(t, m, w, v));
                    const double cost = sh.prob_sum * in.config.relocation_rate * sh.dist[w][v];
                    if (cost > 0.0) objective.emplace_back(r, -cost);
                    model.add_constraint("rel_" + rname(t, m, w, v).substr(2),
                                         {{k[t][m][w], 1.0}, {k[t + 1][m][v], 1.0}, {r, -1.0}},
                                         milp::Sense::Le, 1.0);
                }
    std::vector<int> phi(M);
    for (int m = 0; m < M; ++m) phi[m] = model.add_binary("phi_m" + std::to_string(m + 1));

    for (int t = 0; t < T; ++t)
        for (std::size_t qi = 0; qi < in.sets.qm.size(); ++qi) {
            std::vector<std::pair<int, double>> cover{{y[t][qi], -1.0}};
            for (int w = 0; w < N; ++w) {
                const PlanPoint& p = in.sets.points[w];
                if (p.is_fcs) continue;  // serving credit only from N^m
                if (std::binary_search(p.covered.begin(), p.covered.end(), in.sets.qm[qi]))
                    for (int m = 0; m < M; ++m) cover.emplace_back(k[t][m][w], 1.0);
            }
            model.add_constraint(
                "cover_t" + std::to_string(t + 1) + "_" + qname(in.sets.qm[qi]),
                std::move(cover), milp::Sense::Ge, 0.0);
        }
    for (int t = 0; t < T; ++t)
        for (int m = 0; m < M; ++m) {
            std::vector<std::pair<int, double>> row;
            for (int w = 0; w < N; ++w) row.emplace_back(k[t][m][w], 1.0);
            model.add_constraint(
                "one_t" + std::to_string(t + 1) + "_m" + std::to_string(m + 1),
                std::move(row), milp::Sense::Le, 1.0);
        }
    for (int t = 0; t + 1 < T; ++t)
        for (int m = 0; m < M; ++m) {
            // After a serving period the unit must sit at an FCS point.
            std::vector<std::pair<int, double>> row;
            for (int w = 0; w < N; ++w)
                if (!in.sets.points[w].is_fcs) row.emplace_back(k[t][m][w], 1.0);
            for (int w = 0; w < N; ++w)
                if (in.sets.points[w].is_fcs) row.emplace_back(k[t + 1][m][w], -1.0);
            model.add_constraint(
                "recharge_t" + std::to_string(t + 1) + "_m" + std::to_string(m + 1),
                std::move(row), milp::Sense::Le, 0.0);
        }
    for (int m = 0; m < M; ++m)
        for (int t = 0; t < T; ++t)
            for (int w = 0; w < N; ++w) {
                if (in.sets.points[w].is_fcs) continue;
                model.add_constraint("act_" + kname(t, m, w).substr(2),
                                     {{k[t][m][w], 1.0}, {phi[m], -1.0}}, milp::Sense::Le,
                                     0.0);
            }
    std::vector<std::pair<int, double>> budget_row;
    for (int m = 0; m < M; ++m) budget_row.emplace_back(phi[m], in.config.unit_cost);
    model.add_constraint("budget_m", std::move(budget_row), milp::Sense::Le, in.config.budget);

    model.set_objective(milp::ObjSense::Maximize, std::move(objective));
    return model;
}

McsSchedule solve_stage2(const milp::Model& model, const Stage2Inputs& in,
                         const milp::SolveLimits& limits) {
    const Stage2Shape sh = stage2_shape(in);
    const int T = sh.periods, M = sh.fleet, N = sh.npoints;

    milp::Solution sol = milp::solve(model, limits);
    McsSchedule sched;
    sched.periods = T;
    sched.fleet = M;
    sched.status = sol.status;
    if (sol.status == milp::SolStatus::Infeasible || sol.status == milp::SolStatus::Unbounded)
        throw milp::SolverError("stage 2: solver reported an infeasible or unbounded model");
    sched.assignment.assign(T, std::vector<int>(M, -1));
    sched.modes.assign(T, std::vector<Mode>(M, Mode::Idle));
    sched.served.assign(T, std::vector<char>(in.sets.qm.size(), 0));
    sched.activated.assign(M, 0);
    if (!sol.has_assignment()) return sched;  // limit hit before any incumbent

    for (int t = 0; t < T; ++t)
        for (int m = 0; m < M; ++m)
            for (int w = 0; w < N; ++w)
                if (sol.values[model.var_index(kname(t, m, w))] > 0.5) {
                    sched.assignment[t][m] = w;
                    sched.modes[t][m] =
                        in.sets.points[w].is_fcs ? Mode::Charge : Mode::Serve;
                    if (!in.sets.points[w].is_fcs) sched.activated[m] = 1;
                }
    for (int t = 0; t < T; ++t)
        for (std::size_t qi = 0; qi < in.sets.qm.size(); ++qi)
            for (int m = 0; m < M && !sched.served[t][qi]; ++m) {
                const int w = sched.assignment[t][m];
                if (w < 0 || in.sets.points[w].is_fcs) continue;
                if (std::binary_search(in.sets.points[w].covered.begin(),
                                       in.sets.points[w].covered.end(), in.sets.qm[qi]))
                    sched.served[t][qi] = 1;
            }
    for (int t = 0; t + 1 < T; ++t)
        for (int m = 0; m < M; ++m) {
            const int from = sched.assignment[t][m], to = sched.assignment[t + 1][m];
            if (from < 0 || to < 0 || from == to) continue;
            sched.relocations.push_back({t, m, from, to, sh.dist[from][to]});
        }

    for (int t = 0; t < T; ++t)
        for (std::size_t qi = 0; qi < in.sets.qm.size(); ++qi) {
            if (!sched.served[t][qi]) continue;
            double flow = 0.0;
            for (std::size_t s = 0; s < sh.probs.size(); ++s)
                flow += sh.probs[s] * in.tensor.at(t, static_cast<int>(s), sh.tensor_index[qi]);
            sched.benefit_total += in.config.benefit_rate *
                                   (1.0 + mu_of(in.mu_q, in.catalog.pairs[in.sets.qm[qi]].key())) *
                                   flow;
        }
    for (const Relocation& r : sched.relocations)
        sched.relocation_cost += sh.prob_sum * in.config.relocation_rate * r.miles;
    sched.objective = sched.benefit_total - sched.relocation_cost;

    const double tol = 1e-6 * std::max(1.0, std::abs(sol.objective));
    if (std::abs(sched.objective - sol.objective) > tol)
        throw milp::SolverError("stage 2: schedule totals disagree with the solver objective");
    return sched;
}

KpiReport kpi_report(const FcsPlan& plan, const candgen::EndpointCatalog& catalog,
                     const McsSchedule& schedule, const StageSets& sets) {
    (void)catalog;
    KpiReport kpi;
    kpi.objective = schedule.objective;
    kpi.benefit_total = schedule.benefit_total;
    kpi.relocation_cost = schedule.relocation_cost;
    kpi.fcs_selected = static_cast<int>(plan.selected.size());
    kpi.fcs_per_zone = plan.per_zone;
    for (char a : schedule.activated) kpi.mcs_activated += a ? 1 : 0;
    for (int t = 0; t < schedule.periods; ++t)
        for (int m = 0; m < schedule.fleet; ++m)
            if (schedule.modes[t][m] == Mode::Serve)
                kpi.mcs_serve_visits_per_zone[sets.points[schedule.assignment[t][m]].zone]++;
    return kpi;
}

}  // namespace evplan::planner
