#include "evplan/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace evplan::io {

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw ValidationError(path + ": empty file (header mandatory)");
    return rows;
}

double to_number(const std::string& path, const std::string& cell) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(path + ": '" + cell + "' is not a number");
    }
}

netcore::Network assemble_network(const std::string& origin, std::vector<netcore::Vertex> vs,
                                  const std::vector<std::array<std::string, 3>>& raw_edges,
                                  const std::vector<std::array<std::string, 3>>& raw_flows) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i].id] = static_cast<int>(i);
    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end())
            throw ValidationError(origin + ": unknown vertex id '" + id + "'");
        return it->second;
    };
    std::vector<netcore::Edge> edges;
    for (const auto& e : raw_edges) {
        int a = lookup(e[0]), b = lookup(e[1]);
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, to_number(origin, e[2])});
    }
    std::map<std::pair<int, int>, double> flows;
    for (const auto& f : raw_flows) {
        int i = lookup(f[0]), j = lookup(f[1]);
        if (i > j) std::swap(i, j);
        flows[{i, j}] = to_number(origin, f[2]);
    }
    return netcore::Network(std::move(vs), std::move(edges), std::move(flows));
}

}  // namespace

netcore::Network load_network(const std::string& path) {
    std::vector<netcore::Vertex> vs;
    std::vector<std::array<std::string, 3>> edges, flows;
    if (fs::is_directory(path)) {
        const auto vrows = read_csv((fs::path(path) / "vertices.csv").string());
        const auto erows = read_csv((fs::path(path) / "edges.csv").string());
        const auto frows = read_csv((fs::path(path) / "flows.csv").string());
        for (std::size_t r = 1; r < vrows.size(); ++r) {
            const auto& row = vrows[r];
            if (row.size() < 2) throw ValidationError(path + "/vertices.csv: short row");
            netcore::Vertex v{row[0], row[1], std::nullopt, std::nullopt};
            if (row.size() >= 4 && !row[2].empty() && !row[3].empty()) {
                v.x = to_number(path, row[2]);
                v.y = to_number(path, row[3]);
            }
            vs.push_back(std::move(v));
        }
        for (std::size_t r = 1; r < erows.size(); ++r) {
            if (erows[r].size() < 3) throw ValidationError(path + "/edges.csv: short row");
            edges.push_back({erows[r][0], erows[r][1], erows[r][2]});
        }
        for (std::size_t r = 1; r < frows.size(); ++r) {
            if (frows[r].size() < 3) throw ValidationError(path + "/flows.csv: short row");
            flows.push_back({frows[r][0], frows[r][1], frows[r][2]});
        }
        return assemble_network(path, std::move(vs), edges, flows);
    }
    const json j = read_json(path);
    try {
        for (const json& v : j.at("vertices")) {
            netcore::Vertex vx{v.at("id").get<std::string>(), v.at("zone").get<std::string>(),
                               std::nullopt, std::nullopt};
            if (v.contains("x")) vx.x = v.at("x").get<double>();
            if (v.contains("y")) vx.y = v.at("y").get<double>();
            vs.push_back(std::move(vx));
        }
        for (const json& e : j.at("edges"))
            edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                             std::to_string(e.at("length").get<double>())});
        if (j.contains("flows"))
            for (const json& f : j.at("flows"))
                flows.push_back({f.at("i").get<std::string>(), f.at("j").get<std::string>(),
                                 std::to_string(f.at("f").get<double>())});
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return assemble_network(path, std::move(vs), edges, flows);
}

std::vector<candgen::ExistingStation> load_stations(const std::string& path,
                                                    const netcore::Network& net) {
    const json j = read_json(path);
    std::vector<candgen::ExistingStation> out;
    try {
        for (const json& s : j.at("stations")) {
            candgen::ExistingStation st;
            st.id = s.at("id").get<std::string>();
            if (s.contains("vertex")) {
                st.location = netcore::NetworkPoint::at_vertex(
                    net.vertex_index(s.at("vertex").get<std::string>()));
            } else {
                const auto& ev = s.at("edge");
                int a = net.vertex_index(ev.at(0).get<std::string>());
                int b = net.vertex_index(ev.at(1).get<std::string>());
                double off = s.at("offset").get<double>();
                int e = net.edge_index(std::min(a, b), std::max(a, b));
                if (e < 0)
                    throw ValidationError(path + ": station '" + st.id +
                                          "' references a missing edge");
                if (a > b)  // offset given from the first listed vertex
                    off = net.edges()[e].length - off;
                st.location = netcore::NetworkPoint::on_edge(net, e, off);
            }
            out.push_back(std::move(st));
        }
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return out;
}

equity::ZoneFactorTable load_zone_table(const std::string& csv_path,
                                        const std::string& factors_path) {
    const json fj = read_json(factors_path);
    equity::ZoneFactorTable table;
    try {
        for (const json& f : fj.at("factors")) {
            equity::FactorSpec spec;
            spec.name = f.at("name").get<std::string>();
            const std::string dir = f.value("direction", "need_increasing");
            if (dir == "need_increasing")
                spec.direction = equity::Direction::NeedIncreasing;
            else if (dir == "need_decreasing")
                spec.direction = equity::Direction::NeedDecreasing;
            else
                throw ValidationError(factors_path + ": bad direction '" + dir + "'");
            if (f.contains("ordinal"))
                for (auto it = f.at("ordinal").begin(); it != f.at("ordinal").end(); ++it)
                    spec.ordinal[it.key()] = it.value().get<double>();
            table.factors.push_back(std::move(spec));
        }
    } catch (const json::exception& e) {
        throw ValidationError(factors_path + ": " + e.what());
    }

    const auto rows = read_csv(csv_path);
    const auto& header = rows[0];
    if (header.empty() || header[0] != "zone")
        throw ValidationError(csv_path + ": first header column must be 'zone'");
    if (header.size() != table.factors.size() + 1)
        throw ValidationError(csv_path + ": header does not match the factor config");
    for (std::size_t c = 1; c < header.size(); ++c)
        if (header[c] != table.factors[c - 1].name)
            throw ValidationError(csv_path + ": column '" + header[c] +
                                  "' does not match factor '" + table.factors[c - 1].name + "'");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw ValidationError(csv_path + ": row " + std::to_string(r + 1) +
                                  " has the wrong cell count");
        table.zones.push_back(rows[r][0]);
        std::vector<double> vals;
        for (std::size_t c = 1; c < rows[r].size(); ++c) {
            const equity::FactorSpec& spec = table.factors[c - 1];
            auto it = spec.ordinal.find(rows[r][c]);
            vals.push_back(it != spec.ordinal.end() ? it->second
                                                    : to_number(csv_path, rows[r][c]));
        }
        table.values.push_back(std::move(vals));
    }
    return table;
}

equity::BwmInput load_bwm(const std::string& path) {
    const json j = read_json(path);
    equity::BwmInput in;
    try {
        for (const json& f : j.at("factors")) in.factors.push_back(f.get<std::string>());
        auto find = [&](const std::string& name) {
            auto it = std::find(in.factors.begin(), in.factors.end(), name);
            if (it == in.factors.end())
                throw ValidationError(path + ": unknown factor '" + name + "'");
            return static_cast<int>(it - in.factors.begin());
        };
        in.best = find(j.at("best").get<std::string>());
        in.worst = find(j.at("worst").get<std::string>());
        in.best_to_others = j.at("best_to_others").get<std::vector<double>>();
        in.others_to_worst = j.at("others_to_worst").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return in;
}

scenario::ScenarioSet load_scenario_config(const std::string& path) {
    const json j = read_json(path);
    scenario::ScenarioSet set;
    try {
        set.periods = j.at("periods").get<int>();
        set.seed = j.value("seed", std::uint64_t{0});
        for (const json& s : j.at("scenarios")) {
            scenario::Scenario sc;
            sc.label = s.at("label").get<std::string>();
            sc.probability = s.at("p").get<double>();
            sc.mult_lo = s.at("mult").at(0).get<double>();
            sc.mult_hi = s.at("mult").at(1).get<double>();
            set.scenarios.push_back(std::move(sc));
        }
        if (j.contains("period_modulation"))
            set.period_modulation = j.at("period_modulation").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    set.validate();
    return set;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    const json j = read_json(path);
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        return p.empty() || fs::path(p).is_absolute() ? p : (base / p).string();
    };
    PipelineConfig cfg;
    try {
        cfg.network = resolve(j.at("network").get<std::string>());
        cfg.stations = resolve(j.value("stations", ""));
        cfg.zones = resolve(j.value("zones", ""));
        cfg.factors = resolve(j.value("factors", ""));
        cfg.bwm = resolve(j.value("bwm", ""));
        cfg.scenario = resolve(j.value("scenario", ""));
        cfg.range.full_range = j.at("range").at("full_range").get<double>();
        cfg.range.alpha = j.at("range").at("alpha").get<double>();
        if (j.contains("stage1")) {
            cfg.stage1.station_cost = j.at("stage1").value("station_cost", 1.0);
            cfg.stage1.budget = j.at("stage1").value("budget", 0.0);
        }
        if (j.contains("stage2")) {
            const json& s2 = j.at("stage2");
            cfg.stage2.benefit_rate = s2.value("benefit_rate", 10.0);
            cfg.stage2.relocation_rate = s2.value("relocation_rate", 20.0);
            cfg.stage2.unit_cost = s2.value("unit_cost", 1.0);
            cfg.stage2.budget = s2.value("budget", 1.0);
            cfg.stage2.fleet_size = s2.value("fleet_size", 1);
        }
        cfg.case_label = j.value("case", "A");
        cfg.out_dir = resolve(j.value("out", "out"));
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    cfg.range.validate();
    return cfg;
}

namespace {

json point_json(const netcore::Network& net, const netcore::NetworkPoint& p) {
    json j;
    if (p.is_vertex) {
        j["vertex"] = net.vertices()[p.vertex].id;
    } else {
        const netcore::Edge& e = net.edges()[p.edge];
        j["edge"] = {net.vertices()[e.a].id, net.vertices()[e.b].id};
        j["offset"] = format_quantity(p.offset);
    }
    return j;
}

json pair_json(const netcore::Network& net, const netcore::ODPair& q) {
    return json{{"i", net.vertices()[q.origin].id},
                {"j", net.vertices()[q.destination].id},
                {"flow", format_quantity(q.flow)}};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << body;
}

void write_json_file(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

}  // namespace

void write_catalog_json(const std::string& path, const netcore::Network& net,
                        const candgen::EndpointCatalog& catalog) {
    json j;
    j["pairs"] = json::array();
    for (const netcore::ODPair& q : catalog.pairs) j["pairs"].push_back(pair_json(net, q));
    j["endpoints"] = json::array();
    json matrix = json::array();
    std::map<std::string, int> per_zone;
    for (const candgen::Endpoint& w : catalog.endpoints) {
        json e;
        e["id"] = w.label();
        e["location"] = point_json(net, w.location);
        e["zone"] = w.zone;
        e["covered_flow"] = format_quantity(w.covered_flow);
        e["covers"] = json::array();
        for (int q : w.covered) {
            const netcore::ODPair& p = catalog.pairs[q];
            e["covers"].push_back({net.vertices()[p.origin].id,
                                   net.vertices()[p.destination].id});
            matrix.push_back({w.label(), q + 1});
        }
        per_zone[w.zone]++;
        j["endpoints"].push_back(std::move(e));
    }
    j["existing"] = json::array();
    for (const candgen::ExistingPoint& s : catalog.existing) {
        json e;
        e["id"] = s.id;
        e["location"] = point_json(net, s.location);
        e["zone"] = s.zone;
        j["existing"].push_back(std::move(e));
    }
    j["matrix"] = std::move(matrix);
    j["summary"] = {{"endpoint_count", catalog.endpoints.size()}, {"per_zone", per_zone}};
    write_json_file(path, j);
}

void write_equity_json(const std::string& path, const equity::BwmResult& bwm,
                       const equity::ZoneFactorTable& table,
                       const std::vector<std::vector<double>>& normalized,
                       const std::map<std::string, double>& mu_z,
                       const planner::OdWeights& mu_q, const netcore::Network& net) {
    json j;
    j["epsilon_star"] = format_quantity(bwm.epsilon_star);
    for (std::size_t f = 0; f < table.factors.size(); ++f)
        j["theta"][table.factors[f].name] = format_quantity(bwm.theta[f]);
    for (std::size_t z = 0; z < table.zones.size(); ++z)
        for (std::size_t f = 0; f < table.factors.size(); ++f)
            j["normalized"][table.zones[z]][table.factors[f].name] =
                format_quantity(normalized[z][f]);
    for (const auto& [zone, w] : mu_z) j["mu_z"][zone] = format_quantity(w);
    j["mu_q"] = json::array();
    for (const auto& [key, w] : mu_q)
        j["mu_q"].push_back({{"i", net.vertices()[key.first].id},
                             {"j", net.vertices()[key.second].id},
                             {"mu", format_quantity(w)}});
    write_json_file(path, j);
}

void write_tensor_csv(const std::string& path, const netcore::Network& net,
                      const scenario::FlowTensor& tensor) {
    std::ostringstream out;
    out << "t,s,i,j,flow\n";
    for (int t = 0; t < tensor.periods; ++t)
        for (int s = 0; s < tensor.scenarios; ++s)
            for (std::size_t q = 0; q < tensor.pairs.size(); ++q)
                out << (t + 1) << ',' << (s + 1) << ','
                    << net.vertices()[tensor.pairs[q].origin].id << ','
                    << net.vertices()[tensor.pairs[q].destination].id << ','
                    << format_quantity(tensor.at(t, s, static_cast<int>(q))) << '\n';
    write_text(path, out.str());
}

void write_plan_json(const std::string& path, const netcore::Network& net,
                     const candgen::EndpointCatalog& catalog, const planner::FcsPlan& plan) {
    json j;
    j["status"] = plan.status == milp::SolStatus::Optimal ? "optimal" : "limit_reached";
    j["objective"] = format_money(plan.objective);
    j["selected"] = json::array();
    for (int w : plan.selected) {
        const candgen::Endpoint& e = catalog.endpoints[w];
        json s;
        s["id"] = e.label();
        s["location"] = point_json(net, e.location);
        s["zone"] = e.zone;
        s["covers"] = json::array();
        for (int q : e.covered)
            s["covers"].push_back({net.vertices()[catalog.pairs[q].origin].id,
                                   net.vertices()[catalog.pairs[q].destination].id});
        j["selected"].push_back(std::move(s));
    }
    j["covered_pairs"] = json::array();
    for (int q : plan.covered) j["covered_pairs"].push_back(pair_json(net, catalog.pairs[q]));
    j["per_zone"] = plan.per_zone;
    write_json_file(path, j);
}

void write_schedule_csv(const std::string& path, const std::string& case_label,
                        const planner::StageSets& sets,
                        const planner::McsSchedule& schedule) {
    std::ostringstream out;
    out << "case,mcs_id,period,point,zone,mode\n";
    for (int m = 0; m < schedule.fleet; ++m)
        for (int t = 0; t < schedule.periods; ++t) {
            const int w = schedule.assignment[t][m];
            out << case_label << ",m" << (m + 1) << ',' << (t + 1) << ','
                << (w < 0 ? "" : sets.points[w].label) << ','
                << (w < 0 ? "" : sets.points[w].zone) << ','
                << planner::mode_name(schedule.modes[t][m]) << '\n';
        }
    write_text(path, out.str());
}

namespace {

json kpi_json_body(const std::string& case_label, const planner::KpiReport& kpi) {
    json j;
    j["case"] = case_label;
    j["objective"] = format_money(kpi.objective);
    j["total_benefit"] = format_money(kpi.benefit_total);
    j["relocation_cost"] = format_money(kpi.relocation_cost);
    j["fcs_selected"] = kpi.fcs_selected;
    j["mcs_activated"] = kpi.mcs_activated;
    j["fcs_per_zone"] = kpi.fcs_per_zone;
    j["serve_visits_per_zone"] = kpi.mcs_serve_visits_per_zone;
    return j;
}

}  // namespace

void write_kpi_json(const std::string& path, const std::string& case_label,
                    const planner::KpiReport& kpi) {
    write_json_file(path, kpi_json_body(case_label, kpi));
}

void write_kpi_csv(const std::string& path, const std::string& case_label,
                   const planner::KpiReport& kpi) {
    std::ostringstream out;
    out << "case,objective,total_benefit,relocation_cost,fcs_selected,mcs_activated\n";
    out << case_label << ',' << format_money(kpi.objective) << ','
        << format_money(kpi.benefit_total) << ',' << format_money(kpi.relocation_cost) << ','
        << kpi.fcs_selected << ',' << kpi.mcs_activated << '\n';
    write_text(path, out.str());
}

namespace {

struct Projector {
    double min_x = 0, min_y = 0, scale = 1;
    static constexpr double kWidth = 800, kHeight = 600, kMargin = 50;

    explicit Projector(const netcore::Network& net) {
        double max_x = 0, max_y = 0;
        bool first = true;
        for (const netcore::Vertex& v : net.vertices()) {
            if (!v.x || !v.y)
                throw ValidationError("render: vertex '" + v.id + "' has no coordinates");
            if (first || *v.x < min_x) min_x = *v.x;
            if (first || *v.y < min_y) min_y = *v.y;
            if (first || *v.x > max_x) max_x = *v.x;
            if (first || *v.y > max_y) max_y = *v.y;
            first = false;
        }
        const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
        scale = (std::min(kWidth, kHeight) - 2 * kMargin) / span;
    }

    std::pair<double, double> vertex(const netcore::Network& net, int v) const {
        return {(*net.vertices()[v].x - min_x) * scale + kMargin,
                kHeight - ((*net.vertices()[v].y - min_y) * scale + kMargin)};
    }
    std::pair<double, double> point(const netcore::Network& net,
                                    const netcore::NetworkPoint& p) const {
        if (p.is_vertex) return vertex(net, p.vertex);
        const netcore::Edge& e = net.edges()[p.edge];
        const auto [ax, ay] = vertex(net, e.a);
        const auto [bx, by] = vertex(net, e.b);
        const double f = e.length > 0 ? p.offset / e.length : 0.0;
        return {ax + (bx - ax) * f, ay + (by - ay) * f};
    }
};

const char* zone_color(int idx) {
    static const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                     "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};
    return kPalette[idx % 8];
}

std::string fmt(double v) { return format_quantity(v); }

}  // namespace

std::string render_svg(const netcore::Network& net, const candgen::EndpointCatalog& catalog,
                       const planner::FcsPlan& plan, const planner::StageSets* sets,
                       const planner::McsSchedule* schedule, int period) {
    const Projector proj(net);
    std::map<std::string, int> zone_idx;
    for (const netcore::Vertex& v : net.vertices()) zone_idx.emplace(v.zone, 0);
    int zi = 0;
    for (auto& [zone, idx] : zone_idx) idx = zi++;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg << "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    for (const netcore::Edge& e : net.edges()) {
        const auto [ax, ay] = proj.vertex(net, e.a);
        const auto [bx, by] = proj.vertex(net, e.b);
        svg << "<line class=\"edge\" x1=\"" << fmt(ax) << "\" y1=\"" << fmt(ay) << "\" x2=\""
            << fmt(bx) << "\" y2=\"" << fmt(by) << "\" stroke=\"#999999\" stroke-width=\"1.5\"/>\n";
    }
    for (std::size_t v = 0; v < net.vertices().size(); ++v) {
        const auto [x, y] = proj.vertex(net, static_cast<int>(v));
        svg << "<circle class=\"vertex\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"5\" fill=\"" << zone_color(zone_idx[net.vertices()[v].zone])
            << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << fmt(x + 7) << "\" y=\"" << fmt(y - 7)
            << "\" font-size=\"10\" fill=\"#333333\">" << net.vertices()[v].id << "</text>\n";
    }
    for (const candgen::Endpoint& w : catalog.endpoints) {
        const auto [x, y] = proj.point(net, w.location);
        svg << "<circle class=\"endpoint\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"2.5\" fill=\"#bbbbbb\"/>\n";
    }
    for (const candgen::ExistingPoint& s : catalog.existing) {
        const auto [x, y] = proj.point(net, s.location);
        svg << "<rect class=\"existing\" x=\"" << fmt(x - 4) << "\" y=\"" << fmt(y - 4)
            << "\" width=\"8\" height=\"8\" fill=\"#222222\"/>\n";
    }
    for (int w : plan.selected) {
        const auto [x, y] = proj.point(net, catalog.endpoints[w].location);
        svg << "<circle class=\"fcs\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\"/>\n";
    }
    if (sets && schedule && period >= 0 && period < schedule->periods) {
        for (int m = 0; m < schedule->fleet; ++m) {
            const int w = schedule->assignment[period][m];
            if (w < 0) continue;
            const auto [x, y] = proj.point(net, sets->points[w].location);
            svg << "<path class=\"mcs\" d=\"M " << fmt(x) << ' ' << fmt(y - 8) << " L "
                << fmt(x - 7) << ' ' << fmt(y + 5) << " L " << fmt(x + 7) << ' ' << fmt(y + 5)
                << " Z\" fill=\"#2ca02c\" stroke=\"#145214\"/>\n";
        }
        svg << "<text x=\"20\" y=\"30\" font-size=\"16\" fill=\"#333333\">period "
            << (period + 1) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace evplan::io
