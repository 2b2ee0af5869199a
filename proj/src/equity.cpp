#include "evplan/equity.hpp"

#include <algorithm>
#include <cmath>

#include "evplan/milp.hpp"

namespace evplan::equity {

void BwmInput::validate() const {
    const int n = static_cast<int>(factors.size());
    if (n < 2) throw ValidationError("bwm: need at least two factors");
    if (best < 0 || best >= n || worst < 0 || worst >= n)
        throw ValidationError("bwm: best/worst index out of range");
    if (static_cast<int>(best_to_others.size()) != n ||
        static_cast<int>(others_to_worst.size()) != n)
        throw ValidationError("bwm: rating vector length mismatch");
    for (double v : best_to_others)
        if (v < 1.0 || v > 9.0) throw ValidationError("bwm: best-to-others rating outside [1,9]");
    for (double v : others_to_worst)
        if (v < 1.0 || v > 9.0) throw ValidationError("bwm: others-to-worst rating outside [1,9]");
    if (best_to_others[best] != 1.0)
        throw ValidationError("bwm: best factor must rate itself 1");
    if (others_to_worst[worst] != 1.0)
        throw ValidationError("bwm: worst factor must rate itself 1");
    if (best_to_others[worst] != others_to_worst[best])
        throw ValidationError("bwm: best-to-worst rating disagrees between the two vectors");
}

namespace {

// |theta_b/theta_i - o_bi| <= eps and |theta_i/theta_w - o_iw| <= eps,
// linearized for fixed eps (theta > 0), plus the simplex constraint.
milp::Model bwm_system(const BwmInput& in, double eps) {
    const int n = static_cast<int>(in.factors.size());
    milp::Model m;
    for (int i = 0; i < n; ++i)
        m.add_var("theta_" + std::to_string(i), milp::VarKind::Continuous, 0.0, 1.0);
    std::vector<std::pair<int, double>> sum;
    for (int i = 0; i < n; ++i) sum.emplace_back(i, 1.0);
    m.add_constraint("sum_one", sum, milp::Sense::Eq, 1.0);
    for (int i = 0; i < n; ++i) {
        if (i != in.best) {
            m.add_constraint("best_hi_" + std::to_string(i),
                             {{in.best, 1.0}, {i, -(in.best_to_others[i] + eps)}},
                             milp::Sense::Le, 0.0);
            m.add_constraint("best_lo_" + std::to_string(i),
                             {{i, in.best_to_others[i] - eps}, {in.best, -1.0}},
                             milp::Sense::Le, 0.0);
        }
        if (i != in.worst) {
            m.add_constraint("worst_hi_" + std::to_string(i),
                             {{i, 1.0}, {in.worst, -(in.others_to_worst[i] + eps)}},
                             milp::Sense::Le, 0.0);
            m.add_constraint("worst_lo_" + std::to_string(i),
                             {{in.worst, in.others_to_worst[i] - eps}, {i, -1.0}},
                             milp::Sense::Le, 0.0);
        }
    }
    return m;
}

}  // namespace

BwmResult solve_bwm(const BwmInput& input, double tol) {
    input.validate();
    const int n = static_cast<int>(input.factors.size());

    double lo = 0.0, hi = 9.0;
    if (!milp::check_feasible(bwm_system(input, hi)))
        throw ValidationError("bwm: rating system infeasible even at maximal deviation");
    if (milp::check_feasible(bwm_system(input, 0.0))) {
        hi = 0.0;
    } else {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (milp::check_feasible(bwm_system(input, mid)))
                hi = mid;
            else
                lo = mid;
        }
    }
    const double eps_star = hi;

    // Representative weights: the feasible region at eps* is generally a
    // thin polytope, not a point; take the per-component interval midpoint.
    milp::Model sys = bwm_system(input, eps_star + tol);
    BwmResult result;
    result.epsilon_star = eps_star;
    result.theta.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double span[2];
        for (int dir = 0; dir < 2; ++dir) {
            sys.set_objective(dir == 0 ? milp::ObjSense::Minimize : milp::ObjSense::Maximize,
                              {{i, 1.0}});
            milp::Solution s = milp::solve_relaxation(sys);
            if (s.status != milp::SolStatus::Optimal)
                throw ValidationError("bwm: feasibility lost while extracting weights");
            span[dir] = s.values[i];
        }
        result.theta[i] = 0.5 * (span[0] + span[1]);
    }
    double total = 0.0;
    for (double t : result.theta) total += t;
    for (double& t : result.theta) t /= total;
    return result;
}

void ZoneFactorTable::validate() const {
    if (zones.size() < 2) throw ValidationError("zone table: need at least two zones");
    if (values.size() != zones.size())
        throw ValidationError("zone table: row count mismatch");
    for (const auto& row : values)
        if (row.size() != factors.size())
            throw ValidationError("zone table: column count mismatch");
}

std::vector<std::vector<double>> normalize_factors(const ZoneFactorTable& table) {
    table.validate();
    const std::size_t nz = table.zones.size(), nf = table.factors.size();
    std::vector<std::vector<double>> g(nz, std::vector<double>(nf, 0.0));
    for (std::size_t f = 0; f < nf; ++f) {
        double lo = table.values[0][f], hi = table.values[0][f];
        for (std::size_t z = 1; z < nz; ++z) {
            lo = std::min(lo, table.values[z][f]);
            hi = std::max(hi, table.values[z][f]);
        }
        if (hi - lo <= 0.0)
            throw ValidationError("normalize: factor '" + table.factors[f].name +
                                  "' has zero spread across zones");
        for (std::size_t z = 0; z < nz; ++z) {
            double v = (table.values[z][f] - lo) / (hi - lo);
            if (table.factors[f].direction == Direction::NeedDecreasing) v = 1.0 - v;
            g[z][f] = v;
        }
    }
    return g;
}

std::map<std::string, double> zone_weights(const ZoneFactorTable& table,
                                           const std::vector<std::vector<double>>& normalized,
                                           const std::vector<double>& theta) {
    if (theta.size() != table.factors.size())
        throw ValidationError("zone_weights: theta length mismatch");
    std::map<std::string, double> mu;
    for (std::size_t z = 0; z < table.zones.size(); ++z) {
        double w = 0.0;
        for (std::size_t f = 0; f < theta.size(); ++f) w += theta[f] * normalized[z][f];
        mu[table.zones[z]] = w;
    }
    return mu;
}

std::map<std::pair<netcore::VertexIdx, netcore::VertexIdx>, double> od_weights(
    const std::map<std::string, double>& mu_z, const netcore::Network& net,
    const std::vector<netcore::ODPair>& pairs) {
    std::map<std::pair<netcore::VertexIdx, netcore::VertexIdx>, double> mu_q;
    for (const netcore::ODPair& q : pairs) {
        const std::string& zo = net.vertices()[q.origin].zone;
        const std::string& zd = net.vertices()[q.destination].zone;
        auto io = mu_z.find(zo);
        auto id = mu_z.find(zd);
        if (io == mu_z.end())
            throw ValidationError("od_weights: no weight for zone '" + zo + "'");
        if (id == mu_z.end())
            throw ValidationError("od_weights: no weight for zone '" + zd + "'");
        mu_q[q.key()] = std::max(io->second, id->second);
    }
    return mu_q;
}

}  // namespace evplan::equity
