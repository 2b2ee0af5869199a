#include "evplan/milp.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <iostream>
#include <queue>
#include <sstream>

namespace evplan::milp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-10;
}  // namespace

// ---------------------------------------------------------------------------
// Model

int Model::add_var(std::string name, VarKind kind, double lo, double hi) {
    if (name.empty()) throw ValidationError("milp: empty variable name");
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw ValidationError("milp: variable name '" + name +
                                  "' must contain only alphanumerics and underscores");
    if (name_index_.count(name)) throw ValidationError("milp: duplicate variable '" + name + "'");
    if (kind == VarKind::Binary) { lo = 0.0; hi = 1.0; }
    if (lo > hi) throw ValidationError("milp: inconsistent bounds on '" + name + "'");
    int idx = static_cast<int>(vars_.size());
    name_index_[name] = idx;
    vars_.push_back({std::move(name), kind, lo, hi});
    objective_.push_back(0.0);
    return idx;
}

void Model::add_constraint(std::string name, std::vector<std::pair<int, double>> coeffs,
                           Sense sense, double rhs) {
    for (auto& [v, c] : coeffs)
        if (v < 0 || v >= static_cast<int>(vars_.size()))
            throw ValidationError("milp: constraint '" + name + "' references unknown variable");
    constraints_.push_back({std::move(name), std::move(coeffs), sense, rhs});
}

void Model::set_objective(ObjSense sense, std::vector<std::pair<int, double>> coeffs) {
    obj_sense_ = sense;
    std::fill(objective_.begin(), objective_.end(), 0.0);
    for (auto& [v, c] : coeffs) {
        if (v < 0 || v >= static_cast<int>(vars_.size()))
            throw ValidationError("milp: objective references unknown variable");
        objective_[v] += c;
    }
}

int Model::var_index(const std::string& name) const {
    auto it = name_index_.find(name);
    return it == name_index_.end() ? -1 : it->second;
}

double Model::eval_objective(const std::vector<double>& x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) v += objective_[j] * x[j];
    return v;
}

double Model::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        worst = std::max(worst, vars_[j].lo - x[j]);
        if (vars_[j].hi < kInf) worst = std::max(worst, x[j] - vars_[j].hi);
    }
    for (const Constraint& c : constraints_) {
        double lhs = 0.0;
        for (auto [v, a] : c.coeffs) lhs += a * x[v];
        switch (c.sense) {
            case Sense::Le: worst = std::max(worst, lhs - c.rhs); break;
            case Sense::Ge: worst = std::max(worst, c.rhs - lhs); break;
            case Sense::Eq: worst = std::max(worst, std::fabs(lhs - c.rhs)); break;
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Bounded-variable two-phase primal simplex (dense tableau).
//
// Structural variables are shifted to lower bound zero; each row gets a
// slack (inequalities) and an artificial forming the phase-1 basis.

namespace {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

class Simplex {
public:
    Simplex(const Model& model, const std::vector<double>& lo, const std::vector<double>& hi)
        : model_(model), lo_(lo) {
        n_ = static_cast<int>(model.vars().size());
        m_ = static_cast<int>(model.constraints().size());
        for (int j = 0; j < n_; ++j)
            if (!(lo[j] > -kInf))
                throw SolverError("simplex: variable '" + model.vars()[j].name +
                                  "' has no finite lower bound");
        int n_slack = 0;
        for (const Constraint& c : model.constraints())
            if (c.sense != Sense::Eq) ++n_slack;
        ncols_ = n_ + n_slack + m_;
        art0_ = n_ + n_slack;
        T_.assign(m_, std::vector<double>(ncols_, 0.0));
        beta_.assign(m_, 0.0);
        ub_.assign(ncols_, kInf);
        basis_.assign(m_, 0);
        at_upper_.assign(ncols_, 0);
        is_basic_.assign(ncols_, 0);

        for (int j = 0; j < n_; ++j) {
            double u = hi[j] - lo[j];
            if (u < -1e-12) throw SolverError("simplex: crossed bounds");
            ub_[j] = std::max(0.0, u);
        }
        int slack = n_;
        for (int i = 0; i < m_; ++i) {
            const Constraint& c = model.constraints()[i];
            double rhs = c.rhs;
            for (auto [v, a] : c.coeffs) {
                T_[i][v] += a;
                rhs -= a * lo[v];
            }
            if (c.sense == Sense::Le) T_[i][slack++] = 1.0;
            else if (c.sense == Sense::Ge) T_[i][slack++] = -1.0;
            if (rhs < 0.0) {
                for (int j = 0; j < ncols_; ++j) T_[i][j] = -T_[i][j];
                rhs = -rhs;
            }
            T_[i][art0_ + i] = 1.0;
            basis_[i] = art0_ + i;
            is_basic_[art0_ + i] = 1;
            beta_[i] = rhs;
        }
    }

    LpResult solve(bool feasibility_only) {
        // Phase 1: minimize the artificial sum.
        std::vector<double> cost(ncols_, 0.0);
        for (int i = 0; i < m_; ++i) cost[art0_ + i] = 1.0;
        run_phase(cost);
        double infeas = 0.0;
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= art0_) infeas += beta_[i];
        if (infeas > 1e-7) return {LpStatus::Infeasible, 0.0, {}};
        for (int i = 0; i < m_; ++i) ub_[art0_ + i] = 0.0;
        if (feasibility_only) return finish();

        // Phase 2: the real objective, as minimization.
        std::fill(cost.begin(), cost.end(), 0.0);
        const double sgn = model_.objective_sense() == ObjSense::Maximize ? -1.0 : 1.0;
        for (int j = 0; j < n_; ++j) cost[j] = sgn * model_.objective()[j];
        if (!run_phase(cost)) return {LpStatus::Unbounded, 0.0, {}};
        return finish();
    }

private:
    LpResult finish() {
        LpResult r;
        r.status = LpStatus::Optimal;
        r.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j)
            r.x[j] = lo_[j] + (at_upper_[j] ? ub_[j] : 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) r.x[basis_[i]] = lo_[basis_[i]] + beta_[i];
        r.objective = model_.eval_objective(r.x);
        return r;
    }

    // Returns false when the phase objective is unbounded below.
    bool run_phase(const std::vector<double>& cost) {
        std::vector<double> d(ncols_);
        for (int j = 0; j < ncols_; ++j) {
            double v = cost[j];
            for (int i = 0; i < m_; ++i)
                if (cost[basis_[i]] != 0.0) v -= cost[basis_[i]] * T_[i][j];
            d[j] = v;
        }
        bool bland = false;
        int degenerate_run = 0;
        const long max_iter = 20000L + 60L * (m_ + ncols_);
        for (long iter = 0; iter < max_iter; ++iter) {
            // entering column
            int enter = -1;
            double best = 1e-9;
            for (int j = 0; j < ncols_; ++j) {
                if (is_basic_[j] || ub_[j] <= 0.0) continue;  // basic or fixed column
                double dj = d[j];
                bool improving = at_upper_[j] ? dj > 1e-9 : dj < -1e-9;
                if (!improving) continue;
                if (bland) { enter = j; break; }
                if (std::fabs(dj) > best) { best = std::fabs(dj); enter = j; }
            }
            if (enter < 0) return true;

            const double dir = at_upper_[enter] ? -1.0 : 1.0;
            double t = ub_[enter];
            int leave_row = -1;
            for (int i = 0; i < m_; ++i) {
                const double w = dir * T_[i][enter];
                double lim = kInf;
                if (w > kPivotTol) {
                    lim = std::max(0.0, beta_[i]) / w;
                } else if (w < -kPivotTol) {
                    double ubb = ub_[basis_[i]];
                    if (ubb < kInf) lim = std::max(0.0, ubb - beta_[i]) / (-w);
                }
                if (lim < t - 1e-12 ||
                    (lim < t + 1e-12 && leave_row >= 0 && basis_[i] < basis_[leave_row])) {
                    t = lim;
                    leave_row = i;
                }
            }
            if (t >= kInf) return false;  // unbounded ray

            if (t < 1e-11) {
                if (++degenerate_run > 500) bland = true;
            } else {
                degenerate_run = 0;
            }

            if (leave_row < 0) {
                // bound flip, no basis change
                for (int i = 0; i < m_; ++i) beta_[i] -= dir * T_[i][enter] * t;
                at_upper_[enter] ^= 1;
                continue;
            }

            const int leave = basis_[leave_row];
            const double w_r = dir * T_[leave_row][enter];
            const double enter_val = at_upper_[enter] ? ub_[enter] - t : t;
            for (int i = 0; i < m_; ++i)
                if (i != leave_row) beta_[i] -= dir * T_[i][enter] * t;
            beta_[leave_row] = enter_val;

            // pivot
            const double piv = T_[leave_row][enter];
            double* prow = T_[leave_row].data();
            const double ipiv = 1.0 / piv;
            for (int j = 0; j < ncols_; ++j) prow[j] *= ipiv;
            for (int i = 0; i < m_; ++i) {
                if (i == leave_row) continue;
                const double f = T_[i][enter];
                if (f == 0.0) continue;
                double* row = T_[i].data();
                for (int j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
                row[enter] = 0.0;
            }
            const double fd = d[enter];
            if (fd != 0.0)
                for (int j = 0; j < ncols_; ++j) d[j] -= fd * prow[j];
            d[enter] = 0.0;

            basis_[leave_row] = enter;
            is_basic_[enter] = 1;
            at_upper_[enter] = 0;
            is_basic_[leave] = 0;
            at_upper_[leave] = (w_r < 0.0) ? 1 : 0;
        }
        throw SolverError("simplex: iteration limit exceeded (possible numerical failure)");
    }

    const Model& model_;
    std::vector<double> lo_;
    int n_ = 0, m_ = 0, ncols_ = 0, art0_ = 0;
    std::vector<std::vector<double>> T_;
    std::vector<double> beta_;
    std::vector<double> ub_;
    std::vector<int> basis_;
    std::vector<std::uint8_t> at_upper_;
    std::vector<std::uint8_t> is_basic_;
};

LpResult solve_lp(const Model& model, const std::vector<double>& lo,
                  const std::vector<double>& hi, bool feasibility_only = false) {
    Simplex s(model, lo, hi);
    return s.solve(feasibility_only);
}

}  // namespace

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

struct Node {
    double bound = 0.0;  // optimistic estimate inherited from the parent LP
    int depth = 0;
    long id = 0;
    std::vector<std::pair<int, int>> fixings;  // (binary var, 0/1)
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;  // larger bound first
        if (a.depth != b.depth) return a.depth < b.depth;  // deeper first
        return a.id > b.id;
    }
};

}  // namespace

Solution solve(const Model& model, const SolveLimits& limits) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = static_cast<int>(model.vars().size());
    std::vector<double> base_lo(n), base_hi(n);
    std::vector<int> binaries;
    for (int j = 0; j < n; ++j) {
        base_lo[j] = model.vars()[j].lo;
        base_hi[j] = model.vars()[j].hi;
        if (model.vars()[j].kind == VarKind::Binary) binaries.push_back(j);
    }
    const bool maximize = model.objective_sense() == ObjSense::Maximize;
    const auto better = [&](double a, double b) { return maximize ? a > b : a < b; };

    Solution result;
    result.status = SolStatus::Infeasible;
    double incumbent = maximize ? -kInf : kInf;
    std::vector<double> incumbent_x;

    const auto most_fractional = [&](const std::vector<double>& x) {
        int frac = -1;
        double score = 1e-7;
        for (int b : binaries) {
            const double f = std::fabs(x[b] - std::round(x[b]));
            if (f > score + 1e-12) { score = f; frac = b; }
        }
        return frac;
    };

    // Greedy dive for an initial incumbent before the exact search: fix the
    // most fractional binary upward (falling back to 0 when that turns
    // infeasible). On heavily symmetric models best-first alone can churn
    // through near-identical relaxations for a long time before producing
    // any integral point, which makes limit-hit results useless.
    {
        std::vector<double> dlo = base_lo, dhi = base_hi;
        int last_up = -1;
        for (int iter = 0; iter < 400; ++iter) {
            LpResult lp = solve_lp(model, dlo, dhi);
            if (lp.status == LpStatus::Infeasible) {
                if (last_up >= 0) {  // retract the latest upward fix
                    dlo[last_up] = 0.0;
                    dhi[last_up] = 0.0;
                    last_up = -1;
                    continue;
                }
                break;
            }
            if (lp.status != LpStatus::Optimal) break;
            const int frac = most_fractional(lp.x);
            if (frac < 0) {
                for (int b : binaries) lp.x[b] = std::round(lp.x[b]);
                if (model.max_violation(lp.x) <= kFeasTol) {
                    incumbent = model.eval_objective(lp.x);
                    incumbent_x = std::move(lp.x);
                }
                break;
            }
            dlo[frac] = 1.0;
            dhi[frac] = 1.0;
            last_up = frac;
        }
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;
    open.push({maximize ? kInf : -kInf, 0, next_id++, {}});
    long nodes = 0;
    bool limit_hit = false;
    double best_open_bound = maximize ? -kInf : kInf;

    std::vector<double> lo(n), hi(n);
    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        const double prune_margin = std::max(1e-9, 1e-9 * std::fabs(incumbent));
        if (!incumbent_x.empty() &&
            !better(node.bound, maximize ? incumbent + prune_margin : incumbent - prune_margin))
            continue;
        if (limits.node_limit >= 0 && nodes >= limits.node_limit) {
            limit_hit = true;
            best_open_bound = node.bound;
            break;
        }
        if (limits.time_limit_s >= 0) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (elapsed > limits.time_limit_s) {
                limit_hit = true;
                best_open_bound = node.bound;
                break;
            }
        }
        ++nodes;
        lo = base_lo;
        hi = base_hi;
        for (auto [v, val] : node.fixings) { lo[v] = val; hi[v] = val; }
        LpResult lp = solve_lp(model, lo, hi);
        if (lp.status == LpStatus::Infeasible) continue;
        if (lp.status == LpStatus::Unbounded) {
            // fixing binaries only restricts, so the relaxation ray exists in
            // the original model as well
            result.status = SolStatus::Unbounded;
            result.nodes = nodes;
            return result;
        }
        if (!incumbent_x.empty() &&
            !better(lp.objective, maximize ? incumbent + prune_margin : incumbent - prune_margin))
            continue;

        int frac = -1;
        double frac_score = 1e-7;
        for (int b : binaries) {
            const double f = std::fabs(lp.x[b] - std::round(lp.x[b]));
            if (f > frac_score + 1e-12) { frac_score = f; frac = b; }
        }
        if (frac < 0) {
            // integral: candidate incumbent
            for (int b : binaries) lp.x[b] = std::round(lp.x[b]);
            if (incumbent_x.empty() || better(lp.objective, incumbent)) {
                incumbent = lp.objective;
                incumbent_x = lp.x;
            }
            continue;
        }
        Node one{lp.objective, node.depth + 1, next_id++, node.fixings};
        one.fixings.emplace_back(frac, 1);
        Node zero{lp.objective, node.depth + 1, next_id++, node.fixings};
        zero.fixings.emplace_back(frac, 0);
        open.push(std::move(one));
        open.push(std::move(zero));
    }

    result.nodes = nodes;
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_hit) {
        result.status = SolStatus::LimitReached;
        if (!incumbent_x.empty()) {
            result.objective = incumbent;
            result.values = std::move(incumbent_x);
            result.bound_gap = std::fabs(best_open_bound - incumbent);
        }
        return result;
    }
    if (incumbent_x.empty()) {
        result.status = SolStatus::Infeasible;
        return result;
    }
    if (model.max_violation(incumbent_x) > kFeasTol)
        throw SolverError("branch and bound produced an infeasible incumbent");
    result.status = SolStatus::Optimal;
    result.objective = incumbent;
    result.values = std::move(incumbent_x);
    result.bound_gap = 0.0;
    return result;
}

bool check_feasible(const Model& model) {
    const int n = static_cast<int>(model.vars().size());
    std::vector<double> lo(n), hi(n);
    for (int j = 0; j < n; ++j) { lo[j] = model.vars()[j].lo; hi[j] = model.vars()[j].hi; }
    return solve_lp(model, lo, hi, /*feasibility_only=*/true).status == LpStatus::Optimal;
}

Solution solve_relaxation(const Model& model) {
    const int n = static_cast<int>(model.vars().size());
    std::vector<double> lo(n), hi(n);
    for (int j = 0; j < n; ++j) { lo[j] = model.vars()[j].lo; hi[j] = model.vars()[j].hi; }
    LpResult lp = solve_lp(model, lo, hi);
    Solution s;
    s.nodes = 1;
    switch (lp.status) {
        case LpStatus::Infeasible: s.status = SolStatus::Infeasible; break;
        case LpStatus::Unbounded: s.status = SolStatus::Unbounded; break;
        case LpStatus::Optimal:
            s.status = SolStatus::Optimal;
            s.objective = lp.objective;
            s.values = std::move(lp.x);
            break;
    }
    return s;
}

// ---------------------------------------------------------------------------
// LP-format export / parse (CPLEX dialect subset)

namespace {

std::string coef_str(double c) {
    std::ostringstream os;
    os.precision(17);
    os << c;
    return os.str();
}

void write_expr(std::ostream& out, const Model& model,
                const std::vector<std::pair<int, double>>& terms) {
    bool first = true;
    for (auto [v, c] : terms) {
        if (c == 0.0) continue;
        if (first) {
            if (c < 0) out << "- ";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        const double a = std::fabs(c);
        if (a != 1.0) out << coef_str(a) << " ";
        out << model.vars()[v].name;
    }
    if (first) out << "0 " << (model.vars().empty() ? "x" : model.vars()[0].name);
}

}  // namespace

void export_lp(const Model& model, std::ostream& out) {
    bool has_obj = false;
    for (double c : model.objective())
        if (c != 0.0) has_obj = true;
    if (!has_obj) out << "\\ constant objective\n";
    out << (model.objective_sense() == ObjSense::Maximize ? "Maximize\n" : "Minimize\n");
    std::vector<std::pair<int, double>> obj;
    for (int j = 0; j < static_cast<int>(model.vars().size()); ++j)
        if (model.objective()[j] != 0.0) obj.emplace_back(j, model.objective()[j]);
    out << " obj: ";
    write_expr(out, model, obj);
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < model.constraints().size(); ++i) {
        const Constraint& c = model.constraints()[i];
        out << " " << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
        write_expr(out, model, c.coeffs);
        switch (c.sense) {
            case Sense::Le: out << " <= "; break;
            case Sense::Ge: out << " >= "; break;
            case Sense::Eq: out << " = "; break;
        }
        out << coef_str(c.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const Variable& v : model.vars()) {
        if (v.kind == VarKind::Binary) continue;
        if (v.lo == 0.0 && v.hi == kInf) continue;
        if (v.hi == kInf)
            out << " " << v.name << " >= " << coef_str(v.lo) << "\n";
        else
            out << " " << coef_str(v.lo) << " <= " << v.name << " <= " << coef_str(v.hi) << "\n";
    }
    bool any_bin = false;
    for (const Variable& v : model.vars())
        if (v.kind == VarKind::Binary) any_bin = true;
    if (any_bin) {
        out << "Binary\n";
        for (const Variable& v : model.vars())
            if (v.kind == VarKind::Binary) out << " " << v.name << "\n";
    }
    out << "End\n";
}

void export_lp_file(const Model& model, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "' for writing");
    export_lp(model, f);
    if (!f) throw ValidationError("write failure on '" + path + "'");
}

namespace {

struct LpTokenizer {
    std::vector<std::string> tokens;
    std::size_t pos = 0;

    explicit LpTokenizer(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            auto cut = line.find('\\');
            if (cut != std::string::npos) line.resize(cut);
            std::size_t i = 0;
            while (i < line.size()) {
                char c = line[i];
                if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
                if (c == '<' || c == '>') {
                    std::string t(1, c);
                    if (i + 1 < line.size() && line[i + 1] == '=') { t += '='; ++i; }
                    else t += '=';  // treat bare < as <=
                    tokens.push_back(t);
                    ++i;
                } else if (c == '=' || c == '+' || c == '-' || c == ':') {
                    tokens.emplace_back(1, c);
                    ++i;
                } else {
                    std::size_t j = i;
                    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
                           std::string("<>=+-:").find(line[j]) == std::string::npos) {
                        // keep exponent signs attached to numbers
                        if ((line[j] == 'e' || line[j] == 'E') && j + 1 < line.size() &&
                            (line[j + 1] == '+' || line[j + 1] == '-') &&
                            std::isdigit(static_cast<unsigned char>(line[i]))) {
                            j += 2;
                            continue;
                        }
                        ++j;
                    }
                    tokens.push_back(line.substr(i, j - i));
                    i = j;
                }
            }
        }
    }

    bool done() const { return pos >= tokens.size(); }
    const std::string& peek() const { return tokens[pos]; }
    std::string next() { return tokens[pos++]; }
};

bool is_number(const std::string& t) {
    char* end = nullptr;
    std::strtod(t.c_str(), &end);
    return end && *end == '\0' && end != t.c_str();
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool is_section(const std::string& t) {
    const std::string l = lower(t);
    return l == "maximize" || l == "max" || l == "minimize" || l == "min" || l == "subject" ||
           l == "st" || l == "s.t." || l == "bounds" || l == "bound" || l == "binary" ||
           l == "binaries" || l == "bin" || l == "general" || l == "end";
}

}  // namespace

Model parse_lp(std::istream& in) {
    LpTokenizer tz(in);
    Model model;
    std::map<std::string, int> seen;
    auto var_of = [&](const std::string& name) {
        auto it = seen.find(name);
        if (it != seen.end()) return it->second;
        int idx = model.add_var(name, VarKind::Continuous, 0.0, kInf);
        seen[name] = idx;
        return idx;
    };
    // expression := [name :] {sign|coef|var}...
    auto parse_terms = [&](std::vector<std::pair<int, double>>& terms) {
        double sign = 1.0;
        std::optional<double> coef;
        while (!tz.done()) {
            const std::string& t = tz.peek();
            if (t == "+") { tz.next(); continue; }
            if (t == "-") { sign = -sign; tz.next(); continue; }
            if (is_number(t)) {
                double v = std::strtod(tz.next().c_str(), nullptr);
                coef = coef.value_or(1.0) * v;
                continue;
            }
            if (is_section(t) || t == "<=" || t == ">=" || t == "=") break;
            std::string name = tz.next();
            if (!tz.done() && tz.peek() == ":") { tz.next(); terms.clear(); sign = 1.0; coef.reset(); continue; }
            terms.emplace_back(var_of(name), sign * coef.value_or(1.0));
            sign = 1.0;
            coef.reset();
        }
        return coef;  // trailing bare number (the rhs of "expr <= num" is read separately)
    };

    ObjSense obj_sense = ObjSense::Minimize;
    std::vector<std::pair<int, double>> objective;
    std::map<int, std::pair<double, double>> bounds;
    std::vector<int> binaries;
    std::string section;
    int cidx = 0;
    while (!tz.done()) {
        std::string t = lower(tz.peek());
        if (t == "maximize" || t == "max") { tz.next(); section = "obj"; obj_sense = ObjSense::Maximize; continue; }
        if (t == "minimize" || t == "min") { tz.next(); section = "obj"; obj_sense = ObjSense::Minimize; continue; }
        if (t == "subject" || t == "st" || t == "s.t.") {
            tz.next();
            if (!tz.done() && lower(tz.peek()) == "to") tz.next();
            section = "st";
            continue;
        }
        if (t == "bounds" || t == "bound") { tz.next(); section = "bounds"; continue; }
        if (t == "binary" || t == "binaries" || t == "bin") { tz.next(); section = "bin"; continue; }
        if (t == "end") { tz.next(); break; }

        if (section == "obj") {
            parse_terms(objective);
        } else if (section == "st") {
            std::vector<std::pair<int, double>> terms;
            parse_terms(terms);
            if (tz.done()) throw ValidationError("lp parse: constraint missing sense");
            std::string op = tz.next();
            Sense sense = op == "<=" ? Sense::Le : op == ">=" ? Sense::Ge : Sense::Eq;
            if (tz.done() || !is_number(tz.peek()))
                throw ValidationError("lp parse: constraint missing rhs");
            double rhs = std::strtod(tz.next().c_str(), nullptr);
            model.add_constraint("c" + std::to_string(cidx++), std::move(terms), sense, rhs);
        } else if (section == "bounds") {
            // forms: "lo <= x <= hi" | "x <= hi" | "x >= lo" | "x = v" | "x free"
            double lead = 0.0;
            bool has_lead = false;
            if (is_number(tz.peek())) { lead = std::strtod(tz.next().c_str(), nullptr); has_lead = true; tz.next(); /* <= */ }
            std::string name = tz.next();
            int v = var_of(name);
            auto& [blo, bhi] = bounds.try_emplace(v, 0.0, kInf).first->second;
            if (has_lead) blo = lead;
            if (!tz.done() && !is_section(tz.peek())) {
                std::string op = lower(tz.peek());
                if (op == "free") { tz.next(); blo = -kInf; }
                else if (op == "<=" || op == ">=" || op == "=") {
                    tz.next();
                    double val = std::strtod(tz.next().c_str(), nullptr);
                    if (op == "<=") bhi = val;
                    else if (op == ">=") blo = val;
                    else { blo = val; bhi = val; }
                }
            }
        } else if (section == "bin") {
            binaries.push_back(var_of(tz.next()));
        } else {
            tz.next();
        }
    }
    model.set_objective(obj_sense, objective);
    // rebuild with final kinds/bounds: Model vars are append-only, so build anew
    Model out;
    std::vector<std::uint8_t> is_bin(model.vars().size(), 0);
    for (int b : binaries) is_bin[b] = 1;
    for (std::size_t j = 0; j < model.vars().size(); ++j) {
        double lo = 0.0, hi = kInf;
        if (auto it = bounds.find(static_cast<int>(j)); it != bounds.end())
            std::tie(lo, hi) = it->second;
        out.add_var(model.vars()[j].name, is_bin[j] ? VarKind::Binary : VarKind::Continuous, lo, hi);
    }
    for (const Constraint& c : model.constraints())
        out.add_constraint(c.name, c.coeffs, c.sense, c.rhs);
    std::vector<std::pair<int, double>> obj;
    for (std::size_t j = 0; j < model.vars().size(); ++j)
        if (model.objective()[j] != 0.0) obj.emplace_back(static_cast<int>(j), model.objective()[j]);
    out.set_objective(model.objective_sense(), obj);
    return out;
}

Model parse_lp_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    return parse_lp(f);
}

}  // namespace evplan::milp
