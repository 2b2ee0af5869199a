#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evplan/common.hpp"

namespace evplan::milp {

enum class VarKind { Continuous, Binary };
enum class Sense { Le, Eq, Ge };
enum class ObjSense { Maximize, Minimize };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
    Sense sense = Sense::Le;
    double rhs = 0.0;
};

class Model {
public:
    int add_var(std::string name, VarKind kind, double lo = 0.0,
                double hi = std::numeric_limits<double>::infinity());
    int add_binary(std::string name) { return add_var(std::move(name), VarKind::Binary, 0.0, 1.0); }
    void add_constraint(std::string name, std::vector<std::pair<int, double>> coeffs,
                        Sense sense, double rhs);
    void set_objective(ObjSense sense, std::vector<std::pair<int, double>> coeffs);

    int var_index(const std::string& name) const;  // -1 when absent
    const std::vector<Variable>& vars() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    ObjSense objective_sense() const { return obj_sense_; }
    const std::vector<double>& objective() const { return objective_; }

    double eval_objective(const std::vector<double>& x) const;
    // Max constraint violation and bound violation of an assignment.
    double max_violation(const std::vector<double>& x) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> constraints_;
    std::map<std::string, int> name_index_;
    ObjSense obj_sense_ = ObjSense::Maximize;
    std::vector<double> objective_;  // dense, resized with vars
};

enum class SolStatus { Optimal, Infeasible, Unbounded, LimitReached };

struct Solution {
    SolStatus status = SolStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values;
    long nodes = 0;
    double seconds = 0.0;
    double bound_gap = 0.0;  // best bound minus incumbent (0 at Optimal)

    bool has_assignment() const { return !values.empty(); }
};

struct SolveLimits {
    long node_limit = -1;     // <0: unlimited
    double time_limit_s = -1; // <0: unlimited
};

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact branch-and-bound over the binary variables with LP-relaxation
// bounds from a self-contained bounded-variable simplex.
Solution solve(const Model& model, const SolveLimits& limits = {});

// Phase-1 feasibility verdict for a pure LP (binaries treated as [0,1]).
bool check_feasible(const Model& model);

// LP optimum restricted to the continuous relaxation; used as a building
// block by the feasibility-driven callers (e.g. the BWM bisection).
Solution solve_relaxation(const Model& model);

void export_lp(const Model& model, std::ostream& out);
void export_lp_file(const Model& model, const std::string& path);
Model parse_lp(std::istream& in);
Model parse_lp_file(const std::string& path);

}  // namespace evplan::milp
