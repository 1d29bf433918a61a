#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace ssdcore {

enum class Rel { Le, Ge };

struct LinearSystem {
    std::size_t num_vars = 0;

    struct Inequality {
        std::vector<double> coeffs;
        Rel rel = Rel::Ge;
        double rhs = 0.0;
    };
    struct Equality {
        std::vector<double> coeffs;
        double rhs = 0.0;
    };

    std::vector<Inequality> inequalities;
    std::vector<Equality> equalities;
    // Optional per-variable bounds; empty vectors mean all free.
    std::vector<std::optional<double>> lower;
    std::vector<std::optional<double>> upper;
    // Optional objective; without one, solve() maximizes the minimum
    // inequality slack.
    std::vector<double> objective;
    bool has_objective = false;
    bool maximize = false;

    void add_le(std::vector<double> coeffs, double rhs);
    void add_ge(std::vector<double> coeffs, double rhs);
    void add_eq(std::vector<double> coeffs, double rhs);
    void set_lower(std::size_t var, double bound);
    void set_minimize(std::vector<double> coeffs);
    void set_maximize(std::vector<double> coeffs);
};

struct Unbounded : std::runtime_error {
    Unbounded() : std::runtime_error("lp: objective unbounded") {}
};

struct LpOutcome {
    bool feasible = false;
    std::vector<double> witness;
    // Achieved objective, or the max-min inequality slack in feasibility mode.
    double value = 0.0;
};

/// Dense two-phase simplex with Bland's anti-cycling rule.  Without an
/// objective, solves the max-min-slack program over the inequalities (slack
/// capped at 1e6) and reports feasible iff the optimum slack >= -tol.
/// Witnesses are re-verified against every constraint before being returned.
LpOutcome solve(const LinearSystem& sys, double tol = 1e-9);

}  // namespace ssdcore
