#pragma once

#include <optional>
#include <vector>

#include "ssdcore/classical_game.hpp"
#include "ssdcore/stochastic_game.hpp"

namespace ssdcore {

/// Single-period pooled-inventory newsvendor instance with uniform demand
/// bounds per coalition.
struct NewsvendorProblem {
    int n = 0;
    double c = 0.0;  // unit purchasing price
    double p = 0.0;  // unit selling price
    // index = coalition mask; entry 0 unused.
    std::vector<std::pair<double, double>> demand;

    void validate() const;
};

/// Critical-fractile order quantity for uniform demand:
/// q* = a + (b - a) * (p - c) / p.
double optimal_order(const NewsvendorProblem& prob, Coalition s);

/// Profit-law game: v(S) ~ alpha-cut uniform on
/// [p*a_S - c*q*_S, (p-c)*q*_S] with alpha = (p-c)/p.
StochasticGame build_game(const NewsvendorProblem& prob);

struct CooperationReport {
    bool feasible = false;
    std::optional<PayoffVector> r;
    // Indexed by coalition mask; entry 0 unused.
    std::vector<double> protection;      // a_S*p - (b_S - a_S)*c
    std::vector<double> market_quality;  // p*(a_S+b_S)/2 - c*(b_S-a_S)/2
    std::vector<Coalition> binding;      // constraints with slack <= tol at the witness
};

/// r-type SSD-core feasibility via the two per-coalition inequalities in
/// (protection, market quality) form, kept as products.
CooperationReport cooperation_feasible(const NewsvendorProblem& prob, double tol = 1e-9);

/// Same question posed through the alpha-cut conditions on the profit-law
/// game; must agree with cooperation_feasible.
CooperationReport cooperation_feasible_direct(const NewsvendorProblem& prob, double tol = 1e-9);

}  // namespace ssdcore
