#include "ssdcore/newsvendor.hpp"

#include <cmath>

#include "ssdcore/lp.hpp"
#include "ssdcore/ssd.hpp"

namespace ssdcore {

void NewsvendorProblem::validate() const {
    if (n < 1 || n > kMaxPlayers)
        throw std::invalid_argument("newsvendor: player count out of range");
    if (!(0.0 < c && c < p))
        throw std::invalid_argument("newsvendor: require 0 < c < p");
    if (demand.size() != (std::size_t{1} << n))
        throw std::invalid_argument("newsvendor: need demand bounds per nonempty coalition");
    for (std::uint32_t m = 1; m < demand.size(); ++m) {
        auto [a, b] = demand[m];
        if (!(0.0 <= a && a < b))
            throw std::invalid_argument("newsvendor: require 0 <= a_S < b_S for coalition " +
                                        Coalition{m}.key(n));
    }
}

double optimal_order(const NewsvendorProblem& prob, Coalition s) {
    if (s.empty()) throw std::invalid_argument("optimal_order: empty coalition");
    auto [a, b] = prob.demand[s.mask];
    return a + (b - a) * (prob.p - prob.c) / prob.p;
}

StochasticGame build_game(const NewsvendorProblem& prob) {
    prob.validate();
    double alpha = (prob.p - prob.c) / prob.p;
    std::vector<Distribution> dists;
    dists.reserve((std::size_t{1} << prob.n) - 1);
    for (std::uint32_t m = 1; m < (1u << prob.n); ++m) {
        double q = optimal_order(prob, {m});
        double lo = prob.p * prob.demand[m].first - prob.c * q;
        double hi = (prob.p - prob.c) * q;
        dists.emplace_back(AlphaCutUniform{lo, hi, alpha});
    }
    return StochasticGame(prob.n, std::move(dists));
}

namespace {

// Solve r >= 0, r(N) = 1, r(S)*coef1_N >= coef1_S and r(S)*coef2_N >= coef2_S
// for all proper nonempty S, then collect metrics and binding coalitions.
CooperationReport solve_two_condition_lp(const NewsvendorProblem& prob,
                                         const std::vector<double>& cond1,
                                         const std::vector<double>& cond2, double tol) {
    const int n = prob.n;
    const std::uint32_t full = (1u << n) - 1u;

    LinearSystem sys;
    sys.num_vars = static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) sys.set_lower(i, 0.0);
    std::vector<std::pair<std::uint32_t, int>> row_tags;  // (mask, which condition)
    auto weighted_row = [&](std::uint32_t m, double coeff) {
        std::vector<double> c(sys.num_vars, 0.0);
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1u) c[i] = coeff;
        return c;
    };
    for (std::uint32_t m = 1; m < full; ++m) {
        sys.add_ge(weighted_row(m, cond1[full]), cond1[m]);
        row_tags.emplace_back(m, 1);
        sys.add_ge(weighted_row(m, cond2[full]), cond2[m]);
        row_tags.emplace_back(m, 2);
    }
    sys.add_eq(std::vector<double>(sys.num_vars, 1.0), 1.0);

    CooperationReport rep;
    rep.protection.assign(std::size_t{1} << n, 0.0);
    rep.market_quality.assign(std::size_t{1} << n, 0.0);
    for (std::uint32_t m = 1; m <= full; ++m) {
        auto [a, b] = prob.demand[m];
        rep.protection[m] = a * prob.p - (b - a) * prob.c;
        rep.market_quality[m] = prob.p * 0.5 * (a + b) - prob.c * 0.5 * (b - a);
    }

    LpOutcome out = solve(sys, tol);
    rep.feasible = out.feasible;
    if (!out.feasible) return rep;
    rep.r = out.witness;
    for (std::size_t k = 0; k < row_tags.size(); ++k) {
        auto [m, which] = row_tags[k];
        double rs = coalition_sum(*rep.r, {m});
        const auto& cond = which == 1 ? cond1 : cond2;
        double slack = rs * cond[full] - cond[m];
        if (slack <= tol * std::max(1.0, std::fabs(cond[m])) &&
            (rep.binding.empty() || rep.binding.back().mask != m))
            rep.binding.push_back({m});
    }
    return rep;
}

}  // namespace

CooperationReport cooperation_feasible(const NewsvendorProblem& prob, double tol) {
    prob.validate();
    const std::uint32_t full = (1u << prob.n) - 1u;
    std::vector<double> cond1(full + 1, 0.0), cond2(full + 1, 0.0);
    for (std::uint32_t m = 1; m <= full; ++m) {
        auto [a, b] = prob.demand[m];
        cond1[m] = a * prob.p - (b - a) * prob.c;
        cond2[m] = a * (prob.p + prob.c) + b * (prob.p - prob.c);
    }
    return solve_two_condition_lp(prob, cond1, cond2, tol);
}

CooperationReport cooperation_feasible_direct(const NewsvendorProblem& prob, double tol) {
    StochasticGame game = build_game(prob);
    double alpha = (prob.p - prob.c) / prob.p;
    const std::uint32_t full = (1u << prob.n) - 1u;
    std::vector<double> cond1(full + 1, 0.0), cond2(full + 1, 0.0);
    for (std::uint32_t m = 1; m <= full; ++m) {
        const auto& d = game.dist({m}).as<AlphaCutUniform>();
        cond1[m] = d.a;
        cond2[m] = (2.0 - alpha) * d.b + alpha * d.a;
    }
    return solve_two_condition_lp(prob, cond1, cond2, tol);
}

}  // namespace ssdcore
