#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ssdcore/classical_game.hpp"
#include "ssdcore/distribution.hpp"

namespace ssdcore {

struct ZeroGrandVariance : std::runtime_error {
    explicit ZeroGrandVariance(const std::string& what) : std::runtime_error(what) {}
};
struct IncompatibleAllocationType : std::runtime_error {
    explicit IncompatibleAllocationType(const std::string& what) : std::runtime_error(what) {}
};
struct InvalidGap : std::runtime_error {
    explicit InvalidGap(const std::string& what) : std::runtime_error(what) {}
};
struct NotConvex : std::runtime_error {
    explicit NotConvex(const std::string& what) : std::runtime_error(what) {}
};
struct IterationCapExceeded : std::runtime_error {
    explicit IterationCapExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct NotSymmetric : std::runtime_error {
    explicit NotSymmetric(const std::string& what) : std::runtime_error(what) {}
};

/// Stochastic TU-game: one distribution per nonempty coalition, all of a
/// single family.
class StochasticGame {
public:
    StochasticGame(int n, std::vector<Distribution> dists_by_mask);

    int players() const { return n_; }
    Family family() const { return family_; }
    const Distribution& dist(Coalition s) const;
    const Distribution& grand_dist() const;

    StochasticGame relabeled(const std::vector<int>& perm) const;

private:
    int n_;
    Family family_;
    std::vector<Distribution> dists_;  // index = mask - 1 over nonempty masks
};

// ---- Allocations -----------------------------------------------------------

/// x_i = r_i * v(N), r >= 0.
struct RAllocation {
    PayoffVector r;
};
/// x_i = d_i + r_i * (v(N) - E[v(N)]), r >= 0.
struct DRAllocation {
    PayoffVector d, r;
};
/// Same as DRAllocation with r unrestricted in sign.
struct DRSignedAllocation {
    PayoffVector d, r;
};
/// Multivariate normal payoff with mean vector and covariance matrix.
struct UnstructuredAllocation {
    PayoffVector mean;
    std::vector<std::vector<double>> cov;
};

using Allocation =
    std::variant<RAllocation, DRAllocation, DRSignedAllocation, UnstructuredAllocation>;

// ---- Derived classical games ----------------------------------------------

struct DerivedGames {
    std::optional<ClassicalGame> mean_game;
    std::optional<ClassicalGame> deviation_game;    // sigma_S / sigma_N; needs sigma_N > 0
    std::optional<ClassicalGame> lower_bound_game;  // uniform family only
};

DerivedGames derive_games(const StochasticGame& g);
ClassicalGame mean_game(const StochasticGame& g);
ClassicalGame deviation_game(const StochasticGame& g);     // throws ZeroGrandVariance
ClassicalGame lower_bound_game(const StochasticGame& g);   // throws UnsupportedFamily

// ---- SSD-core membership ---------------------------------------------------

struct CoalitionCheck {
    Coalition s;
    bool ok = true;
    std::string violated;  // first violated constraint, empty if ok
};

struct MembershipReport {
    bool member = false;
    std::vector<CoalitionCheck> checks;
    std::string failure;  // efficiency/type failure outside per-coalition checks
};

MembershipReport dc_membership_report(const StochasticGame& g, const Allocation& alloc,
                                      double tol);
bool dc_membership(const StochasticGame& g, const Allocation& alloc, double tol);

// ---- Nonemptiness deciders -------------------------------------------------

struct DrWitness {
    PayoffVector d, r;
};

/// Normal family (d,r) decision via the mean core and the deviation cost core.
std::optional<DrWitness> dc_nonempty_dr_normal(const StochasticGame& g, double tol = 1e-9);

/// Exact linear feasibility of the uniform (d,r) conditions, posed on derived
/// mean and lower-bound games: d(S) >= mu_S, d(S) >= a_S + r(S)(mu_N - a_N),
/// d(N) = mu_N, r(N) = 1, r >= 0.
std::optional<DrWitness> dr_condition_feasible(const ClassicalGame& mean_g,
                                               const ClassicalGame& lower_g,
                                               double tol = 1e-9);

struct UniformDecisionReport {
    bool nonempty = false;
    std::optional<DrWitness> witness;
    bool mean_core_nonempty = false;
    bool lower_core_nonempty = false;
    bool lower_convex = false;
    bool theorem_consistent = false;  // exact verdict respects both theorem directions
};

UniformDecisionReport dc_nonempty_dr_uniform(const StochasticGame& g, double tol = 1e-9);

struct ProcessPResult {
    PayoffVector x;  // lower-bound-core point with x(N) = a_N
    PayoffVector r;  // (d - x) / (mean_total - a_N), or the uniform simplex point
};

/// Constructive walk from a mean-core point down to a lower-bound-core point.
/// Requires a convex lower-bound game and mean_total >= lower_g(N).
ProcessPResult process_p(const PayoffVector& d, const ClassicalGame& lower_g,
                         double mean_total, double tol = 1e-9);

/// (d, r+-) decision for normal (joint LP) and uniform (two-core reduction).
std::optional<DrWitness> dc_nonempty_dr_signed(const StochasticGame& g, double tol = 1e-9);

/// r-type decision for normal / uniform / discrete uniform / gamma, product
/// form constraints.
std::optional<PayoffVector> dc_nonempty_r(const StochasticGame& g, double tol = 1e-9);

/// Direct joint LP over (d, r) for the normal (d,r) conditions; independent
/// route used to cross-check dc_nonempty_dr_normal.
std::optional<DrWitness> dc_nonempty_dr_normal_joint(const StochasticGame& g, double tol = 1e-9);

bool unstructured_membership(const StochasticGame& g, const UnstructuredAllocation& alloc,
                             double tol);

/// Undominated SSD-core membership for normal (d,r): no coalition aggregate
/// strictly dominated by its coalition value.
bool udc_membership_dr(const StochasticGame& g, const PayoffVector& d, const PayoffVector& r,
                       double tol);

/// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi).
double min_symmetric_eigenvalue(std::vector<std::vector<double>> m);

}  // namespace ssdcore
