#include "ssdcore/stochastic_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssdcore/lp.hpp"
#include "ssdcore/ssd.hpp"

namespace ssdcore {

namespace {

bool ge(double lhs, double rhs, double tol) {
    return lhs >= rhs - tol * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}
bool close(double lhs, double rhs, double tol) {
    return std::fabs(lhs - rhs) <= tol * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

std::vector<double> indicator_row(std::size_t num_vars, std::uint32_t mask, int n,
                                  std::size_t offset = 0, double coeff = 1.0) {
    std::vector<double> c(num_vars, 0.0);
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) c[offset + i] = coeff;
    return c;
}

PayoffVector uniform_simplex(int n) {
    return PayoffVector(n, 1.0 / static_cast<double>(n));
}

}  // namespace

StochasticGame::StochasticGame(int n, std::vector<Distribution> dists_by_mask)
    : n_(n), family_(Family::Normal), dists_(std::move(dists_by_mask)) {
    if (n < 1 || n > kMaxPlayers)
        throw std::invalid_argument("stochastic game: player count out of range");
    if (dists_.size() != (std::size_t{1} << n) - 1)
        throw std::invalid_argument("stochastic game: need a distribution per nonempty coalition");
    family_ = dists_.front().family();
    for (const auto& d : dists_)
        if (d.family() != family_)
            throw FamilyMismatch("stochastic game: all coalitions must share one family");
}

const Distribution& StochasticGame::dist(Coalition s) const {
    if (s.empty() || s.mask >= (1u << n_))
        throw std::invalid_argument("stochastic game: invalid coalition");
    return dists_[s.mask - 1];
}

const Distribution& StochasticGame::grand_dist() const { return dists_.back(); }

StochasticGame StochasticGame::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw DimensionMismatch("relabeled: permutation length != player count");
    std::vector<Distribution> out;
    out.reserve(dists_.size());
    for (std::uint32_t m = 1; m < (1u << n_); ++m) {
        std::uint32_t src = 0;
        for (int i = 0; i < n_; ++i)
            if ((m >> i) & 1u) src |= 1u << perm[i];
        out.push_back(dists_[src - 1]);
    }
    return StochasticGame(n_, std::move(out));
}

// ---- Derived games ---------------------------------------------------------

ClassicalGame mean_game(const StochasticGame& g) {
    std::vector<double> v(std::size_t{1} << g.players(), 0.0);
    for (std::uint32_t m = 1; m < v.size(); ++m) v[m] = g.dist({m}).mean();
    return ClassicalGame(g.players(), std::move(v));
}

ClassicalGame deviation_game(const StochasticGame& g) {
    double sigma_n = std::sqrt(g.grand_dist().variance());
    if (sigma_n <= 0.0)
        throw ZeroGrandVariance("deviation game: grand coalition has zero variance");
    std::vector<double> v(std::size_t{1} << g.players(), 0.0);
    for (std::uint32_t m = 1; m < v.size(); ++m)
        v[m] = std::sqrt(g.dist({m}).variance()) / sigma_n;
    return ClassicalGame(g.players(), std::move(v));
}

ClassicalGame lower_bound_game(const StochasticGame& g) {
    if (g.family() != Family::Uniform)
        throw UnsupportedFamily("lower bound game: defined for the uniform family only");
    std::vector<double> v(std::size_t{1} << g.players(), 0.0);
    for (std::uint32_t m = 1; m < v.size(); ++m) v[m] = g.dist({m}).as<Uniform>().a;
    return ClassicalGame(g.players(), std::move(v));
}

DerivedGames derive_games(const StochasticGame& g) {
    DerivedGames out;
    out.mean_game = mean_game(g);
    if (g.grand_dist().variance() > 0.0) out.deviation_game = deviation_game(g);
    if (g.family() == Family::Uniform) out.lower_bound_game = lower_bound_game(g);
    return out;
}

// ---- Membership ------------------------------------------------------------

namespace {

double common_alpha(const StochasticGame& g) {
    double alpha = g.grand_dist().as<AlphaCutUniform>().alpha;
    for (std::uint32_t m = 1; m < (1u << g.players()); ++m)
        if (std::fabs(g.dist({m}).as<AlphaCutUniform>().alpha - alpha) > 1e-12)
            throw AlphaMismatch("alpha-cut game: coalitions disagree on alpha");
    return alpha;
}

// Closed-form check of x(S) >=_SSD v(S) for one coalition, for the scaled
// (r-type) or shifted-and-scaled ((d,r)-type) aggregate.
struct CoalitionConditions {
    const StochasticGame& g;
    double tol;

    bool r_type(Coalition s, double rs, std::string& why) const {
        const Distribution& vs = g.dist(s);
        const Distribution& vn = g.grand_dist();
        switch (g.family()) {
            case Family::Normal: {
                double mu_n = vn.mean(), sigma_n = std::sqrt(vn.variance());
                if (!ge(rs * mu_n, vs.mean(), tol)) { why = "mean condition"; return false; }
                if (!ge(std::sqrt(vs.variance()), rs * sigma_n, tol)) {
                    why = "deviation condition";
                    return false;
                }
                return true;
            }
            case Family::Uniform: {
                const auto& n = vn.as<Uniform>();
                const auto& sp = vs.as<Uniform>();
                if (!ge(rs * n.a, sp.a, tol)) { why = "lower endpoint condition"; return false; }
                if (!ge(rs * vn.mean(), vs.mean(), tol)) { why = "mean condition"; return false; }
                return true;
            }
            case Family::Gamma: {
                const auto& n = vn.as<Gamma>();
                const auto& sp = vs.as<Gamma>();
                if (!ge(rs * n.k * n.theta, sp.k * sp.theta, tol)) {
                    why = "mean condition";
                    return false;
                }
                if (!ge(rs * n.theta, sp.theta, tol)) { why = "scale condition"; return false; }
                return true;
            }
            case Family::DiscreteUniform: {
                const auto& n = vn.as<DiscreteUniform>();
                const auto& sp = vs.as<DiscreteUniform>();
                if (n.realizations.size() != sp.realizations.size())
                    throw LengthMismatch("discrete uniform game: unequal realization counts");
                double pn = 0.0, ps = 0.0;
                for (std::size_t k = 0; k < n.realizations.size(); ++k) {
                    pn += n.realizations[k];
                    ps += sp.realizations[k];
                    if (!ge(rs * pn, ps, tol)) {
                        why = "prefix sum condition at k=" + std::to_string(k + 1);
                        return false;
                    }
                }
                return true;
            }
            case Family::AlphaCutUniform: {
                double alpha = common_alpha(g);
                const auto& n = vn.as<AlphaCutUniform>();
                const auto& sp = vs.as<AlphaCutUniform>();
                auto m = alpha_cut_ssd_margins(rs * n.a, rs * n.b, sp.a, sp.b, alpha);
                if (!ge(m[0], 0.0, tol)) { why = "lower endpoint condition"; return false; }
                if (!ge(m[1], 0.0, tol)) { why = "endpoint mix condition"; return false; }
                return true;
            }
        }
        return false;
    }

    bool dr_type(Coalition s, double ds, double rs, bool signed_r, std::string& why) const {
        const Distribution& vs = g.dist(s);
        const Distribution& vn = g.grand_dist();
        switch (g.family()) {
            case Family::Normal: {
                if (!ge(ds, vs.mean(), tol)) { why = "mean condition"; return false; }
                if (!ge(vs.variance(), rs * rs * vn.variance(), tol)) {
                    why = "variance condition";
                    return false;
                }
                return true;
            }
            case Family::Uniform: {
                const auto& n = vn.as<Uniform>();
                const auto& sp = vs.as<Uniform>();
                double mu_n = vn.mean();
                if (!ge(ds, vs.mean(), tol)) { why = "mean condition"; return false; }
                // Lower endpoint of d + r*(v(N) - mu_N); for r < 0 the
                // endpoints swap.
                double lower = ds + std::min(rs * (n.a - mu_n), rs * (n.b - mu_n));
                if (!ge(lower, sp.a, tol)) { why = "lower endpoint condition"; return false; }
                return true;
            }
            case Family::AlphaCutUniform: {
                if (rs < -tol)
                    throw IncompatibleAllocationType(
                        "alpha-cut (d,r): negative coalition risk share has no closed form");
                double alpha = common_alpha(g);
                const auto& n = vn.as<AlphaCutUniform>();
                const auto& sp = vs.as<AlphaCutUniform>();
                double mu_n = vn.mean();
                double ax = ds + rs * (n.a - mu_n);
                double bx = ds + rs * (n.b - mu_n);
                auto m = alpha_cut_ssd_margins(ax, bx, sp.a, sp.b, alpha);
                if (!ge(m[0], 0.0, tol)) { why = "lower endpoint condition"; return false; }
                if (!ge(m[1], 0.0, tol)) { why = "endpoint mix condition"; return false; }
                return true;
            }
            default:
                throw IncompatibleAllocationType(
                    std::string("(d,r) allocations unsupported for family ") +
                    vn.family_name() + (signed_r ? " (signed)" : ""));
        }
    }
};

}  // namespace

MembershipReport dc_membership_report(const StochasticGame& g, const Allocation& alloc,
                                      double tol) {
    MembershipReport rep;
    const int n = g.players();
    const std::uint32_t full = (1u << n) - 1u;
    CoalitionConditions cond{g, tol};

    auto run_coalitions = [&](auto&& check_one) {
        rep.member = rep.failure.empty();
        for (std::uint32_t m = 1; m <= full; ++m) {
            CoalitionCheck c{{m}, true, {}};
            if (!check_one(Coalition{m}, c.violated)) {
                c.ok = false;
                rep.member = false;
            }
            rep.checks.push_back(std::move(c));
        }
    };

    if (const auto* a = std::get_if<RAllocation>(&alloc)) {
        if (static_cast<int>(a->r.size()) != n)
            throw DimensionMismatch("r allocation: length != player count");
        for (double ri : a->r)
            if (ri < -tol) { rep.failure = "r must be nonnegative"; break; }
        if (rep.failure.empty() && !close(coalition_sum(a->r, Coalition::full(n)), 1.0, tol))
            rep.failure = "efficiency: r(N) must equal 1";
        run_coalitions([&](Coalition s, std::string& why) {
            return cond.r_type(s, coalition_sum(a->r, s), why);
        });
        return rep;
    }

    const PayoffVector* d = nullptr;
    const PayoffVector* r = nullptr;
    bool signed_r = false;
    if (const auto* a = std::get_if<DRAllocation>(&alloc)) {
        d = &a->d;
        r = &a->r;
    } else if (const auto* a = std::get_if<DRSignedAllocation>(&alloc)) {
        d = &a->d;
        r = &a->r;
        signed_r = true;
    } else {
        const auto& un = std::get<UnstructuredAllocation>(alloc);
        if (g.family() != Family::Normal)
            throw IncompatibleAllocationType(
                "unstructured allocations are defined for normal games only");
        rep.member = unstructured_membership(g, un, tol);
        if (!rep.member) rep.failure = "unstructured conditions violated";
        return rep;
    }

    if (static_cast<int>(d->size()) != n || static_cast<int>(r->size()) != n)
        throw DimensionMismatch("(d,r) allocation: length != player count");
    if (!signed_r)
        for (double ri : *r)
            if (ri < -tol) { rep.failure = "r must be nonnegative"; break; }
    double mu_n = g.grand_dist().mean();
    if (rep.failure.empty() && !close(coalition_sum(*d, Coalition::full(n)), mu_n, tol))
        rep.failure = "efficiency: d(N) must equal E[v(N)]";
    if (rep.failure.empty() && !close(coalition_sum(*r, Coalition::full(n)), 1.0, tol))
        rep.failure = "efficiency: r(N) must equal 1";
    run_coalitions([&](Coalition s, std::string& why) {
        return cond.dr_type(s, coalition_sum(*d, s), coalition_sum(*r, s), signed_r, why);
    });
    return rep;
}

bool dc_membership(const StochasticGame& g, const Allocation& alloc, double tol) {
    return dc_membership_report(g, alloc, tol).member;
}

// ---- Nonemptiness ----------------------------------------------------------

std::optional<DrWitness> dc_nonempty_dr_normal(const StochasticGame& g, double tol) {
    if (g.family() != Family::Normal)
        throw UnsupportedFamily("dc_nonempty_dr_normal: normal family required");
    auto d = core_nonempty(mean_game(g), tol);
    if (!d) return std::nullopt;
    if (g.grand_dist().variance() > 0.0) {
        auto r = cost_core_nonempty(deviation_game(g), tol);
        if (!r) return std::nullopt;
        return DrWitness{std::move(*d), std::move(*r)};
    }
    // Degenerate grand variance: only the mean conditions bind.
    return DrWitness{std::move(*d), uniform_simplex(g.players())};
}

std::optional<DrWitness> dc_nonempty_dr_normal_joint(const StochasticGame& g, double tol) {
    if (g.family() != Family::Normal)
        throw UnsupportedFamily("dc_nonempty_dr_normal_joint: normal family required");
    const int n = g.players();
    const std::uint32_t full = (1u << n) - 1u;
    double sigma_n = std::sqrt(g.grand_dist().variance());

    LinearSystem sys;
    sys.num_vars = 2 * static_cast<std::size_t>(n);  // d then r
    for (int i = 0; i < n; ++i) sys.set_lower(n + i, 0.0);
    for (std::uint32_t m = 1; m < full; ++m) {
        sys.add_ge(indicator_row(sys.num_vars, m, n, 0), g.dist({m}).mean());
        if (sigma_n > 0.0)
            sys.add_le(indicator_row(sys.num_vars, m, n, n, sigma_n),
                       std::sqrt(g.dist({m}).variance()));
    }
    sys.add_eq(indicator_row(sys.num_vars, full, n, 0), g.grand_dist().mean());
    sys.add_eq(indicator_row(sys.num_vars, full, n, n), 1.0);

    LpOutcome out = solve(sys, tol);
    if (!out.feasible) return std::nullopt;
    PayoffVector d(out.witness.begin(), out.witness.begin() + n);
    PayoffVector r(out.witness.begin() + n, out.witness.end());
    return DrWitness{std::move(d), std::move(r)};
}

std::optional<DrWitness> dr_condition_feasible(const ClassicalGame& mean_g,
                                               const ClassicalGame& lower_g, double tol) {
    if (mean_g.players() != lower_g.players())
        throw DimensionMismatch("dr_condition_feasible: games of different size");
    const int n = mean_g.players();
    const std::uint32_t full = (1u << n) - 1u;
    double gap = mean_g.grand_value() - lower_g.grand_value();
    if (gap < -tol) throw InvalidGap("dr_condition_feasible: mu_N < a_N");

    LinearSystem sys;
    sys.num_vars = 2 * static_cast<std::size_t>(n);  // d then r
    for (int i = 0; i < n; ++i) sys.set_lower(n + i, 0.0);
    for (std::uint32_t m = 1; m < full; ++m) {
        sys.add_ge(indicator_row(sys.num_vars, m, n, 0), mean_g.value({m}));
        auto row = indicator_row(sys.num_vars, m, n, 0);
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1u) row[n + i] = -gap;
        sys.add_ge(std::move(row), lower_g.value({m}));
    }
    sys.add_eq(indicator_row(sys.num_vars, full, n, 0), mean_g.grand_value());
    sys.add_eq(indicator_row(sys.num_vars, full, n, n), 1.0);

    LpOutcome out = solve(sys, tol);
    if (!out.feasible) return std::nullopt;
    PayoffVector d(out.witness.begin(), out.witness.begin() + n);
    PayoffVector r(out.witness.begin() + n, out.witness.end());
    return DrWitness{std::move(d), std::move(r)};
}

UniformDecisionReport dc_nonempty_dr_uniform(const StochasticGame& g, double tol) {
    if (g.family() != Family::Uniform)
        throw UnsupportedFamily("dc_nonempty_dr_uniform: uniform family required");
    ClassicalGame mu = mean_game(g);
    ClassicalGame a = lower_bound_game(g);

    UniformDecisionReport rep;
    rep.witness = dr_condition_feasible(mu, a, tol);
    rep.nonempty = rep.witness.has_value();
    rep.mean_core_nonempty = core_nonempty(mu, tol).has_value();
    rep.lower_core_nonempty = core_nonempty(a, tol).has_value();
    rep.lower_convex = a.is_convex();
    bool necessary_ok = !rep.nonempty || (rep.mean_core_nonempty && rep.lower_core_nonempty);
    bool sufficient_ok = !(rep.lower_convex && rep.mean_core_nonempty) || rep.nonempty;
    rep.theorem_consistent = necessary_ok && sufficient_ok;
    return rep;
}

ProcessPResult process_p(const PayoffVector& d, const ClassicalGame& lower_g,
                         double mean_total, double tol) {
    const int n = lower_g.players();
    if (static_cast<int>(d.size()) != n)
        throw DimensionMismatch("process_p: d length != player count");
    if (!lower_g.is_convex()) throw NotConvex("process_p: lower bound game is not convex");
    double gap = mean_total - lower_g.grand_value();
    if (gap < -tol) throw InvalidGap("process_p: mean total below lower bound total");

    const std::uint32_t full = (1u << n) - 1u;
    PayoffVector x = d;
    auto excess = [&](std::uint32_t m) { return coalition_sum(x, {m}) - lower_g.value({m}); };

    const long cap = static_cast<long>(n) << n;
    long steps = 0;
    while (excess(full) > tol) {
        if (++steps > cap)
            throw IterationCapExceeded("process_p: step cap exceeded (precondition violated?)");
        int chosen = -1;
        double step = 0.0;
        for (int k = 0; k < n && chosen < 0; ++k) {
            double min_excess = std::numeric_limits<double>::infinity();
            bool strict = true;
            for (std::uint32_t m = 1; m <= full; ++m) {
                if (!((m >> k) & 1u)) continue;
                double e = excess(m);
                if (e <= tol) { strict = false; break; }
                min_excess = std::min(min_excess, e);
            }
            if (strict) {
                chosen = k;
                step = min_excess;
            }
        }
        if (chosen < 0)
            throw IterationCapExceeded("process_p: no player with strict slack everywhere");
        x[chosen] -= step;
    }

    PayoffVector r;
    if (gap <= tol) {
        r = uniform_simplex(n);
    } else {
        r.resize(n);
        for (int i = 0; i < n; ++i) r[i] = (d[i] - x[i]) / gap;
    }
    return ProcessPResult{std::move(x), std::move(r)};
}

std::optional<DrWitness> dc_nonempty_dr_signed(const StochasticGame& g, double tol) {
    const int n = g.players();
    const std::uint32_t full = (1u << n) - 1u;

    if (g.family() == Family::Normal) {
        double sigma_n = std::sqrt(g.grand_dist().variance());
        LinearSystem sys;
        sys.num_vars = 2 * static_cast<std::size_t>(n);  // d then r, both free
        for (std::uint32_t m = 1; m < full; ++m) {
            sys.add_ge(indicator_row(sys.num_vars, m, n, 0), g.dist({m}).mean());
            if (sigma_n > 0.0) {
                double sigma_s = std::sqrt(g.dist({m}).variance());
                sys.add_le(indicator_row(sys.num_vars, m, n, n, sigma_n), sigma_s);
                sys.add_le(indicator_row(sys.num_vars, m, n, n, -sigma_n), sigma_s);
            }
        }
        sys.add_eq(indicator_row(sys.num_vars, full, n, 0), g.grand_dist().mean());
        sys.add_eq(indicator_row(sys.num_vars, full, n, n), 1.0);
        LpOutcome out = solve(sys, tol);
        if (!out.feasible) return std::nullopt;
        PayoffVector d(out.witness.begin(), out.witness.begin() + n);
        PayoffVector r(out.witness.begin() + n, out.witness.end());
        return DrWitness{std::move(d), std::move(r)};
    }

    if (g.family() == Family::Uniform) {
        ClassicalGame mu = mean_game(g);
        ClassicalGame a = lower_bound_game(g);
        auto d = core_nonempty(mu, tol);
        if (!d) return std::nullopt;
        auto x = core_nonempty(a, tol);
        if (!x) return std::nullopt;
        double gap = mu.grand_value() - a.grand_value();
        DrWitness w;
        w.d = *d;
        if (gap <= tol) {
            w.r = uniform_simplex(n);
        } else {
            w.r.resize(n);
            for (int i = 0; i < n; ++i) w.r[i] = ((*d)[i] - (*x)[i]) / gap;
        }
        if (dc_membership(g, DRSignedAllocation{w.d, w.r}, std::max(tol, 1e-8))) return w;

        // The two-core construction can miss the coalition-wise |r(S)| bound;
        // fall back to the exact LP: d(S) >= mu_S, |r(S)|*gap <= d(S) - a_S.
        LinearSystem sys;
        sys.num_vars = 2 * static_cast<std::size_t>(n);
        for (std::uint32_t m = 1; m < full; ++m) {
            sys.add_ge(indicator_row(sys.num_vars, m, n, 0), mu.value({m}));
            for (double sgn : {1.0, -1.0}) {
                auto row = indicator_row(sys.num_vars, m, n, 0);
                for (int i = 0; i < n; ++i)
                    if ((m >> i) & 1u) row[n + i] = -sgn * gap;
                sys.add_ge(std::move(row), a.value({m}));
            }
        }
        sys.add_eq(indicator_row(sys.num_vars, full, n, 0), mu.grand_value());
        sys.add_eq(indicator_row(sys.num_vars, full, n, n), 1.0);
        LpOutcome out = solve(sys, tol);
        if (!out.feasible) return std::nullopt;
        w.d.assign(out.witness.begin(), out.witness.begin() + n);
        w.r.assign(out.witness.begin() + n, out.witness.end());
        return w;
    }

    throw UnsupportedFamily("dc_nonempty_dr_signed: normal or uniform family required");
}

std::optional<PayoffVector> dc_nonempty_r(const StochasticGame& g, double tol) {
    const int n = g.players();
    const std::uint32_t full = (1u << n) - 1u;
    const Distribution& vn = g.grand_dist();

    LinearSystem sys;
    sys.num_vars = static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) sys.set_lower(i, 0.0);

    for (std::uint32_t m = 1; m < full; ++m) {
        const Distribution& vs = g.dist({m});
        switch (g.family()) {
            case Family::Normal: {
                sys.add_ge(indicator_row(n, m, n, 0, vn.mean()), vs.mean());
                sys.add_le(indicator_row(n, m, n, 0, std::sqrt(vn.variance())),
                           std::sqrt(vs.variance()));
                break;
            }
            case Family::Uniform: {
                sys.add_ge(indicator_row(n, m, n, 0, vn.mean()), vs.mean());
                sys.add_ge(indicator_row(n, m, n, 0, vn.as<Uniform>().a), vs.as<Uniform>().a);
                break;
            }
            case Family::DiscreteUniform: {
                const auto& rn = vn.as<DiscreteUniform>().realizations;
                const auto& rs = vs.as<DiscreteUniform>().realizations;
                if (rn.size() != rs.size())
                    throw LengthMismatch("dc_nonempty_r: unequal realization counts");
                double pn = 0.0, ps = 0.0;
                for (std::size_t k = 0; k < rn.size(); ++k) {
                    pn += rn[k];
                    ps += rs[k];
                    sys.add_ge(indicator_row(n, m, n, 0, pn), ps);
                }
                break;
            }
            case Family::Gamma: {
                const auto& gn = vn.as<Gamma>();
                const auto& gs = vs.as<Gamma>();
                sys.add_ge(indicator_row(n, m, n, 0, gn.k * gn.theta), gs.k * gs.theta);
                sys.add_ge(indicator_row(n, m, n, 0, gn.theta), gs.theta);
                break;
            }
            default:
                throw UnsupportedFamily("dc_nonempty_r: unsupported family");
        }
    }
    sys.add_eq(indicator_row(n, full, n), 1.0);

    LpOutcome out = solve(sys, tol);
    if (!out.feasible) return std::nullopt;
    return out.witness;
}

double min_symmetric_eigenvalue(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 0.0;
    // Cyclic Jacobi rotations.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(m[p][q]) < 1e-300) continue;
                double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    double lo = m[0][0];
    for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, m[i][i]);
    return lo;
}

bool unstructured_membership(const StochasticGame& g, const UnstructuredAllocation& alloc,
                             double tol) {
    if (g.family() != Family::Normal)
        throw UnsupportedFamily("unstructured_membership: normal family required");
    const int n = g.players();
    if (static_cast<int>(alloc.mean.size()) != n ||
        static_cast<int>(alloc.cov.size()) != n)
        throw DimensionMismatch("unstructured allocation: dimension != player count");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(alloc.cov[i].size()) != n)
            throw DimensionMismatch("unstructured allocation: covariance is not square");
        for (int j = 0; j < n; ++j)
            if (std::fabs(alloc.cov[i][j] - alloc.cov[j][i]) > 1e-9)
                throw NotSymmetric("unstructured allocation: covariance is not symmetric");
    }

    if (min_symmetric_eigenvalue(alloc.cov) < -tol) return false;

    const std::uint32_t full = (1u << n) - 1u;
    auto cov_sum = [&](std::uint32_t m) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (((m >> i) & 1u) && ((m >> j) & 1u)) s += alloc.cov[i][j];
        return s;
    };

    if (!close(coalition_sum(alloc.mean, {full}), g.grand_dist().mean(), tol)) return false;
    if (!close(cov_sum(full), g.grand_dist().variance(), tol)) return false;
    for (std::uint32_t m = 1; m < full; ++m) {
        if (!ge(coalition_sum(alloc.mean, {m}), g.dist({m}).mean(), tol)) return false;
        if (!ge(g.dist({m}).variance(), cov_sum(m), tol)) return false;
    }
    return true;
}

bool udc_membership_dr(const StochasticGame& g, const PayoffVector& d, const PayoffVector& r,
                       double tol) {
    if (g.family() != Family::Normal)
        throw UnsupportedFamily("udc_membership_dr: normal family required");
    const int n = g.players();
    if (static_cast<int>(d.size()) != n || static_cast<int>(r.size()) != n)
        throw DimensionMismatch("udc_membership_dr: length != player count");

    double mu_n = g.grand_dist().mean();
    double var_n = g.grand_dist().variance();
    if (!close(coalition_sum(d, Coalition::full(n)), mu_n, tol)) return false;
    if (!close(coalition_sum(r, Coalition::full(n)), 1.0, tol)) return false;

    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t m = 1; m <= full; ++m) {
        double ds = coalition_sum(d, {m});
        double rs = coalition_sum(r, {m});
        Distribution xs{Normal{ds, rs * rs * var_n}};
        // Strict dominance of v(S) over x(S): weak dominance one way, failure
        // the other way.
        bool v_dom_x = dominates_closed_form(g.dist({m}), xs);
        bool x_dom_v = dominates_closed_form(xs, g.dist({m}));
        if (v_dom_x && !x_dom_v) return false;
    }
    return true;
}

}  // namespace ssdcore
