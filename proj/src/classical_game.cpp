#include "ssdcore/classical_game.hpp"

#include <cmath>

#include "ssdcore/lp.hpp"

namespace ssdcore {

std::string Coalition::key(int n) const {
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (!contains(i)) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(i + 1);
    }
    return out;
}

ClassicalGame::ClassicalGame(int n, std::vector<double> values_by_mask)
    : n_(n), values_(std::move(values_by_mask)) {
    if (n < 1 || n > kMaxPlayers) throw std::invalid_argument("game: player count out of range");
    if (values_.size() != (std::size_t{1} << n))
        throw std::invalid_argument("game: need a value for every coalition");
    if (values_[0] != 0.0) throw std::invalid_argument("game: v(empty) must be 0");
}

ClassicalGame ClassicalGame::zero(int n) {
    return ClassicalGame(n, std::vector<double>(std::size_t{1} << n, 0.0));
}

ClassicalGame ClassicalGame::additive(const PayoffVector& r) {
    int n = static_cast<int>(r.size());
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (std::uint32_t m = 1; m < v.size(); ++m) v[m] = coalition_sum(r, {m});
    return ClassicalGame(n, std::move(v));
}

void ClassicalGame::set_value(Coalition s, double v) {
    if (s.empty()) throw std::invalid_argument("game: cannot set v(empty)");
    values_[s.mask] = v;
}

bool ClassicalGame::is_convex() const {
    // Marginal-contribution form of supermodularity.
    const std::uint32_t full = (1u << n_) - 1u;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            std::uint32_t rest = full & ~(1u << i) & ~(1u << j);
            // Enumerate S subseteq N \ {i,j}.
            std::uint32_t s = rest;
            for (;;) {
                double lhs = values_[s | (1u << i)] + values_[s | (1u << j)];
                double rhs = values_[s] + values_[s | (1u << i) | (1u << j)];
                if (lhs > rhs + 1e-12 * std::max(1.0, std::fabs(rhs))) return false;
                if (s == 0) break;
                s = (s - 1) & rest;
            }
        }
    }
    return true;
}

bool ClassicalGame::is_superadditive() const {
    const std::uint32_t full = (1u << n_) - 1u;
    for (std::uint32_t s = 1; s <= full; ++s) {
        std::uint32_t comp = full & ~s;
        for (std::uint32_t t = comp; t != 0; t = (t - 1) & comp) {
            if (values_[s] + values_[t] > values_[s | t] + 1e-12) return false;
        }
    }
    return true;
}

ClassicalGame ClassicalGame::shift_by_additive(const PayoffVector& r, double k) const {
    if (static_cast<int>(r.size()) != n_)
        throw DimensionMismatch("shift_by_additive: vector length != player count");
    std::vector<double> out(values_);
    for (std::uint32_t m = 1; m < out.size(); ++m) out[m] += k * coalition_sum(r, {m});
    return ClassicalGame(n_, std::move(out));
}

bool core_membership(const ClassicalGame& g, const PayoffVector& x, double eps) {
    if (static_cast<int>(x.size()) != g.players())
        throw DimensionMismatch("core_membership: vector length != player count");
    if (eps < 0.0) throw std::invalid_argument("core_membership: eps must be >= 0");
    const std::uint32_t full = (1u << g.players()) - 1u;
    for (std::uint32_t m = 1; m < full; ++m)
        if (coalition_sum(x, {m}) < g.value({m}) - eps) return false;
    return std::fabs(coalition_sum(x, {full}) - g.grand_value()) <= eps;
}

namespace {

LinearSystem core_system(const ClassicalGame& g, bool cost_side) {
    const int n = g.players();
    const std::uint32_t full = (1u << n) - 1u;
    LinearSystem sys;
    sys.num_vars = static_cast<std::size_t>(n);
    for (std::uint32_t m = 1; m < full; ++m) {
        std::vector<double> c(sys.num_vars, 0.0);
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1u) c[i] = 1.0;
        if (cost_side)
            sys.add_le(std::move(c), g.value({m}));
        else
            sys.add_ge(std::move(c), g.value({m}));
    }
    if (cost_side) {
        for (int i = 0; i < n; ++i) {
            std::vector<double> c(sys.num_vars, 0.0);
            c[i] = 1.0;
            sys.add_ge(std::move(c), 0.0);
        }
    }
    sys.add_eq(std::vector<double>(sys.num_vars, 1.0), g.grand_value());
    return sys;
}

}  // namespace

std::optional<PayoffVector> core_nonempty(const ClassicalGame& g, double tol) {
    LpOutcome out = solve(core_system(g, false), tol);
    if (!out.feasible) return std::nullopt;
    return out.witness;
}

std::optional<PayoffVector> cost_core_nonempty(const ClassicalGame& g, double tol) {
    LpOutcome out = solve(core_system(g, true), tol);
    if (!out.feasible) return std::nullopt;
    return out.witness;
}

double core_min_coordinate(const ClassicalGame& g, int player, double tol) {
    if (!core_nonempty(g, tol)) throw EmptyCore("core_min_coordinate: empty core");
    LinearSystem sys = core_system(g, false);
    std::vector<double> obj(sys.num_vars, 0.0);
    obj[static_cast<std::size_t>(player)] = 1.0;
    sys.set_minimize(std::move(obj));
    LpOutcome out = solve(sys, tol);
    if (!out.feasible) throw EmptyCore("core_min_coordinate: empty core");
    return out.value;
}

}  // namespace ssdcore
