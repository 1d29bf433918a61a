#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssdcore {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct EmptyCore : std::runtime_error {
    explicit EmptyCore(const std::string& what) : std::runtime_error(what) {}
};

/// Subset of the player set 0..n-1, encoded as a bitmask.  Players are
/// 1-based externally (file formats, reports) and 0-based internally.
struct Coalition {
    std::uint32_t mask = 0;

    bool contains(int player) const { return (mask >> player) & 1u; }
    int size() const { return __builtin_popcount(mask); }
    bool empty() const { return mask == 0; }

    static Coalition full(int n) { return {(1u << n) - 1u}; }
    static Coalition singleton(int player) { return {1u << player}; }

    /// "1,3"-style key with ascending 1-based indices.
    std::string key(int n) const;

    bool operator==(const Coalition&) const = default;
};

inline constexpr int kMaxPlayers = 20;

using PayoffVector = std::vector<double>;

inline double coalition_sum(const PayoffVector& x, Coalition s) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (s.contains(static_cast<int>(i))) total += x[i];
    return total;
}

/// Classical TU-game: total map from coalitions to reals, v(empty) = 0.
class ClassicalGame {
public:
    ClassicalGame(int n, std::vector<double> values_by_mask);
    static ClassicalGame zero(int n);
    static ClassicalGame additive(const PayoffVector& r);

    int players() const { return n_; }
    double value(Coalition s) const { return values_[s.mask]; }
    double grand_value() const { return values_.back(); }
    void set_value(Coalition s, double v);
    const std::vector<double>& values_by_mask() const { return values_; }

    bool is_convex() const;
    bool is_superadditive() const;

    /// Game S -> v(S) + K * r(S).
    ClassicalGame shift_by_additive(const PayoffVector& r, double k) const;

private:
    int n_;
    std::vector<double> values_;  // size 2^n, index = mask
};

bool core_membership(const ClassicalGame& g, const PayoffVector& x, double eps);

/// Core witness via max-min-slack linear feasibility, or absent.
std::optional<PayoffVector> core_nonempty(const ClassicalGame& g, double tol = 1e-9);

/// Nonnegative cost core: x >= 0, x(S) <= v(S), x(N) = v(N).
std::optional<PayoffVector> cost_core_nonempty(const ClassicalGame& g, double tol = 1e-9);

/// Minimum of x_i over the core; throws EmptyCore if the core is empty.
double core_min_coordinate(const ClassicalGame& g, int player, double tol = 1e-9);

}  // namespace ssdcore
