#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "ssdcore/distribution.hpp"

namespace ssdcore {

struct FamilyMismatch : std::runtime_error {
    explicit FamilyMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct AlphaMismatch : std::runtime_error {
    explicit AlphaMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct LengthMismatch : std::runtime_error {
    explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class SsdVerdict { LeftDominates, RightDominates, Equivalent, Incomparable };

const char* to_string(SsdVerdict v);

/// Margins (lhs - rhs) of the two closed-form inequalities for a pair of
/// uniform distributions: lower endpoint and endpoint sum.
std::array<double, 2> uniform_ssd_margins(double a_x, double b_x, double a_y, double b_y);

/// Margins of the two alpha-cut inequalities: lower endpoint and
/// (2-alpha)*b + alpha*a.  At alpha = 1 these coincide with the uniform pair.
std::array<double, 2> alpha_cut_ssd_margins(double a_x, double b_x, double a_y, double b_y,
                                            double alpha);

/// Closed-form within-family test of X >=_SSD Y.
bool dominates_closed_form(const Distribution& x, const Distribution& y);

enum class NumericVerdict { Dominates, DoesNotDominate, Borderline };

struct OracleConfig {
    int grid_points = 20001;
    double tail_quantile = 1e-7;
    double tolerance_scale = 1e-6;  // tau = tolerance_scale * max(1, support width)
};

struct NumericResult {
    NumericVerdict verdict;
    double max_integral;  // max over u of the running CDF-difference integral
    double argmax;        // u attaining it
    double tau;
};

/// Quadrature oracle for X >=_SSD Y: running integral of F_X - F_Y on a grid,
/// midpoint rule per cell with all CDF breakpoints inserted (exact on the
/// piecewise-linear families).  Works across families.
NumericResult dominates_numeric(const Distribution& x, const Distribution& y,
                                const OracleConfig& cfg = {});

/// Symmetrized closed-form comparison.
SsdVerdict compare(const Distribution& x, const Distribution& y);

}  // namespace ssdcore
