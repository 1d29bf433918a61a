#include "ssdcore/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssdcore {

void LinearSystem::add_le(std::vector<double> coeffs, double rhs) {
    inequalities.push_back({std::move(coeffs), Rel::Le, rhs});
}
void LinearSystem::add_ge(std::vector<double> coeffs, double rhs) {
    inequalities.push_back({std::move(coeffs), Rel::Ge, rhs});
}
void LinearSystem::add_eq(std::vector<double> coeffs, double rhs) {
    equalities.push_back({std::move(coeffs), rhs});
}
void LinearSystem::set_lower(std::size_t var, double bound) {
    if (lower.empty()) lower.assign(num_vars, std::nullopt);
    lower[var] = bound;
}
void LinearSystem::set_minimize(std::vector<double> coeffs) {
    objective = std::move(coeffs);
    has_objective = true;
    maximize = false;
}
void LinearSystem::set_maximize(std::vector<double> coeffs) {
    objective = std::move(coeffs);
    has_objective = true;
    maximize = true;
}

namespace {

constexpr double kPivotEps = 1e-10;
constexpr double kSlackCap = 1e6;

// Standard form: maximize cost . y  s.t.  rows . y = rhs,  y >= 0.
struct StdProblem {
    std::size_t ncols = 0;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<double> cost;
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
    SimplexStatus status;
    std::vector<double> y;
    double value = 0.0;
};

// Full-tableau two-phase simplex, Bland's rule throughout.
SimplexResult run_simplex(const StdProblem& p, double tol) {
    const std::size_t m = p.rows.size();
    const std::size_t n = p.ncols;
    const std::size_t width = n + m;  // artificials appended

    std::vector<std::vector<double>> t(m, std::vector<double>(width + 1, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        double sign = p.rhs[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * p.rows[i][j];
        t[i][n + i] = 1.0;
        t[i][width] = sign * p.rhs[i];
        basis[i] = n + i;
    }

    auto pivot = [&](std::size_t row, std::size_t col, std::vector<double>& obj) {
        double piv = t[row][col];
        for (double& v : t[row]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || std::fabs(t[i][col]) < kPivotEps * 1e-3) continue;
            double f = t[i][col];
            for (std::size_t j = 0; j <= width; ++j) t[i][j] -= f * t[row][j];
        }
        double f = obj[col];
        if (std::fabs(f) > 0.0)
            for (std::size_t j = 0; j <= width; ++j) obj[j] -= f * t[row][j];
        basis[row] = col;
    };

    // Bland: entering = smallest eligible index, leaving = min ratio with the
    // smallest basis index on ties.
    auto iterate = [&](std::vector<double>& obj, std::size_t active_cols) -> bool {
        for (;;) {
            std::size_t enter = width + 1;
            for (std::size_t j = 0; j < active_cols; ++j) {
                if (obj[j] > kPivotEps) { enter = j; break; }
            }
            if (enter > width) return true;  // optimal
            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= kPivotEps) continue;
                double ratio = t[i][width] / t[i][enter];
                if (ratio < best_ratio - kPivotEps ||
                    (ratio < best_ratio + kPivotEps &&
                     (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == m) return false;  // unbounded
            pivot(leave, enter, obj);
        }
    };

    // Phase 1: maximize -sum(artificials).
    std::vector<double> obj1(width + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= width; ++j)
            if (j < n || j == width) obj1[j] += t[i][j];
    iterate(obj1, n);  // artificials never re-enter
    // Residual artificial mass is judged relative to the problem's magnitude;
    // pivoting through large entries (e.g. slack caps) leaves roundoff well
    // above any absolute cutoff.
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) scale += std::fabs(p.rhs[i]);
    if (obj1[width] > tol * scale) return {SimplexStatus::Infeasible, {}, 0.0};

    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(t[i][j]) > kPivotEps) { col = j; break; }
        if (col < n) {
            pivot(i, col, obj1);
        } else {
            // Redundant row; neutralize it.
            for (std::size_t j = 0; j <= width; ++j) t[i][j] = 0.0;
            t[i][basis[i]] = 1.0;
        }
    }

    // Phase 2 objective: reduced costs from scratch against the current basis.
    std::vector<double> obj2(width + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) obj2[j] = p.cost[j];
    for (std::size_t i = 0; i < m; ++i) {
        double cb = basis[i] < n ? p.cost[basis[i]] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= width; ++j) obj2[j] -= cb * t[i][j];
    }
    // The value entry of obj2 is never read; the optimum is recomputed from
    // the basic solution below.
    if (!iterate(obj2, n)) return {SimplexStatus::Unbounded, {}, 0.0};

    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) y[basis[i]] = t[i][width];
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += p.cost[j] * y[j];
    return {SimplexStatus::Optimal, std::move(y), value};
}

struct VarMap {
    std::size_t pos = 0;                 // column of the positive part
    std::size_t neg = std::size_t(-1);   // column of the negative part (free vars)
    double offset = 0.0;                 // x = offset + y_pos - y_neg
};

LpOutcome solve_with_objective(const LinearSystem& in, double tol) {
    LinearSystem sys = in;
    const std::size_t nv = sys.num_vars;

    // Upper bounds become explicit rows; only lower bounds are substituted.
    if (!sys.upper.empty()) {
        for (std::size_t j = 0; j < nv; ++j) {
            if (!sys.upper[j]) continue;
            std::vector<double> c(nv, 0.0);
            c[j] = 1.0;
            sys.add_le(std::move(c), *sys.upper[j]);
        }
    }

    std::vector<VarMap> vm(nv);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        bool has_lower = !sys.lower.empty() && sys.lower[j].has_value();
        vm[j].pos = ncols++;
        if (has_lower) {
            vm[j].offset = *sys.lower[j];
        } else {
            vm[j].neg = ncols++;
        }
    }

    StdProblem p;
    auto transform_row = [&](const std::vector<double>& coeffs, double rhs,
                             std::vector<double>& out) -> double {
        out.assign(ncols, 0.0);
        double r = rhs;
        for (std::size_t j = 0; j < nv; ++j) {
            double c = j < coeffs.size() ? coeffs[j] : 0.0;
            if (c == 0.0) continue;
            out[vm[j].pos] += c;
            if (vm[j].neg != std::size_t(-1)) out[vm[j].neg] -= c;
            r -= c * vm[j].offset;
        }
        return r;
    };

    std::size_t slack_count = sys.inequalities.size();
    p.ncols = ncols + slack_count;
    std::size_t si = 0;
    for (const auto& ineq : sys.inequalities) {
        std::vector<double> row;
        double r = transform_row(ineq.coeffs, ineq.rhs, row);
        if (ineq.rel == Rel::Ge) {
            for (double& v : row) v = -v;
            r = -r;
        }
        row.resize(p.ncols, 0.0);
        row[ncols + si++] = 1.0;
        p.rows.push_back(std::move(row));
        p.rhs.push_back(r);
    }
    for (const auto& eq : sys.equalities) {
        std::vector<double> row;
        double r = transform_row(eq.coeffs, eq.rhs, row);
        row.resize(p.ncols, 0.0);
        p.rows.push_back(std::move(row));
        p.rhs.push_back(r);
    }

    p.cost.assign(p.ncols, 0.0);
    double const_term = 0.0;
    double dir = sys.maximize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < nv; ++j) {
        double c = j < sys.objective.size() ? sys.objective[j] : 0.0;
        if (c == 0.0) continue;
        p.cost[vm[j].pos] += dir * c;
        if (vm[j].neg != std::size_t(-1)) p.cost[vm[j].neg] -= dir * c;
        const_term += c * vm[j].offset;
    }

    SimplexResult sr = run_simplex(p, tol);
    if (sr.status == SimplexStatus::Infeasible) return {false, {}, 0.0};
    if (sr.status == SimplexStatus::Unbounded) throw Unbounded();

    std::vector<double> x(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        x[j] = vm[j].offset + sr.y[vm[j].pos];
        if (vm[j].neg != std::size_t(-1)) x[j] -= sr.y[vm[j].neg];
    }
    double value = dir * sr.value + const_term;
    return {true, std::move(x), value};
}

double row_violation(const std::vector<double>& coeffs, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        s += (j < coeffs.size() ? coeffs[j] : 0.0) * x[j];
    return s;
}

void verify_witness(const LinearSystem& sys, const std::vector<double>& x, double tol) {
    auto vtol = [&](double rhs) { return 100.0 * tol * std::max(1.0, std::fabs(rhs)); };
    for (const auto& ineq : sys.inequalities) {
        double lhs = row_violation(ineq.coeffs, x);
        bool ok = ineq.rel == Rel::Ge ? lhs >= ineq.rhs - vtol(ineq.rhs)
                                      : lhs <= ineq.rhs + vtol(ineq.rhs);
        if (!ok) throw std::logic_error("lp: witness fails an inequality re-check");
    }
    for (const auto& eq : sys.equalities) {
        double lhs = row_violation(eq.coeffs, x);
        if (std::fabs(lhs - eq.rhs) > vtol(eq.rhs))
            throw std::logic_error("lp: witness fails an equality re-check");
    }
    if (!sys.lower.empty())
        for (std::size_t j = 0; j < sys.num_vars; ++j)
            if (sys.lower[j] && x[j] < *sys.lower[j] - vtol(*sys.lower[j]))
                throw std::logic_error("lp: witness fails a lower bound re-check");
    if (!sys.upper.empty())
        for (std::size_t j = 0; j < sys.num_vars; ++j)
            if (sys.upper[j] && x[j] > *sys.upper[j] + vtol(*sys.upper[j]))
                throw std::logic_error("lp: witness fails an upper bound re-check");
}

}  // namespace

LpOutcome solve(const LinearSystem& sys, double tol) {
    if (sys.has_objective) {
        LpOutcome out = solve_with_objective(sys, tol);
        if (out.feasible) verify_witness(sys, out.witness, tol);
        return out;
    }

    // Max-min-slack feasibility: append t, give every inequality slack >= t.
    LinearSystem aug = sys;
    const std::size_t tvar = sys.num_vars;
    aug.num_vars = tvar + 1;
    if (!aug.lower.empty()) aug.lower.emplace_back(std::nullopt);
    if (!aug.upper.empty()) aug.upper.emplace_back(std::nullopt);
    for (auto& ineq : aug.inequalities) {
        ineq.coeffs.resize(aug.num_vars, 0.0);
        ineq.coeffs[tvar] = ineq.rel == Rel::Ge ? -1.0 : 1.0;
    }
    for (auto& eq : aug.equalities) eq.coeffs.resize(aug.num_vars, 0.0);
    {
        std::vector<double> cap(aug.num_vars, 0.0);
        cap[tvar] = 1.0;
        aug.inequalities.push_back({std::move(cap), Rel::Le, kSlackCap});
    }
    std::vector<double> obj(aug.num_vars, 0.0);
    obj[tvar] = 1.0;
    aug.objective = std::move(obj);
    aug.has_objective = true;
    aug.maximize = true;

    LpOutcome out = solve_with_objective(aug, tol);
    if (!out.feasible) return {false, {}, 0.0};
    double tstar = out.witness[tvar];
    if (tstar < -tol) return {false, {}, tstar};
    out.witness.resize(sys.num_vars);
    out.value = tstar;
    verify_witness(sys, out.witness, tol);
    return out;
}

}  // namespace ssdcore
