#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ssdcore/classical_game.hpp"
#include "ssdcore/distribution.hpp"
#include "ssdcore/stochastic_game.hpp"

namespace testsupport {

using ssdcore::AlphaCutUniform;
using ssdcore::DiscreteUniform;
using ssdcore::Distribution;
using ssdcore::Gamma;
using ssdcore::Normal;
using ssdcore::Uniform;

inline double sample(const Distribution& d, std::mt19937_64& rng) {
    if (d.is<Normal>()) {
        const auto& p = d.as<Normal>();
        return std::normal_distribution<double>(p.mu, std::sqrt(p.sigma2))(rng);
    }
    if (d.is<Uniform>()) {
        const auto& p = d.as<Uniform>();
        return std::uniform_real_distribution<double>(p.a, p.b)(rng);
    }
    if (d.is<Gamma>()) {
        const auto& p = d.as<Gamma>();
        return std::gamma_distribution<double>(p.k, p.theta)(rng);
    }
    if (d.is<DiscreteUniform>()) {
        const auto& r = d.as<DiscreteUniform>().realizations;
        return r[std::uniform_int_distribution<std::size_t>(0, r.size() - 1)(rng)];
    }
    const auto& p = d.as<AlphaCutUniform>();
    if (std::bernoulli_distribution(p.alpha)(rng))
        return std::uniform_real_distribution<double>(p.a, p.b)(rng);
    return p.b;
}

struct MonteCarloStats {
    double mean, mean_se;
    double var, var_se;
};

inline MonteCarloStats mc_stats(const Distribution& d, std::size_t samples,
                                std::mt19937_64& rng) {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    std::vector<double> xs(samples);
    for (auto& x : xs) x = sample(d, rng);
    for (double x : xs) s1 += x;
    double m = s1 / samples;
    for (double x : xs) {
        double c = x - m;
        s2 += c * c;
        s3 += c * c * c;
        s4 += c * c * c * c;
    }
    double var = s2 / samples;
    double m4 = s4 / samples;
    (void)s3;
    MonteCarloStats out;
    out.mean = m;
    out.mean_se = std::sqrt(var / samples);
    out.var = var;
    out.var_se = std::sqrt(std::max(m4 - var * var, 0.0) / samples);
    return out;
}

/// Random classical game with values in [lo, hi], v(empty) = 0.
inline ssdcore::ClassicalGame random_game(int n, double lo, double hi, std::mt19937_64& rng) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    std::uniform_real_distribution<double> u(lo, hi);
    for (std::size_t m = 1; m < v.size(); ++m) v[m] = u(rng);
    return ssdcore::ClassicalGame(n, std::move(v));
}

/// Random convex (supermodular) game: additive part plus a coefficient times
/// |S|^2.
inline ssdcore::ClassicalGame random_convex_game(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> beta(0.0, 1.5);
    std::vector<double> w(n);
    for (auto& wi : w) wi = u(rng);
    double b = beta(rng);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (std::uint32_t m = 1; m < v.size(); ++m) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1u) s += w[i];
        int sz = __builtin_popcount(m);
        v[m] = s + b * sz * sz;
    }
    return ssdcore::ClassicalGame(n, std::move(v));
}

/// Random normal stochastic game with means monotone under inclusion.
inline ssdcore::StochasticGame random_normal_game(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mu_draw(0.0, 10.0);
    std::uniform_real_distribution<double> sd_draw(0.1, 3.0);
    std::vector<double> mu(std::size_t{1} << n, 0.0);
    for (std::uint32_t m = 1; m < mu.size(); ++m) {
        double floor = 0.0;
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1u) floor = std::max(floor, mu[m & ~(1u << i)]);
        mu[m] = std::max(mu_draw(rng), floor);
    }
    std::vector<Distribution> dists;
    for (std::uint32_t m = 1; m < mu.size(); ++m) {
        double sd = sd_draw(rng);
        dists.emplace_back(Normal{mu[m], sd * sd});
    }
    return ssdcore::StochasticGame(n, std::move(dists));
}

/// Random uniform stochastic game; when convex_lower is set, the lower bound
/// game is supermodular and the mean game is a positive additive shift of it
/// (so its core is nonempty too).
inline ssdcore::StochasticGame random_uniform_game(int n, bool convex_lower,
                                                   std::mt19937_64& rng) {
    std::vector<double> a(std::size_t{1} << n, 0.0);
    std::vector<double> mu(std::size_t{1} << n, 0.0);
    if (convex_lower) {
        auto lower = random_convex_game(n, rng);
        std::uniform_real_distribution<double> r_draw(0.1, 1.0);
        std::uniform_real_distribution<double> k_draw(0.5, 3.0);
        std::vector<double> r(n);
        for (auto& ri : r) ri = r_draw(rng);
        double k = k_draw(rng);
        for (std::uint32_t m = 1; m < a.size(); ++m) {
            a[m] = lower.value({m});
            double rs = 0.0;
            for (int i = 0; i < n; ++i)
                if ((m >> i) & 1u) rs += r[i];
            mu[m] = a[m] + k * rs;
        }
    } else {
        std::uniform_real_distribution<double> a_draw(-3.0, 3.0);
        std::uniform_real_distribution<double> gap_draw(0.1, 4.0);
        for (std::uint32_t m = 1; m < a.size(); ++m) {
            a[m] = a_draw(rng);
            mu[m] = a[m] + gap_draw(rng);
        }
    }
    std::vector<Distribution> dists;
    for (std::uint32_t m = 1; m < a.size(); ++m)
        dists.emplace_back(Uniform{a[m], 2.0 * mu[m] - a[m]});
    return ssdcore::StochasticGame(n, std::move(dists));
}

}  // namespace testsupport
