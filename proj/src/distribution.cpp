#include "ssdcore/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ssdcore {

namespace detail {

double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Series expansion, valid for x < a + 1.
static double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
static double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

}  // namespace detail

Distribution::Distribution(Normal d) : value_(d) { validate(); }
Distribution::Distribution(Uniform d) : value_(d) { validate(); }
Distribution::Distribution(Gamma d) : value_(d) { validate(); }
Distribution::Distribution(DiscreteUniform d) : value_(std::move(d)) {
    auto& du = std::get<DiscreteUniform>(value_);
    std::sort(du.realizations.begin(), du.realizations.end());
    validate();
}
Distribution::Distribution(AlphaCutUniform d) : value_(d) { validate(); }

void Distribution::validate() const {
    if (auto* n = std::get_if<Normal>(&value_)) {
        if (!(n->sigma2 >= 0.0) || !std::isfinite(n->mu) || !std::isfinite(n->sigma2))
            throw std::invalid_argument("normal: require finite mu and sigma2 >= 0");
    } else if (auto* u = std::get_if<Uniform>(&value_)) {
        if (!(u->a < u->b) || !std::isfinite(u->a) || !std::isfinite(u->b))
            throw std::invalid_argument("uniform: require a < b");
    } else if (auto* g = std::get_if<Gamma>(&value_)) {
        if (!(g->k > 0.0) || !(g->theta > 0.0))
            throw std::invalid_argument("gamma: require k > 0 and theta > 0");
    } else if (auto* du = std::get_if<DiscreteUniform>(&value_)) {
        if (du->realizations.empty())
            throw std::invalid_argument("discrete uniform: realizations must be nonempty");
        for (double v : du->realizations)
            if (!std::isfinite(v)) throw std::invalid_argument("discrete uniform: nonfinite realization");
    } else if (auto* ac = std::get_if<AlphaCutUniform>(&value_)) {
        if (!(ac->a < ac->b)) throw std::invalid_argument("alpha-cut uniform: require a < b");
        if (!(ac->alpha > 0.0 && ac->alpha < 1.0))
            throw std::invalid_argument("alpha-cut uniform: require alpha in (0,1)");
    }
}

Family Distribution::family() const {
    if (is<Normal>()) return Family::Normal;
    if (is<Uniform>()) return Family::Uniform;
    if (is<Gamma>()) return Family::Gamma;
    if (is<DiscreteUniform>()) return Family::DiscreteUniform;
    return Family::AlphaCutUniform;
}

const char* Distribution::family_name() const {
    switch (family()) {
        case Family::Normal: return "normal";
        case Family::Uniform: return "uniform";
        case Family::Gamma: return "gamma";
        case Family::DiscreteUniform: return "discrete_uniform";
        case Family::AlphaCutUniform: return "alpha_cut_uniform";
    }
    return "?";
}

double Distribution::mean() const {
    if (auto* n = std::get_if<Normal>(&value_)) return n->mu;
    if (auto* u = std::get_if<Uniform>(&value_)) return 0.5 * (u->a + u->b);
    if (auto* g = std::get_if<Gamma>(&value_)) return g->k * g->theta;
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) {
        double s = std::accumulate(du->realizations.begin(), du->realizations.end(), 0.0);
        return s / static_cast<double>(du->realizations.size());
    }
    const auto& ac = std::get<AlphaCutUniform>(value_);
    // Continuous mass alpha spread uniformly over [a,b], atom 1-alpha at b.
    return ac.alpha * 0.5 * (ac.a + ac.b) + (1.0 - ac.alpha) * ac.b;
}

double Distribution::variance() const {
    if (auto* n = std::get_if<Normal>(&value_)) return n->sigma2;
    if (auto* u = std::get_if<Uniform>(&value_)) {
        double w = u->b - u->a;
        return w * w / 12.0;
    }
    if (auto* g = std::get_if<Gamma>(&value_)) return g->k * g->theta * g->theta;
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) {
        double m = mean();
        double s = 0.0;
        for (double v : du->realizations) s += (v - m) * (v - m);
        return s / static_cast<double>(du->realizations.size());
    }
    const auto& ac = std::get<AlphaCutUniform>(value_);
    double m2 = ac.alpha * (ac.a * ac.a + ac.a * ac.b + ac.b * ac.b) / 3.0 +
                (1.0 - ac.alpha) * ac.b * ac.b;
    double m = mean();
    return m2 - m * m;
}

double Distribution::cdf(double x) const {
    if (auto* n = std::get_if<Normal>(&value_)) {
        if (n->sigma2 == 0.0) return x >= n->mu ? 1.0 : 0.0;
        return detail::std_normal_cdf((x - n->mu) / std::sqrt(n->sigma2));
    }
    if (auto* u = std::get_if<Uniform>(&value_)) {
        if (x <= u->a) return 0.0;
        if (x >= u->b) return 1.0;
        return (x - u->a) / (u->b - u->a);
    }
    if (auto* g = std::get_if<Gamma>(&value_)) {
        return detail::gamma_p(g->k, x / g->theta);
    }
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) {
        auto it = std::upper_bound(du->realizations.begin(), du->realizations.end(), x);
        return static_cast<double>(it - du->realizations.begin()) /
               static_cast<double>(du->realizations.size());
    }
    const auto& ac = std::get<AlphaCutUniform>(value_);
    if (x < ac.a) return 0.0;
    if (x >= ac.b) return 1.0;
    return (x - ac.a) / (ac.b - ac.a) * ac.alpha;
}

double Distribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile: require p in (0,1)");
    if (auto* u = std::get_if<Uniform>(&value_)) return u->a + p * (u->b - u->a);
    if (is<DiscreteUniform>() || is<AlphaCutUniform>())
        throw UnsupportedFamily(std::string("quantile: unsupported family ") + family_name());
    if (auto* n = std::get_if<Normal>(&value_)) {
        if (n->sigma2 == 0.0) return n->mu;
    }

    // Bisection on the CDF. Bracket by geometric expansion around the mean.
    double sd = std::sqrt(std::max(variance(), 1e-12));
    double lo = mean() - sd, hi = mean() + sd;
    if (is<Gamma>()) lo = 0.0;
    double step = sd;
    while (cdf(lo) > p && std::isfinite(lo)) { step *= 2.0; lo -= step; }
    step = sd;
    while (cdf(hi) < p && std::isfinite(hi)) { step *= 2.0; hi += step; }
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

Distribution Distribution::affine_image(double d, double r) const {
    if (!is<Normal>() && r < 0.0)
        throw NegativeScale(std::string("affine_image: r < 0 for family ") + family_name());
    if (auto* n = std::get_if<Normal>(&value_)) {
        return Normal{d, r * r * n->sigma2};
    }
    if (auto* u = std::get_if<Uniform>(&value_)) {
        double m = mean();
        if (r == 0.0) throw std::invalid_argument("affine_image: degenerate uniform (r = 0)");
        return Uniform{d + r * (u->a - m), d + r * (u->b - m)};
    }
    if (auto* g = std::get_if<Gamma>(&value_)) {
        double m = mean();
        double scale = std::max({1.0, std::fabs(d), std::fabs(m)});
        if (std::fabs(d - r * m) > 1e-9 * scale)
            throw NonScaleFamily("affine_image: gamma admits pure scaling only (d must equal r * mean)");
        if (r == 0.0) throw std::invalid_argument("affine_image: degenerate gamma (r = 0)");
        return Gamma{g->k, r * g->theta};
    }
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) {
        double m = mean();
        std::vector<double> out;
        out.reserve(du->realizations.size());
        for (double v : du->realizations) out.push_back(d + r * (v - m));
        return DiscreteUniform{std::move(out)};
    }
    const auto& ac = std::get<AlphaCutUniform>(value_);
    double m = mean();
    if (r == 0.0) throw std::invalid_argument("affine_image: degenerate alpha-cut uniform (r = 0)");
    return AlphaCutUniform{d + r * (ac.a - m), d + r * (ac.b - m), ac.alpha};
}

bool Distribution::bounded_support() const {
    return is<Uniform>() || is<DiscreteUniform>() || is<AlphaCutUniform>();
}

double Distribution::support_lower(double tail_quantile) const {
    if (auto* u = std::get_if<Uniform>(&value_)) return u->a;
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) return du->realizations.front();
    if (auto* ac = std::get_if<AlphaCutUniform>(&value_)) return ac->a;
    if (auto* n = std::get_if<Normal>(&value_); n && n->sigma2 == 0.0) return n->mu;
    if (is<Gamma>()) return 0.0;
    return quantile(tail_quantile);
}

double Distribution::support_upper(double tail_quantile) const {
    if (auto* u = std::get_if<Uniform>(&value_)) return u->b;
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) return du->realizations.back();
    if (auto* ac = std::get_if<AlphaCutUniform>(&value_)) return ac->b;
    if (auto* n = std::get_if<Normal>(&value_); n && n->sigma2 == 0.0) return n->mu;
    return quantile(1.0 - tail_quantile);
}

std::vector<double> Distribution::breakpoints() const {
    if (auto* u = std::get_if<Uniform>(&value_)) return {u->a, u->b};
    if (auto* ac = std::get_if<AlphaCutUniform>(&value_)) return {ac->a, ac->b};
    if (auto* du = std::get_if<DiscreteUniform>(&value_)) return du->realizations;
    if (auto* n = std::get_if<Normal>(&value_); n && n->sigma2 == 0.0) return {n->mu};
    if (is<Gamma>()) return {0.0};
    return {};
}

}  // namespace ssdcore
