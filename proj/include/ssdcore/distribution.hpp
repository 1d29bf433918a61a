#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ssdcore {

/// Thrown when an operation is asked for a family it does not support.
struct UnsupportedFamily : std::runtime_error {
    explicit UnsupportedFamily(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a shift is requested for a pure scale family (gamma).
struct NonScaleFamily : std::runtime_error {
    explicit NonScaleFamily(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown for r < 0 on families that only admit nonnegative scaling.
struct NegativeScale : std::runtime_error {
    explicit NegativeScale(const std::string& what) : std::runtime_error(what) {}
};

struct Normal {
    double mu = 0.0;
    double sigma2 = 1.0;  // variance; 0 admitted as a degenerate flag
};

struct Uniform {
    double a = 0.0;
    double b = 1.0;  // a < b strictly
};

struct Gamma {
    double k = 1.0;      // shape
    double theta = 1.0;  // scale
};

struct DiscreteUniform {
    std::vector<double> realizations;  // sorted ascending, each with probability 1/T
};

/// Uniform CDF scaled by alpha on [a,b) with a jump to 1 at b.
struct AlphaCutUniform {
    double a = 0.0;
    double b = 1.0;
    double alpha = 0.5;  // in (0,1)
};

enum class Family { Normal, Uniform, Gamma, DiscreteUniform, AlphaCutUniform };

class Distribution {
public:
    Distribution(Normal d);
    Distribution(Uniform d);
    Distribution(Gamma d);
    Distribution(DiscreteUniform d);
    Distribution(AlphaCutUniform d);

    Family family() const;
    const char* family_name() const;

    template <typename T>
    const T& as() const { return std::get<T>(value_); }
    template <typename T>
    bool is() const { return std::holds_alternative<T>(value_); }

    double mean() const;
    double variance() const;
    /// Right-continuous CDF.
    double cdf(double x) const;
    /// Inverse CDF for continuous families (normal/uniform/gamma), p in (0,1).
    /// Normal and gamma are inverted numerically to absolute tolerance 1e-10.
    double quantile(double p) const;

    /// Distribution of d + r * (X - mean(X)).
    /// Gamma only supports the pure-scaling case d = r * mean(X).
    Distribution affine_image(double d, double r) const;

    /// Support endpoints used by the numeric SSD oracle; unbounded tails are
    /// truncated at the given quantile levels.
    double support_lower(double tail_quantile) const;
    double support_upper(double tail_quantile) const;
    bool bounded_support() const;

    /// x-values where the CDF is non-smooth (kinks and jumps).
    std::vector<double> breakpoints() const;

private:
    std::variant<Normal, Uniform, Gamma, DiscreteUniform, AlphaCutUniform> value_;
    void validate() const;
};

namespace detail {
/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Standard normal CDF.
double std_normal_cdf(double z);
}  // namespace detail

}  // namespace ssdcore
