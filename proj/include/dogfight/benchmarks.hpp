#pragma once

#include "dogfight/core.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace dogfight {

namespace fn {

template <typename Derived>
double sphere(const Eigen::MatrixBase<Derived>& x) {
    return x.squaredNorm();
}

template <typename Derived>
double bent_cigar(const Eigen::MatrixBase<Derived>& x) {
    return x(0) * x(0) + 1e6 * x.tail(x.size() - 1).squaredNorm();
}

template <typename Derived>
double zakharov(const Eigen::MatrixBase<Derived>& x) {
    const double s1 = x.squaredNorm();
    double s2 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s2 += 0.5 * (i + 1) * x(i);
    return s1 + s2 * s2 + s2 * s2 * s2 * s2;
}

template <typename Derived>
double rosenbrock(const Eigen::MatrixBase<Derived>& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        const double a = x(i + 1) - x(i) * x(i);
        const double b = x(i) - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

template <typename Derived>
double rastrigin(const Eigen::MatrixBase<Derived>& x) {
    const double two_pi = 2.0 * std::acos(-1.0);
    double s = 10.0 * x.size();
    for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * x(i) - 10.0 * std::cos(two_pi * x(i));
    return s;
}

template <typename Derived>
double expanded_schaffer_f6(const Eigen::MatrixBase<Derived>& x) {
    const Eigen::Index n = x.size();
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = x(i), b = x((i + 1) % n);
        const double r2 = a * a + b * b;
        const double num = std::sin(std::sqrt(r2));
        const double den = 1.0 + 0.001 * r2;
        s += 0.5 + (num * num - 0.5) / (den * den);
    }
    return s;
}

template <typename Derived>
double lunacek_bi_rastrigin(const Eigen::MatrixBase<Derived>& x) {
    const double n = static_cast<double>(x.size());
    const double mu0 = 2.5, d = 1.0;
    const double s = 1.0 - 1.0 / (2.0 * std::sqrt(n + 20.0) - 8.2);
    const double mu1 = -std::sqrt((mu0 * mu0 - d) / s);
    const double two_pi = 2.0 * std::acos(-1.0);
    double a = 0.0, b = 0.0, c = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        a += (x(i) - mu0) * (x(i) - mu0);
        b += (x(i) - mu1) * (x(i) - mu1);
        c += 1.0 - std::cos(two_pi * (x(i) - mu0));
    }
    return std::min(a, d * n + s * b) + 10.0 * c;
}

template <typename Derived>
double noncontinuous_rastrigin(const Eigen::MatrixBase<Derived>& x) {
    VectorXd y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        y(i) = std::abs(x(i)) <= 0.5 ? x(i) : std::round(2.0 * x(i)) / 2.0;
    return rastrigin(y);
}

template <typename Derived>
double levy(const Eigen::MatrixBase<Derived>& x) {
    const double pi = std::acos(-1.0);
    const Eigen::Index n = x.size();
    auto w = [&](Eigen::Index i) { return 1.0 + (x(i) - 1.0) / 4.0; };
    const double s0 = std::sin(pi * w(0));
    double s = s0 * s0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double wi = w(i);
        const double q = std::sin(pi * wi + 1.0);
        s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * q * q);
    }
    const double wn = w(n - 1);
    const double q = std::sin(2.0 * pi * wn);
    return s + (wn - 1.0) * (wn - 1.0) * (1.0 + q * q);
}

// Modified Schwefel with the optimum moved to the origin.
template <typename Derived>
double schwefel(const Eigen::MatrixBase<Derived>& x) {
    constexpr double shift = 4.209687462275036e+002;
    constexpr double c = 4.189828872724338e+002;
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double z = x(i) + shift;
        if (std::abs(z) <= 500.0) {
            s += z * std::sin(std::sqrt(std::abs(z)));
        } else if (z > 500.0) {
            const double m = 500.0 - std::fmod(z, 500.0);
            s += m * std::sin(std::sqrt(std::abs(m))) - (z - 500.0) * (z - 500.0) / (10000.0 * x.size());
        } else {
            const double m = std::fmod(std::abs(z), 500.0) - 500.0;
            s += m * std::sin(std::sqrt(std::abs(m))) - (z + 500.0) * (z + 500.0) / (10000.0 * x.size());
        }
    }
    return c * x.size() - s;
}

template <typename Derived>
double ackley(const Eigen::MatrixBase<Derived>& x) {
    const double n = static_cast<double>(x.size());
    const double two_pi = 2.0 * std::acos(-1.0);
    double c = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) c += std::cos(two_pi * x(i));
    return -20.0 * std::exp(-0.2 * std::sqrt(x.squaredNorm() / n)) - std::exp(c / n) + 20.0 + std::exp(1.0);
}

template <typename Derived>
double griewank(const Eigen::MatrixBase<Derived>& x) {
    double p = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) p *= std::cos(x(i) / std::sqrt(static_cast<double>(i + 1)));
    return x.squaredNorm() / 4000.0 - p + 1.0;
}

}  // namespace fn

struct BenchmarkFunction {
    std::string name;
    int dimension = 0;
    Bounds bounds;
    double known_optimum = 0.0;
    VectorXd optimum_point;
    std::function<double(const VectorXd&)> objective;

    double operator()(const VectorXd& x) const { return objective(x); }
    Problem problem() const;
};

std::vector<std::string> function_names();
// The ten functions used for head-to-head comparisons (every registered one except sphere and Griewank).
std::vector<std::string> comparison_suite();

BenchmarkFunction make_function(const std::string& name, int dimension);

// f(M (x - o)); the optimum point moves to o.
BenchmarkFunction with_shift_rotation(const BenchmarkFunction& base, const VectorXd& shift, const MatrixXd& rotation);

struct DiversityPoint {
    double diversity;
    double exploration_pct;
    double exploitation_pct;
};
using DiversityTrace = std::vector<DiversityPoint>;

// Mean absolute deviation from the per-dimension median, averaged over dimensions.
double population_diversity(const MatrixXd& positions);
DiversityTrace diversity_trace(const std::vector<MatrixXd>& position_history);

}  // namespace dogfight
