#pragma once

// Test-only reference computations. Nothing here calls into the library's
// convolution or moment code.

#include <cmath>
#include <cstddef>
#include <functional>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using HighPrecision = boost::multiprecision::cpp_bin_float_100;

/**
 * Closed form of the n-fold self-convolution of 2(1 - z) on [0,1].
 *
 * Its Laplace transform is 2^n s^{-2n} (s - 1 + e^{-s})^n; expanding the
 * power and inverting term by term gives
 *   f_n(z) = 2^n sum_{j,m} C(n,j) C(n-j,m) (-1)^{n-j-m} (z-j)_+^{2n-m-1} / (2n-m-1)!
 * The alternating sum cancels badly in double, hence 100 digits.
 */
inline double distance_density(std::size_t n, double z)
{
    if (z < 0.0 || z > static_cast<double>(n)) return 0.0;
    const HighPrecision x(z);
    HighPrecision sum = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        HighPrecision shifted = x - HighPrecision(j);
        if (shifted <= 0) continue;
        for (std::size_t m = 0; m + j <= n; ++m) {
            unsigned power = static_cast<unsigned>(2 * n - m - 1);
            HighPrecision term = boost::math::binomial_coefficient<HighPrecision>(static_cast<unsigned>(n), static_cast<unsigned>(j))
                                 * boost::math::binomial_coefficient<HighPrecision>(static_cast<unsigned>(n - j), static_cast<unsigned>(m))
                                 * pow(shifted, power) / boost::math::factorial<HighPrecision>(power);
            sum += ((n - j - m) % 2 == 0) ? term : HighPrecision(-term);
        }
    }
    return static_cast<double>(ldexp(sum, static_cast<int>(n)));
}

/// CDF of the same closed form: each power integrates to (z-j)_+^{p+1}/(p+1)!.
inline double distance_cdf(std::size_t n, double z)
{
    if (z <= 0.0) return 0.0;
    if (z >= static_cast<double>(n)) return 1.0;
    const HighPrecision x(z);
    HighPrecision sum = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        HighPrecision shifted = x - HighPrecision(j);
        if (shifted <= 0) continue;
        for (std::size_t m = 0; m + j <= n; ++m) {
            unsigned power = static_cast<unsigned>(2 * n - m);
            HighPrecision term = boost::math::binomial_coefficient<HighPrecision>(static_cast<unsigned>(n), static_cast<unsigned>(j))
                                 * boost::math::binomial_coefficient<HighPrecision>(static_cast<unsigned>(n - j), static_cast<unsigned>(m))
                                 * pow(shifted, power) / boost::math::factorial<HighPrecision>(power);
            sum += ((n - j - m) % 2 == 0) ? term : HighPrecision(-term);
        }
    }
    return static_cast<double>(ldexp(sum, static_cast<int>(n)));
}

/// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

/// 30-point Gauss-Legendre; exact for polynomials up to degree 59.
inline double integrate_polynomial(const std::function<double(double)>& f, double a, double b)
{
    return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

/// Standard normal CDF by quadrature of the density from 0.
inline double std_normal_cdf(double z)
{
    const double inv_sqrt_2pi = 0.3989422804014327;
    double half = integrate([&](double t) { return inv_sqrt_2pi * std::exp(-0.5 * t * t); }, 0.0, std::abs(z));
    return z >= 0.0 ? 0.5 + half : 0.5 - half;
}

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_survival(double lambda)
{
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
    }
    return 2.0 * sum;
}

/// lambda with Q(lambda) = alpha, by bisection.
inline double kolmogorov_quantile(double alpha)
{
    double lo = 0.3;
    double hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (kolmogorov_survival(mid) > alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
