#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l1dist {

/// Raised when two points (or a pair inside a batch) disagree on dimension.
class DimensionMismatch : public std::invalid_argument
{
  public:
    DimensionMismatch(std::size_t lhs, std::size_t rhs);
    DimensionMismatch(std::size_t pair_index, std::size_t lhs, std::size_t rhs);

    std::size_t lhs_dim() const noexcept { return lhs_; }
    std::size_t rhs_dim() const noexcept { return rhs_; }

  private:
    std::size_t lhs_;
    std::size_t rhs_;
};

/**
 * A point of the unit hypercube [0,1]^n.
 *
 * Construction rejects empty coordinate lists and any coordinate outside
 * [0,1] (NaN included). Immutable afterwards.
 */
class Point
{
  public:
    explicit Point(std::vector<double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    std::span<const double> coords() const noexcept { return coords_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }

    friend bool operator==(const Point&, const Point&) = default;

  private:
    std::vector<double> coords_;
};

/// Unchecked L1 kernel over equal-length spans, sequential double summation.
inline double l1_kernel(std::span<const double> p, std::span<const double> q) noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double d = p[i] - q[i];
        sum += d < 0.0 ? -d : d;
    }
    return sum;
}

/// Sum of absolute coordinate differences. Throws DimensionMismatch.
double manhattan_distance(const Point& p, const Point& q);

using PointPair = std::pair<Point, Point>;

/// Element i is manhattan_distance(pairs[i]); a mismatch reports its index.
std::vector<double> batch_distances(std::span<const PointPair> pairs);

}  // namespace l1dist
