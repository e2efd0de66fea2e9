#include "l1dist/metric.hpp"

namespace l1dist {

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) + " vs "
                            + std::to_string(rhs))
    , lhs_(lhs)
    , rhs_(rhs)
{
}

DimensionMismatch::DimensionMismatch(std::size_t pair_index, std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch in pair " + std::to_string(pair_index) + ": "
                            + std::to_string(lhs) + " vs " + std::to_string(rhs))
    , lhs_(lhs)
    , rhs_(rhs)
{
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords))
{
    if (coords_.empty()) {
        throw std::invalid_argument("point must have at least one coordinate");
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        // Negated form so NaN is rejected too.
        if (!(coords_[i] >= 0.0 && coords_[i] <= 1.0)) {
            throw std::out_of_range("coordinate " + std::to_string(i) + " = "
                                    + std::to_string(coords_[i]) + " lies outside [0,1]");
        }
    }
}

double manhattan_distance(const Point& p, const Point& q)
{
    if (p.dim() != q.dim()) {
        throw DimensionMismatch(p.dim(), q.dim());
    }
    return l1_kernel(p.coords(), q.coords());
}

std::vector<double> batch_distances(std::span<const PointPair> pairs)
{
    std::vector<double> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [p, q] = pairs[i];
        if (p.dim() != q.dim()) {
            throw DimensionMismatch(i, p.dim(), q.dim());
        }
        out.push_back(l1_kernel(p.coords(), q.coords()));
    }
    return out;
}

}  // namespace l1dist
