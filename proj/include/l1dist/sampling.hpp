#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1dist/metric.hpp"
#include "l1dist/philox.hpp"

namespace l1dist {

/**
 * Counter-based uniform stream.
 *
 * The Philox key is the 64-bit seed; the counter holds a 64-bit block index
 * in its low words and the 64-bit stream id in its high words, so distinct
 * (seed, stream_id) pairs never share a block. Each block yields two
 * doubles on [0,1) built from 53 random bits.
 */
class RandomStream
{
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of uniforms drawn so far.
    std::uint64_t position() const noexcept { return drawn_; }

    /// One uniform on [0,1).
    double next_uniform() noexcept;
    /// Raw 64-bit output backing next_uniform's next value.
    std::uint64_t next_u64() noexcept;

  private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::uint64_t drawn_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
};

RandomStream derive_stream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

/// Point with dim independent U[0,1) coordinates; consumes exactly dim draws.
Point generate_point(RandomStream& stream, std::size_t dim);

/// Recipe for one Monte Carlo run.
struct SampleSpec
{
    std::size_t dim = 1;
    std::size_t num_pairs = 1;
    std::uint64_t seed = 0;
    /// Substream family; chunk c draws from stream id (family << 32) | c.
    std::uint32_t family = 0;

    /// Throws std::invalid_argument when dim or num_pairs is zero.
    void validate() const;
};

/// Pairs per chunk.
inline constexpr std::size_t chunk_pairs = 1024;

/**
 * spec.num_pairs Manhattan distances between fresh uniform point pairs.
 *
 * Within a chunk pair j draws P then Q, each dim uniforms. The result does
 * not depend on `workers`; 0 means hardware concurrency.
 */
std::uint64_t chunk_stream_id(std::uint32_t family, std::uint64_t chunk) noexcept;

std::vector<double> sample_distances(const SampleSpec& spec, unsigned workers = 1);

}  // namespace l1dist
