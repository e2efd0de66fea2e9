#include "l1dist/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace l1dist {

namespace {

constexpr double two_pow_minus_53 = 1.0 / 9007199254740992.0;

double to_unit(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * two_pow_minus_53;
}

void fill_chunk(const SampleSpec& spec, std::size_t chunk, std::span<double> out)
{
    RandomStream stream(spec.seed, chunk_stream_id(spec.family, chunk));
    std::vector<double> p(spec.dim);
    std::vector<double> q(spec.dim);
    for (double& d : out) {
        for (double& x : p) x = stream.next_uniform();
        for (double& x : q) x = stream.next_uniform();
        d = l1_kernel(p, q);
    }
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id)
{
}

void RandomStream::refill() noexcept
{
    Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                            static_cast<std::uint32_t>(block_ >> 32),
                            static_cast<std::uint32_t>(stream_id_),
                            static_cast<std::uint32_t>(stream_id_ >> 32)};
    Philox4x32::Key key{static_cast<std::uint32_t>(seed_),
                        static_cast<std::uint32_t>(seed_ >> 32)};
    auto r = Philox4x32::apply(ctr, key);
    buffer_[0] = (std::uint64_t{r[1]} << 32) | r[0];
    buffer_[1] = (std::uint64_t{r[3]} << 32) | r[2];
    ++block_;
}

std::uint64_t RandomStream::next_u64() noexcept
{
    auto slot = drawn_ & 1u;
    if (slot == 0) {
        refill();
    }
    ++drawn_;
    return buffer_[slot];
}

double RandomStream::next_uniform() noexcept
{
    return to_unit(next_u64());
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t stream_id) noexcept
{
    return RandomStream(seed, stream_id);
}

Point generate_point(RandomStream& stream, std::size_t dim)
{
    if (dim == 0) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    std::vector<double> coords(dim);
    for (double& x : coords) x = stream.next_uniform();
    return Point(std::move(coords));
}

std::uint64_t chunk_stream_id(std::uint32_t family, std::uint64_t chunk) noexcept
{
    return (std::uint64_t{family} << 32) | (chunk & 0xFFFFFFFFull);
}

void SampleSpec::validate() const
{
    if (dim == 0) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    if (num_pairs == 0) {
        throw std::invalid_argument("num_pairs must be at least 1");
    }
    if ((num_pairs - 1) / chunk_pairs > 0xFFFFFFFFull) {
        throw std::invalid_argument("num_pairs exceeds the per-family chunk range");
    }
}

std::vector<double> sample_distances(const SampleSpec& spec, unsigned workers)
{
    spec.validate();
    std::vector<double> out(spec.num_pairs);
    const std::size_t num_chunks = (spec.num_pairs + chunk_pairs - 1) / chunk_pairs;

    auto chunk_span = [&](std::size_t c) {
        std::size_t begin = c * chunk_pairs;
        std::size_t len = std::min(chunk_pairs, spec.num_pairs - begin);
        return std::span<double>(out).subspan(begin, len);
    };

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, num_chunks));

    if (workers <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) fill_chunk(spec, c, chunk_span(c));
        return out;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < num_chunks; c = next++) {
                    fill_chunk(spec, c, chunk_span(c));
                }
            });
        }
    }
    return out;
}

}  // namespace l1dist
