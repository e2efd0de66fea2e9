#pragma once

#include <array>
#include <cstdint>

namespace l1dist {

/**
 * Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
 * as easy as 1, 2, 3", SC11). Maps a 128-bit counter and a 64-bit key to
 * 128 random bits; no hidden state.
 */
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr int rounds = 10;

    static constexpr Counter apply(Counter ctr, Key key) noexcept
    {
        for (int r = 0; r < rounds; ++r) {
            if (r > 0) {
                key[0] += weyl0;
                key[1] += weyl1;
            }
            ctr = round(ctr, key);
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t mult0 = 0xD2511F53u;
    static constexpr std::uint32_t mult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t weyl1 = 0xBB67AE85u;

    static constexpr Counter round(const Counter& c, const Key& k) noexcept
    {
        std::uint64_t p0 = std::uint64_t{mult0} * c[0];
        std::uint64_t p1 = std::uint64_t{mult1} * c[2];
        auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        auto lo0 = static_cast<std::uint32_t>(p0);
        auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

}  // namespace l1dist
