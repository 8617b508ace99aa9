// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/rng.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 block function.
 *
 * Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
 * Output depends only on (counter, key), so any stream can be evaluated in
 * any order on any thread.
 */
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            std::uint64_t const p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            std::uint64_t const p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
            auto const lo0 = static_cast<std::uint32_t>(p0);
            auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
            auto const lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

//---------------------------------------------------------------------------//
/*!
 * Splittable stream over Philox: key is the run seed, the upper counter
 * words name the stream, the lower words count blocks within it.
 *
 * Satisfies UniformRandomBitGenerator. Floating-point draws are computed
 * here rather than through <random> distributions so sequences are
 * identical across standard library implementations.
 */
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    CounterRng() = default;
    CounterRng(std::uint64_t seed, std::uint32_t stream_hi,
               std::uint32_t stream_lo)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)}
        , stream_hi_{stream_hi}
        , stream_lo_{stream_lo}
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()()
    {
        if (buffered_ == 0)
        {
            Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                    static_cast<std::uint32_t>(block_ >> 32),
                                    stream_lo_,
                                    stream_hi_};
            ++block_;
            auto out = Philox4x32::block(ctr, key_);
            buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
            buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
            buffered_ = 2;
        }
        return buffer_[2 - buffered_--];
    }

    //! Uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1p-53; }

    //! Uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    //! Standard normal via Box-Muller (one value per call; no caching)
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
        {
            u1 = uniform();
        }
        double const u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1))
               * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    Philox4x32::Key key_{0, 0};
    std::uint32_t stream_hi_{0};
    std::uint32_t stream_lo_{0};
    std::uint64_t block_{0};
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_{0};
};

//---------------------------------------------------------------------------//
}  // namespace aeropush
