#pragma once

#include <cstddef>
#include <cstdint>
#include <future>
#include <random>
#include <vector>

namespace eqtk {

/// Random numbers for one fixed block of Monte-Carlo samples.
///
/// Block b of stream s draws from a generator keyed by (seed, s, b), so the
/// sample sequence never depends on how blocks are scheduled across workers.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t block);

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

inline constexpr std::size_t kSamplesPerBlock = 1 << 14;

/// Runs work(block, first_sample, end_sample) for every block of `samples`,
/// on up to `threads` workers, and returns the per-block results in block order.
template <typename Work>
auto run_blocks(std::size_t samples, unsigned threads, Work&& work) {
    using Result = decltype(work(std::size_t{}, std::size_t{}, std::size_t{}));
    const std::size_t blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
    std::vector<Result> results(blocks);
    auto run_range = [&](std::size_t first_block, std::size_t stride) {
        for (std::size_t b = first_block; b < blocks; b += stride) {
            const std::size_t begin = b * kSamplesPerBlock;
            const std::size_t end = std::min(samples, begin + kSamplesPerBlock);
            results[b] = work(b, begin, end);
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, blocks));
    if (workers == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::future<void>> pending;
        for (std::size_t w = 0; w < workers; ++w) pending.push_back(std::async(std::launch::async, run_range, w, workers));
        for (auto& f : pending) f.get();
    }
    return results;
}

}  // namespace eqtk
