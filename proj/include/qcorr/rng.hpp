#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qcorr {

/// Counter-based generator (Philox4x32-10). A stream is fully determined by
/// (seed, stream_id); streams with distinct ids never overlap, so workers can
/// derive independent streams from block indices without coordination.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double next_double();
    /// Uniform on (0, 1]; safe as a log argument.
    double next_open_double();
    /// Standard normal via Box-Muller (pairs cached).
    double next_gaussian();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_lo_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// k weights uniform on the probability simplex (normalized Exp(1) draws).
std::vector<double> simplex_uniform(RngStream& rng, int k);

}  // namespace qcorr
