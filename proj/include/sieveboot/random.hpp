#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sieveboot {

/// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3"). A stream is the pair (key, counter-high);
/// the low 64 bits of the counter are the position within the stream.
///
/// Derived quantities, fixed forever so acceptance runs stay reproducible:
///   uniform()  = ((u64 >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
///   normal()   = Phi^{-1}(uniform()) by inverse CDF (Boost erfc_inv)
///   index(n)   = floor(uniform() * n)
/// where u64 is the next 64-bit word, assembled from two consecutive 32-bit
/// Philox outputs (low word first).
class RandomStream {
public:
    RandomStream(std::uint64_t key, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;
    double normal();
    std::size_t index(std::size_t n) noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    void refill() noexcept;

    std::uint64_t key_;
    std::uint64_t stream_id_;
    std::uint64_t position_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int used_ = 4;
};

/// Raw Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Purpose tags that separate the streams of one replication.
enum class StreamPurpose : std::uint64_t {
    simulate = 1,
    bootstrap = 2,
};

/// Stream for replication `replication` and a purpose; `label` further
/// separates bootstrap streams by method so that adding a method never
/// shifts an existing one.
RandomStream replication_stream(std::uint64_t master_seed, std::uint64_t replication,
                                StreamPurpose purpose, std::string_view label = {});

/// 64-bit FNV-1a, used to turn method labels into stream tags.
std::uint64_t fnv1a64(std::string_view text) noexcept;

}  // namespace sieveboot
