#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sieveboot {

/// Invalid argument: parameter outside its admissible domain, wrong length,
/// lag out of range, mismatched orders.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed: singular Toeplitz stage, non-convergent
/// series, degenerate variance, singular least-squares design.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure inside one Monte Carlo replication; carries enough to rerun it.
class ReplicationError : public NumericalError {
public:
    ReplicationError(std::size_t replication, std::uint64_t seed, const std::string& what)
        : NumericalError("replication " + std::to_string(replication) + " (seed " +
                         std::to_string(seed) + "): " + what),
          replication_(replication),
          seed_(seed) {}

    std::size_t replication() const noexcept { return replication_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::size_t replication_;
    std::uint64_t seed_;
};

}  // namespace sieveboot
