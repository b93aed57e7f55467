#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

/// Seeded generator with platform-independent draws.
///
/// std::uniform_int_distribution and std::shuffle are implementation-defined,
/// so bounded draws are done here directly on top of mt19937_64 to keep
/// traces and reports identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(size) - 1)); }
    bool coin() { return uniform(0, 1) == 1; }

    /// p/q with q uniform in [1, max_den] and p/q in [lo, hi].
    Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den);

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[index(i)]);
        }
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace fairdiv
