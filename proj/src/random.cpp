#include "fairdiv/random.hpp"

#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw DomainError("rng: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

Rational Rng::rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
    const auto den = uniform(1, max_den);
    const auto num = uniform(lo * den, hi * den);
    return Rational(num, den);
}

}  // namespace fairdiv
