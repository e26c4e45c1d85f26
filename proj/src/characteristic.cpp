#include "thetalab/characteristic.hpp"

#include <bit>

#include "thetalab/error.hpp"

namespace thetalab {

HalfCharacteristic::HalfCharacteristic(std::size_t g, std::uint32_t eps, std::uint32_t delta)
    : g_(g), eps_(eps), delta_(delta) {
    if (g == 0 || g > kMaxGenus) {
        throw InvalidInput("characteristic dimension out of range: " + std::to_string(g));
    }
    const std::uint32_t mask = (1U << g) - 1U;
    if ((eps & ~mask) != 0 || (delta & ~mask) != 0) {
        throw InvalidInput("characteristic bits exceed dimension " + std::to_string(g));
    }
}

HalfCharacteristic HalfCharacteristic::from_bits(std::span<const int> eps,
                                                 std::span<const int> delta) {
    if (eps.size() != delta.size()) {
        throw InvalidInput("characteristic halves have different lengths");
    }
    std::uint32_t e = 0;
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if ((eps[i] != 0 && eps[i] != 1) || (delta[i] != 0 && delta[i] != 1)) {
            throw InvalidInput("characteristic entries must be 0 or 1");
        }
        e |= static_cast<std::uint32_t>(eps[i]) << i;
        d |= static_cast<std::uint32_t>(delta[i]) << i;
    }
    return {eps.size(), e, d};
}

int HalfCharacteristic::parity() const { return std::popcount(eps_ & delta_) & 1; }

HalfCharacteristic HalfCharacteristic::operator+(const HalfCharacteristic& other) const {
    if (other.g_ != g_) throw InvalidInput("characteristic dimensions differ");
    return {g_, eps_ ^ other.eps_, delta_ ^ other.delta_};
}

std::string HalfCharacteristic::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < g_; ++i) out += static_cast<char>('0' + eps_bit(i));
    out += ';';
    for (std::size_t i = 0; i < g_; ++i) out += static_cast<char>('0' + delta_bit(i));
    out += ']';
    return out;
}

}  // namespace thetalab
