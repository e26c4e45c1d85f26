#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace thetalab {

/// Largest dimension for which characteristics and torsion indices are
/// representable (4^g must fit comfortably in 32 bits).
inline constexpr std::size_t kMaxGenus = 12;

/// A half-integer characteristic (ε, δ) ∈ {0,1}^g × {0,1}^g.
///
/// Bit i of `eps` is ε_i, bit i of `delta` is δ_i. The same pair names the
/// 2-torsion point (τε + δ)/2.
class HalfCharacteristic {
public:
    HalfCharacteristic() = default;
    HalfCharacteristic(std::size_t g, std::uint32_t eps, std::uint32_t delta);
    static HalfCharacteristic from_bits(std::span<const int> eps, std::span<const int> delta);
    static HalfCharacteristic zero(std::size_t g) { return {g, 0, 0}; }

    std::size_t genus() const { return g_; }
    std::uint32_t eps() const { return eps_; }
    std::uint32_t delta() const { return delta_; }
    int eps_bit(std::size_t i) const { return static_cast<int>((eps_ >> i) & 1U); }
    int delta_bit(std::size_t i) const { return static_cast<int>((delta_ >> i) & 1U); }

    /// εᵀδ mod 2.
    int parity() const;
    bool is_odd() const { return parity() == 1; }

    /// Componentwise sum mod 2.
    HalfCharacteristic operator+(const HalfCharacteristic& other) const;
    bool operator==(const HalfCharacteristic&) const = default;

    /// "[eps;delta]" with ε_0 first, e.g. "[10;11]".
    std::string to_string() const;

private:
    std::size_t g_ = 0;
    std::uint32_t eps_ = 0;
    std::uint32_t delta_ = 0;
};

}  // namespace thetalab
