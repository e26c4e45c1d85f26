#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/riemann_matrix.hpp"

namespace thetalab {

/// A point of order (dividing) two, x = (τε + δ)/2, kept exactly as bits.
///
/// The index packs δ into the low g bits and ε into the high g bits.
class TorsionPoint {
public:
    TorsionPoint() = default;
    explicit TorsionPoint(HalfCharacteristic chr) : chr_(chr) {}
    static TorsionPoint from_index(std::size_t g, std::uint32_t index);

    const HalfCharacteristic& characteristic() const { return chr_; }
    std::size_t genus() const { return chr_.genus(); }
    std::uint32_t index() const {
        return (chr_.eps() << chr_.genus()) | chr_.delta();
    }

    /// Complex representative (τε + δ)/2.
    CVector to_complex(const RiemannMatrix& tau) const;

    TorsionPoint operator+(const TorsionPoint& other) const {
        return TorsionPoint(chr_ + other.chr_);
    }
    bool operator==(const TorsionPoint&) const = default;

private:
    HalfCharacteristic chr_;
};

struct SymplecticBasis {
    std::vector<TorsionPoint> a;
    std::vector<TorsionPoint> b;
};

/// ⟨(ε,δ),(ε',δ')⟩ = εᵀδ' + ε'ᵀδ mod 2.
int pairing(const TorsionPoint& x, const TorsionPoint& y);

/// a_i = (e_i, 0), b_i = (0, e_i).
SymplecticBasis standard_basis(std::size_t g);

/// Gram matrix of the pairing on (a_1..a_g, b_1..b_g), entries 0/1.
std::vector<std::vector<int>> gram_matrix(const SymplecticBasis& basis);

/// All 4^g torsion points in index order.
std::vector<TorsionPoint> all_torsion_points(std::size_t g);

/// H_b = {(ε, b) : ε ∈ {0,1}^g}, ordered by ε. b = 0 gives H = ⟨a_1..a_g⟩.
std::vector<TorsionPoint> coset(std::size_t g, std::uint32_t b_bits);
std::vector<TorsionPoint> coset(std::span<const int> b_bits);

/// max_b |S ∩ H_b|.
std::size_t largest_coset_intersection(std::size_t g, std::span<const TorsionPoint> subset);

struct ParityCounts {
    std::uint64_t odd = 0;
    std::uint64_t even = 0;
};

/// Counts of odd/even characteristics by enumeration (g <= kMaxGenus).
ParityCounts parity_counts(std::size_t g);

}  // namespace thetalab
