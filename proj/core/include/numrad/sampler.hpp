#pragma once

// Seeded random matrices.
//
// Stream: xoshiro256** whose state is filled by four successive splitmix64
// outputs of the sample seed. Uniforms take the top 53 bits of an output,
// u = ((x >> 11) + 1) * 2^-53, so u lies in (0, 1]. One Box-Muller draw
// consumes two uniforms (u1, u2) and yields a standard complex Gaussian
//   z = (sqrt(-2 ln u1) cos(2 pi u2) + i sqrt(-2 ln u1) sin(2 pi u2)) / sqrt(2).
// Matrices are filled row by row.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

enum class BaseFamily {
    ginibre,
    hermitian,
    skew,
    positive,
    psd_singular,
    unitary,
    normal_diag,
    nilpotent_jordan,
    shift,
    rank_one,
};

/// A base family times a positive scale factor; scale 1 means unscaled.
struct Family {
    BaseFamily base = BaseFamily::ginibre;
    double scale = 1.0;
    bool scaled = false;

    /// Canonical name, e.g. "positive" or "scaled(ginibre,100)".
    std::string name() const;
    bool operator==(const Family&) const = default;
};

/// Parses "ginibre", "scaled(hermitian,100)", ... Throws BadSpec.
Family parse_family(std::string_view text);

/// The ten unscaled families in declaration order.
std::vector<Family> base_families();

/// Hermitian positive semidefinite by construction (positive, psd_singular,
/// and positive scalings of these).
bool is_positive_family(const Family& f);
bool is_hermitian_family(const Family& f);

struct SampleSpec {
    Family family;
    int dim = 2;
    std::uint64_t seed = 0;
};

/// Deterministic in (family, dim, seed). Throws BadSpec for dim outside 1..32.
ComplexMatrix sample(const SampleSpec& spec);

/// splitmix64 output for the state campaign_seed ^ (sample_index * 0x9E3779B97F4A7C15):
/// the state is advanced by the golden-ratio increment, then finalized.
std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t sample_index) noexcept;

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
    std::uint64_t next() noexcept;
    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::uint64_t state_;
};

class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;
    std::uint64_t next() noexcept;
    /// In (0, 1].
    double uniform() noexcept;
    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_gaussian() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
};

} // namespace numrad
