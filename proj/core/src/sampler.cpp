#include "numrad/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "numrad/errors.hpp"

namespace numrad {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

struct NamedFamily {
    std::string_view name;
    BaseFamily family;
};

constexpr std::array<NamedFamily, 10> kFamilies{{
    {"ginibre", BaseFamily::ginibre},
    {"hermitian", BaseFamily::hermitian},
    {"skew", BaseFamily::skew},
    {"positive", BaseFamily::positive},
    {"psd_singular", BaseFamily::psd_singular},
    {"unitary", BaseFamily::unitary},
    {"normal_diag", BaseFamily::normal_diag},
    {"nilpotent_jordan", BaseFamily::nilpotent_jordan},
    {"shift", BaseFamily::shift},
    {"rank_one", BaseFamily::rank_one},
}};

std::string_view base_name(BaseFamily f) {
    for (const auto& nf : kFamilies)
        if (nf.family == f) return nf.name;
    return "?";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

std::string format_factor(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ComplexMatrix gaussian(Xoshiro256& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

ComplexMatrix sample_base(BaseFamily family, int dim, Xoshiro256& rng) {
    const Eigen::Index n = dim;
    const double inv_n = 1.0 / static_cast<double>(dim);
    switch (family) {
    case BaseFamily::ginibre:
        return gaussian(rng, n, n);
    case BaseFamily::hermitian: {
        const ComplexMatrix g = gaussian(rng, n, n);
        return 0.5 * (g + g.adjoint());
    }
    case BaseFamily::skew: {
        const ComplexMatrix g = gaussian(rng, n, n);
        return 0.5 * (g - g.adjoint());
    }
    case BaseFamily::positive: {
        const ComplexMatrix g = gaussian(rng, n, n);
        return inv_n * (g.adjoint() * g);
    }
    case BaseFamily::psd_singular: {
        const ComplexMatrix c = gaussian(rng, std::max<Eigen::Index>(1, n - 1), n);
        return inv_n * (c.adjoint() * c);
    }
    case BaseFamily::unitary: {
        const ComplexMatrix g = gaussian(rng, n, n);
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix q = qr.householderQ();
        const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        // Fix the phase of each column so Q does not depend on the
        // Householder sign convention.
        for (Eigen::Index j = 0; j < n; ++j) {
            const double m = std::abs(r(j, j));
            if (m > 0.0) q.col(j) *= r(j, j) / m;
        }
        return q;
    }
    case BaseFamily::normal_diag: {
        ComplexMatrix d = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) d(i, i) = rng.complex_gaussian();
        return d;
    }
    case BaseFamily::nilpotent_jordan: {
        ComplexMatrix j = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i + 1 < n; ++i) j(i, i + 1) = rng.complex_gaussian();
        return j;
    }
    case BaseFamily::shift: {
        ComplexMatrix s = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i + 1 < n; ++i) s(i, i + 1) = 1.0;
        return s;
    }
    case BaseFamily::rank_one: {
        const ComplexMatrix u = gaussian(rng, n, 1);
        const ComplexMatrix v = gaussian(rng, n, 1);
        return inv_n * (u * v.adjoint());
    }
    }
    throw BadSpec("unknown family");
}

} // namespace

std::string Family::name() const {
    std::string base_str(base_name(base));
    if (!scaled) return base_str;
    return "scaled(" + base_str + "," + format_factor(scale) + ")";
}

Family parse_family(std::string_view text) {
    text = trim(text);
    constexpr std::string_view prefix = "scaled(";
    if (text.starts_with(prefix)) {
        if (!text.ends_with(")")) throw BadSpec("bad family '" + std::string(text) + "'");
        std::string_view inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        const auto comma = inner.rfind(',');
        if (comma == std::string_view::npos) throw BadSpec("scaled family needs a factor: '" + std::string(text) + "'");
        Family f = parse_family(inner.substr(0, comma));
        if (f.scaled) throw BadSpec("nested scaled families are not supported");
        const std::string_view num = trim(inner.substr(comma + 1));
        double factor = 0.0;
        auto res = std::from_chars(num.data(), num.data() + num.size(), factor);
        if (res.ec != std::errc() || res.ptr != num.data() + num.size() || !std::isfinite(factor) || !(factor > 0.0))
            throw BadSpec("bad scale factor in '" + std::string(text) + "'");
        f.scale = factor;
        f.scaled = true;
        return f;
    }
    for (const auto& nf : kFamilies)
        if (nf.name == text) return Family{nf.family, 1.0, false};
    throw BadSpec("unknown family '" + std::string(text) + "'");
}

std::vector<Family> base_families() {
    std::vector<Family> out;
    for (const auto& nf : kFamilies) out.push_back(Family{nf.family, 1.0, false});
    return out;
}

bool is_positive_family(const Family& f) {
    return f.base == BaseFamily::positive || f.base == BaseFamily::psd_singular;
}

bool is_hermitian_family(const Family& f) { return is_positive_family(f) || f.base == BaseFamily::hermitian; }

ComplexMatrix sample(const SampleSpec& spec) {
    if (spec.dim < 1 || spec.dim > 32) throw BadSpec("dimension must lie in 1..32, got " + std::to_string(spec.dim));
    Xoshiro256 rng(spec.seed);
    ComplexMatrix m = sample_base(spec.family.base, spec.dim, rng);
    if (spec.family.scaled) m *= spec.family.scale;
    return m;
}

std::uint64_t SplitMix64::mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
    state_ += kGolden;
    return mix(state_);
}

std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t sample_index) noexcept {
    return SplitMix64(campaign_seed ^ (sample_index * kGolden)).next();
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
}

std::uint64_t Xoshiro256::next() noexcept {
    const auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() noexcept { return static_cast<double>((next() >> 11) + 1) * 0x1p-53; }

Complex Xoshiro256::complex_gaussian() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return Complex(radius * std::cos(angle), radius * std::sin(angle)) * (1.0 / std::numbers::sqrt2);
}

} // namespace numrad
