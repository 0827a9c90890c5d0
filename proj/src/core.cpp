#include "qbrown/core.hpp"

#include <cmath>

namespace qbrown {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::NotPeriodic: return "NotPeriodic";
        case ErrorCode::UnstableStep: return "UnstableStep";
        case ErrorCode::KernelNotPositive: return "KernelNotPositive";
        case ErrorCode::ZeroFriction: return "ZeroFriction";
        case ErrorCode::CFLViolation: return "CFLViolation";
        case ErrorCode::NegativeDensity: return "NegativeDensity";
        case ErrorCode::FlatPotential: return "FlatPotential";
        case ErrorCode::BelowOnset: return "BelowOnset";
        case ErrorCode::NotOverdamped: return "NotOverdamped";
        case ErrorCode::Collapse: return "Collapse";
        case ErrorCode::Unbounded: return "Unbounded";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

namespace {

// Philox4x32 round constants (Salmon et al., SC'11).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c[0] = hi1 ^ c[1] ^ k0;
    c[1] = lo1;
    c[2] = hi0 ^ c[3] ^ k1;
    c[3] = lo0;
}

}  // namespace

void RngStream::next_block() {
    // Counter layout: (block counter lo/hi, stream index lo/hi). Distinct
    // streams therefore never share a counter value.
    block_[0] = static_cast<std::uint32_t>(counter_);
    block_[1] = static_cast<std::uint32_t>(counter_ >> 32);
    block_[2] = stream_lo_;
    block_[3] = stream_hi_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
        philox_round(block_, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    ++counter_;
    block_pos_ = 0;
}

double RngStream::uniform() {
    if (block_pos_ >= 4) next_block();
    const std::uint64_t lo = block_[block_pos_];
    const std::uint64_t hi = block_[block_pos_ + 1];
    block_pos_ += 2;
    const std::uint64_t bits = (hi << 32) | lo;
    // 53-bit mantissa, shifted into (0, 1] so log() below is always finite.
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

std::vector<double> gaussian_sample(RngStream& stream, std::size_t n) {
    require(n >= 1, ErrorCode::ConfigError, "gaussian_sample requires n >= 1");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = stream.normal();
    return out;
}

}  // namespace qbrown
