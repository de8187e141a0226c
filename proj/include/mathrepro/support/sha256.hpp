#ifndef MATHREPRO_SUPPORT_SHA256_HPP
#define MATHREPRO_SUPPORT_SHA256_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace mathrepro::support {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::string_view bytes);

std::string to_hex(const Sha256Digest& digest);

/// Convenience: hex digest of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace mathrepro::support

#endif
