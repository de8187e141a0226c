#include "mathrepro/mrdi/object_id.hpp"

#include "mathrepro/support/sha256.hpp"

namespace mathrepro::mrdi {

std::string object_id_from_canonical(std::string_view canonical_bytes) {
    support::Sha256Digest d = support::sha256(canonical_bytes);
    d[6] = static_cast<uint8_t>((d[6] & 0x0f) | 0x80);  // version 8
    d[8] = static_cast<uint8_t>((d[8] & 0x3f) | 0x80);  // variant 10
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(36);
    for (std::size_t i = 0; i < 16; ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) out += '-';
        out += hex[d[i] >> 4];
        out += hex[d[i] & 0x0f];
    }
    return out;
}

bool is_uuid(std::string_view s) {
    if (s.size() != 36) return false;
    for (std::size_t i = 0; i < 36; ++i) {
        if (i == 8 || i == 13 || i == 18 || i == 23) {
            if (s[i] != '-') return false;
        } else {
            const char c = s[i];
            const bool hex_digit =
                (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
            if (!hex_digit) return false;
        }
    }
    return true;
}

}  // namespace mathrepro::mrdi
