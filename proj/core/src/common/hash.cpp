#include "qlc/common/hash.hpp"

#include <array>

namespace qlc {

std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis)
{
    std::uint64_t h = basis;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_parts(std::initializer_list<std::string_view> parts)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    bool first = true;
    for (std::string_view part : parts) {
        if (!first) {
            h = fnv1a64(std::string_view("\x1f", 1), h);
        }
        h = fnv1a64(part, h);
        first = false;
    }
    return h;
}

std::string to_hex(std::uint64_t value)
{
    static constexpr std::array<char, 16> digits{'0', '1', '2', '3', '4', '5', '6', '7',
                                                 '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::string source_hash(std::string_view source)
{
    return to_hex(fnv1a64(source));
}

} // namespace qlc
