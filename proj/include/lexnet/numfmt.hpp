#ifndef LEXNET_NUMFMT_HPP
#define LEXNET_NUMFMT_HPP

#include <charconv>
#include <string>

namespace lexnet {

/// Shortest round-trip representation; keeps text artifacts byte-stable.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace lexnet

#endif
