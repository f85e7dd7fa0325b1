#pragma once

#include <cstdint>
#include <string>

namespace treo {

// Half-open byte range into one source buffer, plus 1-based line/column of
// its first byte for diagnostics.
struct Span {
    uint32_t line = 0;
    uint32_t column = 0;
    uint32_t offset = 0;
    uint32_t length = 0;

    bool valid() const { return line != 0; }
    bool operator==(const Span&) const = default;
};

inline std::string to_string(const Span& s)
{
    if (!s.valid())
        return "<no location>";
    return std::to_string(s.line) + ":" + std::to_string(s.column);
}

} // namespace treo
