#pragma once

#include <string>
#include <string_view>

namespace lexseq {

// Strict UTF-8 <-> codepoint conversion. Throws on malformed input.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
std::string utf8_encode(char32_t c);

}  // namespace lexseq
