#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kwsum::unicode {

// Decoded text: one entry per Unicode scalar value plus the byte offset at
// which it starts. `offsets` has one trailing entry equal to the byte length.
struct Decoded {
  std::u32string chars;
  std::vector<std::size_t> offsets;
};

bool IsValidUtf8(std::string_view bytes);

// Throws Error(kInvalidEncoding) on malformed input.
Decoded Decode(std::string_view bytes);

void AppendUtf8(std::string& out, char32_t cp);

bool IsSpace(char32_t cp);
bool IsAlpha(char32_t cp);
bool IsDigit(char32_t cp);
bool IsUpper(char32_t cp);
inline bool IsAlnum(char32_t cp) { return IsAlpha(cp) || IsDigit(cp); }
char32_t ToLower(char32_t cp);

// Simple (one-to-one) lowercase mapping of valid UTF-8.
std::string Lowercase(std::string_view utf8);

}  // namespace kwsum::unicode
