// Copyright 2026 The Derivata Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DERIVATA_TOKENIZER_HPP
#define DERIVATA_TOKENIZER_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace derivata {

/// Normalized tokens plus the byte span each one came from. Offsets are
/// strictly increasing and there is exactly one span per token.
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<std::pair<std::size_t, std::size_t>> offsets;  // [begin, end)

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

namespace detail {

struct DecodedChar {
  char32_t cp;
  std::size_t length;  // bytes consumed, >= 1
};

// Minimal UTF-8 decoder. Invalid sequences decode as U+FFFD over one byte,
// which tokenization treats as a separator.
inline DecodedChar decode_utf8(std::string_view s, std::size_t i) {
  const auto byte = [&](std::size_t off) {
    return static_cast<unsigned char>(s[i + off]);
  };
  const unsigned char b0 = byte(0);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t off) {
    return i + off < s.size() && (byte(off) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    return {static_cast<char32_t>(((b0 & 0x1Fu) << 6) | (byte(1) & 0x3Fu)), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    return {static_cast<char32_t>(((b0 & 0x0Fu) << 12) | ((byte(1) & 0x3Fu) << 6) |
                                  (byte(2) & 0x3Fu)),
            3};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    return {static_cast<char32_t>(((b0 & 0x07u) << 18) | ((byte(1) & 0x3Fu) << 12) |
                                  ((byte(2) & 0x3Fu) << 6) | (byte(3) & 0x3Fu)),
            4};
  }
  return {0xFFFD, 1};
}

inline bool is_word_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp == 0xD7 || cp == 0xF7) return false;  // multiplication/division signs
  if (cp >= 0xA0 && cp < 0xC0) return false;   // Latin-1 punctuation block
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp == 0xFFFD) return false;
  return true;  // letters of any script, including CJK
}

// ASCII and Latin-1 case folding; other scripts pass through unchanged.
inline char32_t fold_codepoint(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace detail

/// Case folding used by the tokenizer, exposed so callers can reproduce a
/// token from its source span.
inline std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto [cp, len] = detail::decode_utf8(text, i);
    detail::append_utf8(out, detail::fold_codepoint(cp));
    i += len;
  }
  return out;
}

/// Splits text into maximal runs of letters and digits, folded to lower
/// case. Punctuation and whitespace separate tokens and are dropped.
inline TokenStream tokenize(std::string_view text) {
  TokenStream stream;
  std::size_t i = 0;
  std::string current;
  std::size_t token_begin = 0;
  auto flush = [&](std::size_t end) {
    if (!current.empty()) {
      stream.tokens.push_back(std::move(current));
      stream.offsets.emplace_back(token_begin, end);
      current.clear();
    }
  };
  while (i < text.size()) {
    const auto [cp, len] = detail::decode_utf8(text, i);
    if (detail::is_word_codepoint(cp)) {
      if (current.empty()) token_begin = i;
      detail::append_utf8(current, detail::fold_codepoint(cp));
    } else {
      flush(i);
    }
    i += len;
  }
  flush(text.size());
  return stream;
}

}  // namespace derivata

#endif  // DERIVATA_TOKENIZER_HPP
