#pragma once

#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. Normalization and case mapping go through ICU.
namespace neutre::text {

bool valid_utf8(std::string_view s);

// NFC; ASCII input is returned unchanged without touching ICU.
std::string nfc(std::string_view s);

// Case-fold the first code point only ("Soldats" -> "soldats").
std::string fold_first(std::string_view s);
std::string lower(std::string_view s);
std::string capitalize_first(std::string_view s);
bool starts_upper(std::string_view s);

// First code point with diacritics removed and lowercased ('É' -> 'e').
char32_t base_letter(std::string_view s);

bool is_letter(char32_t c);
bool is_apostrophe(char32_t c);
bool is_apostrophe(std::string_view s);  // the whole string is one apostrophe

// Decode one code point at s[i], advancing i. Invalid bytes yield U+FFFD.
char32_t next_cp(std::string_view s, std::size_t& i);
std::string encode(char32_t c);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace neutre::text
