#include "neutre/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace neutre::text {

namespace {

bool is_ascii(std::string_view s) {
    for (unsigned char c : s)
        if (c >= 0x80) return false;
    return true;
}

}  // namespace

bool valid_utf8(std::string_view s) {
    const auto n = static_cast<int32_t>(s.size());
    int32_t k = 0;
    while (k < n) {
        UChar32 c;
        U8_NEXT(s.data(), k, n, c);
        if (c < 0) return false;
    }
    return true;
}

std::string nfc(std::string_view s) {
    if (is_ascii(s)) return std::string(s);
    UErrorCode err = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(err);
    if (U_FAILURE(err)) throw std::runtime_error("ICU NFC unavailable");
    auto src = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    if (norm->isNormalized(src, err) && U_SUCCESS(err)) return std::string(s);
    err = U_ZERO_ERROR;
    icu::UnicodeString out = norm->normalize(src, err);
    if (U_FAILURE(err)) return std::string(s);
    std::string r;
    out.toUTF8String(r);
    return r;
}

char32_t next_cp(std::string_view s, std::size_t& i) {
    auto k = static_cast<int32_t>(i);
    UChar32 c;
    U8_NEXT(s.data(), k, static_cast<int32_t>(s.size()), c);
    i = static_cast<std::size_t>(k);
    return c < 0 ? 0xFFFD : static_cast<char32_t>(c);
}

std::string encode(char32_t c) {
    char buf[4];
    int32_t k = 0;
    UBool err = false;
    U8_APPEND(buf, k, 4, static_cast<UChar32>(c), err);
    if (err) return "\xEF\xBF\xBD";
    return std::string(buf, static_cast<std::size_t>(k));
}

std::string fold_first(std::string_view s) {
    if (s.empty()) return {};
    std::size_t i = 0;
    char32_t c = next_cp(s, i);
    auto f = static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
    if (f == c) return std::string(s);
    return encode(f) + std::string(s.substr(i));
}

std::string lower(std::string_view s) {
    if (is_ascii(s)) {
        std::string r(s);
        for (char& c : r)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        return r;
    }
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    u.toLower(icu::Locale::getFrench());
    std::string r;
    u.toUTF8String(r);
    return r;
}

std::string capitalize_first(std::string_view s) {
    if (s.empty()) return {};
    std::size_t i = 0;
    char32_t c = next_cp(s, i);
    return encode(static_cast<char32_t>(u_toupper(static_cast<UChar32>(c)))) + std::string(s.substr(i));
}

bool starts_upper(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    return u_isupper(static_cast<UChar32>(next_cp(s, i)));
}

char32_t base_letter(std::string_view s) {
    if (s.empty()) return 0;
    std::size_t i = 0;
    char32_t c = next_cp(s, i);
    c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
    if (c < 0x80) return c;
    UErrorCode err = U_ZERO_ERROR;
    const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(err);
    if (U_FAILURE(err)) return c;
    icu::UnicodeString d = nfd->normalize(icu::UnicodeString(static_cast<UChar32>(c)), err);
    if (U_FAILURE(err) || d.isEmpty()) return c;
    UChar32 b = d.char32At(0);
    // œ and æ have no decomposition but are vowels for elision purposes.
    if (b == 0x153) return U'o';
    if (b == 0xE6) return U'a';
    return static_cast<char32_t>(b);
}

bool is_letter(char32_t c) {
    if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    auto uc = static_cast<UChar32>(c);
    return u_isalpha(uc) || (U_GET_GC_MASK(uc) & U_GC_M_MASK) != 0;
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

bool is_apostrophe(std::string_view s) { return s == "'" || s == "’"; }

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto p = s.find(sep, start);
        if (p == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, p - start));
        start = p + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

}  // namespace neutre::text
