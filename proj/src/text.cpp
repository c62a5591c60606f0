#include "morphkit/text.hpp"

#include "morphkit/error.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>

namespace morphkit::text {

std::u32string decode(std::string_view utf8)
{
    std::u32string out;
    out.reserve(utf8.size());
    const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto n = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < n) {
        const int32_t start = i;
        UChar32 c;
        U8_NEXT(s, i, n, c);
        if (c < 0)
            throw DecodeError(static_cast<std::size_t>(start));
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

std::string encode(std::u32string_view code_points)
{
    std::string out;
    out.reserve(code_points.size());
    for (char32_t c : code_points) {
        uint8_t buf[U8_MAX_LENGTH];
        int32_t len = 0;
        U8_APPEND_UNSAFE(buf, len, static_cast<UChar32>(c));
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
    }
    return out;
}

void validate(std::string_view utf8)
{
    (void)decode(utf8);
}

std::size_t length(std::string_view utf8)
{
    return decode(utf8).size();
}

std::string normalize(std::string_view utf8)
{
    validate(utf8);
    auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    us.toLower(icu::Locale::getRoot());
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status))
        throw Error(ErrorKind::precondition, "ICU NFC normalizer unavailable");
    icu::UnicodeString normalized = nfc->normalize(us, status);
    if (U_FAILURE(status))
        throw Error(ErrorKind::precondition, "ICU normalization failed");
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

bool is_space(char32_t c)
{
    return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool is_punct(char32_t c)
{
    return u_ispunct(static_cast<UChar32>(c)) || u_hasBinaryProperty(static_cast<UChar32>(c), UCHAR_DASH);
}

bool is_alpha(char32_t c)
{
    return u_isalpha(static_cast<UChar32>(c));
}

std::vector<std::string> tokenize(std::string_view utf8)
{
    const std::u32string cps = decode(utf8);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && is_space(cps[i]))
            ++i;
        std::size_t j = i;
        while (j < cps.size() && !is_space(cps[j]))
            ++j;
        std::size_t b = i, e = j;
        while (b < e && is_punct(cps[b]))
            ++b;
        while (e > b && is_punct(cps[e - 1]))
            --e;
        if (b < e)
            tokens.push_back(normalize(encode(std::u32string_view(cps).substr(b, e - b))));
        i = j;
    }
    return tokens;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string reversed(std::string_view utf8)
{
    std::u32string cps = decode(utf8);
    std::reverse(cps.begin(), cps.end());
    return encode(cps);
}

}  // namespace morphkit::text
