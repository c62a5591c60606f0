#pragma once

// UTF-8 <-> code point conversion and the small set of Unicode predicates the
// toolkit needs. All character-level algorithms (tries, LCS, CV patterns)
// operate on std::u32string so that Maltese letters such as ċ ġ ħ ż count as
// one character each.

#include <string>
#include <string_view>
#include <vector>

namespace morphkit::text {

/// Decodes UTF-8. Throws DecodeError with the byte offset of the first
/// malformed sequence.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view code_points);

/// Throws DecodeError if `utf8` is not well formed.
void validate(std::string_view utf8);

/// Number of code points in a valid UTF-8 string.
std::size_t length(std::string_view utf8);

/// Lowercase then NFC-normalize.
std::string normalize(std::string_view utf8);

bool is_space(char32_t c);
bool is_punct(char32_t c);
bool is_alpha(char32_t c);

/// Splits on Unicode whitespace, strips leading/trailing punctuation from each
/// token and normalizes it. Internal hyphens and apostrophes survive
/// ("l-ktieb" stays one token). Tokens that end up empty are dropped.
std::vector<std::string> tokenize(std::string_view utf8);

/// Joins strings with a separator.
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Splits on a single-character separator, keeping empty fields.
std::vector<std::string> split(std::string_view s, char sep);

std::string reversed(std::string_view utf8);

}  // namespace morphkit::text
