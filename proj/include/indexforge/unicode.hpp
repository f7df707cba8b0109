#ifndef INDEXFORGE_UNICODE_HPP_INCLUDED
#define INDEXFORGE_UNICODE_HPP_INCLUDED

#include <cstdint>
#include <string>
#include <vector>

// Small self-contained Unicode layer. Covers the Latin repertoire the
// engine actually processes (ASCII, Latin-1 Supplement, Latin Extended-A/B,
// Greek, Cyrillic); no external ICU dependency. All offsets used by the
// engine are Unicode scalar-value offsets, never byte offsets.

namespace indexforge::uni {

/// Decodes UTF-8 into scalar values. Throws ParseError on malformed bytes,
/// reporting the byte offset.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);

char32_t to_lower(char32_t c);

/// True for letters and decimal digits; everything else is a word break.
bool is_alnum(char32_t c);

bool is_space(char32_t c);

/// Canonical composition limited to the Latin precomposed set: a base
/// letter followed by a combining mark (grave, acute, circumflex, tilde,
/// diaeresis, ring, caron, cedilla) becomes the precomposed scalar when
/// one exists. Unknown combinations are left untouched.
std::u32string nfc(std::u32string_view text);

/// Accent folding for collation: precomposed Latin letters map to their
/// base ASCII letter(s), combining marks are dropped, and the ligatures
/// map to their spelled-out forms.
std::u32string strip_marks(std::u32string_view text);

/// NFC + lowercase + apostrophe normalization (U+2019 -> U+0027), applied
/// to a whole string. The canonical form for dictionary entries and
/// descriptor surface forms.
std::string normalize_form(std::string_view bytes);

/// Collation key: normalize_form plus accent stripping. Used for
/// alphabetical ordering of index entries.
std::string collation_key(std::string_view bytes);

} // namespace indexforge::uni

#endif
