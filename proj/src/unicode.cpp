#include "indexforge/unicode.hpp"
#include "indexforge/errors.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace indexforge::uni {

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    size_t i = 0;
    const size_t n = bytes.size();
    auto fail = [&](size_t at) -> void {
        std::ostringstream os;
        os << "invalid UTF-8 at byte offset " << at;
        throw ParseError(os.str());
    };
    while (i < n) {
        unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
        else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
        else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
        else { fail(i); return {}; }
        if (i + len > n) fail(i);
        for (int k = 1; k < len; ++k) {
            unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) fail(i);
            cp = (cp << 6) | (bk & 0x3F);
        }
        // Reject overlong encodings and surrogates.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
            cp > 0x10FFFF)
            fail(i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
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
    return out;
}

char32_t to_lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    // Latin-1 Supplement, skipping the multiplication sign.
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    if (c == 0x178) return 0xFF; // Y with diaeresis
    // Latin Extended-A comes in upper/lower pairs.
    if (c >= 0x100 && c <= 0x177) {
        if ((c & 1) == 0) {
            if (c == 0x130) return U'i'; // I with dot above
            return c + 1;
        }
        return c;
    }
    if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
    // Greek and basic Cyrillic, enough for stray quotations.
    if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
    if (c >= 0x410 && c <= 0x42F) return c + 0x20;
    if (c >= 0x400 && c <= 0x40F) return c + 0x50;
    return c;
}

bool is_alnum(char32_t c) {
    if ((c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') ||
        (c >= U'A' && c <= U'Z'))
        return true;
    if (c < 0xC0) return false;
    if (c == 0xD7 || c == 0xF7) return false;
    if (c <= 0x24F) return true;  // Latin-1 letters, Extended-A/B
    if (c >= 0x370 && c <= 0x3FF) return c != 0x3A2 && c >= 0x386;
    if (c >= 0x400 && c <= 0x4FF) return true;
    if (c >= 0x4E00 && c <= 0x9FFF) return true; // CJK ideographs
    return false;
}

bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' ||
           c == U'\f' || c == U'\v' || c == 0xA0 || c == 0x2009 ||
           (c >= 0x2000 && c <= 0x200A) || c == 0x202F || c == 0x3000;
}

namespace {

struct Composition {
    char32_t base;
    char32_t mark;
    char32_t composed;
};

// Latin precomposed forms reachable from a base letter + combining mark.
// 0x300 grave, 0x301 acute, 0x302 circumflex, 0x303 tilde, 0x308 diaeresis,
// 0x30A ring, 0x30C caron, 0x327 cedilla.
constexpr Composition kCompositions[] = {
    {U'A', 0x300, 0xC0}, {U'A', 0x301, 0xC1}, {U'A', 0x302, 0xC2},
    {U'A', 0x303, 0xC3}, {U'A', 0x308, 0xC4}, {U'A', 0x30A, 0xC5},
    {U'C', 0x327, 0xC7}, {U'C', 0x301, 0x106}, {U'C', 0x30C, 0x10C},
    {U'E', 0x300, 0xC8}, {U'E', 0x301, 0xC9}, {U'E', 0x302, 0xCA},
    {U'E', 0x308, 0xCB},
    {U'I', 0x300, 0xCC}, {U'I', 0x301, 0xCD}, {U'I', 0x302, 0xCE},
    {U'I', 0x308, 0xCF},
    {U'N', 0x303, 0xD1}, {U'N', 0x30C, 0x147},
    {U'O', 0x300, 0xD2}, {U'O', 0x301, 0xD3}, {U'O', 0x302, 0xD4},
    {U'O', 0x303, 0xD5}, {U'O', 0x308, 0xD6},
    {U'S', 0x30C, 0x160},
    {U'U', 0x300, 0xD9}, {U'U', 0x301, 0xDA}, {U'U', 0x302, 0xDB},
    {U'U', 0x308, 0xDC},
    {U'Y', 0x301, 0xDD}, {U'Y', 0x308, 0x178},
    {U'Z', 0x30C, 0x17D},
    {U'a', 0x300, 0xE0}, {U'a', 0x301, 0xE1}, {U'a', 0x302, 0xE2},
    {U'a', 0x303, 0xE3}, {U'a', 0x308, 0xE4}, {U'a', 0x30A, 0xE5},
    {U'c', 0x327, 0xE7}, {U'c', 0x301, 0x107}, {U'c', 0x30C, 0x10D},
    {U'e', 0x300, 0xE8}, {U'e', 0x301, 0xE9}, {U'e', 0x302, 0xEA},
    {U'e', 0x308, 0xEB},
    {U'i', 0x300, 0xEC}, {U'i', 0x301, 0xED}, {U'i', 0x302, 0xEE},
    {U'i', 0x308, 0xEF},
    {U'n', 0x303, 0xF1}, {U'n', 0x30C, 0x148},
    {U'o', 0x300, 0xF2}, {U'o', 0x301, 0xF3}, {U'o', 0x302, 0xF4},
    {U'o', 0x303, 0xF5}, {U'o', 0x308, 0xF6},
    {U's', 0x30C, 0x161},
    {U'u', 0x300, 0xF9}, {U'u', 0x301, 0xFA}, {U'u', 0x302, 0xFB},
    {U'u', 0x308, 0xFC},
    {U'y', 0x301, 0xFD}, {U'y', 0x308, 0xFF},
    {U'z', 0x30C, 0x17E},
};

char32_t compose_pair(char32_t base, char32_t mark) {
    for (const auto& c : kCompositions)
        if (c.base == base && c.mark == mark) return c.composed;
    return 0;
}

bool is_combining_mark(char32_t c) { return c >= 0x300 && c <= 0x36F; }

// Accent-fold table for the Latin-1 Supplement and Extended-A blocks.
// Ligatures expand; everything else maps to a single base letter.
const char* fold_latin(char32_t c) {
    switch (c) {
        case 0xC6: return "AE"; case 0xE6: return "ae";
        case 0x152: return "OE"; case 0x153: return "oe";
        case 0xDF: return "ss";
        case 0xD8: return "O"; case 0xF8: return "o";
        case 0xD0: return "D"; case 0xF0: return "d";
        case 0xDE: return "Th"; case 0xFE: return "th";
        case 0x111: return "d"; case 0x110: return "D";
        case 0x141: return "L"; case 0x142: return "l";
        case 0x131: return "i";
        default: break;
    }
    static const struct { char32_t lo, hi; char base; } ranges[] = {
        {0xC0, 0xC5, 'A'}, {0xC7, 0xC7, 'C'}, {0xC8, 0xCB, 'E'},
        {0xCC, 0xCF, 'I'}, {0xD1, 0xD1, 'N'}, {0xD2, 0xD6, 'O'},
        {0xD9, 0xDC, 'U'}, {0xDD, 0xDD, 'Y'},
        {0xE0, 0xE5, 'a'}, {0xE7, 0xE7, 'c'}, {0xE8, 0xEB, 'e'},
        {0xEC, 0xEF, 'i'}, {0xF1, 0xF1, 'n'}, {0xF2, 0xF6, 'o'},
        {0xF9, 0xFC, 'u'}, {0xFD, 0xFD, 'y'}, {0xFF, 0xFF, 'y'},
        {0x100, 0x105, 'a'}, {0x106, 0x10D, 'c'}, {0x10E, 0x111, 'd'},
        {0x112, 0x11B, 'e'}, {0x11C, 0x123, 'g'}, {0x124, 0x127, 'h'},
        {0x128, 0x131, 'i'}, {0x134, 0x135, 'j'}, {0x136, 0x138, 'k'},
        {0x139, 0x142, 'l'}, {0x143, 0x14B, 'n'}, {0x14C, 0x151, 'o'},
        {0x154, 0x159, 'r'}, {0x15A, 0x161, 's'}, {0x162, 0x167, 't'},
        {0x168, 0x173, 'u'}, {0x174, 0x175, 'w'}, {0x176, 0x178, 'y'},
        {0x179, 0x17E, 'z'},
    };
    for (const auto& r : ranges)
        if (c >= r.lo && c <= r.hi) {
            static thread_local char buf[2] = {0, 0};
            bool upper = to_lower(c) != c;
            buf[0] = upper ? static_cast<char>(r.base - 0x20) : r.base;
            return buf;
        }
    return nullptr;
}

} // namespace

std::u32string nfc(std::u32string_view text) {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t c : text) {
        if (!out.empty() && is_combining_mark(c)) {
            if (char32_t composed = compose_pair(out.back(), c)) {
                out.back() = composed;
                continue;
            }
        }
        out.push_back(c);
    }
    return out;
}

std::u32string strip_marks(std::u32string_view text) {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t c : nfc(text)) {
        if (is_combining_mark(c)) continue;
        if (c >= 0xC0 && c <= 0x17E) {
            if (const char* folded = fold_latin(c)) {
                for (const char* p = folded; *p; ++p)
                    out.push_back(static_cast<char32_t>(*p));
                continue;
            }
        }
        out.push_back(c);
    }
    return out;
}

std::string normalize_form(std::string_view bytes) {
    std::u32string cps = nfc(decode_utf8(bytes));
    std::u32string out;
    out.reserve(cps.size());
    for (char32_t c : cps) {
        if (c == 0x2019) c = U'\'';
        if (is_space(c)) {
            if (!out.empty() && out.back() != U' ') out.push_back(U' ');
            continue;
        }
        out.push_back(to_lower(c));
    }
    while (!out.empty() && out.back() == U' ') out.pop_back();
    return encode_utf8(out);
}

std::string collation_key(std::string_view bytes) {
    std::u32string folded = strip_marks(decode_utf8(normalize_form(bytes)));
    return encode_utf8(folded);
}

} // namespace indexforge::uni
