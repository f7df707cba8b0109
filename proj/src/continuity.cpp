#include "indexforge/continuity.hpp"

#include "indexforge/unicode.hpp"

#include <algorithm>
#include <set>

namespace indexforge {

std::vector<std::string> parse_marker_lines(std::string_view source) {
    std::vector<std::string> forms;
    size_t pos = 0;
    while (pos <= source.size()) {
        size_t nl = source.find('\n', pos);
        std::string_view line = source.substr(pos, nl == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : nl - pos);
        pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::string norm = uni::normalize_form(line);
        if (!norm.empty()) forms.push_back(std::move(norm));
    }
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    return forms;
}

MarkerDictionary load_markers(std::string_view integration_source,
                              std::string_view anaphoric_source) {
    MarkerDictionary dict;
    dict.integration_markers = parse_marker_lines(integration_source);
    dict.anaphoric_pronouns = parse_marker_lines(anaphoric_source);
    return dict;
}

namespace {

bool starts_with_form(const std::u32string& text, const std::vector<std::string>& forms) {
    for (const std::string& form : forms) {
        std::u32string f = uni::decode_utf8(form);
        if (f.empty() || f.size() > text.size()) continue;
        if (text.compare(0, f.size(), f) != 0) continue;
        if (f.size() < text.size() && uni::is_alnum(text[f.size()]) &&
            uni::is_alnum(f.back()))
            continue;  // marker must end on a word boundary
        return true;
    }
    return false;
}

// Fraction of the paragraph's scalar values covered by spans of one style.
double style_coverage(const Paragraph& p, SpanStyle style) {
    if (p.length == 0) return 0.0;
    uint32_t covered = 0;
    for (const TypoSpan& s : p.spans)
        if (s.style == style) covered += s.end - s.start;
    return static_cast<double>(covered) / static_cast<double>(p.length);
}

std::set<std::string> classes_in(const Paragraph& p, const OccurrenceTable& occ) {
    std::set<std::string> out;
    for (uint32_t i : occ.in_paragraph(p.index))
        out.insert(occ.all()[i].descriptor_id);
    return out;
}

} // namespace

bool paragraph_initial_marker(const Paragraph& p, const MarkerDictionary& dict) {
    std::u32string text = uni::nfc(uni::decode_utf8(p.text));
    for (char32_t& c : text) {
        if (c == 0x2019) c = U'\'';
        c = uni::to_lower(c);
    }
    size_t b = 0;
    while (b < text.size() && !uni::is_alnum(text[b])) ++b;
    std::u32string head = text.substr(b);
    if (head.empty()) return false;
    return starts_with_form(head, dict.integration_markers) ||
           starts_with_form(head, dict.anaphoric_pronouns);
}

bool typographic_homogeneity(const Paragraph& a, const Paragraph& b) {
    if (a.kind == ParagraphKind::ListItem && b.kind == ParagraphKind::ListItem) return true;
    constexpr double kFullCoverage = 0.9;  // tolerates punctuation outside the span
    for (SpanStyle style : {SpanStyle::Italic, SpanStyle::Bold})
        if (style_coverage(a, style) >= kFullCoverage &&
            style_coverage(b, style) >= kFullCoverage)
            return true;
    return false;
}

double lexical_cohesion(const Paragraph& a, const Paragraph& b,
                        const OccurrenceTable& occ, const Nomenclature& nom) {
    std::set<std::string> in_a = classes_in(a, occ);
    std::set<std::string> in_b = classes_in(b, occ);
    std::set<std::string> universe = in_a;
    universe.insert(in_b.begin(), in_b.end());
    if (universe.empty()) return 0.0;

    auto related_to = [&](const std::string& id, const std::set<std::string>& other) {
        if (other.count(id)) return true;
        for (const std::string& linked : other)
            if (nom.linked(id, linked)) return true;
        return false;
    };
    size_t recurring = 0;
    for (const std::string& id : universe) {
        bool hit = (in_a.count(id) && related_to(id, in_b)) ||
                   (in_b.count(id) && related_to(id, in_a));
        if (hit) ++recurring;
    }
    return static_cast<double>(recurring) / static_cast<double>(universe.size());
}

ContinuityVerdict evaluate_continuity(const Paragraph& a, const Paragraph& b,
                                      const MarkerDictionary& dict,
                                      const OccurrenceTable& occ, const Nomenclature& nom,
                                      double cohesion_threshold) {
    ContinuityVerdict v;
    v.linguistic = paragraph_initial_marker(b, dict);
    v.typographic = typographic_homogeneity(a, b);
    v.cohesion_score = lexical_cohesion(a, b, occ, nom);
    v.lexical = v.cohesion_score >= cohesion_threshold;
    return v;
}

} // namespace indexforge
