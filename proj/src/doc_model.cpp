#include "indexforge/doc_model.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/nomenclature.hpp"
#include "indexforge/unicode.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace indexforge {

using nlohmann::json;

const char* to_string(SpanStyle s) {
    switch (s) {
        case SpanStyle::Bold: return "bold";
        case SpanStyle::Italic: return "italic";
        case SpanStyle::TitleStyle: return "title-style";
    }
    return "?";
}

const char* to_string(ParagraphKind k) {
    switch (k) {
        case ParagraphKind::Prose: return "prose";
        case ParagraphKind::ListItem: return "list-item";
        case ParagraphKind::Heading: return "heading";
    }
    return "?";
}

const char* to_string(StructuralRole r) {
    switch (r) {
        case StructuralRole::TitlePage: return "title-page";
        case StructuralRole::Summary: return "summary";
        case StructuralRole::Introduction: return "introduction";
        case StructuralRole::Body: return "body";
        case StructuralRole::Conclusion: return "conclusion";
    }
    return "?";
}

StructuralRole role_from_string(const std::string& s) {
    if (s == "title-page") return StructuralRole::TitlePage;
    if (s == "summary") return StructuralRole::Summary;
    if (s == "introduction") return StructuralRole::Introduction;
    if (s == "body") return StructuralRole::Body;
    if (s == "conclusion") return StructuralRole::Conclusion;
    throw ValidationError("unknown structural role: \"" + s + "\"");
}

namespace {

SpanStyle style_from_string(const std::string& s) {
    if (s == "bold") return SpanStyle::Bold;
    if (s == "italic") return SpanStyle::Italic;
    if (s == "title-style") return SpanStyle::TitleStyle;
    throw ValidationError("unknown span style: \"" + s + "\"");
}

ParagraphKind kind_from_string(const std::string& s) {
    if (s == "prose") return ParagraphKind::Prose;
    if (s == "list-item") return ParagraphKind::ListItem;
    if (s == "heading") return ParagraphKind::Heading;
    throw ValidationError("unknown paragraph kind: \"" + s + "\"");
}

void validate_spans(const Paragraph& p) {
    uint32_t prev_end = 0;
    bool first = true;
    for (const TypoSpan& s : p.spans) {
        std::ostringstream loc;
        loc << "paragraph " << p.index;
        if (s.start >= s.end)
            throw ValidationError(loc.str() + ": span start must precede end");
        if (s.end > p.length)
            throw ValidationError(loc.str() + ": span exceeds paragraph length");
        if (!first && s.start < prev_end)
            throw ValidationError(loc.str() + ": overlapping spans");
        prev_end = s.end;
        first = false;
    }
}

uint32_t scalar_length(const std::string& text) {
    return static_cast<uint32_t>(uni::decode_utf8(text).size());
}

void import_json_section(Document& doc, const json& node, int32_t parent,
                         uint32_t expected_depth) {
    if (!node.is_object()) throw ValidationError("section node must be an object");
    Section sec;
    sec.id = node.at("id").get<std::string>();
    sec.title = node.value("title", std::string());
    sec.depth = node.value("depth", expected_depth);
    if (sec.depth != expected_depth) {
        std::ostringstream os;
        os << "section \"" << sec.id << "\": depth " << sec.depth
           << " does not match nesting level " << expected_depth;
        throw ValidationError(os.str());
    }
    sec.role = role_from_string(node.value("role", std::string("body")));
    sec.parent = parent;
    uint32_t self = static_cast<uint32_t>(doc.sections.size());
    doc.sections.push_back(sec);
    if (parent >= 0) doc.sections[parent].children.push_back(self);

    if (node.contains("paragraphs")) {
        for (const json& pn : node.at("paragraphs")) {
            Paragraph p;
            p.index = static_cast<uint32_t>(doc.paragraphs.size());
            p.text = pn.at("text").get<std::string>();
            p.length = scalar_length(p.text);
            p.kind = kind_from_string(pn.value("kind", std::string("prose")));
            p.section = self;
            if (pn.contains("spans")) {
                for (const json& sn : pn.at("spans")) {
                    TypoSpan span;
                    span.start = sn.at("start").get<uint32_t>();
                    span.end = sn.at("end").get<uint32_t>();
                    span.style = style_from_string(sn.at("style").get<std::string>());
                    p.spans.push_back(span);
                }
                std::sort(p.spans.begin(), p.spans.end(),
                          [](const TypoSpan& a, const TypoSpan& b) { return a.start < b.start; });
            }
            doc.sections[self].paragraphs.push_back(p.index);
            doc.paragraphs.push_back(std::move(p));
        }
    }
    if (node.contains("children"))
        for (const json& child : node.at("children"))
            import_json_section(doc, child, static_cast<int32_t>(self), expected_depth + 1);
}

} // namespace

// Computes subtree paragraph ranges bottom-up (sections are in preorder,
// so children follow their parent).
void finalize_document(Document& doc) {
    for (auto it = doc.sections.rbegin(); it != doc.sections.rend(); ++it) {
        Section& sec = *it;
        int64_t first = -1, last = -1;
        if (!sec.paragraphs.empty()) {
            first = sec.paragraphs.front();
            last = sec.paragraphs.back();
        }
        for (uint32_t child : sec.children) {
            const Section& c = doc.sections[child];
            if (c.subtree_first < 0) continue;
            if (first < 0) first = c.subtree_first;
            last = std::max(last, c.subtree_last);
        }
        sec.subtree_first = first;
        sec.subtree_last = last;
    }
    for (const Paragraph& p : doc.paragraphs) validate_spans(p);
}

StructuralRole Document::effective_role(uint32_t section_index) const {
    int32_t cur = static_cast<int32_t>(section_index);
    while (cur >= 0) {
        if (sections[cur].role != StructuralRole::Body) return sections[cur].role;
        cur = sections[cur].parent;
    }
    return StructuralRole::Body;
}

std::optional<uint32_t> Document::deepest_section_containing(uint32_t first,
                                                             uint32_t last) const {
    int32_t cur = static_cast<int32_t>(paragraphs[first].section);
    while (cur >= 0) {
        const Section& sec = sections[cur];
        if (sec.subtree_first >= 0 && sec.subtree_first <= first &&
            last <= static_cast<uint32_t>(sec.subtree_last))
            return static_cast<uint32_t>(cur);
        cur = sec.parent;
    }
    return std::nullopt;
}

uint32_t Document::subtree_paragraph_count(uint32_t section_index) const {
    const Section& sec = sections[section_index];
    if (sec.subtree_first < 0) return 0;
    return static_cast<uint32_t>(sec.subtree_last - sec.subtree_first + 1);
}

Document import_json_document(std::string_view source) {
    json root;
    try {
        root = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("document JSON: ") + e.what());
    }
    Document doc;
    try {
        doc.id = root.at("id").get<std::string>();
        std::set<std::string> seen_ids;
        if (root.contains("sections"))
            for (const json& sec : root.at("sections"))
                import_json_section(doc, sec, -1, 1);
        for (const Section& s : doc.sections)
            if (!seen_ids.insert(s.id).second)
                throw ValidationError("duplicate section id \"" + s.id + "\"");
    } catch (const json::exception& e) {
        throw ParseError(std::string("document JSON: ") + e.what());
    }
    finalize_document(doc);
    return doc;
}

namespace {

struct MarkupLine {
    size_t number;   // 1-based, for diagnostics
    std::u32string text;
};

// Inline emphasis: ** toggles bold, * toggles italic. Emits the paragraph
// text without delimiters plus spans in scalar offsets.
void parse_inline(const std::u32string& raw, size_t line_no, Paragraph& out) {
    std::u32string text;
    std::vector<TypoSpan> spans;
    int64_t bold_start = -1, italic_start = -1;
    size_t i = 0;
    while (i < raw.size()) {
        if (raw[i] == U'*') {
            bool dbl = i + 1 < raw.size() && raw[i + 1] == U'*';
            if (dbl) {
                if (bold_start < 0) {
                    bold_start = static_cast<int64_t>(text.size());
                } else {
                    spans.push_back({static_cast<uint32_t>(bold_start),
                                     static_cast<uint32_t>(text.size()), SpanStyle::Bold});
                    bold_start = -1;
                }
                i += 2;
                continue;
            }
            if (italic_start < 0) {
                italic_start = static_cast<int64_t>(text.size());
            } else {
                spans.push_back({static_cast<uint32_t>(italic_start),
                                 static_cast<uint32_t>(text.size()), SpanStyle::Italic});
                italic_start = -1;
            }
            ++i;
            continue;
        }
        text.push_back(raw[i]);
        ++i;
    }
    if (bold_start >= 0 || italic_start >= 0) {
        std::ostringstream os;
        os << "markup line " << line_no << ": unterminated emphasis";
        throw ParseError(os.str());
    }
    std::sort(spans.begin(), spans.end(),
              [](const TypoSpan& a, const TypoSpan& b) { return a.start < b.start; });
    // Nested bold/italic produce overlapping spans, which the model forbids;
    // drop the inner one.
    std::vector<TypoSpan> kept;
    for (const TypoSpan& s : spans) {
        if (!kept.empty() && s.start < kept.back().end) continue;
        if (s.start < s.end) kept.push_back(s);
    }
    out.text = uni::encode_utf8(text);
    out.length = static_cast<uint32_t>(text.size());
    out.spans = std::move(kept);
}

std::u32string trim(const std::u32string& s) {
    size_t b = 0, e = s.size();
    while (b < e && uni::is_space(s[b])) ++b;
    while (e > b && uni::is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

} // namespace

Document import_markup_document(std::string_view source) {
    std::u32string all = uni::decode_utf8(source);
    std::vector<MarkupLine> lines;
    {
        std::u32string cur;
        size_t n = 1;
        for (char32_t c : all) {
            if (c == U'\n') {
                lines.push_back({n++, cur});
                cur.clear();
            } else if (c != U'\r') {
                cur.push_back(c);
            }
        }
        lines.push_back({n, cur});
    }

    Document doc;
    doc.id = "document";
    std::vector<uint32_t> open;  // section stack, indices into doc.sections
    uint32_t section_counter = 0;

    auto open_section = [&](uint32_t depth, const std::u32string& title, size_t line_no) {
        while (!open.empty() && doc.sections[open.back()].depth >= depth) open.pop_back();
        uint32_t parent_depth = open.empty() ? 0 : doc.sections[open.back()].depth;
        if (depth != parent_depth + 1) {
            std::ostringstream os;
            os << "markup line " << line_no << ": heading level " << depth
               << " cannot follow level " << parent_depth;
            throw ParseError(os.str());
        }
        Section sec;
        sec.id = "s" + std::to_string(++section_counter);
        sec.title = uni::encode_utf8(title);
        sec.depth = depth;
        sec.parent = open.empty() ? -1 : static_cast<int32_t>(open.back());
        uint32_t self = static_cast<uint32_t>(doc.sections.size());
        doc.sections.push_back(sec);
        if (sec.parent >= 0) doc.sections[sec.parent].children.push_back(self);
        open.push_back(self);
        return self;
    };

    auto current_section = [&](size_t line_no) -> uint32_t {
        if (open.empty()) {
            // Text before the first heading lands in an implicit preamble.
            (void)line_no;
            Section sec;
            sec.id = "s" + std::to_string(++section_counter);
            sec.depth = 1;
            doc.sections.push_back(sec);
            open.push_back(static_cast<uint32_t>(doc.sections.size() - 1));
        }
        return open.back();
    };

    auto add_paragraph = [&](const std::u32string& raw, ParagraphKind kind, size_t line_no) {
        Paragraph p;
        p.index = static_cast<uint32_t>(doc.paragraphs.size());
        p.kind = kind;
        p.section = current_section(line_no);
        parse_inline(raw, line_no, p);
        doc.sections[p.section].paragraphs.push_back(p.index);
        doc.paragraphs.push_back(std::move(p));
    };

    std::u32string pending;  // accumulated prose lines of the open paragraph
    size_t pending_line = 0;
    auto flush = [&]() {
        std::u32string t = trim(pending);
        if (!t.empty()) add_paragraph(t, ParagraphKind::Prose, pending_line);
        pending.clear();
    };

    for (const MarkupLine& line : lines) {
        std::u32string t = trim(line.text);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == U'#') {
            flush();
            uint32_t depth = 0;
            while (depth < t.size() && t[depth] == U'#') ++depth;
            std::u32string title = trim(t.substr(depth));
            open_section(depth, title, line.number);
            if (!title.empty()) add_paragraph(title, ParagraphKind::Heading, line.number);
            continue;
        }
        if (t.rfind(U"@role:", 0) == 0) {
            flush();
            std::string role = uni::encode_utf8(trim(t.substr(6)));
            doc.sections[current_section(line.number)].role = role_from_string(role);
            continue;
        }
        if (t.size() >= 2 && t[0] == U'-' && uni::is_space(t[1])) {
            flush();
            add_paragraph(trim(t.substr(2)), ParagraphKind::ListItem, line.number);
            continue;
        }
        if (!pending.empty()) {
            pending.push_back(U' ');
        } else {
            pending_line = line.number;
        }
        pending += t;
    }
    flush();

    finalize_document(doc);
    return doc;
}

Document import_document(std::string_view source, const std::string& format) {
    if (format == "json") return import_json_document(source);
    if (format == "markup") return import_markup_document(source);
    throw ValidationError("unknown document format tag: \"" + format + "\"");
}

namespace {

json serialize_section(const Document& doc, uint32_t index) {
    const Section& sec = doc.sections[index];
    json node;
    node["id"] = sec.id;
    node["title"] = sec.title;
    node["depth"] = sec.depth;
    node["role"] = to_string(sec.role);
    json paragraphs = json::array();
    for (uint32_t pi : sec.paragraphs) {
        const Paragraph& p = doc.paragraphs[pi];
        json pn;
        pn["text"] = p.text;
        pn["kind"] = to_string(p.kind);
        json spans = json::array();
        for (const TypoSpan& s : p.spans)
            spans.push_back({{"start", s.start}, {"end", s.end}, {"style", to_string(s.style)}});
        pn["spans"] = std::move(spans);
        paragraphs.push_back(std::move(pn));
    }
    node["paragraphs"] = std::move(paragraphs);
    json children = json::array();
    for (uint32_t child : sec.children) children.push_back(serialize_section(doc, child));
    node["children"] = std::move(children);
    return node;
}

} // namespace

json serialize_document(const Document& doc) {
    json root;
    root["id"] = doc.id;
    json sections = json::array();
    for (uint32_t i = 0; i < doc.sections.size(); ++i)
        if (doc.sections[i].parent < 0) sections.push_back(serialize_section(doc, i));
    root["sections"] = std::move(sections);
    return root;
}

DocumentStats compute_stats(const Document& doc, const OccurrenceTable& occurrences) {
    DocumentStats stats;
    stats.paragraph_count = static_cast<uint32_t>(doc.paragraphs.size());
    std::map<std::string, std::set<uint32_t>> paragraphs_of;
    std::map<std::string, uint32_t> total_of;
    for (const Occurrence& occ : occurrences.all()) {
        if (occ.paragraph_index >= doc.paragraphs.size()) {
            std::ostringstream os;
            os << "occurrence of \"" << occ.descriptor_id
               << "\" references unknown paragraph " << occ.paragraph_index;
            throw IntegrityError(os.str());
        }
        paragraphs_of[occ.descriptor_id].insert(occ.paragraph_index);
        ++total_of[occ.descriptor_id];
    }
    uint64_t total = 0;
    for (const auto& [id, count] : total_of) total += count;
    for (const auto& [id, set] : paragraphs_of)
        stats.paragraphs_with[id] = static_cast<uint32_t>(set.size());
    if (!total_of.empty()) {
        stats.has_occurrences = true;
        stats.mean_occurrences = static_cast<double>(total) / static_cast<double>(total_of.size());
    }
    return stats;
}

} // namespace indexforge
