#include "indexforge/html_emitter.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/file_io.hpp"
#include "indexforge/segmentation.hpp"
#include "indexforge/unicode.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace indexforge {

using nlohmann::json;

namespace {

std::string escape_html(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

const char* kStyle = R"(
  body { font-family: Georgia, serif; max-width: 46em; margin: 2em auto; padding: 0 1em; }
  h1, h2, h3, h4, h5, h6 { font-family: Helvetica, Arial, sans-serif; }
  p.heading { font-weight: bold; }
  .title-style { font-variant: small-caps; }
  dt { font-weight: bold; margin-top: 0.6em; }
  dd { margin-left: 1.5em; }
  a.ref { text-decoration: none; }
  .score { color: #777; font-size: 0.85em; margin-left: 0.4em; }
  .see-also { font-style: italic; }
  .empty-nomenclature { color: #777; }
  :target { background: #fdf3c7; }
)";

std::string paragraph_anchor(const Document& doc, const Paragraph& p) {
    return html_id_sanitize(doc.sections[p.section].id) + "-p" + std::to_string(p.index);
}

// Splits the paragraph text at span boundaries and wraps the styled runs.
std::string render_paragraph_body(const Paragraph& p) {
    std::u32string text = uni::decode_utf8(p.text);
    std::string out;
    uint32_t pos = 0;
    auto emit = [&](uint32_t from, uint32_t to) {
        if (from >= to) return;
        out += escape_html(uni::encode_utf8(text.substr(from, to - from)));
    };
    for (const TypoSpan& s : p.spans) {
        emit(pos, s.start);
        const char *open = "", *close = "";
        switch (s.style) {
            case SpanStyle::Bold: open = "<strong>"; close = "</strong>"; break;
            case SpanStyle::Italic: open = "<em>"; close = "</em>"; break;
            case SpanStyle::TitleStyle:
                open = "<span class=\"title-style\">";
                close = "</span>";
                break;
        }
        out += open;
        emit(s.start, s.end);
        out += close;
        pos = s.end;
    }
    emit(pos, static_cast<uint32_t>(text.size()));
    return out;
}

void render_section(const Document& doc, uint32_t index, std::ostream& os) {
    const Section& sec = doc.sections[index];
    os << "<section id=\"" << html_id_sanitize(sec.id) << "\">\n";
    int h = std::min<uint32_t>(sec.depth + 1, 6);

    size_t start = 0;
    bool title_rendered = false;
    if (!sec.paragraphs.empty()) {
        const Paragraph& first = doc.paragraphs[sec.paragraphs.front()];
        if (first.kind == ParagraphKind::Heading && first.text == sec.title) {
            os << "<h" << h << " id=\"" << paragraph_anchor(doc, first) << "\">"
               << render_paragraph_body(first) << "</h" << h << ">\n";
            start = 1;
            title_rendered = true;
        }
    }
    if (!title_rendered && !sec.title.empty())
        os << "<h" << h << ">" << escape_html(sec.title) << "</h" << h << ">\n";

    bool in_list = false;
    for (size_t i = start; i < sec.paragraphs.size(); ++i) {
        const Paragraph& p = doc.paragraphs[sec.paragraphs[i]];
        if (p.kind == ParagraphKind::ListItem) {
            if (!in_list) {
                os << "<ul>\n";
                in_list = true;
            }
            os << "<li id=\"" << paragraph_anchor(doc, p) << "\">"
               << render_paragraph_body(p) << "</li>\n";
            continue;
        }
        if (in_list) {
            os << "</ul>\n";
            in_list = false;
        }
        const char* cls = p.kind == ParagraphKind::Heading ? " class=\"heading\"" : "";
        os << "<p id=\"" << paragraph_anchor(doc, p) << "\"" << cls << ">"
           << render_paragraph_body(p) << "</p>\n";
    }
    if (in_list) os << "</ul>\n";

    for (uint32_t child : sec.children) render_section(doc, child, os);
    os << "</section>\n";
}

std::string format_score(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

std::string reference_label(const Document& doc, const IndexReference& ref) {
    if (ref.segment.whole_section) {
        const Section& sec = doc.sections[ref.segment.section];
        return "\xC2\xA7 " + (sec.title.empty() ? sec.id : sec.title);
    }
    std::string label = "\xC2\xB6" + std::to_string(ref.segment.first_paragraph + 1);
    if (ref.segment.last_paragraph != ref.segment.first_paragraph)
        label += "\xE2\x80\x93" + std::to_string(ref.segment.last_paragraph + 1);
    return label;
}

// Pulls every id="..." out of an html string.
std::set<std::string> collect_ids(const std::string& html) {
    std::set<std::string> ids;
    size_t pos = 0;
    while ((pos = html.find(" id=\"", pos)) != std::string::npos) {
        pos += 5;
        size_t end = html.find('"', pos);
        if (end == std::string::npos) break;
        ids.insert(html.substr(pos, end - pos));
        pos = end;
    }
    return ids;
}

std::vector<std::pair<std::string, std::string>> collect_hrefs(const std::string& html) {
    std::vector<std::pair<std::string, std::string>> refs;  // (file, fragment)
    size_t pos = 0;
    while ((pos = html.find(" href=\"", pos)) != std::string::npos) {
        pos += 7;
        size_t end = html.find('"', pos);
        if (end == std::string::npos) break;
        std::string target = html.substr(pos, end - pos);
        pos = end;
        size_t hash = target.find('#');
        if (hash == std::string::npos) continue;  // external target, not ours
        refs.emplace_back(target.substr(0, hash), target.substr(hash + 1));
    }
    return refs;
}

} // namespace

std::string render_document_html(const Document& doc) {
    std::ostringstream os;
    os << "<!doctype html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>"
       << escape_html(doc.id) << "</title>\n<style>" << kStyle << "</style>\n</head>\n<body>\n";
    os << "<h1>" << escape_html(doc.id) << "</h1>\n";
    for (uint32_t i = 0; i < doc.sections.size(); ++i)
        if (doc.sections[i].parent < 0) render_section(doc, i, os);
    os << "</body>\n</html>\n";
    return os.str();
}

std::string render_index_html(const Index& index, const Document& doc) {
    std::ostringstream os;
    os << "<!doctype html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Index</title>\n"
       << "<style>" << kStyle << "</style>\n</head>\n<body>\n<h1>Index</h1>\n";
    if (index.entries.empty()) {
        os << "<p class=\"empty-nomenclature\">The nomenclature is empty: "
              "this index has no entries.</p>\n</body>\n</html>\n";
        return os.str();
    }

    std::map<std::string, std::string> entry_anchor;  // display form -> id
    for (const IndexEntry& e : index.entries)
        entry_anchor[e.display] = "entry-" + html_id_sanitize(e.descriptor_id);

    os << "<dl>\n";
    for (const IndexEntry& e : index.entries) {
        os << "<dt id=\"" << entry_anchor.at(e.display) << "\">" << escape_html(e.display)
           << "<span class=\"score\" title=\"d-score\">" << format_score(e.d_score)
           << "</span></dt>\n<dd>";
        bool first = true;
        for (const IndexReference& ref : e.references) {
            if (!first) os << ", ";
            first = false;
            os << "<a class=\"ref\" href=\"document.html#" << ref.anchor
               << "\" title=\"s-score " << format_score(ref.s_score) << "\">"
               << escape_html(reference_label(doc, ref)) << "</a>";
        }
        if (e.references.empty()) os << "<span class=\"score\">no references</span>";
        if (!e.see_also.empty()) {
            os << "<br><span class=\"see-also\">see also: ";
            bool first_link = true;
            for (const std::string& form : e.see_also) {
                if (!first_link) os << ", ";
                first_link = false;
                auto it = entry_anchor.find(form);
                if (it != entry_anchor.end())
                    os << "<a href=\"#" << it->second << "\">" << escape_html(form) << "</a>";
                else
                    os << escape_html(form);  // filtered out of this index
            }
            os << "</span>";
        }
        os << "</dd>\n";
    }
    os << "</dl>\n</body>\n</html>\n";
    return os.str();
}

std::vector<std::string> dangling_hrefs(
    const std::vector<std::pair<std::string, std::string>>& pages) {
    std::map<std::string, std::set<std::string>> ids;
    for (const auto& [name, html] : pages) ids[name] = collect_ids(html);
    std::vector<std::string> dangling;
    for (const auto& [name, html] : pages) {
        for (const auto& [file, fragment] : collect_hrefs(html)) {
            const std::string& target = file.empty() ? name : file;
            auto it = ids.find(target);
            if (it == ids.end() || !it->second.count(fragment))
                dangling.push_back(file + "#" + fragment);
        }
    }
    return dangling;
}

std::vector<std::filesystem::path> emit_html(const Index& index, const Document& doc,
                                             const std::filesystem::path& out_dir) {
    std::string document_html = render_document_html(doc);
    std::string index_html = render_index_html(index, doc);

    {
        std::set<std::string> seen;
        for (const std::string& id : collect_ids(document_html))
            if (!seen.insert(id).second)
                throw ValidationError("duplicate anchor id \"" + id +
                                      "\" in rendered document (section ids collide "
                                      "after sanitization)");
    }
    std::vector<std::string> dangling = dangling_hrefs(
        {{"document.html", document_html}, {"index.html", index_html}});
    if (!dangling.empty())
        throw IntegrityError("dangling hyperlink target: " + dangling.front());

    std::filesystem::path doc_path = out_dir / "document.html";
    std::filesystem::path index_path = out_dir / "index.html";
    write_file(doc_path, document_html);
    write_file(index_path, index_html);
    return {doc_path, index_path};
}

namespace {

void write_canonical(std::ostream& os, const json& value) {
    switch (value.type()) {
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = value.begin(); it != value.end(); ++it) {
                if (!first) os << ',';
                first = false;
                write_canonical(os, json(it.key()));
                os << ':';
                write_canonical(os, it.value());
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            bool first = true;
            for (const json& item : value) {
                if (!first) os << ',';
                first = false;
                write_canonical(os, item);
            }
            os << ']';
            break;
        }
        case json::value_t::string: {
            os << '"';
            for (unsigned char c : value.get_ref<const std::string&>()) {
                switch (c) {
                    case '"': os << "\\\""; break;
                    case '\\': os << "\\\\"; break;
                    case '\n': os << "\\n"; break;
                    case '\r': os << "\\r"; break;
                    case '\t': os << "\\t"; break;
                    default:
                        if (c < 0x20) {
                            char buf[8];
                            std::snprintf(buf, sizeof buf, "\\u%04x", c);
                            os << buf;
                        } else {
                            os << static_cast<char>(c);
                        }
                }
            }
            os << '"';
            break;
        }
        case json::value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", value.get<double>());
            os << buf;
            break;
        }
        default:
            os << value.dump();
    }
}

} // namespace

std::string canonical_json(const json& value) {
    std::ostringstream os;
    write_canonical(os, value);
    return os.str();
}

json index_to_json(const Index& index) {
    json entries = json::array();
    for (const IndexEntry& e : index.entries) {
        json refs = json::array();
        for (const IndexReference& r : e.references)
            refs.push_back({{"anchor", r.anchor},
                            {"section", r.section_id},
                            {"first_paragraph", r.segment.first_paragraph},
                            {"last_paragraph", r.segment.last_paragraph},
                            {"s_score", r.s_score},
                            {"whole_section", r.segment.whole_section}});
        entries.push_back({{"descriptor", e.display},
                           {"d_score", e.d_score},
                           {"see_also", e.see_also},
                           {"references", std::move(refs)}});
    }
    const StageCounts& c = index.stage_counts;
    json stats = {
        {"mdus", c.mdus},
        {"dus", c.dus},
        {"plain", c.plain},
        {"simplified", c.simplified},
        {"generalized", c.generalized},
        {"paragraph_occurrences", c.paragraph_occurrences},
        {"reduction_mdus_to_dus", format_reduction(c.mdus, c.dus)},
        {"reduction_plain_to_simplified", format_reduction(c.plain, c.simplified)},
        {"reduction_simplified_to_generalized", format_reduction(c.simplified, c.generalized)},
    };
    // The snapshot records the knobs that shaped the index; the worker count
    // is an execution detail and must not vary the bytes.
    json config = serialize_config(index.config);
    config["jobs"] = 0;
    return json{{"entries", std::move(entries)},
                {"segmentation_stats", std::move(stats)},
                {"config", std::move(config)}};
}

void emit_json(const Index& index, const std::filesystem::path& out_path) {
    write_file(out_path, canonical_json(index_to_json(index)));
}

} // namespace indexforge
