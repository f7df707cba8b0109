#include "indexforge/nomenclature.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/unicode.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace indexforge {

using nlohmann::json;

const Descriptor* Nomenclature::find(const std::string& id) const {
    for (const Descriptor& d : descriptors)
        if (d.id == id) return &d;
    return nullptr;
}

size_t Nomenclature::index_of(const std::string& id) const {
    for (size_t i = 0; i < descriptors.size(); ++i)
        if (descriptors[i].id == id) return i;
    throw IntegrityError("unknown descriptor id \"" + id + "\"");
}

bool Nomenclature::linked(const std::string& a, const std::string& b) const {
    const Descriptor* d = find(a);
    if (!d) return false;
    return std::find(d->links.begin(), d->links.end(), b) != d->links.end();
}

size_t Nomenclature::degree(const std::string& id) const {
    const Descriptor* d = find(id);
    return d ? d->links.size() : 0;
}

OccurrenceTable::OccurrenceTable(std::vector<Occurrence> occurrences)
    : occurrences_(std::move(occurrences)) {
    std::sort(occurrences_.begin(), occurrences_.end(),
              [](const Occurrence& a, const Occurrence& b) {
                  if (a.paragraph_index != b.paragraph_index)
                      return a.paragraph_index < b.paragraph_index;
                  return a.start < b.start;
              });
    for (uint32_t i = 0; i < occurrences_.size(); ++i) {
        by_descriptor_[occurrences_[i].descriptor_id].push_back(i);
        by_paragraph_[occurrences_[i].paragraph_index].push_back(i);
    }
}

std::span<const uint32_t> OccurrenceTable::of_descriptor(const std::string& id) const {
    auto it = by_descriptor_.find(id);
    if (it == by_descriptor_.end()) return {};
    return it->second;
}

std::span<const uint32_t> OccurrenceTable::in_paragraph(uint32_t paragraph_index) const {
    auto it = by_paragraph_.find(paragraph_index);
    if (it == by_paragraph_.end()) return {};
    return it->second;
}

uint32_t OccurrenceTable::count_of(const std::string& id) const {
    return static_cast<uint32_t>(of_descriptor(id).size());
}

Nomenclature load_nomenclature(std::string_view source) {
    json root;
    try {
        root = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("nomenclature JSON: ") + e.what());
    }
    Nomenclature nom;
    try {
        for (const json& dn : root.at("descriptors")) {
            Descriptor d;
            d.id = dn.at("id").get<std::string>();
            d.canonical = dn.at("canonical").get<std::string>();
            if (d.canonical.empty())
                throw ValidationError("descriptor \"" + d.id + "\": empty canonical form");
            if (dn.contains("variants"))
                d.variants = dn.at("variants").get<std::vector<std::string>>();
            if (dn.contains("links"))
                d.links = dn.at("links").get<std::vector<std::string>>();
            nom.descriptors.push_back(std::move(d));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("nomenclature JSON: ") + e.what());
    }

    // Unique ids, then reject any surface form shared across descriptors.
    std::set<std::string> ids;
    for (const Descriptor& d : nom.descriptors)
        if (!ids.insert(d.id).second)
            throw ValidationError("duplicate descriptor id \"" + d.id + "\"");

    std::map<std::string, std::string> form_owner;  // normalized form -> descriptor id
    for (Descriptor& d : nom.descriptors) {
        auto claim = [&](const std::string& form, const std::string& norm) {
            auto [it, inserted] = form_owner.emplace(norm, d.id);
            if (!inserted && it->second != d.id)
                throw ValidationError("surface form \"" + form + "\" is claimed by both \"" +
                                      it->second + "\" and \"" + d.id + "\"");
        };
        std::string canonical_norm = uni::normalize_form(d.canonical);
        if (canonical_norm.empty())
            throw ValidationError("descriptor \"" + d.id + "\": blank canonical form");
        claim(d.canonical, canonical_norm);
        std::set<std::string> seen;  // variants must be distinct within the class
        for (const std::string& v : d.variants) {
            std::string norm = uni::normalize_form(v);
            if (norm.empty())
                throw ValidationError("descriptor \"" + d.id + "\": blank variant form");
            if (norm == canonical_norm) continue;  // restating the canonical adds nothing
            if (!seen.insert(norm).second)
                throw ValidationError("descriptor \"" + d.id + "\": duplicate variant \"" + v +
                                      "\"");
            claim(v, norm);
        }
    }

    // Symmetrize links; unknown targets are a load error.
    for (size_t i = 0; i < nom.descriptors.size(); ++i) {
        for (const std::string& target : nom.descriptors[i].links) {
            if (target == nom.descriptors[i].id)
                throw ValidationError("descriptor \"" + target + "\" links to itself");
            bool found = false;
            for (Descriptor& other : nom.descriptors) {
                if (other.id != target) continue;
                found = true;
                if (std::find(other.links.begin(), other.links.end(),
                              nom.descriptors[i].id) == other.links.end())
                    other.links.push_back(nom.descriptors[i].id);
            }
            if (!found)
                throw ValidationError("descriptor \"" + nom.descriptors[i].id +
                                      "\" links to unknown descriptor \"" + target + "\"");
        }
    }
    for (Descriptor& d : nom.descriptors) {
        std::sort(d.links.begin(), d.links.end());
        d.links.erase(std::unique(d.links.begin(), d.links.end()), d.links.end());
    }
    return nom;
}

json serialize_nomenclature(const Nomenclature& nom) {
    json root;
    json list = json::array();
    for (const Descriptor& d : nom.descriptors)
        list.push_back({{"id", d.id},
                        {"canonical", d.canonical},
                        {"variants", d.variants},
                        {"links", d.links}});
    root["descriptors"] = std::move(list);
    return root;
}

namespace {

// Per-paragraph match stream: NFC-composed, lowercased codepoints with a map
// back to raw scalar offsets (composition can only shrink, never grow).
struct MatchText {
    std::u32string norm;
    std::vector<uint32_t> raw_begin;  // raw offset where norm[i] starts
    uint32_t raw_length = 0;

    uint32_t raw_end_of(size_t norm_index) const {
        return norm_index + 1 < raw_begin.size() ? raw_begin[norm_index + 1] : raw_length;
    }
};

MatchText make_match_text(const std::string& text) {
    MatchText mt;
    std::u32string raw = uni::decode_utf8(text);
    mt.raw_length = static_cast<uint32_t>(raw.size());
    mt.norm.reserve(raw.size());
    mt.raw_begin.reserve(raw.size());
    for (uint32_t i = 0; i < raw.size(); ++i) {
        char32_t c = raw[i];
        if (!mt.norm.empty() && c >= 0x300 && c <= 0x36F) {
            std::u32string pair{mt.norm.back(), c};
            std::u32string composed = uni::nfc(pair);
            if (composed.size() == 1) {
                mt.norm.back() = uni::to_lower(composed[0]);
                continue;  // raw_begin of the base char already covers the mark
            }
        }
        if (c == 0x2019) c = U'\'';
        if (uni::is_space(c)) c = U' ';
        mt.norm.push_back(uni::to_lower(c));
        mt.raw_begin.push_back(i);
    }
    return mt;
}

struct Form {
    std::u32string text;
    uint32_t descriptor = 0;  // index into Nomenclature::descriptors
    std::string utf8;
};

} // namespace

OccurrenceTable locate_occurrences(const Document& doc, const Nomenclature& nom) {
    std::vector<Form> forms;
    for (uint32_t di = 0; di < nom.descriptors.size(); ++di) {
        const Descriptor& d = nom.descriptors[di];
        auto add = [&](const std::string& f) {
            std::string norm = uni::normalize_form(f);
            forms.push_back({uni::decode_utf8(norm), di, norm});
        };
        add(d.canonical);
        for (const std::string& v : d.variants) add(v);
    }
    // Longest first so the first hit at a position is the winning one.
    std::stable_sort(forms.begin(), forms.end(), [](const Form& a, const Form& b) {
        return a.text.size() > b.text.size();
    });

    std::vector<Occurrence> found;
    for (const Paragraph& p : doc.paragraphs) {
        MatchText mt = make_match_text(p.text);
        const std::u32string& t = mt.norm;
        size_t pos = 0;
        while (pos < t.size()) {
            if (!uni::is_alnum(t[pos])) {
                ++pos;
                continue;
            }
            // Word start: previous char (if any) is not alphanumeric.
            if (pos > 0 && uni::is_alnum(t[pos - 1])) {
                ++pos;
                continue;
            }
            const Form* hit = nullptr;
            for (const Form& f : forms) {
                if (f.text.empty() || pos + f.text.size() > t.size()) continue;
                if (t.compare(pos, f.text.size(), f.text) != 0) continue;
                size_t after = pos + f.text.size();
                if (after < t.size() && uni::is_alnum(t[after])) continue;
                hit = &f;
                break;
            }
            if (!hit) {
                ++pos;
                continue;
            }
            size_t end_norm = pos + hit->text.size();
            Occurrence occ;
            occ.descriptor_id = nom.descriptors[hit->descriptor].id;
            occ.paragraph_index = p.index;
            occ.start = mt.raw_begin[pos];
            occ.end = mt.raw_end_of(end_norm - 1);
            occ.matched_form = hit->utf8;
            occ.in_heading = p.kind == ParagraphKind::Heading;
            occ.emphasized = occ.in_heading;
            for (const TypoSpan& s : p.spans)
                if (s.start < occ.end && occ.start < s.end) {
                    occ.emphasized = true;
                    break;
                }
            found.push_back(std::move(occ));
            pos = end_norm;
        }
    }
    return OccurrenceTable(std::move(found));
}

} // namespace indexforge
