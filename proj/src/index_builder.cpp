#include "indexforge/index_builder.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/unicode.hpp"

#include <algorithm>

namespace indexforge {

std::string html_id_sanitize(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '-' || c == '_';
        out.push_back(ok ? c : '_');
    }
    if (out.empty()) out = "_";
    return out;
}

std::string segment_anchor(const Document& doc, const ReferenceSegment& seg) {
    if (seg.whole_section) return html_id_sanitize(doc.sections[seg.section].id);
    const Section& owner = doc.owner(seg.first_paragraph);
    return html_id_sanitize(owner.id) + "-p" + std::to_string(seg.first_paragraph);
}

Index build_index(const SegmentationResult& seg, const ScoredIndex& scores,
                  const Nomenclature& nom, const Document& doc, const EngineConfig& config) {
    Index index;
    index.stage_counts = seg.stage_counts;
    index.config = config;

    for (const Descriptor& d : nom.descriptors) {
        const DescriptorScore* score = scores.find(d.id);
        if (!score)
            throw IntegrityError("no score computed for descriptor \"" + d.id + "\"");
        auto seg_it = seg.per_descriptor.find(d.id);
        size_t segment_count =
            seg_it == seg.per_descriptor.end() ? 0 : seg_it->second.size();
        if (score->references.size() != segment_count)
            throw IntegrityError("descriptor \"" + d.id + "\": " +
                                 std::to_string(segment_count) + " segments but " +
                                 std::to_string(score->references.size()) + " scores");

        IndexEntry entry;
        entry.descriptor_id = d.id;
        entry.display = d.canonical;
        entry.d_score = score->d_score;
        for (const ScoredReference& ref : score->references) {
            IndexReference out;
            out.segment = ref.segment;
            out.s_score = ref.s_score;
            out.anchor = segment_anchor(doc, ref.segment);
            out.section_id =
                ref.segment.whole_section
                    ? doc.sections[ref.segment.section].id
                    : doc.owner(ref.segment.first_paragraph).id;
            entry.references.push_back(std::move(out));
        }
        if (config.reference_order == ReferenceOrder::Relevance) {
            std::vector<uint32_t> order = rank_references(score->references);
            std::vector<IndexReference> ranked;
            ranked.reserve(entry.references.size());
            for (uint32_t i : order) ranked.push_back(std::move(entry.references[i]));
            entry.references = std::move(ranked);
        }
        for (const std::string& linked : d.links) {
            const Descriptor* other = nom.find(linked);
            entry.see_also.push_back(other ? other->canonical : linked);
        }
        std::sort(entry.see_also.begin(), entry.see_also.end(),
                  [](const std::string& a, const std::string& b) {
                      return uni::collation_key(a) < uni::collation_key(b);
                  });
        index.entries.push_back(std::move(entry));
    }

    for (uint32_t i : scores.by_relevance)
        index.by_relevance.push_back(scores.descriptors[i].descriptor_id);
    index.entries = alphabetize(std::move(index.entries));
    return index;
}

Index filter_index(Index index, const EngineConfig& config) {
    std::vector<IndexEntry> kept;
    for (IndexEntry& entry : index.entries) {
        if (entry.d_score < config.min_descriptor_score) continue;
        if (config.max_references > 0 && entry.references.size() > config.max_references) {
            // Keep the top-scored references, then restore display order.
            std::vector<uint32_t> order(entry.references.size());
            for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                if (entry.references[a].s_score != entry.references[b].s_score)
                    return entry.references[a].s_score > entry.references[b].s_score;
                return entry.references[a].segment.first_paragraph <
                       entry.references[b].segment.first_paragraph;
            });
            order.resize(config.max_references);
            std::sort(order.begin(), order.end());  // display positions
            std::vector<IndexReference> trimmed;
            trimmed.reserve(order.size());
            for (uint32_t i : order) trimmed.push_back(std::move(entry.references[i]));
            entry.references = std::move(trimmed);
        }
        kept.push_back(std::move(entry));
    }
    index.entries = std::move(kept);

    std::vector<std::string> surviving;
    for (const std::string& id : index.by_relevance)
        for (const IndexEntry& e : index.entries)
            if (e.descriptor_id == id) {
                surviving.push_back(id);
                break;
            }
    index.by_relevance = std::move(surviving);
    index.config = config;
    return index;
}

std::vector<IndexEntry> alphabetize(std::vector<IndexEntry> entries) {
    std::vector<std::pair<std::string, size_t>> keyed(entries.size());
    for (size_t i = 0; i < entries.size(); ++i)
        keyed[i] = {uni::collation_key(entries[i].display), i};
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<IndexEntry> out;
    out.reserve(entries.size());
    for (const auto& [key, i] : keyed) out.push_back(std::move(entries[i]));
    return out;
}

} // namespace indexforge
