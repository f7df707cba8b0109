#include "indexforge/segmentation.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace indexforge {

std::vector<DocumentaryUnit> build_mdus(const Document& doc) {
    std::vector<DocumentaryUnit> mdus;
    mdus.reserve(doc.paragraphs.size());
    for (const Paragraph& p : doc.paragraphs)
        mdus.push_back({p.index, p.index, p.section});
    return mdus;
}

std::vector<DocumentaryUnit> widen_to_dus(const std::vector<DocumentaryUnit>& mdus,
                                          const Document& doc, const MarkerDictionary& dict,
                                          const OccurrenceTable& occ, const Nomenclature& nom,
                                          const EngineConfig& config) {
    std::vector<DocumentaryUnit> dus;
    if (mdus.empty()) return dus;
    DocumentaryUnit current = mdus.front();
    for (size_t i = 1; i < mdus.size(); ++i) {
        const DocumentaryUnit& next = mdus[i];
        const Paragraph& prev_p = doc.paragraphs[current.last_paragraph];
        const Paragraph& next_p = doc.paragraphs[next.first_paragraph];
        bool merge = false;
        if (prev_p.section == next_p.section) {
            ContinuityVerdict v = evaluate_continuity(prev_p, next_p, dict, occ, nom,
                                                      config.cohesion_threshold);
            merge = v.linguistic || v.typographic ||
                    (config.enable_lexical_cohesion_merge && v.lexical);
        }
        if (merge) {
            current.last_paragraph = next.last_paragraph;
        } else {
            dus.push_back(current);
            current = next;
        }
    }
    dus.push_back(current);
    return dus;
}

std::vector<ReferenceSegment> plain_segments(const std::string& descriptor_id,
                                             const std::vector<DocumentaryUnit>& dus,
                                             const OccurrenceTable& occ) {
    std::span<const uint32_t> hits = occ.of_descriptor(descriptor_id);
    std::vector<ReferenceSegment> segments;
    size_t h = 0;
    for (const DocumentaryUnit& du : dus) {
        // Occurrences and DUs are both in document order.
        while (h < hits.size() &&
               occ.all()[hits[h]].paragraph_index < du.first_paragraph)
            ++h;
        if (h < hits.size() && occ.all()[hits[h]].paragraph_index <= du.last_paragraph) {
            ReferenceSegment seg;
            seg.descriptor_id = descriptor_id;
            seg.stage = SegmentStage::Plain;
            seg.section = du.section;
            seg.first_paragraph = du.first_paragraph;
            seg.last_paragraph = du.last_paragraph;
            segments.push_back(std::move(seg));
        }
    }
    return segments;
}

std::vector<ReferenceSegment> simplify_segments(std::vector<ReferenceSegment> segments) {
    std::vector<ReferenceSegment> out;
    for (ReferenceSegment& seg : segments) {
        seg.stage = SegmentStage::Simplified;
        if (!out.empty() && out.back().last_paragraph + 1 == seg.first_paragraph) {
            out.back().last_paragraph = seg.last_paragraph;
        } else {
            out.push_back(std::move(seg));
        }
    }
    return out;
}

namespace {

// Promotion check for one section: strictly more than `threshold` of its
// subtree paragraphs must be covered.
bool covers_enough(uint64_t covered, uint64_t total, double threshold) {
    if (total == 0) return false;
    return static_cast<double>(covered) / static_cast<double>(total) > threshold;
}

ReferenceSegment whole_section_segment(const std::string& descriptor_id, const Document& doc,
                                       uint32_t section) {
    const Section& sec = doc.sections[section];
    ReferenceSegment seg;
    seg.descriptor_id = descriptor_id;
    seg.stage = SegmentStage::Generalized;
    seg.whole_section = true;
    seg.section = section;
    seg.first_paragraph = static_cast<uint32_t>(sec.subtree_first);
    seg.last_paragraph = static_cast<uint32_t>(sec.subtree_last);
    return seg;
}

// Sort by position, drop segments nested inside another, and trim the rare
// partial overlap between a promoted section and a range that crosses its
// frontier. Whole-section segments keep their full extent; ranges yield.
std::vector<ReferenceSegment> normalize_final(std::vector<ReferenceSegment> segments) {
    std::stable_sort(segments.begin(), segments.end(),
                     [](const ReferenceSegment& a, const ReferenceSegment& b) {
                         if (a.first_paragraph != b.first_paragraph)
                             return a.first_paragraph < b.first_paragraph;
                         return a.last_paragraph > b.last_paragraph;
                     });
    std::vector<ReferenceSegment> out;
    for (ReferenceSegment& seg : segments) {
        if (!out.empty()) {
            ReferenceSegment& prev = out.back();
            if (seg.last_paragraph <= prev.last_paragraph) continue;  // contained
            if (seg.first_paragraph <= prev.last_paragraph) {
                if (!seg.whole_section) {
                    seg.first_paragraph = prev.last_paragraph + 1;
                } else {
                    // prev must be a range here: two section subtrees never
                    // overlap partially, and it starts strictly earlier.
                    prev.last_paragraph = seg.first_paragraph - 1;
                }
            }
        }
        out.push_back(std::move(seg));
    }
    return out;
}

} // namespace

std::vector<ReferenceSegment> generalize_segments(std::vector<ReferenceSegment> segments,
                                                  const Document& doc,
                                                  const EngineConfig& config) {
    if (segments.empty()) return segments;
    const std::string descriptor_id = segments.front().descriptor_id;
    for (ReferenceSegment& seg : segments) seg.stage = SegmentStage::Generalized;

    if (!config.cascade_generalization) {
        // Each segment takes part only in the decision of the deepest
        // section that contains it. Segments spanning several top-level
        // sections have no enclosing section and cannot be promoted.
        std::map<int64_t, std::vector<ReferenceSegment>> groups;
        for (ReferenceSegment& seg : segments) {
            std::optional<uint32_t> sec =
                seg.whole_section ? seg.section
                                  : doc.deepest_section_containing(seg.first_paragraph,
                                                                   seg.last_paragraph);
            groups[sec ? static_cast<int64_t>(*sec) : -1].push_back(std::move(seg));
        }
        std::vector<ReferenceSegment> out;
        for (auto& [sec, group] : groups) {
            uint64_t covered = 0;
            for (const ReferenceSegment& seg : group) covered += seg.size();
            if (sec >= 0 &&
                covers_enough(covered, doc.subtree_paragraph_count(static_cast<uint32_t>(sec)),
                              config.generalization_threshold)) {
                out.push_back(
                    whole_section_segment(descriptor_id, doc, static_cast<uint32_t>(sec)));
            } else {
                for (ReferenceSegment& seg : group) out.push_back(std::move(seg));
            }
        }
        return normalize_final(std::move(out));
    }

    // Cascading mode: sweep sections bottom-up; a promoted section counts as
    // fully covered when its parent is examined.
    std::vector<uint32_t> order(doc.sections.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return doc.sections[a].depth > doc.sections[b].depth;
    });
    for (uint32_t sec : order) {
        const Section& s = doc.sections[sec];
        if (s.subtree_first < 0) continue;
        uint64_t covered = 0;
        bool any = false;
        for (const ReferenceSegment& seg : segments) {
            if (seg.first_paragraph >= s.subtree_first &&
                seg.last_paragraph <= static_cast<uint32_t>(s.subtree_last)) {
                covered += seg.size();
                any = true;
            }
        }
        if (!any) continue;
        if (!covers_enough(covered, doc.subtree_paragraph_count(sec),
                           config.generalization_threshold))
            continue;
        std::vector<ReferenceSegment> kept;
        for (ReferenceSegment& seg : segments)
            if (!(seg.first_paragraph >= s.subtree_first &&
                  seg.last_paragraph <= static_cast<uint32_t>(s.subtree_last)))
                kept.push_back(std::move(seg));
        kept.push_back(whole_section_segment(descriptor_id, doc, sec));
        segments = std::move(kept);
        std::stable_sort(segments.begin(), segments.end(),
                         [](const ReferenceSegment& a, const ReferenceSegment& b) {
                             return a.first_paragraph < b.first_paragraph;
                         });
    }
    return normalize_final(std::move(segments));
}

SegmentationResult segment_document(const Document& doc, const Nomenclature& nom,
                                    const OccurrenceTable& occ, const MarkerDictionary& dict,
                                    const EngineConfig& config) {
    SegmentationResult result;
    std::vector<DocumentaryUnit> mdus = build_mdus(doc);
    result.stage_counts.mdus = mdus.size();
    result.dus = widen_to_dus(mdus, doc, dict, occ, nom, config);
    result.stage_counts.dus = result.dus.size();

    struct PerDescriptor {
        size_t plain = 0;
        size_t simplified = 0;
        std::vector<ReferenceSegment> final_segments;
    };
    std::vector<PerDescriptor> slots(nom.descriptors.size());
    parallel_for(nom.descriptors.size(), config.jobs, [&](size_t i) {
        const std::string& id = nom.descriptors[i].id;
        std::vector<ReferenceSegment> plain = plain_segments(id, result.dus, occ);
        slots[i].plain = plain.size();
        std::vector<ReferenceSegment> simplified = simplify_segments(std::move(plain));
        slots[i].simplified = simplified.size();
        slots[i].final_segments = generalize_segments(std::move(simplified), doc, config);
    });

    for (size_t i = 0; i < nom.descriptors.size(); ++i) {
        result.stage_counts.plain += slots[i].plain;
        result.stage_counts.simplified += slots[i].simplified;
        result.stage_counts.generalized += slots[i].final_segments.size();
        result.per_descriptor[nom.descriptors[i].id] = std::move(slots[i].final_segments);
    }

    std::set<std::pair<std::string, uint32_t>> pairs;
    for (const Occurrence& o : occ.all()) pairs.emplace(o.descriptor_id, o.paragraph_index);
    result.stage_counts.paragraph_occurrences = pairs.size();
    return result;
}

std::string format_reduction(uint64_t before, uint64_t after) {
    if (before == 0) return after == 0 ? "-0%" : "+inf%";
    double ratio = static_cast<double>(after) / static_cast<double>(before);
    if (after <= before) {
        long pct = std::lround((1.0 - ratio) * 100.0);
        return "-" + std::to_string(pct) + "%";
    }
    long pct = std::lround((ratio - 1.0) * 100.0);
    return "+" + std::to_string(pct) + "%";
}

std::string render_stats_report(const StageCounts& c) {
    std::ostringstream os;
    os << "Unit counts\n";
    os << "  1 minimal documentary units  " << c.mdus << "\n";
    os << "  2 documentary units          " << c.dus << "\n";
    os << "  3 plain segments             " << c.plain << "\n";
    os << "  4 simplified segments        " << c.simplified << "\n";
    os << "  5 generalized segments       " << c.generalized << "\n";
    os << "  6 paragraph occurrences      " << c.paragraph_occurrences << "\n";
    os << "Reduction factors\n";
    os << "  1->2 " << format_reduction(c.mdus, c.dus) << "\n";
    os << "  3->4 " << format_reduction(c.plain, c.simplified) << "\n";
    os << "  4->5 " << format_reduction(c.simplified, c.generalized) << "\n";
    return os.str();
}

} // namespace indexforge
