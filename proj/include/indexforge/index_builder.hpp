#ifndef INDEXFORGE_INDEX_BUILDER_HPP_INCLUDED
#define INDEXFORGE_INDEX_BUILDER_HPP_INCLUDED

#include <string>
#include <vector>

#include "indexforge/config.hpp"
#include "indexforge/doc_model.hpp"
#include "indexforge/nomenclature.hpp"
#include "indexforge/scoring.hpp"
#include "indexforge/segmentation.hpp"

namespace indexforge {

struct IndexReference {
    ReferenceSegment segment;
    double s_score = 0.0;
    std::string anchor;      // target id inside document.html
    std::string section_id;  // owning/promoted section
};

struct IndexEntry {
    std::string descriptor_id;
    std::string display;  // canonical form
    double d_score = 0.0;
    std::vector<IndexReference> references;  // display order (see EngineConfig)
    std::vector<std::string> see_also;       // display forms of linked descriptors
};

/// The assembled index: the alphabetical nomenclature view plus a parallel
/// by-relevance ordering, the segmentation stage counts, and the config
/// snapshot that produced it.
struct Index {
    std::vector<IndexEntry> entries;        // alphabetical
    std::vector<std::string> by_relevance;  // descriptor ids, best first
    StageCounts stage_counts;
    EngineConfig config;
};

/// Deterministic anchor for a segment: the section id for whole-section
/// references, "<section id>-p<first paragraph>" for ranges. Characters
/// outside [A-Za-z0-9_-] are replaced so the result is a valid HTML id.
std::string segment_anchor(const Document& doc, const ReferenceSegment& segment);

std::string html_id_sanitize(const std::string& raw);

/// Assembles one entry per descriptor: ranked references with anchors and
/// see-also cross-references from the nomenclature's semantic links.
/// Throws IntegrityError when a final segment lacks a score.
Index build_index(const SegmentationResult& seg, const ScoredIndex& scores,
                  const Nomenclature& nom, const Document& doc, const EngineConfig& config);

/// Applies min_descriptor_score and max_references (0 = unlimited).
/// Truncation keeps the top-scored references. Idempotent.
Index filter_index(Index index, const EngineConfig& config);

/// Case- and accent-insensitive ordering by display form; stable.
std::vector<IndexEntry> alphabetize(std::vector<IndexEntry> entries);

} // namespace indexforge

#endif
