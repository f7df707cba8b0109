#ifndef INDEXFORGE_SEGMENTATION_HPP_INCLUDED
#define INDEXFORGE_SEGMENTATION_HPP_INCLUDED

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "indexforge/config.hpp"
#include "indexforge/continuity.hpp"
#include "indexforge/doc_model.hpp"
#include "indexforge/nomenclature.hpp"

namespace indexforge {

/// A maximal run of paragraphs judged continuous by the absolute
/// segmentation. Never crosses a section frontier.
struct DocumentaryUnit {
    uint32_t first_paragraph = 0;
    uint32_t last_paragraph = 0;
    uint32_t section = 0;  // owning section, index into Document::sections
};

enum class SegmentStage { Plain, Simplified, Generalized };

/// The span of text one index reference points to. Whole-section segments
/// keep their paragraph range populated (the section's subtree range) so
/// scoring can use it as the segment extent.
struct ReferenceSegment {
    std::string descriptor_id;
    SegmentStage stage = SegmentStage::Plain;
    bool whole_section = false;
    uint32_t section = 0;  // meaningful when whole_section
    uint32_t first_paragraph = 0;
    uint32_t last_paragraph = 0;

    uint32_t size() const { return last_paragraph - first_paragraph + 1; }
};

/// Totals per segmentation stage, summed over descriptors, for the unit
/// count report. paragraph_occurrences counts distinct
/// (descriptor, paragraph) pairs: the reference count a segmentation-free
/// index would need.
struct StageCounts {
    uint64_t mdus = 0;
    uint64_t dus = 0;
    uint64_t plain = 0;
    uint64_t simplified = 0;
    uint64_t generalized = 0;
    uint64_t paragraph_occurrences = 0;
};

struct SegmentationResult {
    std::vector<DocumentaryUnit> dus;
    std::map<std::string, std::vector<ReferenceSegment>> per_descriptor;  // final stage
    StageCounts stage_counts;
};

/// Step 1: one minimal documentary unit per paragraph.
std::vector<DocumentaryUnit> build_mdus(const Document& doc);

/// Step 2: greedy left-to-right widening. A unit absorbs its successor as
/// long as no section frontier separates them and at least one continuity
/// cue holds between the last absorbed paragraph and the next.
std::vector<DocumentaryUnit> widen_to_dus(const std::vector<DocumentaryUnit>& mdus,
                                          const Document& doc, const MarkerDictionary& dict,
                                          const OccurrenceTable& occ, const Nomenclature& nom,
                                          const EngineConfig& config);

/// Step 3: the DUs containing at least one occurrence of the class.
std::vector<ReferenceSegment> plain_segments(const std::string& descriptor_id,
                                             const std::vector<DocumentaryUnit>& dus,
                                             const OccurrenceTable& occ);

/// Step 4: fuses runs of segments that are contiguous in the document.
std::vector<ReferenceSegment> simplify_segments(std::vector<ReferenceSegment> segments);

/// Step 5: replaces a section's segments with one whole-section reference
/// when they cover more than the configured share of its paragraphs.
/// Decisions are taken at the deepest section containing each segment;
/// cascade_generalization re-examines ancestors.
std::vector<ReferenceSegment> generalize_segments(std::vector<ReferenceSegment> segments,
                                                  const Document& doc,
                                                  const EngineConfig& config);

/// The full two-phase pipeline for every descriptor class. The relative
/// phase runs as a parallel map over descriptors when config.jobs allows.
SegmentationResult segment_document(const Document& doc, const Nomenclature& nom,
                                    const OccurrenceTable& occ, const MarkerDictionary& dict,
                                    const EngineConfig& config);

/// "-20%" for 793 -> 634; "-0%" for equal counts; "+50%" when a stage grows.
std::string format_reduction(uint64_t before, uint64_t after);

/// Plain-text unit count table with the three reduction factors.
std::string render_stats_report(const StageCounts& counts);

} // namespace indexforge

#endif
