#ifndef INDEXFORGE_SCORING_HPP_INCLUDED
#define INDEXFORGE_SCORING_HPP_INCLUDED

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "indexforge/config.hpp"
#include "indexforge/doc_model.hpp"
#include "indexforge/nomenclature.hpp"
#include "indexforge/segmentation.hpp"

namespace indexforge {

/// A reference segment with its relevance score and the ingredients the
/// score was built from.
struct ScoredReference {
    ReferenceSegment segment;
    double siw = 0.0;
    std::map<std::string, double> sdw_terms;  // per descriptor occurring in the segment
    double s_score = 0.0;
};

struct DescriptorScore {
    std::string descriptor_id;
    double ddw = 0.0;
    double diw = 0.0;
    double dsw = 0.0;
    double d_score = 0.0;
    std::vector<ScoredReference> references;  // document order
};

struct ScoredIndex {
    std::vector<DescriptorScore> descriptors;  // nomenclature order
    std::vector<uint32_t> by_relevance;        // indices, rank_descriptors order

    const DescriptorScore* find(const std::string& id) const;
};

/// Evaluates the segment and descriptor relevance formulas over one
/// document. All member functions are pure; the constructor only
/// precomputes the first-occurrence table.
class Scorer {
public:
    Scorer(const Document& doc, const Nomenclature& nom, const OccurrenceTable& occ,
           const DocumentStats& stats, const ScoringConfig& config);

    /// occ_ij * ln(P / P_i): high when the class clusters in this segment.
    double sdw(const std::string& descriptor_id, const ReferenceSegment& segment) const;

    /// Intrinsic segment weight: emphasis, first occurrences, and the
    /// section's status (headings outrank body; summary/conclusion sink).
    double siw(const ReferenceSegment& segment) const;

    /// siw_j * sum over descriptors k in the segment of alpha_k * sdw(k, j),
    /// alpha_k = 1 for the descriptor itself and its variants.
    double s_score(const std::string& descriptor_id, const ReferenceSegment& segment) const;

    /// (occ_i / occ') * ln(P / P_i).
    double ddw(const std::string& descriptor_id) const;

    /// 1 + w_emph * emphasized fraction + w_special_part when the class
    /// reaches a heading, summary or introduction.
    double diw(const std::string& descriptor_id) const;

    /// 1 + ln(1 + semantic degree).
    double dsw(const std::string& descriptor_id) const;

    /// dsw * sqrt(ddw * diw * sum_j s_score(i,j) / P_i) over the final
    /// reference segments; 0 when the class never occurs.
    DescriptorScore score_descriptor(const std::string& descriptor_id,
                                     const std::vector<ReferenceSegment>& segments) const;

    ScoredReference score_reference(const std::string& descriptor_id,
                                    const ReferenceSegment& segment) const;

    uint32_t occurrences_in(const std::string& descriptor_id,
                            const ReferenceSegment& segment) const;  // occ_ij

private:
    const Document& doc_;
    const Nomenclature& nom_;
    const OccurrenceTable& occ_;
    const DocumentStats& stats_;
    const ScoringConfig& config_;
    std::map<std::string, uint32_t> first_occurrence_;  // descriptor -> paragraph
};

/// Scores every descriptor over its final segments; parallel over
/// descriptors when jobs allows.
ScoredIndex score_all(const Document& doc, const Nomenclature& nom,
                      const OccurrenceTable& occ, const DocumentStats& stats,
                      const SegmentationResult& seg, const EngineConfig& config);

/// Indices into `references` sorted by s-score descending, ties broken by
/// document position. Stable.
std::vector<uint32_t> rank_references(const std::vector<ScoredReference>& references);

/// Indices into `descriptors` sorted by d-score descending, ties broken
/// alphabetically by canonical form. Stable.
std::vector<uint32_t> rank_descriptors(const std::vector<DescriptorScore>& descriptors,
                                       const Nomenclature& nom);

} // namespace indexforge

#endif
