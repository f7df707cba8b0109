#ifndef INDEXFORGE_CONTINUITY_HPP_INCLUDED
#define INDEXFORGE_CONTINUITY_HPP_INCLUDED

#include <string>
#include <vector>

#include "indexforge/doc_model.hpp"
#include "indexforge/nomenclature.hpp"

namespace indexforge {

/// Paragraph-initial continuity cues: linear-integration markers
/// ("moreover", "en effet") and anaphoric pronouns ("these", "ces").
/// Entries are lowercase and NFC-normalized.
struct MarkerDictionary {
    std::vector<std::string> integration_markers;
    std::vector<std::string> anaphoric_pronouns;

    bool empty() const { return integration_markers.empty() && anaphoric_pronouns.empty(); }
};

/// Parses one dictionary file: UTF-8, one surface form per line, '#' line
/// comments. Forms come back normalized.
std::vector<std::string> parse_marker_lines(std::string_view source);

MarkerDictionary load_markers(std::string_view integration_source,
                              std::string_view anaphoric_source);

/// True iff the paragraph, after leading whitespace/punctuation, begins with
/// a dictionary form followed by a word boundary.
bool paragraph_initial_marker(const Paragraph& p, const MarkerDictionary& dict);

/// True iff both paragraphs are list items, or both are covered >= 90% by
/// italic spans, or both >= 90% by bold spans.
bool typographic_homogeneity(const Paragraph& a, const Paragraph& b);

/// |R| / |U| where U is the set of descriptor classes occurring in either
/// paragraph and R the classes shared between them, counting a semantic
/// link to a class on the other side as sharing. 0 when U is empty.
double lexical_cohesion(const Paragraph& a, const Paragraph& b,
                        const OccurrenceTable& occ, const Nomenclature& nom);

struct ContinuityVerdict {
    bool linguistic = false;
    bool typographic = false;
    bool lexical = false;       // cohesion_score >= threshold
    double cohesion_score = 0.0;
};

/// Evaluates all cues between paragraph a and its immediate successor b.
/// Linguistic continuity is carried by b's opening marker.
ContinuityVerdict evaluate_continuity(const Paragraph& a, const Paragraph& b,
                                      const MarkerDictionary& dict,
                                      const OccurrenceTable& occ, const Nomenclature& nom,
                                      double cohesion_threshold);

} // namespace indexforge

#endif
