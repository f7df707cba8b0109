#ifndef INDEXFORGE_NOMENCLATURE_HPP_INCLUDED
#define INDEXFORGE_NOMENCLATURE_HPP_INCLUDED

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "indexforge/doc_model.hpp"

namespace indexforge {

/// An index entry term together with its variant class (the canonical form
/// plus all listed surface variants) and its semantic links.
struct Descriptor {
    std::string id;
    std::string canonical;
    std::vector<std::string> variants;
    std::vector<std::string> links;  // descriptor ids, symmetric
};

class Nomenclature {
public:
    std::vector<Descriptor> descriptors;

    const Descriptor* find(const std::string& id) const;
    size_t index_of(const std::string& id) const;  // throws IntegrityError
    bool linked(const std::string& a, const std::string& b) const;
    size_t degree(const std::string& id) const;
};

/// One match of a descriptor class in the document. Offsets are scalar-value
/// offsets into the paragraph text.
struct Occurrence {
    std::string descriptor_id;
    uint32_t paragraph_index = 0;
    uint32_t start = 0;
    uint32_t end = 0;
    std::string matched_form;
    bool emphasized = false;  // overlaps a typo span, or the paragraph is a heading
    bool in_heading = false;
};

/// All occurrences, order-normalized (paragraph, then offset), with
/// by-descriptor and by-paragraph views over the same underlying set.
class OccurrenceTable {
public:
    explicit OccurrenceTable(std::vector<Occurrence> occurrences = {});

    const std::vector<Occurrence>& all() const { return occurrences_; }

    /// Indices into all() for one descriptor, in document order.
    std::span<const uint32_t> of_descriptor(const std::string& id) const;
    std::span<const uint32_t> in_paragraph(uint32_t paragraph_index) const;

    uint32_t count_of(const std::string& id) const;  // occ_i

private:
    std::vector<Occurrence> occurrences_;
    std::map<std::string, std::vector<uint32_t>> by_descriptor_;
    std::map<uint32_t, std::vector<uint32_t>> by_paragraph_;
};

/// Loads the nomenclature JSON, enforcing invariants: unique ids, no shared
/// surface form across descriptors, symmetric links.
Nomenclature load_nomenclature(std::string_view source);

nlohmann::json serialize_nomenclature(const Nomenclature& nom);

/// Finds every maximal, case-insensitive, whole-word match of any surface
/// form of any descriptor class. Leftmost-longest wins; matches never
/// overlap. NFC normalization and U+2019 apostrophes are handled so that
/// elided French forms ("d'insertion") match either apostrophe.
OccurrenceTable locate_occurrences(const Document& doc, const Nomenclature& nom);

} // namespace indexforge

#endif
