#ifndef INDEXFORGE_DOC_MODEL_HPP_INCLUDED
#define INDEXFORGE_DOC_MODEL_HPP_INCLUDED

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace indexforge {

class OccurrenceTable;

enum class SpanStyle { Bold, Italic, TitleStyle };

enum class ParagraphKind { Prose, ListItem, Heading };

enum class StructuralRole { TitlePage, Summary, Introduction, Body, Conclusion };

const char* to_string(SpanStyle s);
const char* to_string(ParagraphKind k);
const char* to_string(StructuralRole r);
StructuralRole role_from_string(const std::string& s);

/// A typographic emphasis range. Offsets are Unicode scalar-value offsets
/// into the owning paragraph's text, non-overlapping and sorted.
struct TypoSpan {
    uint32_t start = 0;
    uint32_t end = 0;
    SpanStyle style = SpanStyle::Bold;
};

struct Paragraph {
    uint32_t index = 0;          // global reading-order index
    std::string text;            // UTF-8
    std::vector<TypoSpan> spans;
    ParagraphKind kind = ParagraphKind::Prose;
    uint32_t length = 0;         // scalar-value count, cached at import
    uint32_t section = 0;        // owning section, index into Document::sections
};

/// Sections are stored flat in preorder; the tree shape lives in
/// parent/children indices. A section's subtree always covers a contiguous
/// paragraph range because reading order is preorder (own paragraphs first,
/// then children).
struct Section {
    std::string id;
    std::string title;
    uint32_t depth = 1;
    StructuralRole role = StructuralRole::Body;
    int32_t parent = -1;
    std::vector<uint32_t> children;    // indices into Document::sections
    std::vector<uint32_t> paragraphs;  // the section's direct paragraphs
    int64_t subtree_first = -1;        // -1 when the subtree has no paragraphs
    int64_t subtree_last = -1;
};

struct DocumentStats {
    uint32_t paragraph_count = 0;                        // P
    std::map<std::string, uint32_t> paragraphs_with;     // P_i per descriptor
    double mean_occurrences = 0.0;                       // occ', 0 when none
    bool has_occurrences = false;
};

class Document {
public:
    std::string id;
    std::vector<Section> sections;     // preorder
    std::vector<Paragraph> paragraphs; // reading order, paragraphs[i].index == i
    DocumentStats stats;

    const Section& owner(uint32_t paragraph_index) const {
        return sections[paragraphs[paragraph_index].section];
    }

    /// Nearest enclosing role that is not Body; a paragraph inside a plain
    /// subsection of a conclusion still counts as conclusion material.
    StructuralRole effective_role(uint32_t section_index) const;

    /// Deepest section whose subtree contains the whole paragraph range.
    /// Empty when the range spans several top-level sections.
    std::optional<uint32_t> deepest_section_containing(uint32_t first, uint32_t last) const;

    uint32_t subtree_paragraph_count(uint32_t section_index) const;
};

/// Validates span invariants and recomputes the derived subtree ranges.
/// Importers call this; tests building documents directly must as well.
void finalize_document(Document& doc);

/// Parses the JSON interchange format. Throws ParseError on malformed
/// JSON/UTF-8 and ValidationError on invariant violations (the message
/// names the offending paragraph or section).
Document import_json_document(std::string_view source);

/// Parses the lightweight markup format: '#' heading lines open sections
/// (number of '#' = depth), blank lines separate paragraphs, '- ' lines are
/// list items, **bold** and *italic* become spans, and an '@role: <role>'
/// line tags the enclosing section. Heading lines also become kind=heading
/// paragraphs so that title occurrences stay addressable.
Document import_markup_document(std::string_view source);

/// Dispatches on a format tag ("json" or "markup").
Document import_document(std::string_view source, const std::string& format);

/// Nested-shape JSON mirroring the interchange schema. dump() of the result
/// is the canonical byte form used by round-trip tests.
nlohmann::json serialize_document(const Document& doc);

/// Fills P, every P_i and occ' from an occurrence table built against this
/// document. Throws IntegrityError when an occurrence references an unknown
/// paragraph.
DocumentStats compute_stats(const Document& doc, const OccurrenceTable& occurrences);

} // namespace indexforge

#endif
