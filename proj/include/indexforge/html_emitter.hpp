#ifndef INDEXFORGE_HTML_EMITTER_HPP_INCLUDED
#define INDEXFORGE_HTML_EMITTER_HPP_INCLUDED

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "indexforge/doc_model.hpp"
#include "indexforge/index_builder.hpp"

namespace indexforge {

/// Renders the document with every section and paragraph anchored.
std::string render_document_html(const Document& doc);

/// Renders the alphabetical index; every reference links into
/// document.html, see-also links cross-link surviving entries.
std::string render_index_html(const Index& index, const Document& doc);

/// Writes document.html and index.html into out_dir. Verifies that every
/// emitted href resolves before writing; a dangling anchor is an internal
/// error. Returns the written paths.
std::vector<std::filesystem::path> emit_html(const Index& index, const Document& doc,
                                             const std::filesystem::path& out_dir);

/// The index as a JSON value following the output schema.
nlohmann::json index_to_json(const Index& index);

/// Canonical serialization: sorted keys, compact, floats fixed to six
/// decimals. Byte-stable across runs and platforms.
std::string canonical_json(const nlohmann::json& value);

/// Writes canonical_json(index_to_json(index)) to out_path.
void emit_json(const Index& index, const std::filesystem::path& out_path);

/// Test hook: returns hrefs of the form "#x" or "file#x" that do not
/// resolve to an id in the target html. `pages` maps file name -> content;
/// fragment-only hrefs resolve against the page they appear in.
std::vector<std::string> dangling_hrefs(
    const std::vector<std::pair<std::string, std::string>>& pages);

} // namespace indexforge

#endif
