#include "indexforge/engine.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/file_io.hpp"

#include <fstream>

namespace indexforge {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on: " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on: " + path.string());
}

PipelineResult run_pipeline(Document doc, Nomenclature nom, MarkerDictionary markers,
                            const EngineConfig& config) {
    config.validate();
    PipelineResult r;
    r.doc = std::move(doc);
    r.nom = std::move(nom);
    r.markers = std::move(markers);
    r.empty_dictionary = r.markers.empty();

    r.occurrences = locate_occurrences(r.doc, r.nom);
    r.doc.stats = compute_stats(r.doc, r.occurrences);
    r.segmentation = segment_document(r.doc, r.nom, r.occurrences, r.markers, config);
    r.scores = score_all(r.doc, r.nom, r.occurrences, r.doc.stats, r.segmentation, config);
    Index full = build_index(r.segmentation, r.scores, r.nom, r.doc, config);
    r.index = filter_index(std::move(full), config);
    return r;
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& path) {
    std::filesystem::path p(path);
    return p.is_absolute() ? p : base / p;
}

} // namespace

PipelineResult run_pipeline_from_files(const EngineConfig& config,
                                       const std::filesystem::path& base_dir) {
    if (config.document_path.empty())
        throw ValidationError("config: no document path given");
    if (config.nomenclature_path.empty())
        throw ValidationError("config: no nomenclature path given");

    std::filesystem::path doc_path = resolve(base_dir, config.document_path);
    std::string format = config.document_format;
    if (format == "auto")
        format = doc_path.extension() == ".json" ? "json" : "markup";
    Document doc = import_document(read_file(doc_path), format);

    Nomenclature nom = load_nomenclature(read_file(resolve(base_dir, config.nomenclature_path)));

    std::string integration, anaphoric;
    if (!config.integration_markers_path.empty())
        integration = read_file(resolve(base_dir, config.integration_markers_path));
    if (!config.anaphoric_pronouns_path.empty())
        anaphoric = read_file(resolve(base_dir, config.anaphoric_pronouns_path));
    MarkerDictionary markers = load_markers(integration, anaphoric);

    return run_pipeline(std::move(doc), std::move(nom), std::move(markers), config);
}

} // namespace indexforge
