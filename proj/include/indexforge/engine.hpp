#ifndef INDEXFORGE_ENGINE_HPP_INCLUDED
#define INDEXFORGE_ENGINE_HPP_INCLUDED

#include <filesystem>
#include <string>

#include "indexforge/config.hpp"
#include "indexforge/continuity.hpp"
#include "indexforge/doc_model.hpp"
#include "indexforge/index_builder.hpp"
#include "indexforge/nomenclature.hpp"
#include "indexforge/scoring.hpp"
#include "indexforge/segmentation.hpp"

namespace indexforge {

/// Everything one run produces, kept around for reporting and tests.
struct PipelineResult {
    Document doc;
    Nomenclature nom;
    MarkerDictionary markers;
    OccurrenceTable occurrences;
    SegmentationResult segmentation;
    ScoredIndex scores;
    Index index;
    bool empty_dictionary = false;  // loaded dictionaries had no usable entry
};

/// Runs occurrence location, both segmentation phases, scoring and index
/// assembly over already-loaded inputs.
PipelineResult run_pipeline(Document doc, Nomenclature nom, MarkerDictionary markers,
                            const EngineConfig& config);

/// Loads every input named by the config (paths resolved against base_dir)
/// and runs the pipeline. The document format is taken from the config or,
/// on "auto", from the file extension (.json vs anything else).
PipelineResult run_pipeline_from_files(const EngineConfig& config,
                                       const std::filesystem::path& base_dir);

} // namespace indexforge

#endif
