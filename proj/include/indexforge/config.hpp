#ifndef INDEXFORGE_CONFIG_HPP_INCLUDED
#define INDEXFORGE_CONFIG_HPP_INCLUDED

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "indexforge/doc_model.hpp"

namespace indexforge {

/// Weights of the relevance measure. Every knob the formulas leave open is
/// configurable; the defaults reproduce the bundled ranking fixtures.
struct ScoringConfig {
    double alpha_other = 0.5;        // contribution of other descriptors in s-score
    double w_typo = 0.5;             // segment carries emphasis
    double w_new_descriptor = 0.25;  // per descriptor first occurring in the segment
    double w_heading = 1.0;          // segment contains a heading paragraph
    std::map<StructuralRole, double> role_weights = {
        {StructuralRole::TitlePage, -0.25}, {StructuralRole::Summary, -0.25},
        {StructuralRole::Introduction, 0.0}, {StructuralRole::Body, 0.0},
        {StructuralRole::Conclusion, -0.25},
    };
    double w_emph = 0.5;          // diw: fraction of emphasized occurrences
    double w_special_part = 0.5;  // diw: any occurrence in heading/summary/introduction
    double dsw_link_scale = 1.0;  // dsw = 1 + scale * ln(1 + degree)

    void validate() const;
};

enum class ReferenceOrder { Relevance, Document };

/// Everything a run needs: input paths, segmentation thresholds, scoring
/// weights and filter knobs. Mirrors the JSON config file one-to-one.
struct EngineConfig {
    std::string document_path;
    std::string nomenclature_path;
    std::string integration_markers_path;
    std::string anaphoric_pronouns_path;
    std::string output_dir = "out";
    std::string document_format = "auto";  // "auto" infers from the extension

    double cohesion_threshold = 0.5;
    double generalization_threshold = 0.5;
    bool enable_lexical_cohesion_merge = true;
    bool cascade_generalization = false;

    ScoringConfig scoring;

    double min_descriptor_score = 0.0;
    uint32_t max_references = 0;  // 0 = unlimited
    std::string locale = "fr";
    ReferenceOrder reference_order = ReferenceOrder::Relevance;
    uint32_t jobs = 0;  // 0 = hardware concurrency

    void validate() const;
};

EngineConfig parse_config(std::string_view source);
nlohmann::json serialize_config(const EngineConfig& config);

} // namespace indexforge

#endif
