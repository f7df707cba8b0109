#include "indexforge/config.hpp"

#include "indexforge/errors.hpp"

namespace indexforge {

using nlohmann::json;

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError(std::string("config: ") + name + " must lie in [0,1]");
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0))
        throw ValidationError(std::string("config: ") + name + " must be >= 0");
}

constexpr StructuralRole kAllRoles[] = {
    StructuralRole::TitlePage, StructuralRole::Summary, StructuralRole::Introduction,
    StructuralRole::Body, StructuralRole::Conclusion,
};

} // namespace

void ScoringConfig::validate() const {
    if (!(alpha_other > 0.0 && alpha_other <= 1.0))
        throw ValidationError("config: alpha_other must lie in (0,1]");
    require_nonnegative(w_typo, "w_typo");
    require_nonnegative(w_new_descriptor, "w_new_descriptor");
    require_nonnegative(w_emph, "w_emph");
    require_nonnegative(w_special_part, "w_special_part");
    require_nonnegative(dsw_link_scale, "dsw_link_scale");
    for (StructuralRole r : kAllRoles)
        if (!role_weights.count(r))
            throw ValidationError(std::string("config: missing role weight for ") +
                                  to_string(r));
}

void EngineConfig::validate() const {
    require_unit(cohesion_threshold, "cohesion_threshold");
    require_unit(generalization_threshold, "generalization_threshold");
    require_nonnegative(min_descriptor_score, "min_descriptor_score");
    scoring.validate();
}

EngineConfig parse_config(std::string_view source) {
    json root;
    try {
        root = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
    EngineConfig cfg;
    try {
        cfg.document_path = root.value("document", cfg.document_path);
        cfg.nomenclature_path = root.value("nomenclature", cfg.nomenclature_path);
        cfg.integration_markers_path =
            root.value("integration_markers", cfg.integration_markers_path);
        cfg.anaphoric_pronouns_path =
            root.value("anaphoric_pronouns", cfg.anaphoric_pronouns_path);
        cfg.output_dir = root.value("output_dir", cfg.output_dir);
        cfg.document_format = root.value("document_format", cfg.document_format);
        cfg.cohesion_threshold = root.value("cohesion_threshold", cfg.cohesion_threshold);
        cfg.generalization_threshold =
            root.value("generalization_threshold", cfg.generalization_threshold);
        cfg.enable_lexical_cohesion_merge =
            root.value("enable_lexical_cohesion_merge", cfg.enable_lexical_cohesion_merge);
        cfg.cascade_generalization =
            root.value("cascade_generalization", cfg.cascade_generalization);
        cfg.min_descriptor_score =
            root.value("min_descriptor_score", cfg.min_descriptor_score);
        cfg.max_references = root.value("max_references", cfg.max_references);
        cfg.locale = root.value("locale", cfg.locale);
        cfg.jobs = root.value("jobs", cfg.jobs);
        if (root.contains("reference_order")) {
            std::string order = root.at("reference_order").get<std::string>();
            if (order == "relevance") cfg.reference_order = ReferenceOrder::Relevance;
            else if (order == "document") cfg.reference_order = ReferenceOrder::Document;
            else throw ValidationError("config: unknown reference_order \"" + order + "\"");
        }
        if (root.contains("scoring")) {
            const json& s = root.at("scoring");
            ScoringConfig& sc = cfg.scoring;
            sc.alpha_other = s.value("alpha_other", sc.alpha_other);
            sc.w_typo = s.value("w_typo", sc.w_typo);
            sc.w_new_descriptor = s.value("w_new_descriptor", sc.w_new_descriptor);
            sc.w_heading = s.value("w_heading", sc.w_heading);
            sc.w_emph = s.value("w_emph", sc.w_emph);
            sc.w_special_part = s.value("w_special_part", sc.w_special_part);
            sc.dsw_link_scale = s.value("dsw_link_scale", sc.dsw_link_scale);
            if (s.contains("role_weights"))
                for (const auto& [key, value] : s.at("role_weights").items())
                    sc.role_weights[role_from_string(key)] = value.get<double>();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

json serialize_config(const EngineConfig& cfg) {
    json role_weights;
    for (const auto& [role, weight] : cfg.scoring.role_weights)
        role_weights[to_string(role)] = weight;
    return json{
        {"document", cfg.document_path},
        {"nomenclature", cfg.nomenclature_path},
        {"integration_markers", cfg.integration_markers_path},
        {"anaphoric_pronouns", cfg.anaphoric_pronouns_path},
        {"output_dir", cfg.output_dir},
        {"document_format", cfg.document_format},
        {"cohesion_threshold", cfg.cohesion_threshold},
        {"generalization_threshold", cfg.generalization_threshold},
        {"enable_lexical_cohesion_merge", cfg.enable_lexical_cohesion_merge},
        {"cascade_generalization", cfg.cascade_generalization},
        {"scoring",
         {{"alpha_other", cfg.scoring.alpha_other},
          {"w_typo", cfg.scoring.w_typo},
          {"w_new_descriptor", cfg.scoring.w_new_descriptor},
          {"w_heading", cfg.scoring.w_heading},
          {"w_emph", cfg.scoring.w_emph},
          {"w_special_part", cfg.scoring.w_special_part},
          {"dsw_link_scale", cfg.scoring.dsw_link_scale},
          {"role_weights", role_weights}}},
        {"min_descriptor_score", cfg.min_descriptor_score},
        {"max_references", cfg.max_references},
        {"locale", cfg.locale},
        {"reference_order",
         cfg.reference_order == ReferenceOrder::Relevance ? "relevance" : "document"},
        {"jobs", cfg.jobs},
    };
}

} // namespace indexforge
