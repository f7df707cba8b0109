#include "indexforge/scoring.hpp"

#include "indexforge/errors.hpp"
#include "indexforge/parallel.hpp"
#include "indexforge/unicode.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

namespace indexforge {

const DescriptorScore* ScoredIndex::find(const std::string& id) const {
    for (const DescriptorScore& d : descriptors)
        if (d.descriptor_id == id) return &d;
    return nullptr;
}

Scorer::Scorer(const Document& doc, const Nomenclature& nom, const OccurrenceTable& occ,
               const DocumentStats& stats, const ScoringConfig& config)
    : doc_(doc), nom_(nom), occ_(occ), stats_(stats), config_(config) {
    for (const Descriptor& d : nom.descriptors) {
        std::span<const uint32_t> hits = occ.of_descriptor(d.id);
        if (!hits.empty())
            first_occurrence_[d.id] = occ.all()[hits.front()].paragraph_index;
    }
}

uint32_t Scorer::occurrences_in(const std::string& id, const ReferenceSegment& seg) const {
    uint32_t count = 0;
    for (uint32_t i : occ_.of_descriptor(id)) {
        uint32_t p = occ_.all()[i].paragraph_index;
        if (p >= seg.first_paragraph && p <= seg.last_paragraph) ++count;
        if (p > seg.last_paragraph) break;  // document order
    }
    return count;
}

double Scorer::sdw(const std::string& id, const ReferenceSegment& seg) const {
    uint32_t occ_ij = occurrences_in(id, seg);
    if (occ_ij == 0) return 0.0;
    auto it = stats_.paragraphs_with.find(id);
    uint32_t p_i = it == stats_.paragraphs_with.end() ? 0 : it->second;
    if (p_i == 0)
        throw IntegrityError("stats report no paragraph for \"" + id +
                             "\" although it occurs in a segment");
    return static_cast<double>(occ_ij) *
           std::log(static_cast<double>(stats_.paragraph_count) / static_cast<double>(p_i));
}

double Scorer::siw(const ReferenceSegment& seg) const {
    bool emphasis = false;
    bool heading = false;
    for (uint32_t p = seg.first_paragraph; p <= seg.last_paragraph; ++p) {
        const Paragraph& par = doc_.paragraphs[p];
        if (!par.spans.empty()) emphasis = true;
        if (par.kind == ParagraphKind::Heading) heading = true;
    }
    if (!emphasis)
        for (uint32_t p = seg.first_paragraph; p <= seg.last_paragraph && !emphasis; ++p)
            for (uint32_t i : occ_.in_paragraph(p))
                if (occ_.all()[i].emphasized) {
                    emphasis = true;
                    break;
                }

    uint32_t new_descriptors = 0;
    for (const auto& [id, first] : first_occurrence_)
        if (first >= seg.first_paragraph && first <= seg.last_paragraph) ++new_descriptors;

    double role_weight;
    if (heading) {
        role_weight = config_.w_heading;
    } else {
        std::optional<uint32_t> section =
            seg.whole_section ? seg.section
                              : doc_.deepest_section_containing(seg.first_paragraph,
                                                                seg.last_paragraph);
        // A span across top-level sections has document status, i.e. body.
        StructuralRole role =
            section ? doc_.effective_role(*section) : StructuralRole::Body;
        role_weight = config_.role_weights.at(role);
    }
    return 1.0 + (emphasis ? config_.w_typo : 0.0) +
           config_.w_new_descriptor * static_cast<double>(new_descriptors) + role_weight;
}

double Scorer::s_score(const std::string& id, const ReferenceSegment& seg) const {
    return score_reference(id, seg).s_score;
}

ScoredReference Scorer::score_reference(const std::string& id,
                                        const ReferenceSegment& seg) const {
    ScoredReference out;
    out.segment = seg;
    std::set<std::string> present;
    for (uint32_t p = seg.first_paragraph; p <= seg.last_paragraph; ++p)
        for (uint32_t i : occ_.in_paragraph(p)) present.insert(occ_.all()[i].descriptor_id);

    out.siw = siw(seg);
    double sum = 0.0;  // stays 0 for an occurrence-free span
    for (const std::string& other : present) {
        double term = sdw(other, seg);
        out.sdw_terms[other] = term;
        sum += (other == id ? 1.0 : config_.alpha_other) * term;
    }
    out.s_score = out.siw * sum;
    return out;
}

double Scorer::ddw(const std::string& id) const {
    uint32_t total = occ_.count_of(id);
    if (total == 0 || !stats_.has_occurrences) return 0.0;
    auto it = stats_.paragraphs_with.find(id);
    uint32_t p_i = it == stats_.paragraphs_with.end() ? 0 : it->second;
    if (p_i == 0)
        throw IntegrityError("stats report no paragraph for \"" + id +
                             "\" although it occurs");
    return (static_cast<double>(total) / stats_.mean_occurrences) *
           std::log(static_cast<double>(stats_.paragraph_count) / static_cast<double>(p_i));
}

double Scorer::diw(const std::string& id) const {
    std::span<const uint32_t> hits = occ_.of_descriptor(id);
    if (hits.empty()) return 1.0;
    uint32_t emphasized = 0;
    bool special = false;
    for (uint32_t i : hits) {
        const Occurrence& o = occ_.all()[i];
        if (o.emphasized) ++emphasized;
        if (o.in_heading) special = true;
        StructuralRole role = doc_.effective_role(doc_.paragraphs[o.paragraph_index].section);
        if (role == StructuralRole::Summary || role == StructuralRole::Introduction)
            special = true;
    }
    double fraction = static_cast<double>(emphasized) / static_cast<double>(hits.size());
    return 1.0 + config_.w_emph * fraction + (special ? config_.w_special_part : 0.0);
}

double Scorer::dsw(const std::string& id) const {
    return 1.0 + config_.dsw_link_scale *
                     std::log1p(static_cast<double>(nom_.degree(id)));
}

DescriptorScore Scorer::score_descriptor(const std::string& id,
                                         const std::vector<ReferenceSegment>& segments) const {
    DescriptorScore out;
    out.descriptor_id = id;
    out.dsw = dsw(id);
    out.diw = diw(id);
    out.ddw = ddw(id);
    double sum = 0.0;
    for (const ReferenceSegment& seg : segments) {
        out.references.push_back(score_reference(id, seg));
        sum += out.references.back().s_score;
    }
    auto it = stats_.paragraphs_with.find(id);
    uint32_t p_i = it == stats_.paragraphs_with.end() ? 0 : it->second;
    if (p_i == 0) {
        out.d_score = 0.0;
        return out;
    }
    double radicand = out.ddw * out.diw * sum / static_cast<double>(p_i);
    assert(radicand >= 0.0);
    out.d_score = out.dsw * std::sqrt(radicand);
    return out;
}

ScoredIndex score_all(const Document& doc, const Nomenclature& nom,
                      const OccurrenceTable& occ, const DocumentStats& stats,
                      const SegmentationResult& seg, const EngineConfig& config) {
    Scorer scorer(doc, nom, occ, stats, config.scoring);
    ScoredIndex out;
    out.descriptors.resize(nom.descriptors.size());
    parallel_for(nom.descriptors.size(), config.jobs, [&](size_t i) {
        const std::string& id = nom.descriptors[i].id;
        auto it = seg.per_descriptor.find(id);
        static const std::vector<ReferenceSegment> kNone;
        const std::vector<ReferenceSegment>& segments =
            it == seg.per_descriptor.end() ? kNone : it->second;
        out.descriptors[i] = scorer.score_descriptor(id, segments);
    });
    out.by_relevance = rank_descriptors(out.descriptors, nom);
    return out;
}

std::vector<uint32_t> rank_references(const std::vector<ScoredReference>& references) {
    std::vector<uint32_t> order(references.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (references[a].s_score != references[b].s_score)
            return references[a].s_score > references[b].s_score;
        return references[a].segment.first_paragraph < references[b].segment.first_paragraph;
    });
    return order;
}

std::vector<uint32_t> rank_descriptors(const std::vector<DescriptorScore>& descriptors,
                                       const Nomenclature& nom) {
    std::vector<std::string> keys(descriptors.size());
    for (size_t i = 0; i < descriptors.size(); ++i) {
        const Descriptor* d = nom.find(descriptors[i].descriptor_id);
        keys[i] = uni::collation_key(d ? d->canonical : descriptors[i].descriptor_id);
    }
    std::vector<uint32_t> order(descriptors.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (descriptors[a].d_score != descriptors[b].d_score)
            return descriptors[a].d_score > descriptors[b].d_score;
        return keys[a] < keys[b];
    });
    return order;
}

} // namespace indexforge
