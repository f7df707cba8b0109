#include <doctest.h>

#include <set>

#include "indexforge/engine.hpp"
#include "indexforge/errors.hpp"
#include "indexforge/segmentation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace indexforge;

namespace {

struct Fixture {
    Document doc;
    Nomenclature nom;
    MarkerDictionary dict;
    OccurrenceTable occ;
    EngineConfig config;

    static Fixture load(const std::string& name) {
        Fixture f;
        f.doc = import_json_document(
            tsupport::slurp(tsupport::fixtures_dir() / name / "document.json"));
        f.nom = load_nomenclature(
            tsupport::slurp(tsupport::fixtures_dir() / name / "nomenclature.json"));
        f.dict = load_markers(tsupport::slurp(tsupport::data_dir() / "markers_fr.txt"),
                              tsupport::slurp(tsupport::data_dir() / "pronouns_fr.txt"));
        f.occ = locate_occurrences(f.doc, f.nom);
        return f;
    }
};

ReferenceSegment plain(const std::string& id, uint32_t first, uint32_t last) {
    ReferenceSegment s;
    s.descriptor_id = id;
    s.stage = SegmentStage::Plain;
    s.first_paragraph = first;
    s.last_paragraph = last;
    return s;
}

} // namespace

TEST_CASE("one mdu per paragraph") {
    Fixture f = Fixture::load("insertion");
    CHECK(build_mdus(f.doc).size() == 4);

    Document empty = import_json_document(R"({"id":"e","sections":[]})");
    CHECK(build_mdus(empty).empty());

    // large flat document
    Document big;
    big.id = "big";
    Section sec;
    sec.id = "s";
    sec.depth = 1;
    big.sections.push_back(sec);
    for (uint32_t i = 0; i < 793; ++i) {
        Paragraph p;
        p.index = i;
        p.text = "p" + std::to_string(i);
        p.length = static_cast<uint32_t>(p.text.size());
        p.section = 0;
        big.sections[0].paragraphs.push_back(i);
        big.paragraphs.push_back(std::move(p));
    }
    finalize_document(big);
    CHECK(build_mdus(big).size() == 793);
}

TEST_CASE("widening follows the markers in the insertion fixture") {
    Fixture f = Fixture::load("insertion");
    std::vector<DocumentaryUnit> dus =
        widen_to_dus(build_mdus(f.doc), f.doc, f.dict, f.occ, f.nom, f.config);
    REQUIRE(dus.size() == 2);
    CHECK(dus[0].first_paragraph == 0);
    CHECK(dus[0].last_paragraph == 2);
    CHECK(dus[1].first_paragraph == 3);
    CHECK(dus[1].last_paragraph == 3);
}

TEST_CASE("a section frontier always blocks the merge") {
    Document doc;
    doc.id = "frontier";
    for (int s = 0; s < 2; ++s) {
        Section sec;
        sec.id = "s" + std::to_string(s);
        sec.depth = 1;
        doc.sections.push_back(sec);
    }
    Paragraph a;
    a.index = 0;
    a.text = "first half";
    a.length = 10;
    a.section = 0;
    Paragraph b;
    b.index = 1;
    b.text = "thus it continues";
    b.length = 17;
    b.section = 1;
    doc.sections[0].paragraphs = {0};
    doc.sections[1].paragraphs = {1};
    doc.paragraphs = {a, b};
    finalize_document(doc);

    MarkerDictionary dict = load_markers("thus\n", "");
    Nomenclature nom;
    OccurrenceTable occ;
    EngineConfig config;
    std::vector<DocumentaryUnit> dus =
        widen_to_dus(build_mdus(doc), doc, dict, occ, nom, config);
    CHECK(dus.size() == 2);
}

TEST_CASE("no cues means dus equal mdus") {
    tsupport::RandomOptions opt;
    opt.marker_probability = 0.0;
    opt.span_probability = 0.0;
    opt.full_span_probability = 0.0;
    opt.list_probability = 0.0;
    opt.heading_probability = 0.0;
    opt.descriptor_injection = 0.0;  // no shared descriptors, cohesion always 0
    for (uint32_t seed = 400; seed < 410; ++seed) {
        tsupport::RandomInstance inst = tsupport::make_random_instance(seed, opt);
        OccurrenceTable occ = locate_occurrences(inst.doc, inst.nom);
        EngineConfig config;
        std::vector<DocumentaryUnit> mdus = build_mdus(inst.doc);
        std::vector<DocumentaryUnit> dus =
            widen_to_dus(mdus, inst.doc, inst.dict, occ, inst.nom, config);
        CHECK(dus.size() == mdus.size());
    }
}

TEST_CASE("plain segments are the occupied dus") {
    Fixture f = Fixture::load("insertion");
    std::vector<DocumentaryUnit> dus =
        widen_to_dus(build_mdus(f.doc), f.doc, f.dict, f.occ, f.nom, f.config);
    std::vector<ReferenceSegment> segs = plain_segments("contexte-insertion", dus, f.occ);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].first_paragraph == 0);
    CHECK(segs[0].last_paragraph == 2);

    CHECK(plain_segments("absent", dus, f.occ).empty());
}

TEST_CASE("plain segments enumerate scattered hits") {
    // six single-paragraph DUs; descriptor in DUs 0, 2, 4
    std::vector<DocumentaryUnit> dus;
    for (uint32_t i = 0; i < 6; ++i) dus.push_back({i, i, 0});
    std::vector<Occurrence> occs;
    for (uint32_t p : {0u, 2u, 4u}) {
        Occurrence o;
        o.descriptor_id = "d";
        o.paragraph_index = p;
        o.end = 1;
        occs.push_back(o);
    }
    std::vector<ReferenceSegment> segs =
        plain_segments("d", dus, OccurrenceTable(std::move(occs)));
    REQUIRE(segs.size() == 3);
    CHECK(segs[1].first_paragraph == 2);
}

TEST_CASE("simplify fuses contiguous runs") {
    std::vector<ReferenceSegment> segs = {plain("d", 1, 2), plain("d", 3, 4), plain("d", 7, 7)};
    std::vector<ReferenceSegment> merged = simplify_segments(segs);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].first_paragraph == 1);
    CHECK(merged[0].last_paragraph == 4);
    CHECK(merged[1].first_paragraph == 7);
    CHECK(merged[0].stage == SegmentStage::Simplified);

    CHECK(simplify_segments({plain("d", 2, 5)}).size() == 1);
    CHECK(simplify_segments({}).empty());

    // idempotent, and equal to the textbook interval merge
    std::vector<ReferenceSegment> twice = simplify_segments(merged);
    REQUIRE(twice.size() == merged.size());
    for (size_t i = 0; i < twice.size(); ++i) {
        CHECK(twice[i].first_paragraph == merged[i].first_paragraph);
        CHECK(twice[i].last_paragraph == merged[i].last_paragraph);
    }
    auto expected = oracle::merge_intervals({{1, 2}, {3, 4}, {7, 7}});
    REQUIRE(merged.size() == expected.size());
    for (size_t i = 0; i < merged.size(); ++i) {
        CHECK(merged[i].first_paragraph == expected[i].first);
        CHECK(merged[i].last_paragraph == expected[i].second);
    }
}

TEST_CASE("generalization promotes well-covered sections") {
    Fixture f = Fixture::load("insertion");
    // covering 3 of section k's 4 paragraphs clears the 0.5 threshold
    std::vector<ReferenceSegment> segs =
        simplify_segments({plain("contexte-insertion", 0, 2)});
    std::vector<ReferenceSegment> out = generalize_segments(segs, f.doc, f.config);
    REQUIRE(out.size() == 1);
    CHECK(out[0].whole_section);
    CHECK(f.doc.sections[out[0].section].id == "k");
    CHECK(out[0].first_paragraph == 0);
    CHECK(out[0].last_paragraph == 3);
    CHECK(out[0].stage == SegmentStage::Generalized);
}

TEST_CASE("sparse coverage is left alone") {
    Document big;
    big.id = "sparse";
    Section sec;
    sec.id = "s";
    sec.depth = 1;
    big.sections.push_back(sec);
    for (uint32_t i = 0; i < 10; ++i) {
        Paragraph p;
        p.index = i;
        p.text = "x";
        p.length = 1;
        p.section = 0;
        big.sections[0].paragraphs.push_back(i);
        big.paragraphs.push_back(std::move(p));
    }
    finalize_document(big);
    EngineConfig config;
    std::vector<ReferenceSegment> out =
        generalize_segments(simplify_segments({plain("d", 4, 4)}), big, config);
    REQUIRE(out.size() == 1);
    CHECK_FALSE(out[0].whole_section);
    CHECK(out[0].first_paragraph == 4);
}

TEST_CASE("a fully covered single-paragraph section generalizes") {
    Document doc;
    doc.id = "single";
    Section sec;
    sec.id = "only";
    sec.depth = 1;
    doc.sections.push_back(sec);
    Paragraph p;
    p.index = 0;
    p.text = "x";
    p.length = 1;
    p.section = 0;
    doc.sections[0].paragraphs.push_back(0);
    doc.paragraphs.push_back(std::move(p));
    finalize_document(doc);
    EngineConfig config;
    std::vector<ReferenceSegment> out =
        generalize_segments(simplify_segments({plain("d", 0, 0)}), doc, config);
    REQUIRE(out.size() == 1);
    CHECK(out[0].whole_section);  // 1/1 > 0.5
}

TEST_CASE("insertion fixture end to end") {
    Fixture f = Fixture::load("insertion");
    SegmentationResult result =
        segment_document(f.doc, f.nom, f.occ, f.dict, f.config);
    CHECK(result.dus.size() == 2);
    const std::vector<ReferenceSegment>& final =
        result.per_descriptor.at("contexte-insertion");
    REQUIRE(final.size() == 1);
    CHECK(final[0].whole_section);
    CHECK(f.doc.sections[final[0].section].id == "k");
    CHECK(result.stage_counts.mdus == 4);
    CHECK(result.stage_counts.dus == 2);
    CHECK(result.stage_counts.plain == 1);
    CHECK(result.stage_counts.simplified == 1);
    CHECK(result.stage_counts.generalized == 1);
    CHECK(result.stage_counts.paragraph_occurrences == 1);
}

TEST_CASE("isolated descriptors keep equal counts across stages") {
    // every descriptor once, in its own paragraph, far below the
    // generalization threshold; no continuity anywhere
    Document doc;
    doc.id = "iso";
    Section sec;
    sec.id = "s";
    sec.depth = 1;
    doc.sections.push_back(sec);
    const char* words[] = {"alpha", "bravo", "charlie"};
    for (uint32_t i = 0; i < 9; ++i) {
        Paragraph p;
        p.index = i;
        p.text = (i % 3 == 0) ? words[i / 3] : "filler text only";
        p.length = static_cast<uint32_t>(p.text.size());
        p.section = 0;
        doc.sections[0].paragraphs.push_back(i);
        doc.paragraphs.push_back(std::move(p));
    }
    finalize_document(doc);
    Nomenclature nom = load_nomenclature(R"({"descriptors":[
        {"id":"a","canonical":"alpha"},{"id":"b","canonical":"bravo"},
        {"id":"c","canonical":"charlie"}]})");
    OccurrenceTable occ = locate_occurrences(doc, nom);
    EngineConfig config;
    SegmentationResult result = segment_document(doc, nom, occ, MarkerDictionary{}, config);
    CHECK(result.stage_counts.plain == 3);
    CHECK(result.stage_counts.simplified == 3);
    CHECK(result.stage_counts.generalized == 3);
}

TEST_CASE("segmentation properties on random documents") {
    tsupport::RandomOptions opt;
    opt.max_paragraphs = 30;
    for (uint32_t seed = 500; seed < 540; ++seed) {
        tsupport::RandomInstance inst = tsupport::make_random_instance(seed, opt);
        OccurrenceTable occ = locate_occurrences(inst.doc, inst.nom);
        EngineConfig config;
        SegmentationResult result =
            segment_document(inst.doc, inst.nom, occ, inst.dict, config);

        // DUs partition the paragraphs
        std::set<uint32_t> covered;
        for (const DocumentaryUnit& du : result.dus) {
            REQUIRE(du.first_paragraph <= du.last_paragraph);
            for (uint32_t p = du.first_paragraph; p <= du.last_paragraph; ++p)
                CHECK(covered.insert(p).second);
            // no DU crosses a section frontier
            for (uint32_t p = du.first_paragraph; p <= du.last_paragraph; ++p)
                CHECK(inst.doc.paragraphs[p].section == du.section);
        }
        CHECK(covered.size() == inst.doc.paragraphs.size());

        // per-descriptor stage monotonicity and occurrence completeness
        std::vector<DocumentaryUnit> mdus = build_mdus(inst.doc);
        std::vector<DocumentaryUnit> dus =
            widen_to_dus(mdus, inst.doc, inst.dict, occ, inst.nom, config);
        for (const Descriptor& d : inst.nom.descriptors) {
            std::vector<ReferenceSegment> p = plain_segments(d.id, dus, occ);
            std::vector<ReferenceSegment> s = simplify_segments(p);
            std::vector<ReferenceSegment> g = generalize_segments(s, inst.doc, config);
            CHECK(g.size() <= s.size());
            CHECK(s.size() <= p.size());
            const std::vector<ReferenceSegment>& final = result.per_descriptor.at(d.id);
            REQUIRE(final.size() == g.size());
            for (uint32_t i : occ.of_descriptor(d.id)) {
                uint32_t paragraph = occ.all()[i].paragraph_index;
                bool inside = false;
                for (const ReferenceSegment& seg : final)
                    if (seg.first_paragraph <= paragraph && paragraph <= seg.last_paragraph)
                        inside = true;
                CHECK(inside);
            }
            // final segments are sorted and non-overlapping
            for (size_t i = 1; i < final.size(); ++i)
                CHECK(final[i - 1].last_paragraph < final[i].first_paragraph);
        }
    }
}

TEST_CASE("pipeline is deterministic and job-count independent") {
    tsupport::RandomInstance inst = tsupport::make_random_instance(4242);
    OccurrenceTable occ = locate_occurrences(inst.doc, inst.nom);
    EngineConfig one;
    one.jobs = 1;
    EngineConfig many;
    many.jobs = 4;
    SegmentationResult a = segment_document(inst.doc, inst.nom, occ, inst.dict, one);
    SegmentationResult b = segment_document(inst.doc, inst.nom, occ, inst.dict, many);
    REQUIRE(a.per_descriptor.size() == b.per_descriptor.size());
    for (const auto& [id, segs] : a.per_descriptor) {
        const std::vector<ReferenceSegment>& other = b.per_descriptor.at(id);
        REQUIRE(segs.size() == other.size());
        for (size_t i = 0; i < segs.size(); ++i) {
            CHECK(segs[i].first_paragraph == other[i].first_paragraph);
            CHECK(segs[i].last_paragraph == other[i].last_paragraph);
            CHECK(segs[i].whole_section == other[i].whole_section);
        }
    }
}

TEST_CASE("cascading generalization climbs to the parent section") {
    // parent with two children; the descriptor fully covers child A and half
    // of child B. Without cascading only A is promoted; with it the whole
    // parent becomes the reference.
    Document doc;
    doc.id = "cascade";
    Section parent;
    parent.id = "p";
    parent.depth = 1;
    doc.sections.push_back(parent);
    for (int c = 0; c < 2; ++c) {
        Section child;
        child.id = c == 0 ? "a" : "b";
        child.depth = 2;
        child.parent = 0;
        doc.sections.push_back(child);
        doc.sections[0].children.push_back(static_cast<uint32_t>(doc.sections.size() - 1));
    }
    for (uint32_t i = 0; i < 4; ++i) {
        Paragraph par;
        par.index = i;
        par.text = "x";
        par.length = 1;
        par.section = i < 2 ? 1 : 2;
        doc.sections[par.section].paragraphs.push_back(i);
        doc.paragraphs.push_back(std::move(par));
    }
    finalize_document(doc);

    std::vector<ReferenceSegment> simplified =
        simplify_segments({plain("d", 0, 1), plain("d", 3, 3)});
    REQUIRE(simplified.size() == 2);

    EngineConfig flat;
    std::vector<ReferenceSegment> out = generalize_segments(simplified, doc, flat);
    REQUIRE(out.size() == 2);
    CHECK(out[0].whole_section);  // child a, 2/2
    CHECK(doc.sections[out[0].section].id == "a");
    CHECK_FALSE(out[1].whole_section);  // child b, 1/2 is not > 0.5

    EngineConfig cascading;
    cascading.cascade_generalization = true;
    std::vector<ReferenceSegment> up = generalize_segments(simplified, doc, cascading);
    REQUIRE(up.size() == 1);
    CHECK(up[0].whole_section);
    CHECK(doc.sections[up[0].section].id == "p");  // 3/4 of the parent
    CHECK(up[0].first_paragraph == 0);
    CHECK(up[0].last_paragraph == 3);
}

TEST_CASE("reduction formatting") {
    CHECK(format_reduction(100, 90) == "-10%");
    CHECK(format_reduction(793, 634) == "-20%");
    CHECK(format_reduction(5, 5) == "-0%");
    CHECK(format_reduction(100, 150) == "+50%");
    CHECK(format_reduction(0, 0) == "-0%");

    StageCounts c;
    c.mdus = 793;
    c.dus = 634;
    c.plain = 2569;
    c.simplified = 1893;
    c.generalized = 950;
    c.paragraph_occurrences = 3983;
    std::string report = render_stats_report(c);
    CHECK(report.find("793") != std::string::npos);
    CHECK(report.find("1->2 -20%") != std::string::npos);
    CHECK(report.find("3->4 -26%") != std::string::npos);
    CHECK(report.find("4->5 -50%") != std::string::npos);
}
