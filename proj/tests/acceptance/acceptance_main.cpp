// Acceptance suite: eight end-to-end criteria over the bundled fixtures,
// randomized property runs, and the CLI binary. One PASS/FAIL line per
// criterion; nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "indexforge/engine.hpp"
#include "indexforge/html_emitter.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

namespace fs = std::filesystem;
using namespace indexforge;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
    int failures = 0;

    void run(const std::string& name, double time_limit_seconds,
             const std::function<void()>& body) {
        Clock::time_point start = Clock::now();
        std::string error;
        try {
            body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (error.empty() && time_limit_seconds > 0 && elapsed > time_limit_seconds) {
            std::ostringstream os;
            os << "exceeded time limit (" << elapsed << "s > " << time_limit_seconds << "s)";
            error = os.str();
        }
        if (error.empty()) {
            std::printf("PASS  %-58s (%.2fs)\n", name.c_str(), elapsed);
        } else {
            std::printf("FAIL  %-58s %s\n", name.c_str(), error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
};

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

PipelineResult run_fixture(const std::string& name) {
    EngineConfig config =
        parse_config(tsupport::slurp(tsupport::fixtures_dir() / name / "config.json"));
    return run_pipeline_from_files(config, tsupport::fixtures_dir() / name);
}

// ---- criterion 1: the worked segmentation example ------------------------

void insertion_segmentation() {
    PipelineResult r = run_fixture("insertion");
    require(r.segmentation.dus.size() == 2, "expected exactly 2 documentary units");
    require(r.segmentation.dus[0].first_paragraph == 0 &&
                r.segmentation.dus[0].last_paragraph == 2,
            "first DU must span the first three paragraphs");
    require(r.segmentation.dus[1].first_paragraph == 3 &&
                r.segmentation.dus[1].last_paragraph == 3,
            "second DU must be the final paragraph alone");
    const std::vector<ReferenceSegment>& final =
        r.segmentation.per_descriptor.at("contexte-insertion");
    require(final.size() == 1, "expected a single final reference segment");
    require(final[0].whole_section, "the reference must be generalized to the section");
    require(r.doc.sections[final[0].section].id == "k", "the promoted section must be k");
}

// ---- criterion 2: the reference-ranking example ---------------------------

void temporal_ranking() {
    PipelineResult r = run_fixture("temporal");
    const DescriptorScore* score = r.scores.find("contrainte-temporelle");
    require(score != nullptr, "missing descriptor score");
    require(score->references.size() == 3, "expected exactly 3 reference segments");
    std::vector<uint32_t> order = rank_references(score->references);

    const ReferenceSegment& top = score->references[order[0]].segment;
    const ReferenceSegment& mid = score->references[order[1]].segment;
    const ReferenceSegment& low = score->references[order[2]].segment;
    require(top.whole_section && r.doc.sections[top.section].id == "s2",
            "the subsection-spanning segment must rank first");
    require(!mid.whole_section && mid.first_paragraph == 0,
            "the bold first-occurrence segment must rank second");
    require(!low.whole_section && low.first_paragraph == 10,
            "the conclusion segment must rank last");
}

// ---- criterion 3: formula oracle equivalence ------------------------------

void formula_oracle_equivalence() {
    uint32_t documents = 0;
    for (uint32_t seed = 1000; documents < 200; ++seed, ++documents) {
        tsupport::RandomInstance inst = tsupport::make_random_instance(seed);
        OccurrenceTable occ = locate_occurrences(inst.doc, inst.nom);
        DocumentStats stats = compute_stats(inst.doc, occ);
        EngineConfig config;
        SegmentationResult seg =
            segment_document(inst.doc, inst.nom, occ, inst.dict, config);
        ScoredIndex scored = score_all(inst.doc, inst.nom, occ, stats, seg, config);
        Scorer scorer(inst.doc, inst.nom, occ, stats, config.scoring);
        oracle::ScoreOracle ref{inst.doc, inst.nom, occ, config.scoring};

        for (const DescriptorScore& d : scored.descriptors) {
            const std::vector<ReferenceSegment>& segments =
                seg.per_descriptor.at(d.descriptor_id);
            auto close = [&](double a, double b, const char* what) {
                if (std::fabs(a - b) > 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)})) {
                    std::ostringstream os;
                    os << "seed " << seed << " " << d.descriptor_id << " " << what << ": "
                       << a << " vs " << b;
                    throw std::runtime_error(os.str());
                }
            };
            close(d.ddw, ref.ddw(d.descriptor_id), "ddw");
            close(d.diw, ref.diw(d.descriptor_id), "diw");
            close(d.dsw, ref.dsw(d.descriptor_id), "dsw");
            close(d.d_score, ref.d_score(d.descriptor_id, segments), "d_score");
            for (const ScoredReference& r : d.references) {
                close(r.s_score, ref.s_score(d.descriptor_id, r.segment), "s_score");
                close(r.siw, ref.siw(r.segment), "siw");
                for (const auto& [other, term] : r.sdw_terms)
                    close(term,
                          ref.sdw(other, r.segment.first_paragraph, r.segment.last_paragraph),
                          "sdw");
                (void)scorer;
            }
        }
    }
}

// ---- criterion 4: segmentation properties ----------------------------------

void segmentation_properties() {
    uint32_t documents = 0;
    tsupport::RandomOptions opt;
    opt.max_paragraphs = 24;
    for (uint32_t seed = 20000; documents < 500; ++seed, ++documents) {
        tsupport::RandomInstance inst = tsupport::make_random_instance(seed, opt);
        OccurrenceTable occ = locate_occurrences(inst.doc, inst.nom);
        EngineConfig config;
        SegmentationResult result =
            segment_document(inst.doc, inst.nom, occ, inst.dict, config);

        std::set<uint32_t> covered;
        for (const DocumentaryUnit& du : result.dus) {
            require(du.first_paragraph <= du.last_paragraph, "inverted DU");
            for (uint32_t p = du.first_paragraph; p <= du.last_paragraph; ++p) {
                require(covered.insert(p).second, "paragraph in two DUs");
                require(inst.doc.paragraphs[p].section == du.section,
                        "DU crosses a section frontier");
            }
        }
        require(covered.size() == inst.doc.paragraphs.size(), "paragraph missing from DUs");

        std::vector<DocumentaryUnit> dus = widen_to_dus(build_mdus(inst.doc), inst.doc,
                                                        inst.dict, occ, inst.nom, config);
        for (const Descriptor& d : inst.nom.descriptors) {
            std::vector<ReferenceSegment> plain = plain_segments(d.id, dus, occ);
            std::vector<ReferenceSegment> simplified = simplify_segments(plain);
            std::vector<ReferenceSegment> once = simplify_segments(simplified);
            require(once.size() == simplified.size(), "simplify is not idempotent");
            for (size_t i = 0; i < once.size(); ++i)
                require(once[i].first_paragraph == simplified[i].first_paragraph &&
                            once[i].last_paragraph == simplified[i].last_paragraph,
                        "simplify is not idempotent");
            std::vector<ReferenceSegment> general =
                generalize_segments(simplified, inst.doc, config);
            require(general.size() <= simplified.size(), "generalize grew the count");
            require(simplified.size() <= plain.size(), "simplify grew the count");
            for (uint32_t i : occ.of_descriptor(d.id)) {
                uint32_t paragraph = occ.all()[i].paragraph_index;
                bool inside = false;
                for (const ReferenceSegment& seg : result.per_descriptor.at(d.id))
                    if (seg.first_paragraph <= paragraph && paragraph <= seg.last_paragraph)
                        inside = true;
                require(inside, "occurrence not covered by any final segment");
            }
        }
    }
}

// ---- criterion 5: monotone reduction reporting -----------------------------

void reduction_reporting() {
    for (const char* name : {"insertion", "temporal", "sample"}) {
        PipelineResult r = run_fixture(name);
        const StageCounts& c = r.segmentation.stage_counts;
        require(c.dus <= c.mdus, "1->2 not a reduction");
        require(c.simplified <= c.plain, "3->4 not a reduction");
        require(c.generalized <= c.simplified, "4->5 not a reduction");
    }
    require(format_reduction(100, 90) == "-10%", "100->90 must print -10%");
    require(format_reduction(793, 634) == "-20%", "793->634 must print -20%");
    require(format_reduction(7, 7) == "-0%", "equal counts must print -0%");
    require(format_reduction(4, 6) == "+50%", "4->6 must print +50%");
    // recomputed, never copied: 1 - 634/793 = 0.20050..., rounded to -20%
    long hand = std::lround((1.0 - 634.0 / 793.0) * 100.0);
    require(hand == 20, "hand arithmetic disagrees");
}

// ---- criterion 6: bad-descriptor rejection ---------------------------------

struct Injected {
    Document doc;
    Nomenclature nom;
};

Injected build_injected_corpus() {
    // 60 single-paragraph sections; 20 clustered genuine descriptors; 50
    // fillers spread over 90% of the paragraphs (P_i/P = 0.9).
    constexpr uint32_t kParagraphs = 60;
    constexpr uint32_t kGenuine = 20;
    constexpr uint32_t kFillers = 50;

    Injected out;
    out.doc.id = "injection";
    std::vector<std::vector<std::string>> words(kParagraphs);
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> bold(kParagraphs);

    for (uint32_t g = 0; g < kGenuine; ++g) {
        std::string word = "genuine" + std::to_string(g);
        uint32_t base = g * 2;
        for (uint32_t k = 0; k < 4; ++k) {
            uint32_t at = base + k;
            if ((g + k) % 2 == 0) {
                // record for a bold span once offsets are known
                bold[at].push_back({g, 0});
            }
            words[at].push_back(word);
        }
        Descriptor d;
        d.id = "g" + std::to_string(g);
        d.canonical = word;
        if (g % 2 == 1) {
            d.links.push_back("g" + std::to_string(g - 1));
        } else if (g + 1 < kGenuine) {
            d.links.push_back("g" + std::to_string(g + 1));
        }
        out.nom.descriptors.push_back(std::move(d));
    }
    for (uint32_t f = 0; f < kFillers; ++f) {
        std::string word = "filler" + std::to_string(f);
        for (uint32_t p = 0; p < kParagraphs; ++p)
            if ((p + f) % 10 != 0) words[p].push_back(word);
        Descriptor d;
        d.id = "f" + std::to_string(f);
        d.canonical = word;
        out.nom.descriptors.push_back(std::move(d));
    }

    for (uint32_t p = 0; p < kParagraphs; ++p) {
        Section sec;
        sec.id = "sec" + std::to_string(p);
        sec.depth = 1;
        out.doc.sections.push_back(sec);
        Paragraph par;
        par.index = p;
        par.section = p;
        std::string text;
        uint32_t offset = 0;
        for (size_t w = 0; w < words[p].size(); ++w) {
            if (w) {
                text += " ";
                ++offset;
            }
            for (const auto& [g, unused] : bold[p]) {
                (void)unused;
                if (words[p][w] == "genuine" + std::to_string(g))
                    par.spans.push_back(
                        {offset, offset + static_cast<uint32_t>(words[p][w].size()),
                         SpanStyle::Bold});
            }
            text += words[p][w];
            offset += static_cast<uint32_t>(words[p][w].size());
        }
        par.text = text;
        par.length = offset;
        out.doc.sections[p].paragraphs.push_back(p);
        out.doc.paragraphs.push_back(std::move(par));
    }
    finalize_document(out.doc);
    return out;
}

void bad_descriptor_rejection() {
    Injected corpus = build_injected_corpus();
    EngineConfig config;
    PipelineResult r =
        run_pipeline(std::move(corpus.doc), std::move(corpus.nom), MarkerDictionary{}, config);

    double min_genuine = 1e300;
    for (const DescriptorScore& d : r.scores.descriptors)
        if (d.descriptor_id[0] == 'g') min_genuine = std::min(min_genuine, d.d_score);
    uint32_t below = 0;
    for (const DescriptorScore& d : r.scores.descriptors)
        if (d.descriptor_id[0] == 'f' && d.d_score < min_genuine) ++below;
    std::ostringstream os;
    os << "only " << below << " of 50 synthetic descriptors rank below every genuine one";
    require(below >= 49, os.str());
}

// ---- criterion 7: determinism and parallel equivalence ---------------------

void determinism_and_jobs() {
    for (const char* name : {"insertion", "temporal", "sample"}) {
        fs::path out = tsupport::work_dir() / (std::string("determinism_") + name);
        std::string config = (tsupport::fixtures_dir() / name / "config.json").string();
        std::string base = "build --config " + config + " --out " + out.string();
        require(tsupport::run_cli(base + " --jobs 1").exit_code == 0,
                std::string(name) + ": first run failed");
        std::string first = tsupport::slurp(out / "index.json");
        require(!first.empty(), std::string(name) + ": empty index.json");
        require(tsupport::run_cli(base + " --jobs 1").exit_code == 0,
                std::string(name) + ": second run failed");
        require(tsupport::slurp(out / "index.json") == first,
                std::string(name) + ": repeated run changed index.json");
        require(tsupport::run_cli(base + " --jobs 4").exit_code == 0,
                std::string(name) + ": parallel run failed");
        require(tsupport::slurp(out / "index.json") == first,
                std::string(name) + ": --jobs 4 changed index.json");
    }
}

// ---- criterion 8: link integrity --------------------------------------------

void html_link_integrity() {
    for (const char* name : {"insertion", "temporal", "sample"}) {
        fs::path out = tsupport::work_dir() / (std::string("links_") + name);
        std::string config = (tsupport::fixtures_dir() / name / "config.json").string();
        require(tsupport::run_cli("build --config " + config + " --out " + out.string())
                        .exit_code == 0,
                std::string(name) + ": build failed");
        std::vector<std::string> dangling = dangling_hrefs(
            {{"document.html", tsupport::slurp(out / "document.html")},
             {"index.html", tsupport::slurp(out / "index.html")}});
        std::ostringstream os;
        os << name << ": " << dangling.size() << " dangling hrefs";
        if (!dangling.empty()) os << ", first: " << dangling.front();
        require(dangling.empty(), os.str());
    }
}

} // namespace

int main() {
    Harness h;
    h.run("1 worked segmentation example (2 DUs, whole-section ref)", 1.0,
          insertion_segmentation);
    h.run("2 reference ranking example (S2 > S1 > S3)", 1.0, temporal_ranking);
    h.run("3 formula oracle equivalence (200 random documents)", 30.0,
          formula_oracle_equivalence);
    h.run("4 segmentation properties (500 random documents)", 60.0,
          segmentation_properties);
    h.run("5 monotone reduction reporting", 0.0, reduction_reporting);
    h.run("6 bad-descriptor rejection (49 of 50 below genuine)", 10.0,
          bad_descriptor_rejection);
    h.run("7 determinism across runs and job counts", 0.0, determinism_and_jobs);
    h.run("8 html link integrity", 0.0, html_link_integrity);

    if (h.failures) {
        std::printf("%d criterion(s) failed\n", h.failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
