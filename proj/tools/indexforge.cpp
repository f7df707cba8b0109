// indexforge: builds the hypertextual network of a back-of-the-book index.
//
//   indexforge build --config cfg.json   full pipeline, writes the bundle
//   indexforge stats --config cfg.json   segmentation report only
//   indexforge score --config cfg.json   ranked descriptor list to stdout

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "indexforge/engine.hpp"
#include "indexforge/errors.hpp"
#include "indexforge/file_io.hpp"
#include "indexforge/html_emitter.hpp"

namespace fs = std::filesystem;
using namespace indexforge;

namespace {

// Distinct exit codes so scripts can tell failure classes apart.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMissingFile = 2;
constexpr int kExitParse = 3;
constexpr int kExitValidation = 4;
constexpr int kExitIntegrity = 5;

bool verbose() {
    const char* env = std::getenv("INDEXFORGE_LOG");
    if (!env) return false;
    std::string v(env);
    return !v.empty() && v != "0" && v != "off" && v != "quiet";
}

void log(const std::string& message) {
    if (verbose()) std::cerr << "indexforge: " << message << "\n";
}

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string locale;
    int64_t jobs = -1;
    int64_t max_references = -1;
    double min_descriptor_score = -1.0;
    bool no_lexical_merge = false;
};

EngineConfig load_config(const Options& opt) {
    EngineConfig cfg = parse_config(read_file(opt.config_path));
    if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
    if (!opt.locale.empty()) cfg.locale = opt.locale;
    if (opt.jobs >= 0) cfg.jobs = static_cast<uint32_t>(opt.jobs);
    if (opt.max_references >= 0) cfg.max_references = static_cast<uint32_t>(opt.max_references);
    if (opt.min_descriptor_score >= 0.0) cfg.min_descriptor_score = opt.min_descriptor_score;
    if (opt.no_lexical_merge) cfg.enable_lexical_cohesion_merge = false;
    cfg.validate();
    return cfg;
}

void print_summary(const PipelineResult& r) {
    std::cerr << "document: " << r.doc.id << " (" << r.doc.paragraphs.size()
              << " paragraphs, " << r.doc.sections.size() << " sections)\n";
    std::cerr << "nomenclature: " << r.nom.descriptors.size() << " descriptors, "
              << r.occurrences.all().size() << " occurrences\n";
    if (r.empty_dictionary)
        std::cerr << "warning: marker dictionaries are empty; linguistic continuity "
                     "relies on the remaining cues\n";
    std::cerr << render_stats_report(r.segmentation.stage_counts);
    std::cerr << "index: " << r.index.entries.size() << " entries\n";
}

int run_build(const Options& opt, bool emit_outputs) {
    EngineConfig cfg = load_config(opt);
    fs::path base = fs::path(opt.config_path).parent_path();
    log("running pipeline for " + cfg.document_path);
    PipelineResult result = run_pipeline_from_files(cfg, base);
    print_summary(result);
    if (emit_outputs) {
        fs::path out_dir = fs::path(cfg.output_dir).is_absolute()
                               ? fs::path(cfg.output_dir)
                               : base / cfg.output_dir;
        emit_html(result.index, result.doc, out_dir);
        emit_json(result.index, out_dir / "index.json");
        std::cerr << "wrote " << (out_dir / "document.html").string() << ", "
                  << (out_dir / "index.html").string() << ", "
                  << (out_dir / "index.json").string() << "\n";
    }
    return kExitOk;
}

int run_score(const Options& opt) {
    EngineConfig cfg = load_config(opt);
    fs::path base = fs::path(opt.config_path).parent_path();
    PipelineResult result = run_pipeline_from_files(cfg, base);
    for (uint32_t i : result.scores.by_relevance) {
        const DescriptorScore& d = result.scores.descriptors[i];
        const Descriptor* desc = result.nom.find(d.descriptor_id);
        std::printf("%12.6f  %s\n", d.d_score,
                    desc ? desc->canonical.c_str() : d.descriptor_id.c_str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"back-of-the-book index builder"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "engine config JSON")->required();
        cmd->add_option("--out", opt.out_dir, "output directory (overrides config)");
        cmd->add_option("--jobs", opt.jobs, "worker threads (0 = all cores)");
        cmd->add_option("--max-references", opt.max_references,
                        "keep at most N references per entry (0 = unlimited)");
        cmd->add_option("--min-descriptor-score", opt.min_descriptor_score,
                        "drop descriptors scoring below X");
        cmd->add_flag("--no-lexical-merge", opt.no_lexical_merge,
                      "ignore lexical cohesion during widening");
        cmd->add_option("--locale", opt.locale, "collation locale tag");
    };
    CLI::App* build = app.add_subcommand("build", "run the full pipeline and write the bundle");
    CLI::App* stats = app.add_subcommand("stats", "run segmentation and print the unit counts");
    CLI::App* score = app.add_subcommand("score", "print descriptors in relevance order");
    add_common(build);
    add_common(stats);
    add_common(score);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (build->parsed()) return run_build(opt, true);
        if (stats->parsed()) return run_build(opt, false);
        if (score->parsed()) return run_score(opt);
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingFile;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IntegrityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
