// neutre command-line entry point.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "neutre/annotation.hpp"
#include "neutre/detector.hpp"
#include "neutre/dictionary.hpp"
#include "neutre/error.hpp"
#include "neutre/eval.hpp"
#include "neutre/extractor.hpp"
#include "neutre/lexicon.hpp"
#include "neutre/pipeline.hpp"
#include "neutre/text.hpp"

namespace fs = std::filesystem;
using namespace neutre;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string data_default(const char* file) {
    const char* dir = std::getenv("NEUTRE_DATA");
    if (!dir || !*dir) return {};
    return (fs::path(dir) / file).string();
}

void need(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required (or set NEUTRE_DATA)");
}

// "-" means stdin/stdout.
class Input {
public:
    explicit Input(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
        if (!*file_) throw Error("cannot open " + path);
    }
    std::istream& get() { return file_ ? *file_ : std::cin; }

private:
    std::unique_ptr<std::ifstream> file_;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw Error("cannot write " + path);
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(std::move(line));
    return out;
}

void write_stats(const std::string& path, const std::string& json) {
    if (path.empty()) return;
    Output o(path);
    o.get() << json << '\n';
}

// Run fn(i) for i in [0, n) over `jobs` threads; callers store results by index.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t per = (n + jobs - 1) / jobs;
    for (std::size_t from = 0; from < n; from += per)
        pool.emplace_back([&, from] {
            for (std::size_t i = from; i < std::min(n, from + per); ++i) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::string tsv_field(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '\t') out += "\\t";
        else if (c == '\\') out += "\\\\";
        else out += c;
    }
    return out;
}

// Tagged lines aligned with parses, rewritten sentence by sentence.
struct Rewritten {
    std::optional<SentenceRewrite> result;
    std::string source;
    std::string error;
};

std::vector<Rewritten> rewrite_all(const Pipeline& pipe, const std::vector<std::string>& tagged,
                                   const std::vector<AnnotatedSentence>& parses, Mode mode, bool cross_sentence,
                                   unsigned jobs) {
    if (tagged.size() != parses.size())
        throw Error("tagged input has " + std::to_string(tagged.size()) + " lines but the parse file has " +
                    std::to_string(parses.size()) + " sentences");
    std::vector<Rewritten> out(tagged.size());
    parallel_for(tagged.size(), jobs, [&](std::size_t i) {
        auto& r = out[i];
        try {
            r.source = strip_tags(tagged[i]);
            const AnnotatedSentence* next = cross_sentence && i + 1 < parses.size() ? &parses[i + 1] : nullptr;
            r.result = pipe.run(tagged[i], parses[i], next, mode);
        } catch (const Error& e) {
            r.error = e.what();
        }
    });
    return out;
}

struct Resources {
    std::string dict = data_default("dictionary.tsv");
    std::string lexicon = data_default("lexicon.tsv");
};

// extract

struct ExtractOpts {
    Resources res;
    std::string input = "-", output = "-", conllu, stats;
    std::size_t max_per_entry = 0;
    bool require_pos = false;
    unsigned jobs = 1;
    bool no_lexicon = false;
};

int cmd_extract(const ExtractOpts& o) {
    need(o.res.dict, "--dict");
    auto dict = CnDictionary::load(o.res.dict);
    std::optional<Lexicon> lex;
    if (!o.no_lexicon && !o.res.lexicon.empty()) lex = Lexicon::load(o.res.lexicon);
    std::optional<std::vector<AnnotatedSentence>> parses;
    if (!o.conllu.empty()) parses = read_conllu_file(o.conllu);
    if (o.require_pos && !parses) throw UsageError("--require-pos needs --conllu");
    ExtractConfig cfg;
    cfg.max_per_entry = o.max_per_entry;
    cfg.require_pos = o.require_pos;
    cfg.jobs = o.jobs;
    Extractor ex(dict, lex ? &*lex : nullptr, cfg);
    Input in(o.input);
    Output out(o.output);
    auto st = ex.run(in.get(), out.get(), parses ? &*parses : nullptr);
    out.get().flush();
    write_stats(o.stats, st.to_json());
    return 0;
}

// rewrite / pairs

struct RewriteOpts {
    Resources res;
    std::string input, conllu, output = "-", text_output, deps_output, stats, mode = "first";
    unsigned jobs = 1;
    bool strict = false;
    bool cross_sentence = false;
};

struct Loaded {
    CnDictionary dict;
    Lexicon lex;
};

Loaded load_resources(const Resources& r) {
    need(r.dict, "--dict");
    need(r.lexicon, "--lexicon");
    return {CnDictionary::load(r.dict), Lexicon::load(r.lexicon)};
}

int cmd_rewrite(const RewriteOpts& o) {
    need(o.input, "--input");
    need(o.conllu, "--conllu");
    auto [dict, lex] = load_resources(o.res);
    Mode mode = o.mode == "all" ? Mode::all_variants : Mode::first_variant;
    Input in(o.input);
    auto tagged = read_lines(in.get());
    auto parses = read_conllu_file(o.conllu);
    Pipeline pipe(dict, lex);
    auto results = rewrite_all(pipe, tagged, parses, mode, o.cross_sentence, o.jobs);

    Output out(o.output);
    std::optional<Output> text_out, deps_out;
    if (!o.text_output.empty()) text_out.emplace(o.text_output);
    std::vector<ScoredSet> dep_rows;
    std::size_t variants = 0, changed = 0, errors = 0, misses = 0;
    nlohmann::ordered_json error_list = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const std::string& sid = parses[i].source_id;
        if (!r.result) {
            if (o.strict) throw Error("line " + std::to_string(i + 1) + ": " + r.error);
            ++errors;
            error_list.push_back({{"line", i + 1}, {"error", r.error}});
            std::cerr << "neutre: line " << i + 1 << ": " << r.error << '\n';
            out.get() << tsv_field(r.source) << '\t' << sid << ".0\t" << tsv_field(r.source) << '\t'
                      << nlohmann::json{{"error", r.error}}.dump() << '\n';
            if (text_out) text_out->get() << r.source << '\n';
            continue;
        }
        const auto& res = *r.result;
        for (std::size_t k = 0; k < res.variants.size(); ++k) {
            const auto& v = res.variants[k];
            ++variants;
            if (!v.unchanged) ++changed;
            misses += v.inflection_misses.size();
            out.get() << tsv_field(r.source) << '\t' << sid << '.' << k + 1 << '\t' << tsv_field(v.text) << '\t'
                      << change_log_json(v) << '\n';
            if (text_out && k == 0) text_out->get() << v.text << '\n';
        }
        for (std::size_t k = 0; k < res.deps.size(); ++k) {
            const auto idx = res.deps[k].indices();
            dep_rows.push_back({sid, static_cast<int>(k), {idx.begin(), idx.end()}});
        }
    }
    if (!o.deps_output.empty()) {
        Output d(o.deps_output);
        write_dependency_tsv(d.get(), dep_rows);
    }
    nlohmann::ordered_json st;
    st["sentences"] = results.size();
    st["variants"] = variants;
    st["changed"] = changed;
    st["inflection_misses"] = misses;
    st["errors"] = errors;
    st["error_lines"] = error_list;
    write_stats(o.stats, st.dump(2));
    return 0;
}

struct PairsOpts {
    RewriteOpts rw;
    std::size_t max_per_entry = 0;
    std::uint64_t seed = 0;
};

int cmd_pairs(const PairsOpts& o) {
    need(o.rw.input, "--input");
    need(o.rw.conllu, "--conllu");
    auto [dict, lex] = load_resources(o.rw.res);
    Input in(o.rw.input);
    auto tagged = read_lines(in.get());
    auto parses = read_conllu_file(o.rw.conllu);
    Pipeline pipe(dict, lex);
    auto results = rewrite_all(pipe, tagged, parses, Mode::all_variants, o.rw.cross_sentence, o.rw.jobs);

    struct Pair {
        std::size_t order;
        int entry;
        std::string source, variant;
    };
    std::vector<Pair> pairs;
    std::size_t skipped = 0;
    for (const auto& r : results) {
        if (!r.result) {
            ++skipped;
            continue;
        }
        for (const auto& v : r.result->variants)
            if (!v.unchanged) pairs.push_back({pairs.size(), v.variant_entry_id, r.source, v.text});
    }
    std::size_t sampled_out = 0;
    if (o.max_per_entry) {
        // Uniform sample of at most N pairs per entry, reproducible from the seed.
        std::mt19937_64 rng(o.seed);
        std::map<int, std::vector<std::size_t>> by_entry;
        for (const auto& p : pairs) by_entry[p.entry].push_back(p.order);
        std::vector<bool> keep(pairs.size(), false);
        for (auto& [entry, idx] : by_entry) {
            std::shuffle(idx.begin(), idx.end(), rng);
            for (std::size_t k = 0; k < std::min(idx.size(), o.max_per_entry); ++k) keep[idx[k]] = true;
        }
        std::vector<Pair> kept;
        for (auto& p : pairs)
            if (keep[p.order]) kept.push_back(std::move(p));
        sampled_out = pairs.size() - kept.size();
        pairs = std::move(kept);
    }
    Output out(o.rw.output);
    for (const auto& p : pairs) out.get() << tsv_field(p.source) << '\t' << tsv_field(p.variant) << '\n';
    nlohmann::ordered_json st;
    st["sentences"] = results.size();
    st["pairs"] = pairs.size();
    st["skipped_lines"] = skipped;
    st["sampled_out"] = sampled_out;
    write_stats(o.rw.stats, st.dump(2));
    return 0;
}

// eval

struct EvalOpts {
    std::string hyp, ref, eval_set, metrics = "wer,bleu", vectors, labels, labels_b;
    bool per_sentence = false;
};

int cmd_eval(const EvalOpts& o) {
    nlohmann::ordered_json report;
    bool any = false;
    if (!o.hyp.empty() || !o.ref.empty() || !o.eval_set.empty()) {
        auto names = text::split(o.metrics, ',');
        for (const auto& m : names)
            if (m != "wer" && m != "bleu" && m != "cosine") throw UsageError("unknown metric '" + m + "'");
        std::vector<std::string> hyps, refs;
        if (!o.eval_set.empty()) {
            if (!o.ref.empty()) throw UsageError("--eval-set and --ref are exclusive");
            auto set = read_eval_set_file(o.eval_set);
            for (auto& p : set) {
                refs.push_back(p.gold);
                hyps.push_back(p.source);  // unchanged baseline unless --hyp is given
            }
            if (!o.hyp.empty()) hyps = read_lines_file(o.hyp);
        } else {
            need(o.hyp, "--hyp");
            need(o.ref, "--ref");
            hyps = read_lines_file(o.hyp);
            refs = read_lines_file(o.ref);
        }
        std::optional<VectorFileEmbedder> emb;
        if (!o.vectors.empty()) emb = VectorFileEmbedder::load(o.vectors);
        auto r = evaluate(hyps, refs, names, emb ? &*emb : nullptr);
        report = nlohmann::ordered_json::parse(r.to_json(o.per_sentence));
        any = true;
    }
    if (!o.labels.empty()) {
        auto a = read_labels_file(o.labels);
        auto d = label_distribution(a);
        nlohmann::ordered_json codes, cats;
        for (const auto& [c, n] : d.per_code) codes[code_name(c)] = n;
        for (const auto& [c, n] : d.per_category) cats[category_name(c)] = n;
        report["labels"] = {{"sentences", d.sentences}, {"assignments", d.assignments}, {"codes", codes},
                            {"categories", cats}};
        if (!o.labels_b.empty()) {
            auto b = read_labels_file(o.labels_b);
            nlohmann::ordered_json agr;
            for (const auto& [c, g] : label_agreement(a, b))
                agr[code_name(c)] = {{"agree", g.agree}, {"disagree", g.disagree}, {"rate", g.rate()}};
            report["agreement"] = agr;
        }
        any = true;
    }
    if (!any) throw UsageError("nothing to evaluate: give --hyp/--ref, --eval-set or --labels");
    std::cout << report.dump(2) << '\n';
    return 0;
}

// score-deps

struct ScoreOpts {
    Resources res;
    std::string pred, gold, input, conllu;
    bool baseline = false;
};

std::vector<ScoredSet> read_dep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_dependency_tsv(in, path);
}

int cmd_score_deps(const ScoreOpts& o) {
    need(o.gold, "--gold");
    auto gold = read_dep_file(o.gold);
    std::vector<ScoredSet> pred;
    if (!o.pred.empty()) {
        pred = read_dep_file(o.pred);
    } else {
        if (o.input.empty() || o.conllu.empty()) throw UsageError("give --pred, or --input with --conllu");
        auto [dict, lex] = load_resources(o.res);
        Input in(o.input);
        auto tagged = read_lines(in.get());
        auto parses = read_conllu_file(o.conllu);
        if (tagged.size() != parses.size()) throw Error("tagged input and parse file differ in length");
        Pipeline pipe(dict, lex);
        for (std::size_t i = 0; i < tagged.size(); ++i) {
            auto bound = bind_spans(parses[i], tagged[i], dict);
            for (std::size_t k = 0; k < bound.spans.size(); ++k) {
                auto ds = o.baseline ? detect_baseline(bound, bound.spans[k])
                                     : pipe.detect_all(bound)[k];
                auto idx = ds.indices();
                pred.push_back({bound.source_id, static_cast<int>(k), {idx.begin(), idx.end()}});
            }
        }
    }
    std::map<std::pair<std::string, int>, const ScoredSet*> by_key;
    for (const auto& p : pred) by_key[{p.sentence_id, p.span_index}] = &p;
    MicroCounts mc;
    std::size_t missing = 0;
    for (const auto& g : gold) {
        auto it = by_key.find({g.sentence_id, g.span_index});
        if (it == by_key.end()) {
            ++missing;
            mc.add({}, g.tokens);
        } else {
            mc.add(it->second->tokens, g.tokens);
        }
    }
    auto mi = mc.micro();
    auto ma = mc.macro();
    nlohmann::ordered_json j;
    j["spans"] = mc.n;
    j["missing_predictions"] = missing;
    j["micro"] = {{"precision", mi.precision}, {"recall", mi.recall}, {"f1", mi.f1}};
    j["macro"] = {{"precision", ma.precision}, {"recall", ma.recall}, {"f1", ma.f1}};
    j["tp"] = mc.tp;
    j["fp"] = mc.fp;
    j["fn"] = mc.fn;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_dict_check(const Resources& r) {
    need(r.dict, "--dict");
    auto dict = CnDictionary::load(r.dict);
    std::cout << dict.size() << " entries OK\n";
    return 0;
}

void add_resources(CLI::App* sub, Resources& r, bool lexicon) {
    sub->add_option("--dict", r.dict, "Collective-noun dictionary TSV");
    if (lexicon) sub->add_option("--lexicon", r.lexicon, "Morphological lexicon (TSV or DELAF)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neutre: rewrite French masculine-generic member nouns as collective nouns"};
    app.set_config("--config", "", "TOML config mirroring the flags (flags win)");
    app.require_subcommand(1);

    ExtractOpts ex;
    auto* s_ex = app.add_subcommand("extract", "Tag member phrases in a one-sentence-per-line corpus");
    add_resources(s_ex, ex.res, true);
    s_ex->add_option("--input", ex.input, "Corpus (default stdin)");
    s_ex->add_option("--output", ex.output, "Tagged lines (default stdout)");
    s_ex->add_option("--conllu", ex.conllu, "Parses aligned with the input lines");
    s_ex->add_option("--max-per-entry", ex.max_per_entry, "Keep at most N tags per dictionary entry");
    s_ex->add_flag("--require-pos", ex.require_pos, "Tag only words the parse marks NOUN");
    s_ex->add_flag("--no-lexicon", ex.no_lexicon, "Skip the MISID-risk check");
    s_ex->add_option("--jobs", ex.jobs, "Worker threads")->check(CLI::PositiveNumber);
    s_ex->add_option("--stats", ex.stats, "Write JSON stats here");

    RewriteOpts rw;
    auto* s_rw = app.add_subcommand("rewrite", "Rewrite tagged sentences with collective nouns");
    add_resources(s_rw, rw.res, true);
    s_rw->add_option("--input", rw.input, "Tagged lines");
    s_rw->add_option("--conllu", rw.conllu, "Parses, one sentence per tagged line");
    s_rw->add_option("--mode", rw.mode, "first|all")->check(CLI::IsMember({"first", "all"}));
    s_rw->add_option("--output", rw.output, "TSV: source, variant_id, rewritten, change_log");
    s_rw->add_option("--text-output", rw.text_output, "First variant only, one line per sentence");
    s_rw->add_option("--deps-output", rw.deps_output, "Detected dependencies TSV");
    s_rw->add_option("--jobs", rw.jobs, "Worker threads")->check(CLI::PositiveNumber);
    s_rw->add_option("--stats", rw.stats, "Write JSON stats here");
    s_rw->add_flag("--strict", rw.strict, "Stop at the first bad line");
    s_rw->add_flag("--cross-sentence", rw.cross_sentence, "Search the next sentence for coreferent pronouns");

    PairsOpts pr;
    auto* s_pr = app.add_subcommand("pairs", "Emit (original, variant) training pairs for every candidate");
    add_resources(s_pr, pr.rw.res, true);
    s_pr->add_option("--input", pr.rw.input, "Tagged lines");
    s_pr->add_option("--conllu", pr.rw.conllu, "Parses, one sentence per tagged line");
    s_pr->add_option("--output", pr.rw.output, "TSV: original, variant");
    s_pr->add_option("--max-per-entry", pr.max_per_entry, "Sample at most N pairs per entry");
    s_pr->add_option("--seed", pr.seed, "Sampling seed for --max-per-entry");
    s_pr->add_option("--jobs", pr.rw.jobs, "Worker threads")->check(CLI::PositiveNumber);
    s_pr->add_option("--stats", pr.rw.stats, "Write JSON stats here");
    s_pr->add_flag("--cross-sentence", pr.rw.cross_sentence, "Search the next sentence for coreferent pronouns");

    EvalOpts ev;
    auto* s_ev = app.add_subcommand("eval", "WER / BLEU / cosine report, error-label distribution");
    s_ev->add_option("--hyp", ev.hyp, "Hypotheses, one per line");
    s_ev->add_option("--ref", ev.ref, "References, one per line");
    s_ev->add_option("--eval-set", ev.eval_set, "source<TAB>gold TSV (hypotheses default to the sources)");
    s_ev->add_option("--metrics", ev.metrics, "Comma list of wer,bleu,cosine");
    s_ev->add_option("--vectors", ev.vectors, "Precomputed sentence vectors for cosine");
    s_ev->add_flag("--per-sentence", ev.per_sentence, "Include per-sentence rows");
    s_ev->add_option("--labels", ev.labels, "Error-label file");
    s_ev->add_option("--labels-b", ev.labels_b, "Second annotator's label file (agreement)");

    ScoreOpts sc;
    auto* s_sc = app.add_subcommand("score-deps", "Score detected dependencies against gold");
    add_resources(s_sc, sc.res, true);
    s_sc->add_option("--pred", sc.pred, "Predicted dependencies TSV");
    s_sc->add_option("--gold", sc.gold, "Gold dependencies TSV");
    s_sc->add_option("--input", sc.input, "Tagged lines (detect instead of --pred)");
    s_sc->add_option("--conllu", sc.conllu, "Parses for --input");
    s_sc->add_flag("--baseline", sc.baseline, "Score the direct-children baseline");

    Resources dc;
    auto* s_dc = app.add_subcommand("dict-check", "Validate the dictionary");
    add_resources(s_dc, dc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*s_ex) return cmd_extract(ex);
        if (*s_rw) return cmd_rewrite(rw);
        if (*s_pr) return cmd_pairs(pr);
        if (*s_ev) return cmd_eval(ev);
        if (*s_sc) return cmd_score_deps(sc);
        if (*s_dc) return cmd_dict_check(dc);
    } catch (const UsageError& e) {
        std::cerr << "neutre: " << e.what() << "\n\n";
        for (auto* sub : app.get_subcommands()) std::cerr << sub->help();
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "neutre: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
