#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace neutre {

// Word error rate, jiwer-compatible word splitting: runs of two or more
// whitespace characters collapse to one space, the line is stripped and
// split on single spaces. Case-sensitive. Both sides are NFC-normalized.
struct WerResult {
    double wer = 0;          // corpus: total edits / total reference words x 100
    double sentence_avg = 0;  // mean of per-sentence WER x 100
    std::size_t edits = 0;
    std::size_t ref_words = 0;
    std::vector<double> per_sentence;
};

std::vector<std::string> wer_words(std::string_view line);
std::size_t word_edit_distance(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);
WerResult wer(const std::vector<std::string>& hyps, const std::vector<std::string>& refs);

// Corpus BLEU pinned to sacrebleu's defaults: 13a tokenizer, n = 1..4,
// exponential smoothing, brevity penalty, case-sensitive, one reference.
struct BleuStats {
    std::array<std::size_t, 4> correct{};
    std::array<std::size_t, 4> total{};
    std::size_t sys_len = 0;
    std::size_t ref_len = 0;
    BleuStats& operator+=(const BleuStats& o);
};

struct BleuResult {
    double score = 0;
    std::array<double, 4> precisions{};
    double bp = 0;
    BleuStats stats;
};

std::string tokenize_13a(std::string_view line);
BleuStats bleu_stats(std::string_view hyp, std::string_view ref);
BleuResult bleu_from_stats(const BleuStats& stats);
BleuResult bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs);
double sentence_bleu(std::string_view hyp, std::string_view ref);  // same config, one segment

// Sentence embeddings come from outside; a missing vector means "absent".
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::optional<std::vector<double>> embed(std::string_view sentence) const = 0;
};

// Precomputed vectors: "sentence<TAB>f1 f2 ..." per line.
class VectorFileEmbedder : public Embedder {
public:
    static VectorFileEmbedder load(const std::string& path);
    static VectorFileEmbedder parse(std::istream& in, const std::string& source = "<stream>");
    std::optional<std::vector<double>> embed(std::string_view sentence) const override;
    std::size_t size() const { return vectors_.size(); }

private:
    std::map<std::string, std::vector<double>, std::less<>> vectors_;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

struct CosineResult {
    double mean = 0;  // x 100
    std::size_t covered = 0;
    std::size_t total = 0;
};

// nullopt when no pair could be embedded.
std::optional<CosineResult> cosine_eval(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                                        const Embedder& embedder);

// Error labels.
enum class ErrorCode {
    ADJ, CASE, DET, DET_COREF, ELISION, GEN_FAILURE, MISID_NOUN,
    PREP, PRON_COREF, PUNCT, SEM, SPECIAL_CHAR, UNREPLACED, VERB,
};
enum class ErrorCategory { morphosyntax, collective_coref, semantics, other };

constexpr std::size_t kErrorCodeCount = 14;
const std::array<ErrorCode, kErrorCodeCount>& all_error_codes();
const char* code_name(ErrorCode c);
ErrorCode code_from_name(std::string_view name);  // throws naming the unknown code
ErrorCategory category_of(ErrorCode c);
const char* category_name(ErrorCategory c);

// sentence_id -> set of codes. File: "sentence_id<TAB>CODE;CODE", header optional.
using LabelSet = std::map<std::string, std::vector<ErrorCode>>;
LabelSet read_labels(std::istream& in, const std::string& source = "<stream>");
LabelSet read_labels_file(const std::string& path);

struct LabelDistribution {
    std::map<ErrorCode, std::size_t> per_code;
    std::map<ErrorCategory, std::size_t> per_category;
    std::size_t assignments = 0;
    std::size_t sentences = 0;
};
LabelDistribution label_distribution(const LabelSet& labels);

struct CodeAgreement {
    std::size_t agree = 0;     // sentences where both files carry the code
    std::size_t disagree = 0;  // sentences where exactly one does
    double rate() const { return agree + disagree ? 100.0 * agree / double(agree + disagree) : 100.0; }
};
std::map<ErrorCode, CodeAgreement> label_agreement(const LabelSet& a, const LabelSet& b);

// Evaluation set: "source<TAB>gold" per line.
struct EvalPair {
    std::string source;
    std::string gold;
};
std::vector<EvalPair> read_eval_set(std::istream& in, const std::string& source = "<stream>");
std::vector<EvalPair> read_eval_set_file(const std::string& path);

std::vector<std::string> read_lines_file(const std::string& path);

struct EvalReport {
    std::optional<WerResult> wer;
    std::optional<BleuResult> bleu;
    std::optional<CosineResult> cosine;
    bool cosine_requested = false;
    std::size_t n_sentences = 0;
    std::string to_json(bool per_sentence = false) const;
};

// metrics: subset of {"wer", "bleu", "cosine"}.
EvalReport evaluate(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                    const std::vector<std::string>& metrics, const Embedder* embedder = nullptr);

}  // namespace neutre
