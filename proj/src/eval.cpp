#include "neutre/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "neutre/error.hpp"
#include "neutre/text.hpp"

namespace neutre {

namespace {

// Python's str.isspace().
bool py_space(char32_t c) {
    return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x20) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
           (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
           c == 0x3000;
}

std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) out.push_back(text::next_cp(s, i));
    return out;
}

std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) out += text::encode(c);
    return out;
}

// Python str.split() with no argument.
std::vector<std::u32string> py_split(std::u32string_view s) {
    std::vector<std::u32string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && py_space(s[i])) ++i;
        std::size_t b = i;
        while (i < s.size() && !py_space(s[i])) ++i;
        if (i > b) out.emplace_back(s.substr(b, i - b));
    }
    return out;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

bool digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool dot_comma(char32_t c) { return c == U'.' || c == U','; }

// [\{-\~\[-\` -\&\(-\+\:-\@\/]
bool punct_13a(char32_t c) {
    return (c >= U'{' && c <= U'~') || (c >= U'[' && c <= U'`') || (c >= U' ' && c <= U'&') ||
           (c >= U'(' && c <= U'+') || (c >= U':' && c <= U'@') || c == U'/';
}

void check_sizes(std::size_t h, std::size_t r) {
    if (h != r)
        throw MetricError("hypotheses and references differ in length (" + std::to_string(h) + " vs " +
                          std::to_string(r) + ")");
}

double my_log(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

using Ngram = std::u32string;  // tokens joined by U+0001

std::unordered_map<Ngram, std::size_t> ngrams(const std::vector<std::u32string>& toks, std::size_t n) {
    std::unordered_map<Ngram, std::size_t> out;
    if (toks.size() < n) return out;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
        Ngram g = toks[i];
        for (std::size_t k = 1; k < n; ++k) {
            g.push_back(U'\x01');
            g += toks[i + k];
        }
        ++out[g];
    }
    return out;
}

std::string rstrip_py(std::string_view s) {
    auto u = decode(s);
    while (!u.empty() && py_space(u.back())) u.pop_back();
    return encode(u);
}

}  // namespace

// WER

std::vector<std::string> wer_words(std::string_view line) {
    auto u = decode(text::nfc(line));
    // re.sub(r"\s\s+", " ")
    std::u32string collapsed;
    for (std::size_t i = 0; i < u.size();) {
        if (py_space(u[i]) && i + 1 < u.size() && py_space(u[i + 1])) {
            while (i < u.size() && py_space(u[i])) ++i;
            collapsed.push_back(U' ');
        } else {
            collapsed.push_back(u[i++]);
        }
    }
    std::size_t b = 0, e = collapsed.size();
    while (b < e && py_space(collapsed[b])) ++b;
    while (e > b && py_space(collapsed[e - 1])) --e;
    std::vector<std::string> out;
    std::size_t start = b;
    for (std::size_t i = b; i <= e; ++i) {
        if (i == e || collapsed[i] == U' ') {
            if (i > start) out.push_back(encode(std::u32string_view(collapsed).substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::size_t word_edit_distance(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
    std::vector<std::size_t> prev(ref.size() + 1), cur(ref.size() + 1);
    for (std::size_t j = 0; j <= ref.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= hyp.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= ref.size(); ++j) {
            std::size_t sub = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[ref.size()];
}

WerResult wer(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
    check_sizes(hyps.size(), refs.size());
    if (refs.empty()) throw MetricError("empty corpus");
    WerResult r;
    double sum = 0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        auto rw = wer_words(refs[i]);
        if (rw.empty()) throw MetricError("reference " + std::to_string(i + 1) + " is empty");
        auto hw = wer_words(hyps[i]);
        std::size_t d = word_edit_distance(hw, rw);
        r.edits += d;
        r.ref_words += rw.size();
        double s = 100.0 * double(d) / double(rw.size());
        r.per_sentence.push_back(s);
        sum += s;
    }
    r.wer = 100.0 * double(r.edits) / double(r.ref_words);
    r.sentence_avg = sum / double(refs.size());
    return r;
}

// BLEU

std::string tokenize_13a(std::string_view line) {
    std::string s(line);
    replace_all(s, "<skipped>", "");
    replace_all(s, "-\n", "");
    replace_all(s, "\n", " ");
    if (s.find('&') != std::string::npos) {
        replace_all(s, "&quot;", "\"");
        replace_all(s, "&amp;", "&");
        replace_all(s, "&lt;", "<");
        replace_all(s, "&gt;", ">");
    }
    std::u32string u = U" " + decode(s) + U" ";

    std::u32string a;
    for (char32_t c : u) {
        if (punct_13a(c)) {
            a.push_back(U' ');
            a.push_back(c);
            a.push_back(U' ');
        } else {
            a.push_back(c);
        }
    }
    // ([^0-9])([\.,]) -> \1 \2 (non-overlapping, left to right)
    std::u32string b;
    for (std::size_t i = 0; i < a.size();) {
        if (i + 1 < a.size() && !digit(a[i]) && dot_comma(a[i + 1])) {
            b += {a[i], U' ', a[i + 1], U' '};
            i += 2;
        } else {
            b.push_back(a[i++]);
        }
    }
    // ([\.,])([^0-9]) -> " \1 \2"
    std::u32string c;
    for (std::size_t i = 0; i < b.size();) {
        if (i + 1 < b.size() && dot_comma(b[i]) && !digit(b[i + 1])) {
            c += {U' ', b[i], U' ', b[i + 1]};
            i += 2;
        } else {
            c.push_back(b[i++]);
        }
    }
    // ([0-9])(-) -> \1 \2 (trailing space)
    std::u32string d;
    for (std::size_t i = 0; i < c.size();) {
        if (i + 1 < c.size() && digit(c[i]) && c[i + 1] == U'-') {
            d += {c[i], U' ', U'-', U' '};
            i += 2;
        } else {
            d.push_back(c[i++]);
        }
    }
    std::string out;
    for (const auto& t : py_split(d)) {
        if (!out.empty()) out += ' ';
        out += encode(t);
    }
    return out;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
    for (std::size_t n = 0; n < 4; ++n) {
        correct[n] += o.correct[n];
        total[n] += o.total[n];
    }
    sys_len += o.sys_len;
    ref_len += o.ref_len;
    return *this;
}

BleuStats bleu_stats(std::string_view hyp, std::string_view ref) {
    auto ht = py_split(decode(tokenize_13a(rstrip_py(text::nfc(hyp)))));
    auto rt = py_split(decode(tokenize_13a(rstrip_py(text::nfc(ref)))));
    BleuStats st;
    st.sys_len = ht.size();
    st.ref_len = rt.size();
    for (std::size_t n = 1; n <= 4; ++n) {
        auto hg = ngrams(ht, n);
        auto rg = ngrams(rt, n);
        for (const auto& [g, count] : hg) {
            st.total[n - 1] += count;
            auto it = rg.find(g);
            if (it != rg.end()) st.correct[n - 1] += std::min(count, it->second);
        }
    }
    return st;
}

namespace {

BleuResult compute_bleu(const BleuStats& st, bool effective_order) {
    BleuResult r;
    r.stats = st;
    if (st.sys_len < st.ref_len)
        r.bp = st.sys_len > 0 ? std::exp(1.0 - double(st.ref_len) / double(st.sys_len)) : 0.0;
    else
        r.bp = 1.0;
    bool any = std::any_of(st.correct.begin(), st.correct.end(), [](std::size_t c) { return c > 0; });
    if (!any) return r;
    double smooth = 1.0;
    std::size_t eff = 4;
    for (std::size_t n = 1; n <= 4; ++n) {
        if (st.total[n - 1] == 0) break;
        if (effective_order) eff = n;
        if (st.correct[n - 1] == 0) {
            smooth *= 2;
            r.precisions[n - 1] = 100.0 / (smooth * double(st.total[n - 1]));
        } else {
            r.precisions[n - 1] = 100.0 * double(st.correct[n - 1]) / double(st.total[n - 1]);
        }
    }
    double sum = 0;
    for (std::size_t n = 0; n < eff; ++n) sum += my_log(r.precisions[n]);
    r.score = r.bp * std::exp(sum / double(eff));
    return r;
}

}  // namespace

BleuResult bleu_from_stats(const BleuStats& stats) { return compute_bleu(stats, false); }

BleuResult bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
    check_sizes(hyps.size(), refs.size());
    if (refs.empty()) throw MetricError("empty corpus");
    BleuStats st;
    for (std::size_t i = 0; i < refs.size(); ++i) st += bleu_stats(hyps[i], refs[i]);
    return bleu_from_stats(st);
}

double sentence_bleu(std::string_view hyp, std::string_view ref) {
    return compute_bleu(bleu_stats(hyp, ref), true).score;
}

// Cosine

VectorFileEmbedder VectorFileEmbedder::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse(in, path);
}

VectorFileEmbedder VectorFileEmbedder::parse(std::istream& in, const std::string& source) {
    VectorFileEmbedder e;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.rfind('\t');
        if (tab == std::string::npos) throw LoadError(source, lineno, "expected sentence<TAB>vector");
        std::istringstream vs(line.substr(tab + 1));
        std::vector<double> v;
        std::string tok;
        while (vs >> tok) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw LoadError(source, lineno, "bad vector component '" + tok + "'");
            }
        }
        if (v.empty()) throw LoadError(source, lineno, "empty vector");
        e.vectors_[text::nfc(std::string_view(line).substr(0, tab))] = std::move(v);
    }
    return e;
}

std::optional<std::vector<double>> VectorFileEmbedder::embed(std::string_view sentence) const {
    auto it = vectors_.find(text::nfc(sentence));
    if (it == vectors_.end()) return std::nullopt;
    return it->second;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw MetricError("vector dimensions differ");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) throw MetricError("zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::optional<CosineResult> cosine_eval(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                                        const Embedder& embedder) {
    check_sizes(hyps.size(), refs.size());
    CosineResult r;
    r.total = hyps.size();
    double sum = 0;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        auto a = embedder.embed(hyps[i]);
        auto b = embedder.embed(refs[i]);
        if (!a || !b || a->size() != b->size()) continue;
        try {
            sum += cosine(*a, *b);
        } catch (const MetricError&) {
            continue;
        }
        ++r.covered;
    }
    if (r.covered == 0) return std::nullopt;
    r.mean = 100.0 * sum / double(r.covered);
    return r;
}

// Error labels

const std::array<ErrorCode, kErrorCodeCount>& all_error_codes() {
    static const std::array<ErrorCode, kErrorCodeCount> codes = {
        ErrorCode::ADJ,         ErrorCode::CASE,  ErrorCode::DET,          ErrorCode::DET_COREF,
        ErrorCode::ELISION,     ErrorCode::GEN_FAILURE, ErrorCode::MISID_NOUN, ErrorCode::PREP,
        ErrorCode::PRON_COREF,  ErrorCode::PUNCT, ErrorCode::SEM,          ErrorCode::SPECIAL_CHAR,
        ErrorCode::UNREPLACED,  ErrorCode::VERB,
    };
    return codes;
}

const char* code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ADJ: return "ADJ";
        case ErrorCode::CASE: return "CASE";
        case ErrorCode::DET: return "DET";
        case ErrorCode::DET_COREF: return "DET_COREF";
        case ErrorCode::ELISION: return "ELISION";
        case ErrorCode::GEN_FAILURE: return "GEN_FAILURE";
        case ErrorCode::MISID_NOUN: return "MISID_NOUN";
        case ErrorCode::PREP: return "PREP";
        case ErrorCode::PRON_COREF: return "PRON_COREF";
        case ErrorCode::PUNCT: return "PUNCT";
        case ErrorCode::SEM: return "SEM";
        case ErrorCode::SPECIAL_CHAR: return "SPECIAL_CHAR";
        case ErrorCode::UNREPLACED: return "UNREPLACED";
        case ErrorCode::VERB: return "VERB";
    }
    return "?";
}

ErrorCode code_from_name(std::string_view name) {
    for (ErrorCode c : all_error_codes())
        if (name == code_name(c)) return c;
    throw Error("unknown error code '" + std::string(name) + "'");
}

ErrorCategory category_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::ADJ:
        case ErrorCode::DET:
        case ErrorCode::ELISION:
        case ErrorCode::PREP:
        case ErrorCode::VERB: return ErrorCategory::morphosyntax;
        case ErrorCode::DET_COREF:
        case ErrorCode::PRON_COREF:
        case ErrorCode::UNREPLACED:
        case ErrorCode::MISID_NOUN: return ErrorCategory::collective_coref;
        case ErrorCode::SEM: return ErrorCategory::semantics;
        case ErrorCode::CASE:
        case ErrorCode::GEN_FAILURE:
        case ErrorCode::PUNCT:
        case ErrorCode::SPECIAL_CHAR: return ErrorCategory::other;
    }
    return ErrorCategory::other;
}

const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::morphosyntax: return "morphosyntax";
        case ErrorCategory::collective_coref: return "collective/coref";
        case ErrorCategory::semantics: return "semantics";
        case ErrorCategory::other: return "other";
    }
    return "?";
}

LabelSet read_labels(std::istream& in, const std::string& source) {
    LabelSet out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        if (lineno == 1 && line.rfind("sentence_id", 0) == 0) continue;
        auto tab = line.find('\t');
        std::string id(text::trim(std::string_view(line).substr(0, tab)));
        if (id.empty()) throw LoadError(source, lineno, "missing sentence id");
        auto& codes = out[id];
        if (tab == std::string::npos) continue;
        for (auto piece : text::split(std::string_view(line).substr(tab + 1), ';')) {
            auto name = text::trim(piece);
            if (name.empty()) continue;
            ErrorCode c;
            try {
                c = code_from_name(name);
            } catch (const Error& e) {
                throw LoadError(source, lineno, e.what());
            }
            if (std::find(codes.begin(), codes.end(), c) == codes.end()) codes.push_back(c);
        }
    }
    return out;
}

LabelSet read_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_labels(in, path);
}

LabelDistribution label_distribution(const LabelSet& labels) {
    LabelDistribution d;
    for (ErrorCode c : all_error_codes()) d.per_code[c] = 0;
    for (auto cat : {ErrorCategory::morphosyntax, ErrorCategory::collective_coref, ErrorCategory::semantics,
                     ErrorCategory::other})
        d.per_category[cat] = 0;
    d.sentences = labels.size();
    for (const auto& [id, codes] : labels) {
        for (ErrorCode c : codes) {
            ++d.per_code[c];
            ++d.per_category[category_of(c)];
            ++d.assignments;
        }
    }
    return d;
}

std::map<ErrorCode, CodeAgreement> label_agreement(const LabelSet& a, const LabelSet& b) {
    std::map<ErrorCode, CodeAgreement> out;
    for (ErrorCode c : all_error_codes()) out[c] = {};
    std::set<std::string> ids;
    for (const auto& [id, _] : a) ids.insert(id);
    for (const auto& [id, _] : b) ids.insert(id);
    auto has = [](const LabelSet& s, const std::string& id, ErrorCode c) {
        auto it = s.find(id);
        return it != s.end() && std::find(it->second.begin(), it->second.end(), c) != it->second.end();
    };
    for (const auto& id : ids) {
        for (ErrorCode c : all_error_codes()) {
            bool x = has(a, id, c), y = has(b, id, c);
            if (x && y) ++out[c].agree;
            else if (x || y) ++out[c].disagree;
        }
    }
    return out;
}

// Files

std::vector<EvalPair> read_eval_set(std::istream& in, const std::string& source) {
    std::vector<EvalPair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw LoadError(source, lineno, "expected source<TAB>gold");
        out.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return out;
}

std::vector<EvalPair> read_eval_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_eval_set(in, path);
}

std::vector<std::string> read_lines_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(std::move(line));
    }
    return out;
}

// Report

EvalReport evaluate(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                    const std::vector<std::string>& metrics, const Embedder* embedder) {
    check_sizes(hyps.size(), refs.size());
    EvalReport r;
    r.n_sentences = refs.size();
    for (const auto& m : metrics) {
        if (m == "wer") r.wer = wer(hyps, refs);
        else if (m == "bleu") r.bleu = bleu(hyps, refs);
        else if (m == "cosine") {
            r.cosine_requested = true;
            if (embedder) r.cosine = cosine_eval(hyps, refs, *embedder);
        } else throw MetricError("unknown metric '" + m + "'");
    }
    return r;
}

std::string EvalReport::to_json(bool per_sentence) const {
    nlohmann::ordered_json j;
    j["n_sentences"] = n_sentences;
    if (wer) {
        j["wer"] = wer->wer;
        j["wer_sentence_avg"] = wer->sentence_avg;
    }
    if (bleu) {
        j["bleu"] = bleu->score;
        j["bleu_precisions"] = bleu->precisions;
        j["bleu_bp"] = bleu->bp;
        j["bleu_sys_len"] = bleu->stats.sys_len;
        j["bleu_ref_len"] = bleu->stats.ref_len;
    }
    if (cosine_requested) {
        if (cosine) {
            j["cosine"] = cosine->mean;
            j["cosine_covered"] = cosine->covered;
        } else {
            j["cosine"] = nullptr;
        }
    }
    if (per_sentence && wer) {
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < wer->per_sentence.size(); ++i)
            rows.push_back({{"index", i + 1}, {"wer", wer->per_sentence[i]}});
        j["sentences"] = rows;
    }
    return j.dump(2);
}

}  // namespace neutre
