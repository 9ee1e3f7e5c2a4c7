#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "neutre/annotation.hpp"
#include "neutre/detector.hpp"
#include "neutre/generator.hpp"

namespace neutre {

class CnDictionary;
class Lexicon;

struct SentenceRewrite {
    AnnotatedSentence sentence;  // with spans bound
    std::vector<DependencySet> deps;
    std::vector<RewriteResult> variants;
};

// Tagged line + its parse -> bound spans -> dependencies -> variants.
class Pipeline {
public:
    Pipeline(const CnDictionary& dict, const Lexicon& lexicon, DetectorRules rules = {});

    SentenceRewrite run(std::string_view tagged, const AnnotatedSentence& parse,
                        const AnnotatedSentence* next = nullptr, Mode mode = Mode::first_variant) const;

    // Dependencies only (no rewriting).
    std::vector<DependencySet> detect_all(const AnnotatedSentence& bound, const AnnotatedSentence* next = nullptr) const;

    const CnDictionary& dictionary() const { return dict_; }
    const Lexicon& lexicon() const { return lex_; }

private:
    const CnDictionary& dict_;
    const Lexicon& lex_;
    DetectorRules rules_;
};

// JSON object describing the edits of one variant (compact, one line).
std::string change_log_json(const RewriteResult& r);

}  // namespace neutre
