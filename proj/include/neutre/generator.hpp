#pragma once

#include <string>
#include <vector>

#include "neutre/annotation.hpp"
#include "neutre/detector.hpp"

namespace neutre {

class CnDictionary;
class Lexicon;

enum class Mode { first_variant, all_variants };

struct Change {
    int token = 0;
    std::string before;
    std::string after;
    std::string role;  // a Role name or "member_noun"
};

struct InflectionFailure {
    int token = 0;
    std::string reason;
};

struct RewriteResult {
    int variant_entry_id = 0;       // entry used for the first span (0 if none)
    std::vector<int> variant_ids;   // one per span
    std::string text;
    std::vector<Change> changes;
    std::vector<InflectionFailure> inflection_misses;
    std::vector<std::string> flags;  // SPECIFICITY-risk, PARTITIVE-risk
    bool unchanged = true;
};

// deps[i] belongs to sentence.spans[i]. all_variants yields the cartesian
// product of candidates over spans, in dictionary order.
std::vector<RewriteResult> rewrite(const AnnotatedSentence& sentence, const std::vector<DependencySet>& deps,
                                   const CnDictionary& dict, const Lexicon& lexicon, Mode mode);

// Render tokens with their spacing after applying changes (word-level
// before/after pairs). Handles elision, contractions with à/de and the
// source's apostrophe.
std::string detokenize(const AnnotatedSentence& sentence, const std::vector<Change>& changes,
                       const CnDictionary* dict = nullptr);

}  // namespace neutre
