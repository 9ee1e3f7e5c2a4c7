#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "neutre/annotation.hpp"

namespace neutre {

class CnDictionary;
class Lexicon;

enum class Role {
    determiner,
    adjective,
    past_participle,
    finite_verb,
    coref_pronoun,
    possessive_determiner,
    object_pronoun,
};

const char* role_name(Role r);

struct DepItem {
    int token = 0;
    Role role = Role::determiner;
    bool in_next_sentence = false;  // token index refers to the next sentence
};

struct DependencySet {
    MemberSpan span;
    std::vector<DepItem> items;
    std::vector<std::string> warnings;

    bool contains(int token, bool next = false) const;
    std::set<int> indices() const;  // same-sentence items only
};

// Each rule can be switched off for ablation runs.
struct DetectorRules {
    bool determiner = true;
    bool adjective = true;
    bool subject_agreement = true;  // finite verb, auxiliaries, participles
    bool copula = true;
    bool relative_clause = true;    // "qui" relatives of the noun
    bool possessive = true;
    bool coref = true;
    bool coordination = true;       // coordinated subjects keep the verb plural
};

struct DetectorContext {
    const CnDictionary* dict = nullptr;  // member forms block possessive/coref search
    const Lexicon* lexicon = nullptr;    // fixes verbs the parser tagged ADJ
    DetectorRules rules;
};

DependencySet detect(const AnnotatedSentence& s, const MemberSpan& span,
                     const AnnotatedSentence* next = nullptr, const DetectorContext& ctx = {});

// Direct dependents of the member noun minus punctuation.
DependencySet detect_baseline(const AnnotatedSentence& s, const MemberSpan& span);

struct Prf {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

// Both sets empty scores 1/1/1.
Prf score_detection(const std::set<int>& predicted, const std::set<int>& gold);

struct ScoredSet {
    std::string sentence_id;
    int span_index = 0;
    std::set<int> tokens;
};

// Throws if the two sets belong to different sentences or spans.
Prf score_detection(const ScoredSet& predicted, const ScoredSet& gold);

struct MicroCounts {
    std::size_t tp = 0, fp = 0, fn = 0;
    std::size_t n = 0;
    double f1_sum = 0, p_sum = 0, r_sum = 0;  // for the per-span average

    void add(const std::set<int>& predicted, const std::set<int>& gold);
    Prf micro() const;
    Prf macro() const;
};

// TSV sentence_id, span_index, comma-separated token indices. Header optional.
std::vector<ScoredSet> read_dependency_tsv(std::istream& in, const std::string& source = "<stream>");
void write_dependency_tsv(std::ostream& out, const std::vector<ScoredSet>& sets, bool header = true);

}  // namespace neutre
