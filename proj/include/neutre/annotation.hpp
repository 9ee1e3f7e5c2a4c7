#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "neutre/features.hpp"

namespace neutre {

class CnDictionary;

struct Token {
    int index = 0;  // 1-based word id
    std::string surface;
    std::string lemma;
    std::string upos;
    std::string xpos;
    FeatMap feats;
    MorphFeatures features;
    int head = 0;
    std::string deprel;
    std::string misc;
    std::string space_after;  // whitespace following this token in the text
    int mwt = 0;              // index into AnnotatedSentence::mwts + 1, 0 if none

    std::string feat(std::string_view key) const;
    bool is_punct() const { return upos == "PUNCT"; }
};

// "des" = de + les: the surface lives on the range line.
struct MultiwordToken {
    int first = 0;
    int last = 0;
    std::string surface;
    std::string space_after;
};

struct MemberSpan {
    std::vector<int> entry_ids;
    int start = 0;  // inclusive token indices
    int end = 0;
    int noun = 0;
};

struct AnnotatedSentence {
    std::string source_id;
    std::string text;        // the "# text" comment
    std::string leading;     // whitespace before the first token
    std::vector<std::string> comments;
    std::vector<Token> tokens;
    std::vector<MultiwordToken> mwts;
    std::vector<MemberSpan> spans;

    int size() const { return static_cast<int>(tokens.size()); }
    const Token& at(int index) const { return tokens.at(static_cast<std::size_t>(index - 1)); }
    std::vector<int> children(int index) const;
    // Byte offset of each token's surface in the detokenized text (words
    // inside a multiword token share the range's offset).
    std::vector<std::size_t> offsets() const;
};

// One sentence block (comment lines + token lines). first_line is used for
// error messages only.
AnnotatedSentence parse_conllu(std::string_view block, std::size_t first_line = 1);
std::vector<AnnotatedSentence> read_conllu(std::istream& in);
std::vector<AnnotatedSentence> read_conllu_file(const std::string& path);

std::string detokenize(const AnnotatedSentence& s);

// Tagged text: plain text with <n-ID[,ID...]> ... </n> pairs.
struct TagSpan {
    std::size_t begin = 0;  // byte offsets into the stripped text
    std::size_t end = 0;
    std::vector<int> ids;
};
std::string strip_tags(std::string_view tagged, std::vector<TagSpan>* spans = nullptr);

AnnotatedSentence bind_spans(AnnotatedSentence sentence, std::string_view tagged, const CnDictionary& dict);

}  // namespace neutre
