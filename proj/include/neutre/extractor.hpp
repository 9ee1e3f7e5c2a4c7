#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neutre/annotation.hpp"

namespace neutre {

class CnDictionary;
class Lexicon;

struct ExtractConfig {
    std::size_t max_per_entry = 0;  // 0 = no cap
    bool require_pos = false;       // needs parses: keep a tag only on NOUN tokens
    unsigned jobs = 1;
    std::size_t chunk = 4096;       // lines per parallel work unit
};

struct ExtractStats {
    std::size_t lines_scanned = 0;
    std::size_t lines_kept = 0;
    std::size_t tags = 0;
    std::size_t invalid_utf8 = 0;
    std::size_t pos_rejected = 0;  // --require-pos dropped a tag
    std::size_t capped = 0;        // dropped by max_per_entry
    std::size_t misid_risk = 0;    // tagged word also reads as an adjective
    std::map<int, std::size_t> per_entry;
    std::vector<std::pair<std::size_t, std::string>> misid_examples;  // (line, form), first 100

    std::string to_json() const;
};

// A member phrase found in a line, before caps are applied.
struct Candidate {
    std::size_t begin = 0;  // byte offsets in the original line
    std::size_t end = 0;
    std::size_t noun_begin = 0;
    std::vector<int> ids;
    std::string noun;
    bool misid_risk = false;
};

class Extractor {
public:
    Extractor(const CnDictionary& dict, const Lexicon* lexicon = nullptr, ExtractConfig cfg = {});

    // Member phrases of one line. parse (optional) enables the NOUN check.
    std::vector<Candidate> scan(std::string_view line, const AnnotatedSentence* parse = nullptr,
                                std::size_t* pos_rejected = nullptr) const;

    static std::string render(std::string_view line, const std::vector<Candidate>& cands);

    // Convenience: tagged line or nullopt when nothing was found.
    std::optional<std::string> tag_line(std::string_view line, const AnnotatedSentence* parse = nullptr) const;

    // Stream driver; output order equals input order for any job count.
    ExtractStats run(std::istream& in, std::ostream& out,
                     const std::vector<AnnotatedSentence>* parses = nullptr) const;

    const ExtractConfig& config() const { return cfg_; }

private:
    const CnDictionary& dict_;
    const Lexicon* lex_;
    ExtractConfig cfg_;
};

}  // namespace neutre
