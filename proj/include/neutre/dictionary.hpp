#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neutre/features.hpp"

namespace neutre {

struct CnEntry {
    int id = 0;
    std::string collective;  // singular surface, e.g. "armée"
    Gender cn_gender = Gender::masculine;
    Number cn_number = Number::singular;
    std::string member_plural;  // e.g. "soldats"
    std::string member_lemma;   // e.g. "soldat"
    bool elision = false;       // collective starts with a vowel or mute h
    std::string notes;
};

// Vowel-or-mute-h onset, the rule the elision column must follow.
// h-initial words are mute unless listed as aspirated.
bool elision_onset(std::string_view word);

class CnDictionary {
public:
    static CnDictionary load(const std::string& path);
    static CnDictionary parse(std::istream& in, const std::string& source = "<stream>");

    // All entries for a masculine plural form, in file order. NFC and
    // first-letter case folding are applied to the query.
    std::vector<const CnEntry*> lookup_member(std::string_view form) const;
    std::vector<int> member_ids(std::string_view form) const;
    bool is_member(std::string_view form) const;

    const CnEntry& entry_by_id(int id) const;  // throws NotFound
    bool has_id(int id) const;

    // Entry whose collective form equals word (case-insensitive first letter).
    const CnEntry* by_collective(std::string_view word) const;

    const std::vector<CnEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    void write(std::ostream& out) const;

private:
    void index();

    std::vector<CnEntry> entries_;
    std::unordered_map<int, std::size_t> by_id_;
    std::unordered_map<std::string, std::vector<std::size_t>> members_;
    std::unordered_map<std::string, std::size_t> collectives_;
};

}  // namespace neutre
