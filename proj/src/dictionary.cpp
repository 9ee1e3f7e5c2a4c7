#include "neutre/dictionary.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "neutre/error.hpp"
#include "neutre/text.hpp"

namespace neutre {

namespace {

const char* kHeader = "id\tcollective\tcn_gender\tcn_number\tmember_plural\tmember_lemma\telision\tnotes";

// Words where h is aspirated: no elision ("la hongrophonie").
const std::set<std::string, std::less<>> kAspirated = {
    "hache", "haie", "haine", "hall", "halte", "hameau", "hanche", "handicap", "hangar",
    "haoussaphonie", "hardi", "hareng", "haricot", "hasard", "hâte", "haut", "hauteur",
    "hausse", "héros", "hérisson", "hibou", "hiérarchie", "hindiphonie", "hollandais",
    "homard", "hongrois", "hongrophonie", "honte", "hors", "housse", "huit", "hurlement",
};

}  // namespace

bool elision_onset(std::string_view word) {
    char32_t b = text::base_letter(word);
    switch (b) {
        case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
            return true;
        case U'h': {
            std::string w = text::lower(word);
            auto cut = w.find_first_of(" -'");
            return !kAspirated.count(std::string_view(w).substr(0, cut));
        }
        default:
            return false;
    }
}

CnDictionary CnDictionary::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError(path, 0, "cannot open dictionary");
    return parse(in, path);
}

CnDictionary CnDictionary::parse(std::istream& in, const std::string& source) {
    CnDictionary d;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header) {
            if (line.rfind("id\t", 0) != 0) throw LoadError(source, lineno, "missing header");
            header = true;
            continue;
        }
        if (text::trim(line).empty()) continue;
        if (!text::valid_utf8(line)) throw LoadError(source, lineno, "invalid UTF-8");
        auto cols = text::split(line, '\t');
        if (cols.size() == 7) cols.emplace_back();
        if (cols.size() != 8)
            throw LoadError(source, lineno, "expected 8 columns, got " + std::to_string(cols.size()));

        CnEntry e;
        auto [p, ec] = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), e.id);
        if (ec != std::errc() || p != cols[0].data() + cols[0].size() || e.id <= 0)
            throw LoadError(source, lineno, "id is not a positive integer: '" + cols[0] + "'");
        if (d.by_id_.count(e.id)) throw LoadError(source, lineno, "duplicate id " + cols[0]);

        e.collective = text::nfc(cols[1]);
        e.member_plural = text::nfc(cols[4]);
        e.member_lemma = text::nfc(cols[5]);
        if (e.collective.empty() || e.member_plural.empty())
            throw LoadError(source, lineno, "empty collective or member form");
        if (e.collective == e.member_plural)
            throw LoadError(source, lineno, "collective equals member form");

        if (cols[2] == "m") e.cn_gender = Gender::masculine;
        else if (cols[2] == "f") e.cn_gender = Gender::feminine;
        else throw LoadError(source, lineno, "cn_gender must be m or f");

        if (cols[3] == "sg" || cols[3].empty()) e.cn_number = Number::singular;
        else if (cols[3] == "pl") e.cn_number = Number::plural;
        else throw LoadError(source, lineno, "cn_number must be sg or pl");

        if (cols[6] == "1") e.elision = true;
        else if (cols[6] == "0") e.elision = false;
        else throw LoadError(source, lineno, "elision must be 0 or 1");
        if (e.elision != elision_onset(e.collective))
            throw LoadError(source, lineno, "elision flag disagrees with onset of '" + e.collective + "'");

        e.notes = cols[7];
        d.by_id_[e.id] = d.entries_.size();
        d.entries_.push_back(std::move(e));
    }
    if (!header) throw LoadError(source, lineno, "empty dictionary file");
    if (d.entries_.empty()) throw LoadError(source, lineno, "dictionary has no entries");
    d.index();
    return d;
}

void CnDictionary::index() {
    members_.clear();
    collectives_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        members_[entries_[i].member_plural].push_back(i);
        collectives_.emplace(entries_[i].collective, i);
    }
}

std::vector<const CnEntry*> CnDictionary::lookup_member(std::string_view form) const {
    std::vector<const CnEntry*> out;
    auto it = members_.find(text::fold_first(text::nfc(form)));
    if (it == members_.end()) return out;
    for (auto i : it->second) out.push_back(&entries_[i]);
    return out;
}

std::vector<int> CnDictionary::member_ids(std::string_view form) const {
    std::vector<int> ids;
    for (const auto* e : lookup_member(form)) ids.push_back(e->id);
    return ids;
}

bool CnDictionary::is_member(std::string_view form) const {
    return members_.count(text::fold_first(text::nfc(form))) > 0;
}

const CnEntry& CnDictionary::entry_by_id(int id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw NotFound(id);
    return entries_[it->second];
}

bool CnDictionary::has_id(int id) const { return by_id_.count(id) > 0; }

const CnEntry* CnDictionary::by_collective(std::string_view word) const {
    auto it = collectives_.find(text::fold_first(text::nfc(word)));
    return it == collectives_.end() ? nullptr : &entries_[it->second];
}

void CnDictionary::write(std::ostream& out) const {
    out << kHeader << '\n';
    for (const auto& e : entries_) {
        out << e.id << '\t' << e.collective << '\t' << gender_code(e.cn_gender) << '\t'
            << (e.cn_number == Number::plural ? "pl" : "sg") << '\t' << e.member_plural << '\t'
            << e.member_lemma << '\t' << (e.elision ? 1 : 0) << '\t' << e.notes << '\n';
    }
}

}  // namespace neutre
