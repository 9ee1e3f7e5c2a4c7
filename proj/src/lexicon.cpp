#include "neutre/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "neutre/error.hpp"
#include "neutre/text.hpp"

namespace neutre {

namespace {

const std::string kTenses = "PIJFCSTY";

// DELAF fields are separated by unescaped ',' '.' ':'.
std::size_t find_unescaped(const std::string& s, char c, std::size_t from = 0) {
    for (std::size_t i = from; i < s.size(); ++i) {
        if (s[i] == '\\') ++i;
        else if (s[i] == c) return i;
    }
    return std::string::npos;
}

std::string unescape(std::string_view s) {
    std::string r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        r += s[i];
    }
    return r;
}

Pos delaf_pos(std::string_view cat) {
    auto plus = cat.find('+');
    cat = cat.substr(0, plus);
    if (cat == "N") return Pos::noun;
    if (cat == "A") return Pos::adjective;
    if (cat == "V") return Pos::verb;
    if (cat == "DET") return Pos::determiner;
    if (cat == "PRO") return Pos::pronoun;
    return Pos::other;
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError(path, 0, "cannot open lexicon");
    return parse(in, path);
}

Lexicon Lexicon::parse(std::istream& in, const std::string& source) {
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (line.empty()) continue;
        if (line.rfind("surface\t", 0) == 0) continue;
        if (!text::valid_utf8(line)) throw LoadError(source, lineno, "invalid UTF-8");
        if (line.find('\t') == std::string::npos) {
            lex.add_delaf(line, source, lineno);
            continue;
        }
        auto cols = text::split(line, '\t');
        if (cols.size() != 8)
            throw LoadError(source, lineno, "expected 8 columns, got " + std::to_string(cols.size()));
        if (cols[0].empty() || cols[1].empty()) throw LoadError(source, lineno, "empty surface or lemma");
        auto one_of = [](std::string_view v, std::initializer_list<std::string_view> ok) {
            return std::find(ok.begin(), ok.end(), v) != ok.end();
        };
        if (!one_of(cols[2], {"N", "A", "V", "DET", "PRO", "X"}))
            throw LoadError(source, lineno, "unknown pos '" + cols[2] + "'");
        if (!one_of(cols[3], {"", "m", "f"})) throw LoadError(source, lineno, "gender must be m, f or empty");
        if (!one_of(cols[4], {"", "s", "p"})) throw LoadError(source, lineno, "number must be s, p or empty");
        if (!one_of(cols[6], {"", "fin", "ppart", "inf", "ppres"}))
            throw LoadError(source, lineno, "unknown verbform '" + cols[6] + "'");
        if (!one_of(cols[7], {"", "P", "I", "J", "F", "C", "S", "T", "Y", "K", "G", "W"}))
            throw LoadError(source, lineno, "unknown tense/mood '" + cols[7] + "'");
        MorphAnalysis a;
        a.surface = text::nfc(cols[0]);
        a.lemma = text::nfc(cols[1]);
        a.features.pos = pos_from_code(cols[2]);
        a.features.gender = gender_from_code(cols[3]);
        a.features.number = number_from_code(cols[4]);
        if (!cols[5].empty()) {
            if (cols[5].size() != 1 || cols[5][0] < '1' || cols[5][0] > '3')
                throw LoadError(source, lineno, "person must be 1..3");
            a.features.person = cols[5][0] - '0';
        }
        a.features.verbform = verbform_from_code(cols[6]);
        a.features.tense_mood = cols[7];
        lex.add(std::move(a));
    }
    return lex;
}

void Lexicon::add_delaf(const std::string& line, const std::string& source, std::size_t lineno) {
    if (line[0] == '#' || line.rfind("//", 0) == 0) return;
    auto comma = find_unescaped(line, ',');
    auto dot = comma == std::string::npos ? comma : find_unescaped(line, '.', comma + 1);
    if (dot == std::string::npos) throw LoadError(source, lineno, "malformed DELAF line");
    std::string surface = text::nfc(unescape(std::string_view(line).substr(0, comma)));
    std::string lemma = text::nfc(unescape(std::string_view(line).substr(comma + 1, dot - comma - 1)));
    if (lemma.empty()) lemma = surface;

    auto parts = text::split(std::string_view(line).substr(dot + 1), ':');
    Pos pos = delaf_pos(parts[0]);
    if (parts.size() == 1) {
        MorphFeatures f;
        f.pos = pos;
        add({surface, lemma, f});
        return;
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
        MorphFeatures f;
        f.pos = pos;
        for (char c : parts[i]) {
            if (c == 'm') f.gender = Gender::masculine;
            else if (c == 'f') f.gender = Gender::feminine;
            else if (c == 's') f.number = Number::singular;
            else if (c == 'p') f.number = Number::plural;
            else if (c >= '1' && c <= '3') f.person = c - '0';
            else if (c == 'K') { f.verbform = VerbForm::past_participle; f.tense_mood = "K"; }
            else if (c == 'G') { f.verbform = VerbForm::present_participle; f.tense_mood = "G"; }
            else if (c == 'W') { f.verbform = VerbForm::infinitive; f.tense_mood = "W"; }
            else if (kTenses.find(c) != std::string::npos) {
                f.verbform = VerbForm::finite;
                f.tense_mood = std::string(1, c);
            }
        }
        add({surface, lemma, f});
    }
}

void Lexicon::add(MorphAnalysis a) {
    auto i = rows_.size();
    by_surface_[a.surface].push_back(i);
    by_lemma_[a.lemma].push_back(i);
    rows_.push_back(std::move(a));
}

std::vector<MorphAnalysis> Lexicon::analyze(std::string_view form) const {
    std::vector<MorphAnalysis> out;
    auto it = by_surface_.find(text::nfc(form));
    if (it == by_surface_.end()) return out;
    for (auto i : it->second) out.push_back(rows_[i]);
    return out;
}

std::optional<std::string> Lexicon::try_inflect(std::string_view lemma, const MorphFeatures& target) const {
    auto it = by_lemma_.find(text::nfc(lemma));
    if (it == by_lemma_.end()) return std::nullopt;
    const std::string* best = nullptr;
    for (auto i : it->second) {
        const auto& r = rows_[i];
        if (!r.features.compatible(target)) continue;
        if (!best || r.surface.size() < best->size() || (r.surface.size() == best->size() && r.surface < *best))
            best = &r.surface;
    }
    if (!best) return std::nullopt;
    return *best;
}

std::string Lexicon::inflect(std::string_view lemma, const MorphFeatures& target) const {
    auto r = try_inflect(lemma, target);
    if (!r) throw InflectionMiss(std::string(lemma), to_string(target));
    return *r;
}

bool Lexicon::has_reading(std::string_view form, Pos pos, VerbForm vf) const {
    auto it = by_surface_.find(text::nfc(form));
    if (it == by_surface_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](std::size_t i) {
        const auto& f = rows_[i].features;
        return f.pos == pos && (vf == VerbForm::unspecified || f.verbform == vf);
    });
}

Reinflection Lexicon::reinflect(std::string_view form, Gender gender, Number number,
                                std::optional<Pos> role, const MorphFeatures* hint) const {
    auto readings = analyze(form);
    if (readings.empty()) return {std::string(form), false, "unknown form"};

    std::vector<const MorphAnalysis*> pool;
    if (role)
        for (const auto& r : readings)
            if (r.features.pos == *role) pool.push_back(&r);
    if (pool.empty())
        for (const auto& r : readings) pool.push_back(&r);

    auto fits = [&](const MorphFeatures& f) {
        bool g = gender == Gender::unspecified || f.gender == Gender::unspecified || f.gender == gender;
        bool n = number == Number::unspecified || f.number == Number::unspecified || f.number == number;
        return g && n;
    };
    // Already agrees under some reading: leave it alone (keeps this idempotent).
    for (const auto* r : pool)
        if (fits(r->features)) return {std::string(form), true, ""};

    const MorphAnalysis* chosen = pool.front();
    if (hint) {
        for (const auto* r : pool) {
            const auto& f = r->features;
            bool vf = hint->verbform == VerbForm::unspecified || f.verbform == hint->verbform;
            bool tm = hint->tense_mood.empty() || f.tense_mood == hint->tense_mood;
            bool pe = hint->person == 0 || f.person == 0 || f.person == hint->person;
            if (vf && tm && pe) {
                chosen = r;
                break;
            }
        }
    }

    MorphFeatures target = chosen->features;
    if (number != Number::unspecified) target.number = number;
    if (gender != Gender::unspecified && target.gender != Gender::unspecified) target.gender = gender;
    if (auto out = try_inflect(chosen->lemma, target)) return {*out, true, ""};
    return {std::string(form), false, "no form for " + chosen->lemma + " " + to_string(target)};
}

}  // namespace neutre
