#include "neutre/features.hpp"

#include "neutre/text.hpp"

namespace neutre {

namespace {

template <class T>
bool loose_eq(const T& a, const T& b, const T& unset) {
    return a == unset || b == unset || a == b;
}

}  // namespace

bool MorphFeatures::compatible(const MorphFeatures& o) const {
    return pos == o.pos && loose_eq(gender, o.gender, Gender::unspecified) &&
           loose_eq(number, o.number, Number::unspecified) && loose_eq(person, o.person, 0) &&
           loose_eq(verbform, o.verbform, VerbForm::unspecified) &&
           loose_eq(tense_mood, o.tense_mood, std::string());
}

Pos pos_from_code(std::string_view c) {
    if (c == "N") return Pos::noun;
    if (c == "A") return Pos::adjective;
    if (c == "V") return Pos::verb;
    if (c == "DET") return Pos::determiner;
    if (c == "PRO") return Pos::pronoun;
    return Pos::other;
}

std::string pos_code(Pos p) {
    switch (p) {
        case Pos::noun: return "N";
        case Pos::adjective: return "A";
        case Pos::verb: return "V";
        case Pos::determiner: return "DET";
        case Pos::pronoun: return "PRO";
        default: return "X";
    }
}

Gender gender_from_code(std::string_view c) {
    if (c == "m") return Gender::masculine;
    if (c == "f") return Gender::feminine;
    return Gender::unspecified;
}

char gender_code(Gender g) {
    return g == Gender::masculine ? 'm' : g == Gender::feminine ? 'f' : 0;
}

Number number_from_code(std::string_view c) {
    if (c == "s") return Number::singular;
    if (c == "p") return Number::plural;
    return Number::unspecified;
}

char number_code(Number n) {
    return n == Number::singular ? 's' : n == Number::plural ? 'p' : 0;
}

VerbForm verbform_from_code(std::string_view c) {
    if (c == "fin") return VerbForm::finite;
    if (c == "ppart") return VerbForm::past_participle;
    if (c == "inf") return VerbForm::infinitive;
    if (c == "ppres") return VerbForm::present_participle;
    return VerbForm::unspecified;
}

std::string verbform_code(VerbForm v) {
    switch (v) {
        case VerbForm::finite: return "fin";
        case VerbForm::past_participle: return "ppart";
        case VerbForm::infinitive: return "inf";
        case VerbForm::present_participle: return "ppres";
        default: return "";
    }
}

std::string to_string(const MorphFeatures& f) {
    std::string s = pos_code(f.pos);
    if (char g = gender_code(f.gender)) s += std::string(":") + g;
    if (char n = number_code(f.number)) s += std::string(":") + n;
    if (f.person) s += ":" + std::to_string(f.person);
    if (f.verbform != VerbForm::unspecified) s += ":" + verbform_code(f.verbform);
    if (!f.tense_mood.empty()) s += ":" + f.tense_mood;
    return s;
}

FeatMap parse_feats(std::string_view feats) {
    FeatMap m;
    if (feats.empty() || feats == "_") return m;
    for (const auto& kv : text::split(feats, '|')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        m[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return m;
}

MorphFeatures features_from_ud(std::string_view upos, const FeatMap& feats) {
    MorphFeatures f;
    if (upos == "NOUN" || upos == "PROPN") f.pos = Pos::noun;
    else if (upos == "ADJ") f.pos = Pos::adjective;
    else if (upos == "VERB" || upos == "AUX") f.pos = Pos::verb;
    else if (upos == "DET") f.pos = Pos::determiner;
    else if (upos == "PRON") f.pos = Pos::pronoun;

    auto get = [&](std::string_view k) -> std::string {
        auto it = feats.find(k);
        return it == feats.end() ? std::string() : it->second;
    };
    std::string g = get("Gender"), n = get("Number"), p = get("Person");
    if (g == "Masc") f.gender = Gender::masculine;
    else if (g == "Fem") f.gender = Gender::feminine;
    if (n == "Sing") f.number = Number::singular;
    else if (n == "Plur") f.number = Number::plural;
    if (p == "1" || p == "2" || p == "3") f.person = p[0] - '0';

    std::string vf = get("VerbForm"), mood = get("Mood"), tense = get("Tense");
    if (vf == "Fin" || (vf.empty() && !mood.empty())) {
        f.verbform = VerbForm::finite;
        if (mood == "Ind") {
            if (tense == "Pres") f.tense_mood = "P";
            else if (tense == "Imp") f.tense_mood = "I";
            else if (tense == "Past") f.tense_mood = "J";
            else if (tense == "Fut") f.tense_mood = "F";
        } else if (mood == "Cnd") {
            f.tense_mood = "C";
        } else if (mood == "Sub") {
            f.tense_mood = tense == "Imp" ? "T" : "S";
        } else if (mood == "Imp") {
            f.tense_mood = "Y";
        }
    } else if (vf == "Part") {
        f.verbform = tense == "Pres" ? VerbForm::present_participle : VerbForm::past_participle;
    } else if (vf == "Inf") {
        f.verbform = VerbForm::infinitive;
    }
    return f;
}

}  // namespace neutre
