#pragma once

#include <map>
#include <string>
#include <string_view>

namespace neutre {

enum class Pos { noun, adjective, verb, determiner, pronoun, other };
enum class Gender { unspecified, masculine, feminine };
enum class Number { unspecified, singular, plural };
enum class VerbForm { unspecified, finite, past_participle, infinitive, present_participle };

struct MorphFeatures {
    Pos pos = Pos::other;
    Gender gender = Gender::unspecified;
    Number number = Number::unspecified;
    int person = 0;  // 0 = unspecified
    VerbForm verbform = VerbForm::unspecified;
    std::string tense_mood;  // Delaf code: P I J F C S T Y (K G W for non-finite)

    // Same pos, and every other field equal or unspecified on one side.
    bool compatible(const MorphFeatures& o) const;
    bool operator==(const MorphFeatures&) const = default;
};

// Lexicon cell codes (m/f, s/p, fin/ppart/inf/ppres, N/A/V/DET/PRO).
Pos pos_from_code(std::string_view code);
std::string pos_code(Pos p);
Gender gender_from_code(std::string_view code);
char gender_code(Gender g);
Number number_from_code(std::string_view code);
char number_code(Number n);
VerbForm verbform_from_code(std::string_view code);
std::string verbform_code(VerbForm v);

std::string to_string(const MorphFeatures& f);

// UD upos + FEATS ("Gender=Masc|Number=Plur") to our features.
using FeatMap = std::map<std::string, std::string, std::less<>>;
FeatMap parse_feats(std::string_view feats);
MorphFeatures features_from_ud(std::string_view upos, const FeatMap& feats);

}  // namespace neutre
