#include <doctest.h>

#include "neutre/dictionary.hpp"
#include "neutre/features.hpp"
#include "neutre/text.hpp"

using namespace neutre;

TEST_CASE("nfc composes decomposed input") {
    CHECK(text::nfc("e\xCC\x81") == "\xC3\xA9");
    CHECK(text::nfc("plain ascii") == "plain ascii");
}

TEST_CASE("case helpers touch only what they should") {
    CHECK(text::fold_first("Soldats") == "soldats");
    CHECK(text::fold_first("Électeurs") == "électeurs");
    CHECK(text::fold_first("SNCF") == "sNCF");
    CHECK(text::capitalize_first("armée") == "Armée");
    CHECK(text::capitalize_first("élite") == "Élite");
    CHECK(text::lower("ÉTÉ") == "été");
    CHECK(text::starts_upper("Les"));
    CHECK_FALSE(text::starts_upper("les"));
    CHECK_FALSE(text::starts_upper("1531"));
}

TEST_CASE("utf8 validation and decoding") {
    CHECK(text::valid_utf8("déjà"));
    CHECK_FALSE(text::valid_utf8("d\xE9j\xE0"));
    std::size_t i = 0;
    CHECK(text::next_cp("\xE2\x80\x99x", i) == U'’');
    CHECK(i == 3);
    CHECK(text::encode(U'’') == "\xE2\x80\x99");
}

TEST_CASE("letters, apostrophes and base letters") {
    CHECK(text::is_letter(U'é'));
    CHECK_FALSE(text::is_letter(U'-'));
    CHECK(text::is_apostrophe("'"));
    CHECK(text::is_apostrophe("\xE2\x80\x99"));
    CHECK_FALSE(text::is_apostrophe("''"));
    CHECK(text::base_letter("Élite") == U'e');
    CHECK(text::base_letter("œuvre") == U'o');
}

TEST_CASE("split and trim") {
    auto parts = text::split("a\tb\t\tc", '\t');
    REQUIRE(parts.size() == 4);
    CHECK(parts[2].empty());
    CHECK(text::trim("  x \t") == "x");
}

TEST_CASE("elision onset follows vowels and mute h") {
    CHECK(elision_onset("armée"));
    CHECK(elision_onset("Électorat"));
    CHECK(elision_onset("humanité"));
    CHECK(elision_onset("yeux"));
    CHECK_FALSE(elision_onset("hache"));
    CHECK_FALSE(elision_onset("bataillon"));
}

TEST_CASE("UD features map to lexicon features") {
    auto f = features_from_ud("VERB", parse_feats("Mood=Ind|Number=Plur|Person=3|Tense=Pres|VerbForm=Fin"));
    CHECK(f.pos == Pos::verb);
    CHECK(f.number == Number::plural);
    CHECK(f.person == 3);
    CHECK(f.verbform == VerbForm::finite);
    CHECK(f.tense_mood == "P");

    auto sub = features_from_ud("AUX", parse_feats("Mood=Sub|Tense=Imp|VerbForm=Fin"));
    CHECK(sub.pos == Pos::verb);
    CHECK(sub.tense_mood == "T");

    auto part = features_from_ud("VERB", parse_feats("Gender=Masc|Number=Plur|Tense=Past|VerbForm=Part"));
    CHECK(part.verbform == VerbForm::past_participle);
    CHECK(part.gender == Gender::masculine);
    auto ppres = features_from_ud("VERB", parse_feats("Tense=Pres|VerbForm=Part"));
    CHECK(ppres.verbform == VerbForm::present_participle);

    CHECK(features_from_ud("DET", {}).pos == Pos::determiner);
    CHECK(features_from_ud("PUNCT", {}).pos == Pos::other);
}

TEST_CASE("feature compatibility treats unset as wildcard") {
    MorphFeatures a;
    a.pos = Pos::adjective;
    a.number = Number::plural;
    MorphFeatures b = a;
    b.gender = Gender::feminine;
    CHECK(a.compatible(b));
    b.number = Number::singular;
    CHECK_FALSE(a.compatible(b));
    b = a;
    b.pos = Pos::verb;
    CHECK_FALSE(a.compatible(b));
}
