#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "neutre/error.hpp"

using namespace neutre;

namespace {

MorphFeatures feats(Pos pos, Gender g, Number n, int person = 0, VerbForm vf = VerbForm::unspecified,
                    std::string tm = {}) {
    MorphFeatures f;
    f.pos = pos;
    f.gender = g;
    f.number = n;
    f.person = person;
    f.verbform = vf;
    f.tense_mood = std::move(tm);
    return f;
}

}  // namespace

TEST_CASE("analyze returns every reading") {
    const auto& lex = testdata::lexicon();
    auto a = lex.analyze("financent");
    REQUIRE(a.size() == 2);
    for (const auto& r : a) {
        CHECK(r.lemma == "financer");
        CHECK(r.features.pos == Pos::verb);
        CHECK(r.features.number == Number::plural);
        CHECK(r.features.verbform == VerbForm::finite);
    }
    CHECK(lex.analyze("xyzzy").empty());
    CHECK(lex.has_reading("chargés", Pos::verb, VerbForm::past_participle));
    CHECK_FALSE(lex.has_reading("financent", Pos::adjective));
}

TEST_CASE("inflect picks the agreeing form") {
    const auto& lex = testdata::lexicon();
    CHECK(lex.inflect("financer", feats(Pos::verb, Gender::unspecified, Number::singular, 3, VerbForm::finite, "P")) ==
          "finance");
    CHECK(lex.inflect("assidu", feats(Pos::adjective, Gender::feminine, Number::singular)) == "assidue");
    CHECK(lex.inflect("être", feats(Pos::verb, Gender::unspecified, Number::singular, 3, VerbForm::finite, "F")) ==
          "sera");
    CHECK_FALSE(lex.try_inflect("assidu", feats(Pos::verb, Gender::unspecified, Number::plural)));
    CHECK_THROWS_AS(lex.inflect("nolemma", feats(Pos::noun, Gender::masculine, Number::plural)), InflectionMiss);
}

TEST_CASE("reinflect overrides gender and number") {
    const auto& lex = testdata::lexicon();
    CHECK(lex.reinflect("assidus", Gender::masculine, Number::singular).form == "assidu");
    CHECK(lex.reinflect("assidus", Gender::feminine, Number::singular).form == "assidue");
    CHECK(lex.reinflect("chargés", Gender::masculine, Number::singular, Pos::verb).form == "chargé");
    CHECK(lex.reinflect("arrivèrent", Gender::unspecified, Number::singular, Pos::verb).form == "arriva");
    CHECK(lex.reinflect("seront", Gender::unspecified, Number::singular).form == "sera");
    CHECK(lex.reinflect("locaux", Gender::masculine, Number::singular).form == "local");

    auto unknown = lex.reinflect("Blatter", Gender::masculine, Number::singular);
    CHECK_FALSE(unknown.ok);
    CHECK(unknown.form == "Blatter");
    CHECK_FALSE(unknown.reason.empty());
}

TEST_CASE("reinflect uses the parser hint to choose between readings") {
    const auto& lex = testdata::lexicon();
    auto hint = feats(Pos::verb, Gender::unspecified, Number::plural, 3, VerbForm::finite, "S");
    auto r = lex.reinflect("financent", Gender::unspecified, Number::singular, Pos::verb, &hint);
    CHECK(r.ok);
    CHECK(r.form == "finance");
}

TEST_CASE("reinflect is idempotent") {
    const auto& lex = testdata::lexicon();
    for (const char* form : {"assidus", "chargés", "financent", "européens", "leurs"}) {
        auto once = lex.reinflect(form, Gender::feminine, Number::singular);
        auto twice = lex.reinflect(once.form, Gender::feminine, Number::singular);
        CHECK(once.form == twice.form);
    }
}

TEST_CASE("lexicon reads DELAF lines") {
    std::istringstream in("financent,financer.V:P3p:S3p\nassidues,assidu.A:fp\nl\\,a,la.DET:fs\n");
    auto lex = Lexicon::parse(in);
    CHECK(lex.size() == 4);
    auto a = lex.analyze("financent");
    REQUIRE(a.size() == 2);
    CHECK(a[0].features.tense_mood == "P");
    CHECK(a[1].features.tense_mood == "S");
    CHECK(a[0].features.person == 3);
    CHECK(lex.analyze("assidues")[0].features.gender == Gender::feminine);
    CHECK(lex.analyze("l,a").size() == 1);
}

TEST_CASE("lexicon TSV errors") {
    std::istringstream bad("surface\tlemma\tpos\tgender\tnumber\tperson\tverbform\ttense_mood\nx\tx\tQ\t\t\t\t\t\n");
    CHECK_THROWS_AS(Lexicon::parse(bad), LoadError);
    std::istringstream shortrow("surface\tlemma\tpos\tgender\tnumber\tperson\tverbform\ttense_mood\nx\tx\n");
    CHECK_THROWS_AS(Lexicon::parse(shortrow), LoadError);
}
