#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "neutre/error.hpp"

using namespace neutre;

namespace {

const char* kExample4 =
    "# sent_id = ex4\n"
    "# text = Les lecteurs assidus financent le journal.\n"
    "1\tLes\tle\tDET\t_\tDefinite=Def|Number=Plur|PronType=Art\t2\tdet\t_\t_\n"
    "2\tlecteurs\tlecteur\tNOUN\t_\tGender=Masc|Number=Plur\t4\tnsubj\t_\t_\n"
    "3\tassidus\tassidu\tADJ\t_\tGender=Masc|Number=Plur\t2\tamod\t_\t_\n"
    "4\tfinancent\tfinancer\tVERB\t_\tMood=Ind|Number=Plur|Person=3|Tense=Pres|VerbForm=Fin\t0\troot\t_\t_\n"
    "5\tle\tle\tDET\t_\tDefinite=Def|Gender=Masc|Number=Sing|PronType=Art\t6\tdet\t_\t_\n"
    "6\tjournal\tjournal\tNOUN\t_\tGender=Masc|Number=Sing\t4\tobj\t_\tSpaceAfter=No\n"
    "7\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\tSpaceAfter=No\n";

const char* kMwt =
    "# text = Les droits des citoyens.\n"
    "1\tLes\tle\tDET\t_\tNumber=Plur\t2\tdet\t_\t_\n"
    "2\tdroits\tdroit\tNOUN\t_\tGender=Masc|Number=Plur\t0\troot\t_\t_\n"
    "3-4\tdes\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "3\tde\tde\tADP\t_\t_\t5\tcase\t_\t_\n"
    "4\tles\tle\tDET\t_\tDefinite=Def|Number=Plur|PronType=Art\t5\tdet\t_\t_\n"
    "5\tcitoyens\tcitoyen\tNOUN\t_\tGender=Masc|Number=Plur\t2\tnmod\t_\tSpaceAfter=No\n"
    "6\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\tSpaceAfter=No\n";

}  // namespace

TEST_CASE("parse_conllu fills tokens and features") {
    auto s = parse_conllu(kExample4);
    CHECK(s.source_id == "ex4");
    REQUIRE(s.size() == 7);
    CHECK(s.at(2).surface == "lecteurs");
    CHECK(s.at(2).head == 4);
    CHECK(s.at(2).deprel == "nsubj");
    CHECK(s.at(2).features.number == Number::plural);
    CHECK(s.at(4).features.verbform == VerbForm::finite);
    CHECK(s.at(2).feat("Gender") == "Masc");
    CHECK(s.at(2).feat("Case").empty());
    CHECK(s.children(2) == std::vector<int>{1, 3});
    CHECK(detokenize(s) == "Les lecteurs assidus financent le journal.");
}

TEST_CASE("multiword tokens are preserved") {
    auto s = parse_conllu(kMwt);
    REQUIRE(s.mwts.size() == 1);
    CHECK(s.mwts[0].surface == "des");
    CHECK(s.at(3).mwt == 1);
    CHECK(detokenize(s) == "Les droits des citoyens.");
    auto offs = s.offsets();
    CHECK(offs[2] == offs[3]);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_conllu(""), ParseError);
    std::string bad_head = kExample4;
    bad_head.replace(bad_head.find("\t4\tnsubj"), 8, "\t99\tnsubj");
    CHECK_THROWS_AS(parse_conllu(bad_head), ParseError);
    CHECK_THROWS_AS(parse_conllu("# text = a b\n1\ta\ta\tX\t_\t_\t0\troot\t_\n"), ParseError);
    CHECK_THROWS_AS(parse_conllu("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"), ParseError);  // no # text
    CHECK_THROWS_AS(parse_conllu("# text = a b\n1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n3\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n"),
                    ParseError);
    // # text that disagrees with the tokens
    CHECK_THROWS_AS(parse_conllu("# text = a c\n1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n"),
                    ParseError);
    try {
        parse_conllu(bad_head, 40);
        FAIL("accepted");
    } catch (const ParseError& e) {
        CHECK(e.line == 43);
    }
}

TEST_CASE("detokenize round-trips every fixture") {
    for (const char* f : {"golden.conllu", "detection.conllu", "identity.conllu"}) {
        auto sents = read_conllu_file(testdata::path(std::string("tests/fixtures/") + f));
        CHECK(!sents.empty());
        for (const auto& s : sents) CHECK(detokenize(s) == s.text);
    }
}

TEST_CASE("read_conllu splits blocks and numbers anonymous sentences") {
    std::istringstream in(std::string("# text = a\n1\ta\ta\tX\t_\t_\t0\troot\t_\tSpaceAfter=No\n\n") + kMwt);
    auto v = read_conllu(in);
    REQUIRE(v.size() == 2);
    CHECK(v[0].source_id == "1");
    CHECK(v[1].source_id == "2");
}

TEST_CASE("strip_tags") {
    std::vector<TagSpan> spans;
    CHECK(strip_tags("Il voit <n-2,3>les soldats</n>.", &spans) == "Il voit les soldats.");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].begin == 8);
    CHECK(spans[0].end == 19);
    CHECK(spans[0].ids == std::vector<int>{2, 3});
    CHECK_THROWS_AS(strip_tags("<n-126>les auteurs"), BindingError);
    CHECK_THROWS_AS(strip_tags("les auteurs</n>"), BindingError);
    CHECK_THROWS_AS(strip_tags("<n->les</n>"), BindingError);
}

TEST_CASE("bind_spans aligns tags to tokens") {
    const auto& d = testdata::dict();
    const auto& s = testdata::golden()[6];
    auto b = bind_spans(s, "Un historique permet de lister <n-126>les auteurs</n> et de consulter les modifications "
                           "successives de l’article par <n-68>ses rédacteurs</n>.", d);
    REQUIRE(b.spans.size() == 2);
    CHECK(b.spans[0].entry_ids == std::vector<int>{126});
    CHECK(b.spans[0].start == 6);
    CHECK(b.spans[0].end == 7);
    CHECK(b.spans[0].noun == 7);
    CHECK(b.spans[1].entry_ids == std::vector<int>{68});
    CHECK(b.spans[1].noun == 19);
    CHECK(b.tokens.size() == s.tokens.size());

    CHECK(bind_spans(s, s.text, d).spans.empty());
    CHECK_THROWS_AS(bind_spans(s, "Un historique permet de lister <n-126>les auteurs et de consulter", d),
                    BindingError);
    CHECK_THROWS_AS(bind_spans(s, "Un <n-126>histo</n>rique permet de lister les auteurs et de consulter les "
                                  "modifications successives de l’article par ses rédacteurs.", d),
                    BindingError);
    CHECK_THROWS_AS(bind_spans(s, "Un historique permet de lister <n-9999>les auteurs</n> et de consulter les "
                                  "modifications successives de l’article par ses rédacteurs.", d),
                    Error);
    CHECK_THROWS_AS(bind_spans(s, "Autre texte.", d), BindingError);
}

TEST_CASE("bind_spans on a multiword token") {
    auto b = bind_spans(parse_conllu(kMwt), "Les droits <n-15>des citoyens</n>.", testdata::dict());
    REQUIRE(b.spans.size() == 1);
    CHECK(b.spans[0].start == 3);
    CHECK(b.spans[0].end == 5);
    CHECK(b.spans[0].noun == 5);
}

TEST_CASE("MISC column spans are read when the text carries no tags") {
    std::string block = kExample4;
    block.replace(block.find("PronType=Art\t2\tdet\t_\t_"), 22, "PronType=Art\t2\tdet\t_\tCN=B-11");
    block.replace(block.find("Number=Plur\t4\tnsubj\t_\t_"), 23, "Number=Plur\t4\tnsubj\t_\tCN=I");
    auto s = parse_conllu(block);
    REQUIRE(s.spans.size() == 1);
    CHECK(s.spans[0].entry_ids == std::vector<int>{11});
    CHECK(s.spans[0].start == 1);
    CHECK(s.spans[0].end == 2);
    auto b = bind_spans(s, s.text, testdata::dict());
    CHECK(b.spans.size() == 1);
}
