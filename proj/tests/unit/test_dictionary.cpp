#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "neutre/error.hpp"

using namespace neutre;

namespace {

CnDictionary from(const std::string& body) {
    std::istringstream in("id\tcollective\tcn_gender\tcn_number\tmember_plural\tmember_lemma\telision\tnotes\n" + body);
    return CnDictionary::parse(in, "t.tsv");
}

}  // namespace

TEST_CASE("shipped dictionary") {
    const auto& d = testdata::dict();
    CHECK(d.size() == 315);

    auto soldats = d.lookup_member("soldats");
    REQUIRE(soldats.size() == 4);
    CHECK(soldats[0]->collective == "armée");
    CHECK(soldats[1]->collective == "bataillon");
    CHECK(soldats[2]->collective == "infanterie");
    CHECK(soldats[3]->collective == "régiment");
    CHECK(d.member_ids("Soldats") == std::vector<int>{2, 3, 4, 5});

    CHECK(d.entry_by_id(126).collective == "autorat");
    CHECK(d.entry_by_id(68).collective == "rédaction");
    CHECK(d.entry_by_id(2).elision);
    CHECK_FALSE(d.entry_by_id(3).elision);
    CHECK(d.by_collective("Armée") == &d.entry_by_id(2));
    CHECK_FALSE(d.is_member("soldat"));
    CHECK_THROWS_AS(d.entry_by_id(9999), NotFound);
}

TEST_CASE("lookup normalizes to NFC") {
    // "rédacteurs" with a combining acute accent
    CHECK(testdata::dict().member_ids("re\xCC\x81" "dacteurs") == std::vector<int>{68});
}

TEST_CASE("dictionary round-trips through write") {
    std::ostringstream out;
    testdata::dict().write(out);
    std::istringstream in(out.str());
    auto again = CnDictionary::parse(in);
    CHECK(again.size() == 315);
    std::ostringstream out2;
    again.write(out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("dictionary validation errors name the line") {
    CHECK(from("1\tarmée\tf\tsg\tsoldats\tsoldat\t1\t\n").size() == 1);
    CHECK(from("1\tarmée\tf\t\tsoldats\tsoldat\t1\n").entry_by_id(1).cn_number == Number::singular);
    CHECK(from("1\tgens\tm\tpl\tsoldats\tsoldat\t0\t\n").entry_by_id(1).cn_number == Number::plural);

    try {
        from("1\tarmée\tf\tsg\tsoldats\tsoldat\t1\t\n1\tbataillon\tm\tsg\tsoldats\tsoldat\t0\t\n");
        FAIL("duplicate id accepted");
    } catch (const LoadError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(from("1\tarmée\tx\tsg\tsoldats\tsoldat\t1\t\n"), LoadError);
    CHECK_THROWS_AS(from("1\tarmée\tf\tdu\tsoldats\tsoldat\t1\t\n"), LoadError);
    CHECK_THROWS_AS(from("1\tarmée\tf\tsg\tsoldats\tsoldat\t0\t\n"), LoadError);  // elision disagrees
    CHECK_THROWS_AS(from("0\tarmée\tf\tsg\tsoldats\tsoldat\t1\t\n"), LoadError);
    CHECK_THROWS_AS(from("1\tarmée\tf\tsg\tsoldats\n"), LoadError);
    CHECK_THROWS_AS(from("1\tsoldats\tm\tsg\tsoldats\tsoldat\t0\t\n"), LoadError);
    std::istringstream empty("");
    CHECK_THROWS_AS(CnDictionary::parse(empty), LoadError);
}
