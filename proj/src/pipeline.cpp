#include "neutre/pipeline.hpp"

#include <json.hpp>

#include "neutre/dictionary.hpp"
#include "neutre/lexicon.hpp"

namespace neutre {

Pipeline::Pipeline(const CnDictionary& dict, const Lexicon& lexicon, DetectorRules rules)
    : dict_(dict), lex_(lexicon), rules_(rules) {}

std::vector<DependencySet> Pipeline::detect_all(const AnnotatedSentence& bound, const AnnotatedSentence* next) const {
    DetectorContext ctx{&dict_, &lex_, rules_};
    std::vector<DependencySet> deps;
    deps.reserve(bound.spans.size());
    for (const auto& span : bound.spans) deps.push_back(detect(bound, span, next, ctx));
    return deps;
}

SentenceRewrite Pipeline::run(std::string_view tagged, const AnnotatedSentence& parse, const AnnotatedSentence* next,
                              Mode mode) const {
    SentenceRewrite out;
    out.sentence = bind_spans(parse, tagged, dict_);
    out.deps = detect_all(out.sentence, next);
    out.variants = rewrite(out.sentence, out.deps, dict_, lex_, mode);
    return out;
}

std::string change_log_json(const RewriteResult& r) {
    nlohmann::ordered_json j;
    j["entries"] = r.variant_ids;
    auto changes = nlohmann::ordered_json::array();
    for (const auto& c : r.changes)
        changes.push_back({{"token", c.token}, {"before", c.before}, {"after", c.after}, {"role", c.role}});
    j["changes"] = changes;
    auto misses = nlohmann::ordered_json::array();
    for (const auto& m : r.inflection_misses) misses.push_back({{"token", m.token}, {"reason", m.reason}});
    j["inflection_misses"] = misses;
    j["flags"] = r.flags;
    j["unchanged"] = r.unchanged;
    return j.dump();
}

}  // namespace neutre
