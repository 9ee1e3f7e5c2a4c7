#include "neutre/detector.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>

#include "neutre/dictionary.hpp"
#include "neutre/error.hpp"
#include "neutre/lexicon.hpp"
#include "neutre/text.hpp"

namespace neutre {

const char* role_name(Role r) {
    switch (r) {
        case Role::determiner: return "determiner";
        case Role::adjective: return "adjective";
        case Role::past_participle: return "past_participle";
        case Role::finite_verb: return "finite_verb";
        case Role::coref_pronoun: return "coref_pronoun";
        case Role::possessive_determiner: return "possessive_determiner";
        case Role::object_pronoun: return "object_pronoun";
    }
    return "?";
}

bool DependencySet::contains(int token, bool next) const {
    return std::any_of(items.begin(), items.end(),
                       [&](const DepItem& d) { return d.token == token && d.in_next_sentence == next; });
}

std::set<int> DependencySet::indices() const {
    std::set<int> out;
    for (const auto& d : items)
        if (!d.in_next_sentence) out.insert(d.token);
    return out;
}

namespace {

const std::set<std::string, std::less<>> kSpanDeterminers = {
    "les", "des", "aux", "ces", "ses", "leurs", "mes", "tes", "nos", "vos",
    "quelques", "plusieurs", "de", "d'", "d’", "du", "au",
};

bool starts(std::string_view s, std::string_view p) { return s.rfind(p, 0) == 0; }

bool is_subject(const Token& t) { return t.deprel == "nsubj" || t.deprel == "nsubj:pass"; }

bool is_aux(const Token& t) { return starts(t.deprel, "aux") || t.deprel == "cop"; }

class Walker {
public:
    Walker(const AnnotatedSentence& s, const DetectorContext& ctx, bool next, DependencySet& out)
        : s_(s), ctx_(ctx), next_(next), out_(out) {}

    void block(int from, int to) {
        for (int i = from; i <= to; ++i) blocked_.insert(i);
    }

    void add(int tok, Role role) {
        if (tok < 1 || tok > s_.size() || blocked_.count(tok) || s_.at(tok).is_punct()) return;
        if (out_.contains(tok, next_)) return;
        out_.items.push_back({tok, role, next_});
    }

    std::string form(const Token& t) const { return text::fold_first(t.surface); }

    bool finite(const Token& t) const {
        if (t.features.verbform == VerbForm::finite) return true;
        if (t.features.verbform != VerbForm::unspecified || !ctx_.lexicon) return false;
        if (t.upos != "VERB" && t.upos != "AUX" && t.upos != "ADJ") return false;
        auto f = form(t);
        return ctx_.lexicon->has_reading(f, Pos::verb, VerbForm::finite) &&
               !ctx_.lexicon->has_reading(f, Pos::adjective) &&
               !ctx_.lexicon->has_reading(f, Pos::verb, VerbForm::past_participle);
    }

    bool participle(const Token& t) const {
        if (t.features.verbform == VerbForm::past_participle) return true;
        if (t.features.verbform != VerbForm::unspecified || !ctx_.lexicon) return false;
        return ctx_.lexicon->has_reading(form(t), Pos::verb, VerbForm::past_participle);
    }

    bool present_participle(const Token& t) const {
        return t.features.verbform == VerbForm::present_participle;
    }

    bool has_child(int h, auto pred) const {
        for (int c : s_.children(h))
            if (pred(s_.at(c))) return true;
        return false;
    }

    // Agreement role of a modifier the parser attached to the noun.
    std::optional<Role> modifier_role(const Token& t) const {
        if (present_participle(t)) return std::nullopt;
        if (finite(t)) return Role::finite_verb;
        if (t.upos == "ADJ" && !(ctx_.lexicon && !ctx_.lexicon->has_reading(form(t), Pos::adjective) &&
                                 participle(t)))
            return Role::adjective;
        if (participle(t)) return Role::past_participle;
        if (t.upos == "ADJ") return Role::adjective;
        return std::nullopt;
    }

    // The verb group whose subject is the noun: finite verb or auxiliaries,
    // participles with an être auxiliary or passive, copular predicates,
    // and coordinated verbs that have no subject of their own.
    void predicate(int h, int depth = 0) {
        if (h < 1 || depth > 8) return;
        const Token& v = s_.at(h);
        bool copular = has_child(h, [](const Token& c) { return c.deprel == "cop"; });
        if (finite(v)) add(h, Role::finite_verb);
        for (int c : s_.children(h)) {
            const Token& t = s_.at(c);
            if (is_aux(t) && finite(t)) add(c, Role::finite_verb);
        }
        bool etre = has_child(h, [&](const Token& c) {
            return c.deprel == "aux:pass" ||
                   (is_aux(c) && (text::lower(c.lemma) == "être" || text::lower(c.lemma) == "etre"));
        });
        if (participle(v) && etre) add(h, Role::past_participle);
        else if (copular && ctx_.rules.copula) {
            if (v.upos == "ADJ") add(h, Role::adjective);
            else if (participle(v)) add(h, Role::past_participle);
        }
        for (int c : s_.children(h)) {
            const Token& t = s_.at(c);
            if (t.deprel != "conj" || (t.upos != "VERB" && t.upos != "AUX" && t.upos != "ADJ")) continue;
            if (has_child(c, [](const Token& x) { return is_subject(x) || x.deprel == "expl:subj"; })) continue;
            if (t.upos == "ADJ" && !has_child(c, [](const Token& x) { return x.deprel == "cop"; }) && !copular)
                continue;
            predicate(c, depth + 1);
        }
    }

    void subject(int subj) {
        const Token& n = s_.at(subj);
        if (!is_subject(n) || n.head == 0) return;
        if (ctx_.rules.coordination) {
            bool conj = has_child(subj, [](const Token& c) {
                return c.deprel == "conj" && (c.upos == "NOUN" || c.upos == "PROPN" || c.upos == "PRON");
            });
            bool other = false;
            for (int c : s_.children(n.head))
                if (c != subj && is_subject(s_.at(c))) other = true;
            if (conj || other) {
                out_.warnings.push_back("coordinated subject at token " + std::to_string(subj) + ": verb left plural");
                return;
            }
        }
        predicate(n.head);
    }

    const AnnotatedSentence& s_;
    const DetectorContext& ctx_;
    bool next_;
    DependencySet& out_;
    std::set<int> blocked_;
};

bool plural_candidate(const Token& t) {
    return (t.upos == "NOUN" || t.upos == "PROPN") && t.features.number == Number::plural &&
           t.features.gender != Gender::feminine;
}

}  // namespace

DependencySet detect(const AnnotatedSentence& s, const MemberSpan& span, const AnnotatedSentence* next,
                     const DetectorContext& ctx) {
    DependencySet out;
    out.span = span;
    const int noun = span.noun;
    if (noun < 1 || noun > s.size()) return detect_baseline(s, span);

    Walker w(s, ctx, false, out);
    w.block(noun, noun);
    for (const auto& other : s.spans)
        if (other.start != span.start || other.end != span.end) w.block(other.start, other.end);
    const Token& n = s.at(noun);
    const auto& R = ctx.rules;

    if (R.determiner) {
        for (int c : s.children(noun)) {
            const Token& t = s.at(c);
            if (t.upos == "NUM") continue;
            if (starts(t.deprel, "det")) w.add(c, Role::determiner);
            else if (t.deprel == "case") {
                auto f = text::lower(t.surface);
                bool contracted = f == "des" || f == "aux" || f == "du" || f == "au" ||
                                  (t.feat("Definite") == "Def" && t.feat("PronType") == "Art");
                if (contracted) w.add(c, Role::determiner);
            }
        }
        for (int i = span.start; i <= span.end; ++i) {
            const Token& t = s.at(i);
            if (i != noun && (t.upos == "DET" || kSpanDeterminers.count(text::lower(t.surface))))
                w.add(i, Role::determiner);
        }
    }

    if (R.adjective) {
        for (int c : s.children(noun)) {
            const Token& t = s.at(c);
            bool amod = starts(t.deprel, "amod");
            bool acl = t.deprel == "acl" || (starts(t.deprel, "acl:") && t.deprel != "acl:relcl");
            if (!amod && !acl) continue;
            auto role = w.modifier_role(t);
            if (!role || (acl && *role == Role::adjective && t.upos != "ADJ")) continue;
            w.add(c, *role);
            for (int cc : s.children(c)) {
                const Token& x = s.at(cc);
                if (x.deprel != "conj") continue;
                if (auto r2 = w.modifier_role(x); r2 && *r2 != Role::finite_verb) w.add(cc, *r2);
            }
        }
        // Prenominal adjectives inside the tagged phrase.
        for (int i = span.start; i <= span.end; ++i) {
            const Token& t = s.at(i);
            if (i != noun && t.upos == "ADJ") w.add(i, Role::adjective);
        }
    }

    if (R.subject_agreement) w.subject(noun);

    if (R.relative_clause) {
        for (int c : s.children(noun)) {
            if (s.at(c).deprel != "acl:relcl") continue;
            bool qui = w.has_child(c, [](const Token& t) { return is_subject(t) && text::lower(t.surface) == "qui"; });
            if (qui) w.predicate(c);
        }
    }

    const int after = std::max(span.end, noun);
    auto stops = [&](const AnnotatedSentence& sent, int i) {
        if (ctx.dict && sent.at(i).upos == "NOUN" && ctx.dict->is_member(sent.at(i).surface)) return true;
        for (const auto& other : sent.spans)
            if (&sent != &s || other.start != span.start)
                if (i >= other.start && i <= other.end) return true;
        return false;
    };

    if (R.possessive) {
        for (int i = after + 1; i <= s.size(); ++i) {
            if (stops(s, i)) break;
            const Token& t = s.at(i);
            auto f = text::lower(t.surface);
            if ((f == "leur" || f == "leurs") && (t.upos == "DET" || t.feat("Poss") == "Yes")) {
                w.add(i, Role::possessive_determiner);
                break;
            }
        }
    }

    if (R.coref) {
        auto scan = [&](const AnnotatedSentence& sent, int from, bool is_next) -> bool {
            Walker pw(sent, ctx, is_next, out);
            if (!is_next)
                pw.blocked_ = w.blocked_;
            else
                for (const auto& other : sent.spans) pw.block(other.start, other.end);
            for (int i = from; i <= sent.size(); ++i) {
                if (stops(sent, i)) return true;
                const Token& t = sent.at(i);
                if (plural_candidate(t)) {
                    out.warnings.push_back("closer plural antecedent '" + t.surface + "': no pronoun rewritten");
                    return true;
                }
                if (t.upos != "PRON") continue;
                auto f = text::lower(t.surface);
                Role role;
                if (f == "ils" || f == "eux") role = Role::coref_pronoun;
                else if (f == "elles" && n.features.gender == Gender::feminine) role = Role::coref_pronoun;
                else if (f == "les" || f == "leur") role = Role::object_pronoun;
                else continue;
                // A clitic inside the noun's own clause cannot corefer with it.
                if (!is_next && role == Role::object_pronoun && t.head == n.head && is_subject(n)) continue;
                pw.add(i, role);
                if (role == Role::coref_pronoun && R.subject_agreement) pw.subject(i);
                if (role == Role::object_pronoun && f == "les" && t.head > 0) {
                    const Token& v = sent.at(t.head);
                    bool avoir = pw.has_child(t.head, [](const Token& c) {
                        return starts(c.deprel, "aux") && text::lower(c.lemma) == "avoir";
                    });
                    if (avoir && pw.participle(v)) pw.add(t.head, Role::past_participle);
                }
                return true;
            }
            return false;
        };
        bool found = scan(s, after + 1, false);
        if (!found && next) scan(*next, 1, true);
    }

    std::stable_sort(out.items.begin(), out.items.end(), [](const DepItem& a, const DepItem& b) {
        return a.in_next_sentence != b.in_next_sentence ? !a.in_next_sentence : a.token < b.token;
    });
    return out;
}

DependencySet detect_baseline(const AnnotatedSentence& s, const MemberSpan& span) {
    DependencySet out;
    out.span = span;
    for (int c : s.children(span.noun)) {
        const Token& t = s.at(c);
        if (t.is_punct()) continue;
        out.items.push_back({c, starts(t.deprel, "det") ? Role::determiner : Role::adjective, false});
    }
    return out;
}

Prf score_detection(const std::set<int>& pred, const std::set<int>& gold) {
    std::size_t tp = 0;
    for (int i : pred) tp += gold.count(i);
    Prf r;
    r.precision = pred.empty() ? (gold.empty() ? 1.0 : 0.0) : double(tp) / double(pred.size());
    r.recall = gold.empty() ? (pred.empty() ? 1.0 : 0.0) : double(tp) / double(gold.size());
    r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

Prf score_detection(const ScoredSet& pred, const ScoredSet& gold) {
    if (pred.sentence_id != gold.sentence_id || pred.span_index != gold.span_index)
        throw Error("scoring mismatched sets: " + pred.sentence_id + "/" + std::to_string(pred.span_index) +
                    " vs " + gold.sentence_id + "/" + std::to_string(gold.span_index));
    return score_detection(pred.tokens, gold.tokens);
}

void MicroCounts::add(const std::set<int>& pred, const std::set<int>& gold) {
    std::size_t hit = 0;
    for (int i : pred) hit += gold.count(i);
    tp += hit;
    fp += pred.size() - hit;
    fn += gold.size() - hit;
    auto p = score_detection(pred, gold);
    p_sum += p.precision;
    r_sum += p.recall;
    f1_sum += p.f1;
    ++n;
}

Prf MicroCounts::micro() const {
    Prf r;
    r.precision = tp + fp ? double(tp) / double(tp + fp) : (fn ? 0.0 : 1.0);
    r.recall = tp + fn ? double(tp) / double(tp + fn) : (fp ? 0.0 : 1.0);
    r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

Prf MicroCounts::macro() const {
    if (!n) return {};
    return {p_sum / double(n), r_sum / double(n), f1_sum / double(n)};
}

std::vector<ScoredSet> read_dependency_tsv(std::istream& in, const std::string& source) {
    std::vector<ScoredSet> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty() || line[0] == '#') continue;
        auto cols = text::split(line, '\t');
        if (lineno == 1 && cols[0] == "sentence_id") continue;
        if (cols.size() == 2) cols.emplace_back();
        if (cols.size() != 3) throw LoadError(source, lineno, "expected 3 columns");
        ScoredSet s;
        s.sentence_id = cols[0];
        auto [p, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), s.span_index);
        if (ec != std::errc() || p != cols[1].data() + cols[1].size())
            throw LoadError(source, lineno, "bad span index '" + cols[1] + "'");
        if (!text::trim(cols[2]).empty()) {
            for (const auto& part : text::split(cols[2], ',')) {
                int v = 0;
                auto sv = text::trim(part);
                auto [q, ec2] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
                if (ec2 != std::errc() || q != sv.data() + sv.size() || v < 1)
                    throw LoadError(source, lineno, "bad token index '" + part + "'");
                s.tokens.insert(v);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_dependency_tsv(std::ostream& out, const std::vector<ScoredSet>& sets, bool header) {
    if (header) out << "sentence_id\tspan_index\ttoken_indices\n";
    for (const auto& s : sets) {
        out << s.sentence_id << '\t' << s.span_index << '\t';
        bool first = true;
        for (int t : s.tokens) {
            out << (first ? "" : ",") << t;
            first = false;
        }
        out << '\n';
    }
}

}  // namespace neutre
