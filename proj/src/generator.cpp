#include "neutre/generator.hpp"

#include <algorithm>
#include <map>

#include "neutre/dictionary.hpp"
#include "neutre/error.hpp"
#include "neutre/lexicon.hpp"
#include "neutre/text.hpp"

namespace neutre {

namespace {

bool ends_with_apostrophe(std::string_view s) {
    return s.ends_with("'") || s.ends_with("’");
}

std::string keep_case(std::string_view before, std::string after) {
    return text::starts_upper(before) ? text::capitalize_first(after) : after;
}

// Apostrophe codepoint used by the source sentence; ASCII if none.
std::string source_apostrophe(std::string_view text) {
    auto a = text.find('\'');
    auto b = text.find("’");
    if (b != std::string_view::npos && (a == std::string_view::npos || b < a)) return "’";
    return "'";
}

struct Target {
    const CnEntry* entry;
    Gender gender;
    Number number;
};

class VariantBuilder {
public:
    VariantBuilder(const AnnotatedSentence& s, const CnDictionary& dict, const Lexicon& lex)
        : s_(s), dict_(dict), lex_(lex) {}

    void set(int tok, std::string after, const std::string& role) {
        if (forms_.count(tok)) return;  // first span to claim a token wins
        forms_[tok] = {std::move(after), role};
    }

    void apply(const MemberSpan& span, const DependencySet& deps, const CnEntry& e) {
        Target t{&e, e.cn_gender, e.cn_number};
        const Token& noun = s_.at(span.noun);
        set(span.noun, keep_case(noun.surface, e.collective), "member_noun");
        for (const auto& d : deps.items) {
            if (d.in_next_sentence) continue;
            const Token& tok = s_.at(d.token);
            std::string after;
            switch (d.role) {
                case Role::determiner: after = determiner(tok, t); break;
                case Role::possessive_determiner: after = possessive(tok, t); break;
                case Role::coref_pronoun: after = coref_pronoun(tok, t); break;
                case Role::object_pronoun: after = object_pronoun(tok, t); break;
                case Role::adjective:
                    after = reinflect(tok, t.gender, t.number, Pos::adjective);
                    break;
                case Role::past_participle:
                    after = reinflect(tok, t.gender, t.number, Pos::verb);
                    break;
                case Role::finite_verb:
                    after = reinflect(tok, Gender::unspecified, t.number, Pos::verb);
                    break;
            }
            set(d.token, keep_case(tok.surface, after), role_name(d.role));
        }
    }

    std::string determiner(const Token& tok, const Target& t) {
        std::string f = text::lower(tok.surface);
        bool fem = t.gender == Gender::feminine;
        if (t.number == Number::plural) {
            if (f == "quelques" || f == "plusieurs" || f == "de" || f == "d'" || f == "d’") return f;
            return reinflect(tok, t.gender, t.number, Pos::determiner);
        }
        if (f == "les") return fem ? "la" : "le";
        if (f == "des") {
            bool indefinite = tok.feat("Definite") == "Ind" || (tok.upos == "DET" && tok.deprel != "case" && tok.feat("Definite") != "Def");
            if (indefinite) return fem ? "une" : "un";
            return fem ? "de la" : "du";
        }
        if (f == "aux") return fem ? "à la" : "au";
        if (f == "ces") return fem ? "cette" : "ce";
        if (f == "ses") return fem ? "sa" : "son";
        if (f == "mes") return fem ? "ma" : "mon";
        if (f == "tes") return fem ? "ta" : "ton";
        if (f == "nos") return "notre";
        if (f == "vos") return "votre";
        if (f == "leurs") return "leur";
        if (f == "quelques" || f == "plusieurs") {
            flag("SPECIFICITY-risk: '" + tok.surface + "' replaced by a definite article");
            return fem ? "la" : "le";
        }
        if (f == "de" || f == "d'" || f == "d’") {
            flag("PARTITIVE-risk: '" + tok.surface + "' kept before a collective");
            return "de";
        }
        return reinflect(tok, t.gender, t.number, Pos::determiner);
    }

    std::string possessive(const Token& tok, const Target& t) {
        std::string f = text::lower(tok.surface);
        if (t.number == Number::plural) return f;
        if (f == "leurs") return "ses";
        Gender g = Gender::unspecified;
        if (tok.head > 0) {
            const Token& owner = s_.at(tok.head);
            g = owner.features.gender;
            if (g == Gender::unspecified)
                for (const auto& a : lex_.analyze(text::fold_first(owner.surface)))
                    if (a.features.pos == Pos::noun && a.features.gender != Gender::unspecified) {
                        g = a.features.gender;
                        break;
                    }
        }
        return g == Gender::feminine ? "sa" : "son";
    }

    std::string coref_pronoun(const Token& tok, const Target& t) {
        std::string f = text::lower(tok.surface);
        bool fem = t.gender == Gender::feminine;
        bool pl = t.number == Number::plural;
        if (f == "ils" || f == "elles") return pl ? (fem ? "elles" : "ils") : (fem ? "elle" : "il");
        if (f == "eux") return pl ? (fem ? "elles" : "eux") : (fem ? "elle" : "lui");
        return f;
    }

    std::string object_pronoun(const Token& tok, const Target& t) {
        std::string f = text::lower(tok.surface);
        if (t.number == Number::plural) return f;
        if (f == "les") return t.gender == Gender::feminine ? "la" : "le";
        if (f == "leur") return "lui";
        return f;
    }

    std::string reinflect(const Token& tok, Gender g, Number n, Pos role) {
        std::string form = text::fold_first(tok.surface);
        auto r = lex_.reinflect(form, g, n, role, &tok.features);
        if (!r.ok) misses_.push_back({tok.index, r.reason});
        return r.ok ? r.form : tok.surface;
    }

    void flag(std::string f) {
        if (std::find(flags_.begin(), flags_.end(), f) == flags_.end()) flags_.push_back(std::move(f));
    }

    const AnnotatedSentence& s_;
    const CnDictionary& dict_;
    const Lexicon& lex_;
    std::map<int, std::pair<std::string, std::string>> forms_;
    std::vector<InflectionFailure> misses_;
    std::vector<std::string> flags_;
};

bool vowel_onset(std::string_view word, const CnDictionary* dict) {
    if (dict)
        if (const auto* e = dict->by_collective(word)) return e->elision;
    return elision_onset(word);
}

// Forms that change shape before a vowel: base -> elided.
const std::map<std::string, std::string, std::less<>> kElide = {
    {"le", "l'"}, {"la", "l'"}, {"de", "d'"}, {"du", "de l'"}, {"de la", "de l'"},
    {"au", "à l'"}, {"à la", "à l'"}, {"se", "s'"}, {"ne", "n'"}, {"que", "qu'"},
    {"je", "j'"}, {"me", "m'"}, {"te", "t'"}, {"ce", "cet"}, {"ma", "mon"}, {"ta", "ton"},
    {"sa", "son"}, {"nouveau", "nouvel"}, {"beau", "bel"}, {"vieux", "vieil"},
};

// Elided forms back to their consonant-onset shape.
const std::map<std::string, std::string, std::less<>> kUnelide = {
    {"l'", "le"}, {"d'", "de"}, {"s'", "se"}, {"n'", "ne"}, {"qu'", "que"}, {"j'", "je"},
    {"m'", "me"}, {"t'", "te"}, {"cet", "ce"}, {"nouvel", "nouveau"}, {"bel", "beau"}, {"vieil", "vieux"},
};

std::string ascii_apostrophe(std::string s) {
    for (auto p = s.find("’"); p != std::string::npos; p = s.find("’")) s.replace(p, 3, "'");
    return s;
}

std::string with_apostrophe(std::string s, const std::string& apo) {
    if (apo == "'") return s;
    for (auto p = s.find('\''); p != std::string::npos; p = s.find('\'', p + apo.size())) s.replace(p, 1, apo);
    return s;
}

// de + le -> du, à + les -> aux, ...
std::string contract(const std::vector<std::string>& words) {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"de le", "du"}, {"de les", "des"}, {"à le", "au"}, {"à les", "aux"},
    };
    std::string joined;
    for (const auto& w : words) {
        if (!joined.empty() && !ends_with_apostrophe(joined)) joined += ' ';
        joined += w;
    }
    auto it = table.find(text::lower(joined));
    return it == table.end() ? joined : keep_case(joined, it->second);
}

}  // namespace

std::string detokenize(const AnnotatedSentence& s, const std::vector<Change>& changes, const CnDictionary* dict) {
    std::map<int, std::string> after;
    for (const auto& c : changes) after[c.token] = c.after;
    std::string out = s.leading;
    for (std::size_t i = 0; i < s.tokens.size();) {
        const auto& t = s.tokens[i];
        std::string before, now, space;
        if (t.mwt) {
            const auto& m = s.mwts[static_cast<std::size_t>(t.mwt - 1)];
            before = m.surface;
            space = m.space_after;
            bool touched = false;
            std::vector<std::string> words;
            for (int w = m.first; w <= m.last; ++w) {
                auto it = after.find(w);
                touched |= it != after.end();
                words.push_back(it != after.end() ? it->second : s.at(w).surface);
            }
            now = touched ? keep_case(m.surface, contract(words)) : m.surface;
            i = static_cast<std::size_t>(m.last);
        } else {
            before = t.surface;
            space = t.space_after;
            auto it = after.find(t.index);
            now = it != after.end() ? it->second : t.surface;
            ++i;
        }
        if (now != before) {
            if (ends_with_apostrophe(now)) space.clear();
            else if (ends_with_apostrophe(before) && space.empty()) space = " ";
        }
        out += now;
        out += space;
    }
    (void)dict;
    return out;
}

namespace {

// Elision and euphony on the rewritten word sequence. Only touches a word
// when it or its right neighbour was rewritten.
void adjust_onsets(const AnnotatedSentence& s, std::map<int, std::pair<std::string, std::string>>& forms,
                   const CnDictionary& dict) {
    const std::string apo = source_apostrophe(s.text);
    auto current = [&](int i) -> std::string {
        auto it = forms.find(i);
        return it != forms.end() ? it->second.first : s.at(i).surface;
    };
    for (int i = 1; i < s.size(); ++i) {
        int j = i + 1;
        const Token& ti = s.at(i);
        const Token& tj = s.at(j);
        if (ti.mwt && ti.mwt == tj.mwt) continue;
        if (tj.is_punct()) continue;
        std::string space = ti.mwt ? s.mwts[static_cast<std::size_t>(ti.mwt - 1)].space_after : ti.space_after;
        bool elided_src = ends_with_apostrophe(ti.surface);
        if (!elided_src && space != " ") continue;
        bool changed_i = forms.count(i) > 0, changed_j = forms.count(j) > 0;
        if (!changed_i && !changed_j) continue;

        std::string wi = current(i);
        std::string key = ascii_apostrophe(text::lower(wi));
        bool vowel = vowel_onset(text::fold_first(current(j)), &dict);
        std::string repl;
        if (vowel) {
            auto it = kElide.find(key);
            if (it == kElide.end()) continue;
            bool content = key == "nouveau" || key == "beau" || key == "vieux" || key == "ma" || key == "ta" || key == "sa";
            if (content && !changed_i) continue;  // source already agreed with its neighbour
            repl = it->second;
        } else {
            auto it = kUnelide.find(key);
            if (it == kUnelide.end()) continue;
            repl = it->second;
        }
        repl = keep_case(wi, with_apostrophe(repl, apo));
        if (repl == ti.surface) {
            forms.erase(i);
        } else {
            std::string role = changed_i ? forms[i].second : "elision";
            forms[i] = {repl, role};
        }
    }
}

}  // namespace

std::vector<RewriteResult> rewrite(const AnnotatedSentence& s, const std::vector<DependencySet>& deps,
                                   const CnDictionary& dict, const Lexicon& lex, Mode mode) {
    if (deps.size() != s.spans.size()) throw Error("rewrite: one dependency set per span required");
    if (s.spans.empty()) {
        RewriteResult r;
        r.text = detokenize(s);
        return {r};
    }

    // Candidates per span in dictionary order.
    std::vector<std::vector<const CnEntry*>> cands;
    for (const auto& sp : s.spans) {
        std::vector<const CnEntry*> c;
        for (int id : sp.entry_ids) c.push_back(&dict.entry_by_id(id));
        std::sort(c.begin(), c.end());  // entries live in one vector: address order is file order
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (mode == Mode::first_variant) {
            auto lowest = *std::min_element(c.begin(), c.end(),
                                            [](const CnEntry* a, const CnEntry* b) { return a->id < b->id; });
            c = {lowest};
        }
        cands.push_back(std::move(c));
    }

    std::vector<RewriteResult> out;
    std::vector<std::size_t> pick(cands.size(), 0);
    for (;;) {
        VariantBuilder b(s, dict, lex);
        RewriteResult r;
        for (std::size_t k = 0; k < s.spans.size(); ++k) {
            const CnEntry& e = *cands[k][pick[k]];
            r.variant_ids.push_back(e.id);
            b.apply(s.spans[k], deps[k], e);
        }
        r.variant_entry_id = r.variant_ids.front();
        adjust_onsets(s, b.forms_, dict);
        for (const auto& [tok, f] : b.forms_)
            if (f.first != s.at(tok).surface) r.changes.push_back({tok, s.at(tok).surface, f.first, f.second});
        r.inflection_misses = std::move(b.misses_);
        r.flags = std::move(b.flags_);
        r.text = detokenize(s, r.changes, &dict);
        r.unchanged = r.changes.empty();
        out.push_back(std::move(r));

        std::size_t k = cands.size();
        while (k > 0) {
            --k;
            if (++pick[k] < cands[k].size()) break;
            pick[k] = 0;
            if (k == 0) return out;
        }
    }
}

}  // namespace neutre
