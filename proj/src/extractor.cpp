#include "neutre/extractor.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "neutre/dictionary.hpp"
#include "neutre/error.hpp"
#include "neutre/lexicon.hpp"
#include "neutre/text.hpp"

namespace neutre {

namespace {

const std::set<std::string, std::less<>> kDeterminers = {
    "les", "des", "aux", "ces", "ses", "leurs", "mes", "tes", "nos", "vos", "quelques", "plusieurs", "de",
};

// Plural adjectives that can sit between the determiner and the noun.
const std::set<std::string, std::less<>> kPrenominal = {
    "anciens", "autres", "bons", "braves", "chers", "derniers", "différents", "divers", "futurs", "grands",
    "gros", "hauts", "jeunes", "mauvais", "meilleurs", "mêmes", "nombreux", "nouveaux", "pauvres",
    "petits", "premiers", "principaux", "prochains", "seuls", "simples", "véritables", "vieux", "vrais",
};

struct Word {
    std::size_t begin, end;
};

std::vector<Word> words_of(std::string_view line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        std::size_t start = i;
        char32_t c = text::next_cp(line, i);
        if (!text::is_letter(c)) continue;
        std::size_t end = i;
        while (i < line.size()) {
            std::size_t save = i;
            char32_t d = text::next_cp(line, i);
            if (text::is_letter(d)) {
                end = i;
                continue;
            }
            if (d == U'-' && i < line.size()) {
                std::size_t peek = i;
                if (text::is_letter(text::next_cp(line, peek))) {
                    end = i;
                    continue;
                }
            }
            i = save;
            break;
        }
        out.push_back({start, end});
        i = end;
    }
    return out;
}

bool is_blank(std::string_view gap) {
    if (gap.empty()) return false;
    std::size_t i = 0;
    while (i < gap.size()) {
        char32_t c = text::next_cp(gap, i);
        if (c != U' ' && c != U'\t' && c != 0xA0 && c != 0x202F) return false;
    }
    return true;
}

}  // namespace

std::string ExtractStats::to_json() const {
    nlohmann::ordered_json j;
    j["lines_scanned"] = lines_scanned;
    j["lines_kept"] = lines_kept;
    j["tags"] = tags;
    j["invalid_utf8"] = invalid_utf8;
    j["pos_rejected"] = pos_rejected;
    j["capped"] = capped;
    j["misid_risk"] = misid_risk;
    nlohmann::ordered_json pe = nlohmann::ordered_json::object();
    for (const auto& [id, n] : per_entry) pe[std::to_string(id)] = n;
    j["per_entry"] = pe;
    auto ex = nlohmann::ordered_json::array();
    for (const auto& [line, form] : misid_examples) ex.push_back({{"line", line}, {"form", form}});
    j["misid_examples"] = ex;
    return j.dump(2);
}

Extractor::Extractor(const CnDictionary& dict, const Lexicon* lexicon, ExtractConfig cfg)
    : dict_(dict), lex_(lexicon), cfg_(cfg) {
    if (cfg_.jobs == 0) cfg_.jobs = 1;
    if (cfg_.chunk == 0) cfg_.chunk = 1;
}

std::vector<Candidate> Extractor::scan(std::string_view line, const AnnotatedSentence* parse,
                                       std::size_t* pos_rejected) const {
    std::vector<Candidate> out;
    auto words = words_of(line);
    std::vector<std::size_t> offs;
    if (parse) offs = parse->offsets();

    for (std::size_t k = 0; k < words.size(); ++k) {
        std::string_view w = line.substr(words[k].begin, words[k].end - words[k].begin);
        auto ids = dict_.member_ids(w);
        if (ids.empty()) continue;

        Candidate c;
        c.begin = words[k].begin;
        c.end = words[k].end;
        c.noun_begin = words[k].begin;
        c.ids = std::move(ids);
        c.noun = std::string(w);
        for (std::size_t p = k; p > 0; --p) {
            const Word& prev = words[p - 1];
            std::string_view gap = line.substr(prev.end, c.begin - prev.end);
            std::string pw = text::lower(line.substr(prev.begin, prev.end - prev.begin));
            if (is_blank(gap) && kPrenominal.count(pw)) {
                c.begin = prev.begin;
                continue;
            }
            if ((is_blank(gap) && kDeterminers.count(pw)) || (pw == "d" && text::is_apostrophe(gap)))
                c.begin = prev.begin;
            break;
        }

        if (parse && cfg_.require_pos) {
            bool noun = false;
            for (int i = 1; i <= parse->size(); ++i)
                if (offs[static_cast<std::size_t>(i - 1)] == c.noun_begin && parse->at(i).surface == c.noun)
                    noun = parse->at(i).upos == "NOUN";
            if (!noun) {
                if (pos_rejected) ++*pos_rejected;
                continue;
            }
        } else if (lex_ && lex_->has_reading(text::fold_first(c.noun), Pos::adjective)) {
            c.misid_risk = true;
        }

        // A previous member word inside this phrase was an adjective ("jeunes électeurs").
        while (!out.empty() && out.back().end > c.begin) {
            if (out.back().begin >= c.begin) out.pop_back();
            else {
                c.ids.clear();
                break;
            }
        }
        if (!c.ids.empty()) out.push_back(std::move(c));
    }
    return out;
}

std::string Extractor::render(std::string_view line, const std::vector<Candidate>& cands) {
    std::string out;
    out.reserve(line.size() + cands.size() * 12);
    std::size_t pos = 0;
    for (const auto& c : cands) {
        out.append(line.substr(pos, c.begin - pos));
        out += "<n-";
        for (std::size_t i = 0; i < c.ids.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(c.ids[i]);
        }
        out += '>';
        out.append(line.substr(c.begin, c.end - c.begin));
        out += "</n>";
        pos = c.end;
    }
    out.append(line.substr(pos));
    return out;
}

std::optional<std::string> Extractor::tag_line(std::string_view line, const AnnotatedSentence* parse) const {
    if (!text::valid_utf8(line)) return std::nullopt;
    auto c = scan(line, parse);
    if (c.empty()) return std::nullopt;
    return render(line, c);
}

ExtractStats Extractor::run(std::istream& in, std::ostream& out, const std::vector<AnnotatedSentence>* parses) const {
    if (cfg_.require_pos && !parses) throw Error("--require-pos needs parses (--conllu)");
    ExtractStats st;
    std::map<int, std::size_t> used;

    struct Slot {
        std::string line;
        bool valid = true;
        std::vector<Candidate> cands;
        std::size_t rejected = 0;
    };
    const std::size_t batch = cfg_.chunk * cfg_.jobs;
    std::vector<Slot> slots;
    slots.reserve(batch);
    std::size_t lineno = 0;

    auto process = [&](std::size_t first_line) {
        auto work = [&](std::size_t from, std::size_t to) {
            for (std::size_t i = from; i < to; ++i) {
                Slot& s = slots[i];
                s.valid = text::valid_utf8(s.line);
                if (!s.valid) continue;
                const AnnotatedSentence* p = nullptr;
                if (parses) p = &(*parses)[first_line + i];
                s.cands = scan(s.line, p, &s.rejected);
            }
        };
        if (cfg_.jobs <= 1 || slots.size() < 2) {
            work(0, slots.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t per = (slots.size() + cfg_.jobs - 1) / cfg_.jobs;
            for (std::size_t from = 0; from < slots.size(); from += per)
                pool.emplace_back(work, from, std::min(slots.size(), from + per));
            for (auto& t : pool) t.join();
        }
        // Sequential merge: caps depend on input order.
        for (std::size_t i = 0; i < slots.size(); ++i) {
            Slot& s = slots[i];
            ++st.lines_scanned;
            if (!s.valid) {
                ++st.invalid_utf8;
                continue;
            }
            st.pos_rejected += s.rejected;
            std::vector<Candidate> kept;
            for (auto& c : s.cands) {
                if (cfg_.max_per_entry) {
                    std::vector<int> ids;
                    for (int id : c.ids)
                        if (used[id] < cfg_.max_per_entry) ids.push_back(id);
                    if (ids.empty()) {
                        ++st.capped;
                        continue;
                    }
                    c.ids = std::move(ids);
                    for (int id : c.ids) ++used[id];
                }
                if (c.misid_risk) {
                    ++st.misid_risk;
                    if (st.misid_examples.size() < 100) st.misid_examples.emplace_back(first_line + i + 1, c.noun);
                }
                for (int id : c.ids) ++st.per_entry[id];
                ++st.tags;
                kept.push_back(std::move(c));
            }
            if (kept.empty()) continue;
            ++st.lines_kept;
            out << render(s.line, kept) << '\n';
        }
        slots.clear();
    };

    std::string line;
    std::size_t batch_start = 0;
    while (std::getline(in, line)) {
        if (parses && lineno >= parses->size())
            throw Error("more input lines than parsed sentences (" + std::to_string(parses->size()) + ")");
        slots.push_back({std::move(line), true, {}, 0});
        ++lineno;
        if (slots.size() == batch) {
            process(batch_start);
            batch_start = lineno;
        }
    }
    if (!slots.empty()) process(batch_start);
    return st;
}

}  // namespace neutre
