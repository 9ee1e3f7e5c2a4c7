#include "neutre/annotation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "neutre/dictionary.hpp"
#include "neutre/error.hpp"
#include "neutre/text.hpp"

namespace neutre {

namespace {

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

// Length of the whitespace run at text[pos] (ASCII blanks, NBSP, NNBSP,
// thin space).
std::size_t space_len(std::string_view t, std::size_t pos) {
    std::size_t n = 0;
    while (pos + n < t.size()) {
        std::string_view rest = t.substr(pos + n);
        if (rest[0] == ' ' || rest[0] == '\t' || rest[0] == '\n' || rest[0] == '\r') n += 1;
        else if (rest.rfind("\xC2\xA0", 0) == 0) n += 2;
        else if (rest.rfind("\xE2\x80\xAF", 0) == 0 || rest.rfind("\xE2\x80\x89", 0) == 0) n += 3;
        else break;
    }
    return n;
}

bool all_space(std::string_view s) { return !s.empty() && space_len(s, 0) == s.size(); }

std::vector<int> parse_ids(std::string_view s) {
    std::vector<int> ids;
    for (const auto& part : text::split(s, ',')) {
        int id = 0;
        if (!parse_int(part, id) || id <= 0) return {};
        ids.push_back(id);
    }
    return ids;
}

struct Unit {
    int first, last;  // word range
    const std::string* surface;
    std::string* space;
    std::size_t line;
};

}  // namespace

std::string Token::feat(std::string_view key) const {
    auto it = feats.find(key);
    return it == feats.end() ? std::string() : it->second;
}

std::vector<int> AnnotatedSentence::children(int index) const {
    std::vector<int> out;
    for (const auto& t : tokens)
        if (t.head == index) out.push_back(t.index);
    return out;
}

std::vector<std::size_t> AnnotatedSentence::offsets() const {
    std::vector<std::size_t> off(tokens.size(), 0);
    std::size_t pos = leading.size();
    for (std::size_t i = 0; i < tokens.size();) {
        const auto& t = tokens[i];
        if (t.mwt) {
            const auto& m = mwts[static_cast<std::size_t>(t.mwt - 1)];
            for (int w = m.first; w <= m.last; ++w) off[static_cast<std::size_t>(w - 1)] = pos;
            pos += m.surface.size() + m.space_after.size();
            i = static_cast<std::size_t>(m.last);
        } else {
            off[i] = pos;
            pos += t.surface.size() + t.space_after.size();
            ++i;
        }
    }
    return off;
}

AnnotatedSentence parse_conllu(std::string_view block, std::size_t first_line) {
    AnnotatedSentence s;
    bool have_text = false;
    std::vector<std::size_t> token_lines;
    std::vector<std::size_t> mwt_lines;
    std::vector<std::string> cn_tags;
    std::size_t lineno = first_line - 1;

    for (const auto& raw : text::split(block, '\n')) {
        ++lineno;
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        if (line[0] == '#') {
            s.comments.push_back(line);
            if (line.rfind("# text = ", 0) == 0) {
                s.text = line.substr(9);
                have_text = true;
            } else if (line.rfind("# sent_id = ", 0) == 0) {
                s.source_id = line.substr(12);
            }
            continue;
        }
        auto cols = text::split(line, '\t');
        if (cols.size() != 10)
            throw ParseError(lineno, "expected 10 columns, got " + std::to_string(cols.size()));
        const std::string& id = cols[0];
        if (id.find('.') != std::string::npos) continue;  // empty node
        auto dash = id.find('-');
        if (dash != std::string::npos) {
            MultiwordToken m;
            if (!parse_int(std::string_view(id).substr(0, dash), m.first) ||
                !parse_int(std::string_view(id).substr(dash + 1), m.last) || m.last < m.first)
                throw ParseError(lineno, "bad range id '" + id + "'");
            if (m.first != s.size() + 1) throw ParseError(lineno, "range does not start at the next word");
            m.surface = cols[1];
            s.mwts.push_back(m);
            mwt_lines.push_back(lineno);
            continue;
        }
        Token t;
        if (!parse_int(id, t.index)) throw ParseError(lineno, "bad id '" + id + "'");
        if (t.index != s.size() + 1)
            throw ParseError(lineno, "id " + id + " out of sequence, expected " + std::to_string(s.size() + 1));
        if (!parse_int(cols[6], t.head)) throw ParseError(lineno, "bad head '" + cols[6] + "'");
        t.surface = cols[1];
        t.lemma = cols[2] == "_" && cols[1] != "_" ? std::string() : cols[2];
        t.upos = cols[3];
        t.xpos = cols[4];
        t.feats = parse_feats(cols[5]);
        t.features = features_from_ud(t.upos, t.feats);
        t.deprel = cols[7];
        t.misc = cols[9];
        if (!s.mwts.empty()) {
            const auto& m = s.mwts.back();
            if (t.index >= m.first && t.index <= m.last) t.mwt = static_cast<int>(s.mwts.size());
        }
        std::string cn;
        for (const auto& kv : text::split(t.misc, '|'))
            if (kv.rfind("CN=", 0) == 0) cn = kv.substr(3);
        cn_tags.push_back(cn);
        s.tokens.push_back(std::move(t));
        token_lines.push_back(lineno);
    }

    if (s.tokens.empty()) throw ParseError(lineno, "empty sentence block");
    if (!have_text) throw ParseError(first_line, "missing '# text' comment");
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        const auto& t = s.tokens[i];
        if (t.head < 0 || t.head > s.size())
            throw ParseError(token_lines[i], "head " + std::to_string(t.head) + " outside sentence of " +
                                                 std::to_string(s.size()) + " tokens");
        if (t.head == t.index) throw ParseError(token_lines[i], "token is its own head");
    }
    for (std::size_t k = 0; k < s.mwts.size(); ++k)
        if (s.mwts[k].last > s.size()) throw ParseError(mwt_lines[k], "range beyond last word");

    // Align surfaces on # text to recover the exact spacing.
    std::vector<Unit> units;
    for (std::size_t i = 0; i < s.tokens.size();) {
        auto& t = s.tokens[i];
        if (t.mwt) {
            auto& m = s.mwts[static_cast<std::size_t>(t.mwt - 1)];
            units.push_back({m.first, m.last, &m.surface, &m.space_after, mwt_lines[static_cast<std::size_t>(t.mwt - 1)]});
            i = static_cast<std::size_t>(m.last);
        } else {
            units.push_back({t.index, t.index, &t.surface, &t.space_after, token_lines[i]});
            ++i;
        }
    }
    std::string_view txt = s.text;
    std::size_t pos = 0;
    if (!units.empty() && !all_space(*units[0].surface)) {
        pos = space_len(txt, 0);
        s.leading = std::string(txt.substr(0, pos));
    }
    for (std::size_t u = 0; u < units.size(); ++u) {
        const std::string& surf = *units[u].surface;
        if (txt.compare(pos, surf.size(), surf) != 0)
            throw ParseError(units[u].line, "token '" + surf + "' does not match # text at byte " + std::to_string(pos));
        pos += surf.size();
        std::size_t gap = 0;
        bool next_is_space = u + 1 < units.size() && all_space(*units[u + 1].surface);
        if (!next_is_space) gap = space_len(txt, pos);
        *units[u].space = std::string(txt.substr(pos, gap));
        pos += gap;
    }
    if (pos != txt.size()) throw ParseError(first_line, "# text has trailing material not covered by tokens");

    // Optional MISC span annotation: CN=B-126,68 opens a span, CN=I continues it.
    for (std::size_t i = 0; i < cn_tags.size(); ++i) {
        const auto& c = cn_tags[i];
        int idx = static_cast<int>(i) + 1;
        if (c.rfind("B-", 0) == 0) {
            auto ids = parse_ids(std::string_view(c).substr(2));
            if (ids.empty()) throw ParseError(token_lines[i], "bad CN annotation '" + c + "'");
            s.spans.push_back({ids, idx, idx, 0});
        } else if (c == "I") {
            if (s.spans.empty() || s.spans.back().end != idx - 1)
                throw ParseError(token_lines[i], "CN=I without an open span");
            s.spans.back().end = idx;
        }
    }
    if (s.source_id.empty()) s.source_id = std::to_string(first_line);
    return s;
}

std::vector<AnnotatedSentence> read_conllu(std::istream& in) {
    std::vector<AnnotatedSentence> out;
    std::string line, block;
    std::size_t lineno = 0, start = 1;
    auto flush = [&] {
        if (!text::trim(block).empty()) {
            out.push_back(parse_conllu(block, start));
            if (out.back().source_id == std::to_string(start))
                out.back().source_id = std::to_string(out.size());
        }
        block.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
            start = lineno + 1;
            continue;
        }
        block += line;
        block += '\n';
    }
    flush();
    return out;
}

std::vector<AnnotatedSentence> read_conllu_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError(path, 0, "cannot open CoNLL-U file");
    return read_conllu(in);
}

std::string detokenize(const AnnotatedSentence& s) {
    std::string out = s.leading;
    for (std::size_t i = 0; i < s.tokens.size();) {
        const auto& t = s.tokens[i];
        if (t.mwt) {
            const auto& m = s.mwts[static_cast<std::size_t>(t.mwt - 1)];
            out += m.surface;
            out += m.space_after;
            i = static_cast<std::size_t>(m.last);
        } else {
            out += t.surface;
            out += t.space_after;
            ++i;
        }
    }
    return out;
}

std::string strip_tags(std::string_view tagged, std::vector<TagSpan>* spans) {
    std::string plain;
    plain.reserve(tagged.size());
    std::vector<TagSpan> open;
    std::vector<TagSpan> done;
    std::size_t i = 0;
    while (i < tagged.size()) {
        if (tagged.compare(i, 3, "<n-") == 0) {
            auto close = tagged.find('>', i);
            if (close == std::string_view::npos) throw BindingError("unterminated tag at byte " + std::to_string(i));
            auto ids = parse_ids(tagged.substr(i + 3, close - i - 3));
            if (ids.empty())
                throw BindingError("bad tag '" + std::string(tagged.substr(i, close - i + 1)) + "'");
            open.push_back({plain.size(), 0, std::move(ids)});
            i = close + 1;
        } else if (tagged.compare(i, 4, "</n>") == 0) {
            if (open.empty()) throw BindingError("closing tag without opening tag at byte " + std::to_string(i));
            TagSpan t = std::move(open.back());
            open.pop_back();
            t.end = plain.size();
            done.push_back(std::move(t));
            i += 4;
        } else {
            plain += tagged[i++];
        }
    }
    if (!open.empty()) throw BindingError("unclosed <n-> tag");
    if (spans) {
        std::sort(done.begin(), done.end(), [](const TagSpan& a, const TagSpan& b) {
            return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
        });
        *spans = std::move(done);
    }
    return plain;
}

namespace {

int pick_noun(const AnnotatedSentence& s, const MemberSpan& sp, const CnDictionary& dict) {
    for (int i = sp.end; i >= sp.start; --i)
        if (s.at(i).upos == "NOUN") return i;
    for (int i = sp.end; i >= sp.start; --i)
        if (dict.is_member(s.at(i).surface)) return i;
    for (int i = sp.end; i >= sp.start; --i)
        if (!s.at(i).is_punct()) return i;
    return sp.end;
}

}  // namespace

AnnotatedSentence bind_spans(AnnotatedSentence s, std::string_view tagged, const CnDictionary& dict) {
    std::vector<TagSpan> tags;
    std::string plain = strip_tags(tagged, &tags);
    if (plain != detokenize(s))
        throw BindingError("tagged text does not match sentence " + s.source_id);

    if (!tags.empty()) {
        auto off = s.offsets();
        std::vector<MemberSpan> spans;
        for (const auto& t : tags) {
            if (t.begin == t.end) throw BindingError("empty tag in sentence " + s.source_id);
            MemberSpan sp;
            for (int i = 1; i <= s.size(); ++i) {
                const auto& tok = s.at(i);
                std::size_t b = off[static_cast<std::size_t>(i - 1)];
                std::size_t len = tok.mwt ? s.mwts[static_cast<std::size_t>(tok.mwt - 1)].surface.size() : tok.surface.size();
                if (b == t.begin && !sp.start) sp.start = tok.mwt ? s.mwts[static_cast<std::size_t>(tok.mwt - 1)].first : i;
                if (b + len == t.end) sp.end = tok.mwt ? s.mwts[static_cast<std::size_t>(tok.mwt - 1)].last : i;
            }
            if (!sp.start || !sp.end || sp.end < sp.start)
                throw BindingError("tag boundary splits a token in sentence " + s.source_id);
            sp.entry_ids = t.ids;
            if (!spans.empty() && spans.back().start == sp.start && spans.back().end == sp.end) {
                for (int id : sp.entry_ids)
                    if (std::find(spans.back().entry_ids.begin(), spans.back().entry_ids.end(), id) ==
                        spans.back().entry_ids.end())
                        spans.back().entry_ids.push_back(id);
                continue;
            }
            if (!spans.empty() && sp.start <= spans.back().end)
                throw BindingError("overlapping member spans in sentence " + s.source_id);
            spans.push_back(std::move(sp));
        }
        s.spans = std::move(spans);
    }
    for (auto& sp : s.spans) {
        for (int id : sp.entry_ids)
            if (!dict.has_id(id)) throw BindingError("tag id " + std::to_string(id) + " not in dictionary");
        sp.noun = pick_noun(s, sp, dict);
    }
    return s;
}

}  // namespace neutre
