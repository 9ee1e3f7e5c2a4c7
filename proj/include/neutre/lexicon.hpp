#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neutre/features.hpp"

namespace neutre {

struct MorphAnalysis {
    std::string surface;
    std::string lemma;
    MorphFeatures features;
};

struct Reinflection {
    std::string form;
    bool ok = true;      // false: form passed through unchanged
    std::string reason;  // why it was passed through
};

// Full-form lexicon. Reads our TSV layout or raw DELAF lines
// ("financent,financer.V:P3p:S3p"), one reading per (surface, code).
class Lexicon {
public:
    static Lexicon load(const std::string& path);
    static Lexicon parse(std::istream& in, const std::string& source = "<stream>");

    std::vector<MorphAnalysis> analyze(std::string_view form) const;

    // Shortest matching surface, then lexicographic. Throws InflectionMiss.
    std::string inflect(std::string_view lemma, const MorphFeatures& target) const;
    std::optional<std::string> try_inflect(std::string_view lemma, const MorphFeatures& target) const;

    // Override gender/number of form. role narrows the readings considered;
    // hint (the parser's features) breaks ties between them.
    Reinflection reinflect(std::string_view form, Gender gender, Number number,
                           std::optional<Pos> role = std::nullopt,
                           const MorphFeatures* hint = nullptr) const;

    bool has_reading(std::string_view form, Pos pos, VerbForm vf = VerbForm::unspecified) const;

    const std::vector<MorphAnalysis>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

private:
    void add(MorphAnalysis a);
    void add_delaf(const std::string& line, const std::string& source, std::size_t lineno);

    std::vector<MorphAnalysis> rows_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_surface_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_lemma_;
};

}  // namespace neutre
