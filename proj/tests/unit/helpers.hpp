#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "neutre/annotation.hpp"
#include "neutre/dictionary.hpp"
#include "neutre/lexicon.hpp"

namespace testdata {

inline std::string path(const std::string& rel) { return std::string(NEUTRE_SOURCE_DIR) + "/" + rel; }

inline const neutre::CnDictionary& dict() {
    static const auto d = neutre::CnDictionary::load(path("data/dictionary.tsv"));
    return d;
}

inline const neutre::Lexicon& lexicon() {
    static const auto l = neutre::Lexicon::load(path("data/lexicon.tsv"));
    return l;
}

inline std::vector<std::string> lines(const std::string& rel) {
    std::ifstream in(path(rel));
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

inline const std::vector<neutre::AnnotatedSentence>& golden() {
    static const auto s = neutre::read_conllu_file(path("tests/fixtures/golden.conllu"));
    return s;
}

inline const std::vector<neutre::AnnotatedSentence>& detection() {
    static const auto s = neutre::read_conllu_file(path("tests/fixtures/detection.conllu"));
    return s;
}

}  // namespace testdata
