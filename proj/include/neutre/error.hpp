#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace neutre {

// Base of everything the library throws on bad input data.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadError : Error {
    LoadError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct NotFound : Error {
    explicit NotFound(int id) : Error("unknown dictionary id " + std::to_string(id)), id(id) {}
    int id;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("conllu line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct BindingError : Error {
    using Error::Error;
};

struct InflectionMiss : Error {
    InflectionMiss(const std::string& lemma, const std::string& target)
        : Error("no form for " + lemma + " " + target), lemma(lemma), target(target) {}
    std::string lemma;
    std::string target;
};

struct MetricError : Error {
    using Error::Error;
};

}  // namespace neutre
