#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neutre/annotation.hpp"
#include "neutre/detector.hpp"
#include "neutre/dictionary.hpp"
#include "neutre/error.hpp"
#include "neutre/eval.hpp"
#include "neutre/extractor.hpp"
#include "neutre/lexicon.hpp"
#include "neutre/pipeline.hpp"

namespace py = pybind11;
using namespace neutre;

namespace {

Gender gender_arg(const std::string& g) {
    if (g == "m") return Gender::masculine;
    if (g == "f") return Gender::feminine;
    if (g.empty()) return Gender::unspecified;
    throw py::value_error("gender must be 'm', 'f' or ''");
}

Number number_arg(const std::string& n) {
    if (n == "s") return Number::singular;
    if (n == "p") return Number::plural;
    if (n.empty()) return Number::unspecified;
    throw py::value_error("number must be 's', 'p' or ''");
}

Mode mode_arg(const std::string& m) {
    if (m == "first") return Mode::first_variant;
    if (m == "all") return Mode::all_variants;
    throw py::value_error("mode must be 'first' or 'all'");
}

py::dict entry_dict(const CnEntry& e) {
    py::dict d;
    d["id"] = e.id;
    d["collective"] = e.collective;
    d["cn_gender"] = std::string(1, gender_code(e.cn_gender));
    d["cn_number"] = e.cn_number == Number::plural ? "pl" : "sg";
    d["member_plural"] = e.member_plural;
    d["member_lemma"] = e.member_lemma;
    d["elision"] = e.elision;
    return d;
}

py::dict variant_dict(const RewriteResult& r) {
    py::dict d;
    d["text"] = r.text;
    d["entries"] = r.variant_ids;
    py::list changes;
    for (const auto& c : r.changes) {
        py::dict x;
        x["token"] = c.token;
        x["before"] = c.before;
        x["after"] = c.after;
        x["role"] = c.role;
        changes.append(x);
    }
    d["changes"] = changes;
    d["flags"] = r.flags;
    d["unchanged"] = r.unchanged;
    d["change_log"] = change_log_json(r);
    return d;
}

// Keeps dictionary and lexicon alive for the pipeline that references them.
class Engine {
public:
    Engine(const std::string& dict, const std::string& lex)
        : dict_(CnDictionary::load(dict)), lex_(Lexicon::load(lex)), pipe_(dict_, lex_) {}
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    std::optional<std::string> tag(const std::string& line) const {
        return Extractor(dict_, &lex_).tag_line(line);
    }

    std::vector<py::dict> rewrite(const std::string& tagged, const std::string& conllu, const std::string& mode) const {
        auto parse = parse_conllu(conllu);
        SentenceRewrite r;
        {
            py::gil_scoped_release release;
            r = pipe_.run(tagged, parse, nullptr, mode_arg(mode));
        }
        std::vector<py::dict> out;
        for (const auto& v : r.variants) out.push_back(variant_dict(v));
        return out;
    }

    std::vector<std::vector<std::pair<int, std::string>>> detect(const std::string& tagged,
                                                                 const std::string& conllu) const {
        auto bound = bind_spans(parse_conllu(conllu), tagged, dict_);
        std::vector<std::vector<std::pair<int, std::string>>> out;
        for (const auto& d : pipe_.detect_all(bound)) {
            std::vector<std::pair<int, std::string>> items;
            for (const auto& it : d.items)
                if (!it.in_next_sentence) items.emplace_back(it.token, role_name(it.role));
            out.push_back(std::move(items));
        }
        return out;
    }

    const CnDictionary& dictionary() const { return dict_; }
    const Lexicon& lexicon() const { return lex_; }

private:
    CnDictionary dict_;
    Lexicon lex_;
    Pipeline pipe_;
};

}  // namespace

PYBIND11_MODULE(_neutre, m) {
    m.doc() = "French collective-noun rewriting engine";

    static py::exception<Error> error(m, "NeutreError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    py::class_<CnDictionary>(m, "Dictionary")
        .def_static("load", &CnDictionary::load, py::arg("path"))
        .def("__len__", &CnDictionary::size)
        .def("member_ids", &CnDictionary::member_ids, py::arg("form"))
        .def("is_member", &CnDictionary::is_member, py::arg("form"))
        .def("lookup", [](const CnDictionary& d, const std::string& form) {
            std::vector<py::dict> out;
            for (const auto* e : d.lookup_member(form)) out.push_back(entry_dict(*e));
            return out;
        }, py::arg("form"))
        .def("entry", [](const CnDictionary& d, int id) { return entry_dict(d.entry_by_id(id)); }, py::arg("id"));

    py::class_<Lexicon>(m, "Lexicon")
        .def_static("load", &Lexicon::load, py::arg("path"))
        .def("__len__", &Lexicon::size)
        .def("analyze", [](const Lexicon& l, const std::string& form) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& a : l.analyze(form)) out.emplace_back(a.lemma, to_string(a.features));
            return out;
        }, py::arg("form"))
        .def("reinflect", [](const Lexicon& l, const std::string& form, const std::string& g, const std::string& n) {
            return l.reinflect(form, gender_arg(g), number_arg(n)).form;
        }, py::arg("form"), py::arg("gender"), py::arg("number"));

    py::class_<Engine>(m, "Engine")
        .def(py::init<const std::string&, const std::string&>(), py::arg("dictionary"), py::arg("lexicon"))
        .def("tag", &Engine::tag, py::arg("line"), "Tagged line, or None when no member noun is found")
        .def("rewrite", &Engine::rewrite, py::arg("tagged"), py::arg("conllu"), py::arg("mode") = "first")
        .def("detect", &Engine::detect, py::arg("tagged"), py::arg("conllu"))
        .def_property_readonly("dictionary", &Engine::dictionary, py::return_value_policy::reference_internal)
        .def_property_readonly("lexicon", &Engine::lexicon, py::return_value_policy::reference_internal);

    m.def("detokenize", [](const std::string& block) { return detokenize(parse_conllu(block)); }, py::arg("conllu"));
    m.def("strip_tags", [](const std::string& s) { return strip_tags(s); }, py::arg("tagged"));
    m.def("wer", [](const std::vector<std::string>& h, const std::vector<std::string>& r) { return wer(h, r).wer; },
          py::arg("hypotheses"), py::arg("references"));
    m.def("bleu", [](const std::vector<std::string>& h, const std::vector<std::string>& r) { return bleu(h, r).score; },
          py::arg("hypotheses"), py::arg("references"));
    m.def("tokenize_13a", &tokenize_13a, py::arg("line"));
}
