"""Freeze dependency parses of fixture sentences as CoNLL-U.

Each input line becomes one CoNLL-U block (the whole line is kept as one unit
even when the parser finds several sentences in it). Optional hand corrections
are read from a JSON file mapping "<line number>" to a list of token patches:
    {"1": [{"id": 4, "upos": "VERB", "feats": "...", "head": 0, "deprel": "root"}]}
Corrected blocks carry a "# corrected" comment listing the patched token ids.

Usage: freeze_parses.py input.txt output.conllu [corrections.json]
"""
import json
import sys

import spacy

MODEL = "fr_core_news_md"


def misc_for(ws):
    if ws == " ":
        return "_"
    if ws == "":
        return "SpaceAfter=No"
    return "SpacesAfter=" + ws.replace("\\", "\\\\").replace(" ", "\\s").replace("\t", "\\t")


def main(src, dst, corrections_path=None):
    nlp = spacy.load(MODEL)
    corrections = {}
    if corrections_path:
        with open(corrections_path, encoding="utf-8") as f:
            corrections = json.load(f)
    lines = [l.rstrip("\n") for l in open(src, encoding="utf-8")]
    out = []
    for n, line in enumerate(lines, start=1):
        doc = nlp(line)
        rows = []
        for t in doc:
            head = 0 if t.head.i == t.i else t.head.i + 1
            deprel = "root" if t.dep_ == "ROOT" else t.dep_
            feats = str(t.morph) or "_"
            ws = t.whitespace_ if t.i + 1 < len(doc) else ""
            rows.append({"id": t.i + 1, "form": t.text, "lemma": t.lemma_, "upos": t.pos_,
                         "feats": feats, "head": head, "deprel": deprel, "misc": misc_for(ws)})
        patched = []
        for p in corrections.get(str(n), []):
            row = rows[p["id"] - 1]
            for k, v in p.items():
                if k != "id":
                    row[k] = v
            patched.append(str(p["id"]))
        out.append(f"# sent_id = {n}")
        out.append(f"# parser = {MODEL}-{spacy.util.get_package_version(MODEL)}")
        if patched:
            out.append("# corrected = " + ",".join(patched))
        out.append(f"# text = {line}")
        for r in rows:
            out.append("\t".join([str(r["id"]), r["form"], r["lemma"], r["upos"], "_", r["feats"],
                                  str(r["head"]), r["deprel"], "_", r["misc"]]))
        out.append("")
    with open(dst, "w", encoding="utf-8") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main(*sys.argv[1:])
