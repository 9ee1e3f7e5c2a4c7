import os
from pathlib import Path

import pytest

import neutre

ROOT = Path(os.environ.get("NEUTRE_SOURCE_DIR", Path(__file__).resolve().parents[2]))
FIXTURES = ROOT / "tests" / "fixtures"


def conllu_blocks(name):
    text = (FIXTURES / name).read_text(encoding="utf-8")
    return [b + "\n" for b in text.strip("\n").split("\n\n")]


@pytest.fixture(scope="module")
def engine():
    return neutre.default_engine()


def test_dictionary(engine):
    d = engine.dictionary
    assert len(d) == 315
    assert [e["collective"] for e in d.lookup("soldats")] == ["armée", "bataillon", "infanterie", "régiment"]
    assert d.entry(126)["collective"] == "autorat"
    with pytest.raises(neutre.NeutreError):
        d.entry(9999)


def test_lexicon(engine):
    lex = engine.lexicon
    assert lex.reinflect("assidus", "f", "s") == "assidue"
    assert ("financer", "V:p:3:fin:P") in lex.analyze("financent")


def test_golden_pairs(engine):
    src = (FIXTURES / "golden.txt").read_text(encoding="utf-8").splitlines()
    expected = (FIXTURES / "golden.expected.txt").read_text(encoding="utf-8").splitlines()
    blocks = conllu_blocks("golden.conllu")
    for line, block, want in zip(src, blocks, expected):
        tagged = engine.tag(line)
        assert tagged is not None
        assert neutre.strip_tags(tagged) == line
        assert engine.rewrite(tagged, block)[0]["text"] == want


def test_all_variants_and_detection(engine):
    block = conllu_blocks("golden.conllu")[5]
    tagged = "<n-2,3,4,5>Les soldats</n> arrivèrent avec une lance à eau pour disperser les détenus."
    texts = [v["text"] for v in engine.rewrite(tagged, block, mode="all")]
    assert texts[0] == "L'armée arriva avec une lance à eau pour disperser les détenus."
    assert len(texts) == 4
    deps = engine.detect(tagged, block)
    assert (1, "determiner") in deps[0]
    assert (3, "finite_verb") in deps[0]


def test_errors(engine):
    block = conllu_blocks("golden.conllu")[0]
    with pytest.raises(neutre.NeutreError):
        engine.rewrite("<n-11>Les lecteurs assidus financent le journal chaque mois.", block)
    with pytest.raises(ValueError):
        engine.rewrite("x", block, mode="some")
    with pytest.raises(neutre.NeutreError):
        neutre.detokenize("")


def test_metrics():
    assert neutre.wer(["les lecteurs assidus financent le journal"], ["le lectorat assidu finance le journal"]) == \
        pytest.approx(66.6667, abs=5e-5)
    assert neutre.bleu(["a b c d e"], ["a b c d e"]) == pytest.approx(100.0)
    assert neutre.tokenize_13a("L'armée arriva, enfin.") == "L'armée arriva , enfin ."


def test_detokenize_round_trip():
    for block in conllu_blocks("identity.conllu")[:50]:
        text = next(l[len("# text = "):] for l in block.splitlines() if l.startswith("# text = "))
        assert neutre.detokenize(block) == text
