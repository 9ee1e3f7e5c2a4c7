#!/usr/bin/env python3
"""Build the trimmed full-form lexicon shipped in data/lexicon.tsv.

Dev-time only. Verbs are conjugated with verbecc, adjectives and nouns
are expanded with the usual spelling rules plus an irregular table,
closed classes are listed by hand. Vocabulary = fixture parses +
dictionary forms + a list of frequent words.

    python3 tools/data/build_lexicon.py data/dictionary.tsv tests/fixtures data/lexicon.tsv
"""
import csv
import glob
import json
import logging
import os
import sys

logging.disable(logging.CRITICAL)

VERBS = """
abandonner accepter accompagner accorder accueillir accuser acheter adopter affirmer agir
aider aimer ajouter aller annoncer annuler apercevoir appeler applaudir apporter apprendre
approuver arrêter arriver assister attaquer atteindre attendre attirer augmenter avancer
avoir baisser bâtir battre bloquer boire cacher chanter charger chercher choisir classer
combattre commencer comprendre compter concerner condamner conduire confier connaître
consacrer conseiller considérer constituer construire consulter contester continuer
contrôler convaincre convoquer courir couvrir craindre créer croire cultiver danser
décider déclarer défendre demander dénoncer dépendre désirer détruire devenir devoir
diriger discuter disparaître disperser distribuer dominer donner dormir écouter écrire
élire emmener employer engager entendre entrer envoyer espérer essayer estimer être
étudier éviter exiger expliquer exprimer fabriquer faire falloir fermer financer finir
fonder former fuir gagner garantir garder gérer gouverner habiter hésiter ignorer
imposer informer inquiéter inscrire installer interpréter interroger inviter jouer juger
laisser lancer lever lire lister lutter manger manifester marcher menacer mener mettre
montrer mourir naître négocier nommer obtenir occuper offrir organiser oublier ouvrir
ovationner paraître parler participer partir passer payer penser perdre permettre
placer pleuvoir porter poser posséder pouvoir préférer prendre préparer présenter
prétendre prévoir procéder proclamer produire progresser promettre proposer protéger
protester prouver publier quitter raconter rappeler rassembler recevoir recommander
reconnaître refuser regarder rejeter rejoindre remercier remplacer rencontrer rendre
rentrer répondre reposer représenter réclamer réfléchir réduire réunir réussir résider
rester restaurer retourner retrouver revenir rêver rire savoir secourir sembler sentir
servir signer situer soigner sortir souffrir souhaiter soutenir subir suivre supporter
tenir terminer tomber toucher travailler traverser trouver tuer utiliser vaincre valoir
vendre venir visiter vivre voir voler voter vouloir satisfaire
""".split()

ADJECTIVES = """
actif agressif agricole allemand américain ancien anglais arabe assidu atlantique autre
beau bon botanique bref brillant calme catholique chrétien civil célèbre cher
considérable content correspondant courageux couvert cruel dernier deuxième différent
difficile direct divers doux drôle dur européen excellent expert faible familial fatigué
favorable fier financier fort fou fragile franc français frais furieux gentil grand
grave grec gros général heureux historique honnête humain humide important inquiet
intellectuel international italien jaloux jeune joli juste large las libre local long
lourd loyal léger malade malheureux meilleur militaire moderne municipal musulman
mécontent mûr national naïf neuf noble nombreux nouveau nul prochain profond
protestant présent prudent public rare rebelle recevable religieux riche rond rouge
russe régional réputé sage savant scientifique sec secret seul social sportif successif
suivant sérieux thermal tout triste turc utile vieux vif volontaire équitable électoral
étranger recommandé
""".split()

ADJ_IRREGULAR = {
    # lemma: (ms, fs, mp, fp)
    "beau": ("beau", "belle", "beaux", "belles"),
    "nouveau": ("nouveau", "nouvelle", "nouveaux", "nouvelles"),
    "vieux": ("vieux", "vieille", "vieux", "vieilles"),
    "fou": ("fou", "folle", "fous", "folles"),
    "long": ("long", "longue", "longs", "longues"),
    "gentil": ("gentil", "gentille", "gentils", "gentilles"),
    "frais": ("frais", "fraîche", "frais", "fraîches"),
    "doux": ("doux", "douce", "doux", "douces"),
    "las": ("las", "lasse", "las", "lasses"),
    "gros": ("gros", "grosse", "gros", "grosses"),
    "tout": ("tout", "toute", "tous", "toutes"),
    "public": ("public", "publique", "publics", "publiques"),
    "franc": ("franc", "franche", "francs", "franches"),
    "sec": ("sec", "sèche", "secs", "sèches"),
    "grec": ("grec", "grecque", "grecs", "grecques"),
    "turc": ("turc", "turque", "turcs", "turques"),
    "bref": ("bref", "brève", "brefs", "brèves"),
    "inquiet": ("inquiet", "inquiète", "inquiets", "inquiètes"),
    "secret": ("secret", "secrète", "secrets", "secrètes"),
    "favori": ("favori", "favorite", "favoris", "favorites"),
    "jaloux": ("jaloux", "jalouse", "jaloux", "jalouses"),
    "cher": ("cher", "chère", "chers", "chères"),
    "fier": ("fier", "fière", "fiers", "fières"),
    "mûr": ("mûr", "mûre", "mûrs", "mûres"),
    "nul": ("nul", "nulle", "nuls", "nulles"),
    "naïf": ("naïf", "naïve", "naïfs", "naïves"),
    "bon": ("bon", "bonne", "bons", "bonnes"),
}
ADJ_AL_S = {"banal", "fatal", "final", "natal", "naval"}

# Spurious lemmas produced by the parser on the fixtures.
FIXTURE_ADJ_DENY = {"financent", "contrôlent", "charger", "xii", "confèrerer", "reste", "invite"}

EPICENE_NOUNS = {
    "juge", "ministre", "bénévole", "membre", "diplomate", "élève", "collègue", "adulte",
    "jeune", "responsable", "fonctionnaire", "stagiaire", "libraire", "secrétaire",
    "propriétaire", "actionnaire", "volontaire", "partenaire", "sociétaire", "interprète",
    "interne", "novice", "notaire", "universitaire", "prolétaire", "aristocrate",
    "bureaucrate", "technocrate", "ploutocrate", "oligarque", "monarque", "légionnaire",
    "commissaire", "militaire", "arbitre", "notable", "noble", "rebelle", "garde", "cadre",
    "mécène", "ancêtre", "apôtre", "catholique", "gendarme", "parent",
}

DETERMINERS = [
    # surface, lemma, gender, number
    ("le", "le", "m", "s"), ("la", "le", "f", "s"), ("les", "le", "", "p"),
    ("un", "un", "m", "s"), ("une", "un", "f", "s"), ("des", "un", "", "p"),
    ("du", "du", "m", "s"), ("au", "au", "m", "s"), ("aux", "au", "", "p"),
    ("ce", "ce", "m", "s"), ("cette", "ce", "f", "s"), ("ces", "ce", "", "p"),
    ("son", "son", "m", "s"), ("sa", "son", "f", "s"), ("ses", "son", "", "p"),
    ("leur", "leur", "", "s"), ("leurs", "leur", "", "p"),
    ("mon", "mon", "m", "s"), ("ma", "mon", "f", "s"), ("mes", "mon", "", "p"),
    ("ton", "ton", "m", "s"), ("ta", "ton", "f", "s"), ("tes", "ton", "", "p"),
    ("notre", "notre", "", "s"), ("nos", "notre", "", "p"),
    ("votre", "votre", "", "s"), ("vos", "votre", "", "p"),
    ("quelque", "quelque", "", "s"), ("quelques", "quelque", "", "p"),
    ("plusieurs", "plusieurs", "", "p"), ("chaque", "chaque", "", "s"),
]

PRONOUNS = [
    # surface, lemma, gender, number, person
    ("il", "il", "m", "s", "3"), ("elle", "il", "f", "s", "3"),
    ("ils", "il", "m", "p", "3"), ("elles", "il", "f", "p", "3"),
    ("le", "le", "m", "s", "3"), ("la", "le", "f", "s", "3"), ("les", "le", "", "p", "3"),
    ("lui", "lui", "", "s", "3"), ("leur", "lui", "", "p", "3"),
    ("eux", "eux", "m", "p", "3"),
    ("je", "je", "", "s", "1"), ("tu", "tu", "", "s", "2"),
    ("nous", "nous", "", "p", "1"), ("vous", "vous", "", "p", "2"),
]

TENSES = [
    ("indicatif", "présent", "P"), ("indicatif", "imparfait", "I"),
    ("indicatif", "passé-simple", "J"), ("indicatif", "futur-simple", "F"),
    ("conditionnel", "présent", "C"), ("subjonctif", "présent", "S"),
    ("subjonctif", "imparfait", "T"), ("imperatif", "imperatif-présent", "Y"),
]
SUBJECTS = ("je ", "j'", "tu ", "il ", "nous ", "vous ", "ils ")


def strip_subject(s):
    for p in ("que ", "qu'"):
        if s.startswith(p):
            s = s[len(p):]
    for p in SUBJECTS:
        if s.startswith(p):
            return s[len(p):]
    return None


def conjugate(conj, lemma):
    d = json.loads(str(conj.conjugate(lemma)))
    if d["verb"].get("predicted"):
        return []
    moods = d["moods"]
    rows = []
    for mood, tense, code in TENSES:
        for e in moods.get(mood, {}).get(tense, []):
            if e.get("pr") in ("elle", "elles", "on"):
                continue
            form = e["c"][0]
            if mood != "imperatif":
                form = strip_subject(form)
                if form is None:
                    continue
            rows.append((form, lemma, "V", "", e["n"], e["p"], "fin", code))
    part = moods.get("participe", {})
    for e in part.get("participe-passé", []):
        rows.append((e["c"][0], lemma, "V", e.get("g", ""), e.get("n", ""), "", "ppart", "K"))
    for e in part.get("participe-présent", []):
        rows.append((e["c"][0], lemma, "V", "", "", "", "ppres", "G"))
    rows.append((lemma, lemma, "V", "", "", "", "inf", "W"))
    return rows


def adj_forms(m):
    if m in ADJ_IRREGULAR:
        return ADJ_IRREGULAR[m]
    if m.endswith("e"):
        return (m, m, m + "s", m + "s")
    if m.endswith("eux"):
        f = m[:-1] + "se"
    elif m.endswith("f"):
        f = m[:-1] + "ve"
    elif m.endswith("er"):
        f = m[:-2] + "ère"
    elif m.endswith(("el", "eil", "en", "on", "et")):
        f = m + m[-1] + "e"
    else:
        f = m + "e"
    if m.endswith(("s", "x")):
        mp = m
    elif m.endswith("eau"):
        mp = m + "x"
    elif m.endswith("al") and m not in ADJ_AL_S:
        mp = m[:-2] + "aux"
    else:
        mp = m + "s"
    return (m, f, mp, f + "s")


def noun_plural(s):
    if "-" in s or "'" in s or " " in s:
        return None
    if s.endswith(("s", "x", "z")):
        return s
    if s.endswith(("eau", "au", "eu")):
        return s + "x"
    if s.endswith("al") and s not in {"bal", "carnaval", "festival", "récital"}:
        return s[:-2] + "aux"
    return s + "s"


def compatible(a, b):
    return a == "" or b == "" or a == b


def inflect(index, lemma, feats):
    best = None
    for surface, f in index.get(lemma, []):
        if f[0] != feats[0]:
            continue
        if all(compatible(x, y) for x, y in zip(f[1:], feats[1:])):
            if best is None or (len(surface.encode()), surface) < (len(best.encode()), best):
                best = surface
    return best


def prune(rows):
    # Drop rows that would not survive analyze -> inflect; repeat until stable.
    while True:
        index = {}
        for r in rows:
            index.setdefault(r[1], []).append((r[0], r[2:]))
        bad = [r for r in rows if inflect(index, r[1], r[2:]) != r[0]]
        if not bad:
            return rows
        for r in bad:
            print("drop", "\t".join(r), file=sys.stderr)
        bads = set(bad)
        rows = [r for r in rows if r not in bads]


def main():
    dict_path, fixtures, out_path = sys.argv[1:4]
    from verbecc import CompleteConjugator

    verbs, adjs = set(VERBS), set(ADJECTIVES)
    fixture_nouns = set()
    for path in glob.glob(os.path.join(fixtures, "*.conllu")):
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                cols = line.rstrip("\n").split("\t")
                if len(cols) != 10 or not cols[0].isdigit():
                    continue
                lemma, upos, feats = cols[2].lower(), cols[3], cols[5]
                if upos in ("VERB", "AUX") and lemma.endswith(("er", "ir", "re", "oir")):
                    verbs.add(lemma)
                elif upos == "ADJ" and lemma not in FIXTURE_ADJ_DENY and not lemma.endswith(("er", "ir")):
                    adjs.add(lemma)
                elif upos == "NOUN" and "Gender=" in feats and lemma.isalpha():
                    g = "f" if "Gender=Fem" in feats else "m"
                    fixture_nouns.add((lemma, g))

    rows = set()
    conj = CompleteConjugator(lang="fr")
    for v in sorted(verbs):
        rows.update(conjugate(conj, v))
    for a in sorted(adjs):
        ms, fs, mp, fp = adj_forms(a)
        rows.update({(ms, a, "A", "m", "s", "", "", ""), (fs, a, "A", "f", "s", "", "", ""),
                     (mp, a, "A", "m", "p", "", "", ""), (fp, a, "A", "f", "p", "", "", "")})

    with open(dict_path, encoding="utf-8") as fh:
        entries = list(csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE))
    nouns = {}
    for e in entries:
        lemma = e["member_lemma"]
        g = "" if lemma in EPICENE_NOUNS or lemma.endswith(("iste", "phone")) else "m"
        nouns[(lemma, g)] = e["member_plural"]
        nouns.setdefault((e["collective"], e["cn_gender"]), noun_plural(e["collective"]))
    for lemma, g in fixture_nouns:
        nouns.setdefault((lemma, g), noun_plural(lemma))
    for (lemma, g), plural in nouns.items():
        rows.add((lemma, lemma, "N", g, "s", "", "", ""))
        if plural:
            rows.add((plural, lemma, "N", g, "p", "", "", ""))

    for s, l, g, n in DETERMINERS:
        rows.add((s, l, "DET", g, n, "", "", ""))
    for s, l, g, n, p in PRONOUNS:
        rows.add((s, l, "PRO", g, n, p, "", ""))

    order = {c: i for i, c in enumerate("PIJFCSTYKGW")}
    rows = sorted(rows, key=lambda r: (r[1], r[2], order.get(r[7], -1), r[5], r[4], r[3], r[0]))
    rows = prune(rows)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("surface\tlemma\tpos\tgender\tnumber\tperson\tverbform\ttense_mood\n")
        for r in rows:
            fh.write("\t".join(r) + "\n")
    print(f"{len(rows)} rows -> {out_path}", file=sys.stderr)


if __name__ == "__main__":
    main()
