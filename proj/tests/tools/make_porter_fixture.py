"""Freezes reference Porter stems for the unit tests.

Words are the lowercase alphabetic tokens of the given text files plus a
list of suffix-heavy words. Stems come from NLTK's implementation of the
reference algorithm (MARTIN_EXTENSIONS mode).

usage: make_porter_fixture.py OUT TEXT...
"""
import re
import sys

from nltk.stem.porter import PorterStemmer

EXTRA = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization
predication operator feudalism decisiveness hopefulness callousness formaliti
sensitiviti sensibiliti triplicate formative formalize electriciti electrical
hopeful goodness revival allowance inference airliner gyroscopic adjustable
defensible irritant replacement adjustment dependent adoption homologou
communism activate angulariti homologous effective bowdlerize probate rate
cease controll roll generalizations oscillators running runs runner
nationalization archaeology apology logical biology knightly hopelessly
agreement sensibly ably enabling atomic ization izations
""".split()


def main():
    out, *paths = sys.argv[1:]
    words = set(EXTRA)
    for path in paths:
        with open(path, encoding="utf-8") as f:
            words.update(w for w in re.findall(r"[a-z]+", f.read().lower()))
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    with open(out, "w", encoding="utf-8") as f:
        for w in sorted(words):
            f.write(f"{w},{stemmer.stem(w, to_lowercase=False)}\n")


if __name__ == "__main__":
    main()
