#!/usr/bin/env python3
"""Generate the bundled syllable-counting hyphenation pattern files.

The pattern sets mark one break per vowel-group transition (a break before
every vowel that follows a consonant) and then suppress the transitions that
do not start a spoken syllable: word-initial onsets, silent English endings
(-e, -es after non-sibilants, -ed outside t/d), French mute finals, and
glide sequences. Syllabic endings that the base rule misses (-ble, -ing,
hiatus vowel pairs) get explicit break patterns.

Output goes to src/cltseval/data/hyphen_en.pat and hyphen_fr.pat. Rerun after
editing the rule tables below; the engine itself never changes.
"""

from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "cltseval" / "data"

EN_VOWELS = "aeiouy"
EN_CONS = "bcdfghjklmnpqrstvwxyz"

FR_VOWELS = "aeiouyàâéèêëîïôùûüœ"
FR_CONS = "bcdfghjklmnpqrstvwxzç"


def english() -> set[str]:
    patterns: set[str] = set()
    # one break before every vowel that follows a consonant
    for c in EN_CONS:
        for v in EN_VOWELS:
            patterns.add(f"{c}1{v}")
    # the first vowel of the word does not open a new piece
    for v in EN_VOWELS:
        for c1 in EN_CONS:
            patterns.add(f".{c1}2{v}")
            for c2 in EN_CONS:
                patterns.add(f".{c1}{c2}2{v}")
                patterns.add(f".s{c1}{c2}2{v}")
        for digraph in ("th", "ch", "ph", "wh"):
            for c2 in EN_CONS:
                patterns.add(f".{digraph}{c2}2{v}")
    # silent endings
    for c in EN_CONS:
        patterns.add(f"{c}2e.")
    for c in "bdfklmnprtvw":          # -es stays silent except after sibilants
        patterns.add(f"{c}2es.")
    for c in EN_CONS:
        if c not in "td":             # -ed is syllabic only after t/d
            patterns.add(f"{c}2ed.")
    # syllabic -le ("table", "little"), also in the plural
    for c in "bcdfgkpstz":
        patterns.add(f"1{c}le.")
        patterns.add(f"1{c}les.")
    # hiatus vowel pairs that open a syllable
    patterns.update({"i1o", "i1a", "e1o", "u1a"})
    for v in "aeou":
        patterns.add(f"{v}1ing.")
    # ...except inside glides and -tion/-sion families
    patterns.update({"ti2o", "si2o", "ci2o", "gi2o", "xi2o", "ni2o",
                     "ti2a", "ci2a", "i2age.", "ge2o"})
    for v in "aeio":
        patterns.add(f"qu2{v}")
        patterns.add(f"gu2{v}")
    return patterns


def french() -> set[str]:
    patterns: set[str] = set()
    for c in FR_CONS:
        for v in FR_VOWELS:
            patterns.add(f"{c}1{v}")
    for v in FR_VOWELS:
        for c1 in FR_CONS:
            patterns.add(f".{c1}2{v}")
            for c2 in FR_CONS:
                patterns.add(f".{c1}{c2}2{v}")
                patterns.add(f".s{c1}{c2}2{v}")
        for c1 in "cpt":              # chr-, phr-, thr- onsets
            for c2 in FR_CONS:
                patterns.add(f".{c1}h{c2}2{v}")
    # mute endings
    for c in FR_CONS:
        patterns.add(f"{c}2e.")
        patterns.add(f"{c}2es.")
    patterns.update({"g2ue.", "q2ue.", "g2ues.", "q2ues."})
    # hiatus: accented vowels and tremas open their own syllable
    for v in "aeiouéèà":
        patterns.add(f"é1{v}")
    for v in "aeiouy":
        for acc in "éèê":
            patterns.add(f"{v}1{acc}")
    for v in "aeiouyéè":
        for trema in "ïëü":
            patterns.add(f"{v}1{trema}")
    return patterns


def write(path: Path, patterns: set[str], label: str) -> None:
    lines = [f"% syllable-counting hyphenation patterns ({label})",
             "% generated by scripts/gen_hyphen_patterns.py"]
    lines.extend(sorted(patterns))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(patterns)} patterns to {path}")


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    write(OUT_DIR / "hyphen_en.pat", english(), "English")
    write(OUT_DIR / "hyphen_fr.pat", french(), "French")


if __name__ == "__main__":
    main()
