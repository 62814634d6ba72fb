#!/usr/bin/env python3
"""Regenerates tests/data/readability_golden.csv.

Independent evaluation of the eleven readability outputs: the counters
(whitespace words, [.!?]-run sentences, alnum characters, vowel-group
syllables with the silent-e rule) and the nine formulas are implemented
here from their definitions, not shared with the C++ code.  The easy-word
set below is hand-curated for exactly the vocabulary the golden texts use;
every other alphabetic word counts as unfamiliar.
"""

import csv
import math
import os

# Words from the golden texts that are on the built-in easy list.  Curated by
# hand when the texts were written; anything outside this set is unfamiliar.
EASY = {
    "a", "about", "after", "again", "all", "and", "animal", "around", "at", "be",
    "bird", "blue", "boat", "book", "boy", "but", "by", "came", "can", "cat",
    "child", "city", "cold", "come", "could", "day", "dog", "down", "each",
    "eat", "every", "eye", "fall", "far", "fast", "fire", "first", "fish",
    "five", "food", "for", "four", "friend", "from", "fun", "funny", "game",
    "girl", "go", "good", "great", "green", "happy", "hard", "he", "help",
    "her", "here", "high", "his", "home", "house", "how", "i", "if", "in",
    "into", "is", "it", "its", "jump", "just", "keep", "kind", "know",
    "large", "last", "late", "light", "like", "little", "live", "long",
    "look", "love", "made", "make", "man", "many", "may", "me", "morning",
    "most", "mother", "much", "must", "my", "near", "never", "new", "nice",
    "night", "no", "not", "now", "of", "off", "old", "on", "one", "only",
    "open", "or", "other", "our", "out", "over", "people", "place", "play",
    "put", "rain", "ran", "read", "red", "ride", "right", "road", "room",
    "run", "sad", "said", "same", "sat", "saw", "say", "school", "sea",
    "see", "she", "short", "show", "sit", "six", "sleep", "small", "so",
    "some", "soon", "start", "stay", "still", "stop", "story", "sun",
    "take", "talk", "tell", "ten", "than", "that", "the", "their", "them",
    "then", "there", "these", "they", "thing", "think", "this", "three",
    "time", "to", "today", "together", "told", "too", "took", "tree", "try",
    "turn", "two", "under", "up", "us", "very", "walk", "want", "warm",
    "was", "water", "way", "we", "well", "went", "were", "what", "when",
    "where", "which", "while", "white", "who", "why", "will", "wind",
    "with", "word", "work", "world", "would", "year", "yes", "you", "young",
    "your",
}

VOWELS = set("aeiouy")


def alpha_core(token):
    return "".join(c.lower() for c in token if c.isalpha() and c.isascii())


def alnum_count(token):
    return sum(1 for c in token if c.isalnum() and c.isascii())


def syllables(token):
    w = alpha_core(token)
    if not w:
        return 0
    groups = 0
    in_group = False
    for c in w:
        if c in VOWELS:
            if not in_group:
                groups += 1
            in_group = True
        else:
            in_group = False
    if groups > 1 and w[-1] == "e" and w[-2] not in VOWELS and w[-2] != "l":
        groups -= 1
    return max(groups, 1)


def sentences(text):
    n = 0
    any_content = False
    i = 0
    while i < len(text):
        c = text[i]
        if not c.isspace():
            any_content = True
        if c in ".!?":
            while i < len(text) and text[i] in ".!?":
                i += 1
            if i == len(text) or text[i].isspace():
                n += 1
        else:
            i += 1
    if n == 0 and any_content:
        n = 1
    return n


def scores(text):
    tokens = text.split()
    W = len(tokens)
    S = sentences(text)
    C = sum(alnum_count(t) for t in tokens)
    Y = sum(syllables(t) for t in tokens)
    PS = sum(1 for t in tokens if syllables(t) >= 3)
    LW = sum(1 for t in tokens if alnum_count(t) > 6)
    DW = sum(1 for t in tokens if alpha_core(t) and alpha_core(t) not in EASY)
    assert W > 0 and S > 0, "golden texts must be scoreable"
    kincaid = 0.39 * (W / S) + 11.8 * (Y / W) - 15.59
    ari = 4.71 * (C / W) + 0.5 * (W / S) - 21.43
    coleman = 0.0588 * (100.0 * C / W) - 0.296 * (100.0 * S / W) - 15.8
    flesch = 206.835 - 1.015 * (W / S) - 84.6 * (Y / W)
    fog = 0.4 * ((W / S) + 100.0 * PS / W)
    smog = 1.0430 * math.sqrt(PS * 30.0 / S) + 3.1291
    lix = W / S + 100.0 * LW / W
    rix = LW / S
    dale = 0.1579 * (100.0 * DW / W) + 0.0496 * (W / S)
    if DW / W > 0.05:
        dale += 3.6365
    return [kincaid, ari, coleman, flesch, fog, smog, lix, rix, dale,
            float(PS), float(DW)]


TEXTS = [
    "The cat sat.",
    "The dog ran far.",
    "A small bird came down to the water and took a fish.",
    "Look at the boat! Can you see it? Yes I can.",
    "Extraordinary circumstances demonstrate unbelievable complications.",
    "The quixotic zephyr vanished.",
    "She went to school today. Her friend was late again yesterday.",
    "One two three four five six.",
    "People together make every city come alive at night.",
    "Why would anybody abbreviate communication unnecessarily?",
    "It is warm here. The sun is high. We walk to the sea.",
    "His mother told a long story about a funny animal.",
    "Fantastic! Simply incredible performances everywhere.",
    "The rain in the morning kept us in the house.",
    "Stop. Think. Go.",
    "Twelve mysterious documents disappeared yesterday afternoon.",
    "I like to read a good book by the fire when the wind is cold.",
    "Understanding complicated terminology requires considerable concentration.",
    "We play a game. She will win it. He cannot stop her now.",
    "The cat and the dog ran down the road to the water and saw a zebra"
    " near the old tree.",
]


def main():
    out_path = os.path.join(os.path.dirname(__file__), "..", "data",
                            "readability_golden.csv")
    with open(out_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["text", "kincaid", "ari", "coleman_liau", "flesch",
                    "gunning_fog", "smog", "lix", "rix", "dale_chall",
                    "polysyllables", "unfamiliar"])
        for text in TEXTS:
            w.writerow([text] + ["%.12f" % v for v in scores(text)])
    print("wrote", out_path)


if __name__ == "__main__":
    main()
