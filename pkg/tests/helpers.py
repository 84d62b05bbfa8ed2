"""Shared fixtures: spec enumeration and the 21-card worked example."""

from cardtrick.trick_core import TrickSpec


def all_specs(C_max):
    """Every valid (C, n, j) with C <= C_max, by brute force over n."""
    return [
        TrickSpec(C, n, j)
        for C in range(1, C_max + 1)
        for n in range(1, C + 1)
        if C % n == 0
        for j in range(n)
    ]


# The 21 cards as handed to the magician; the 20th is the remembered card.
CLASSIC_DECK = (
    "8D 10D 9H 2C 3D 5S 4C 6C 6H 2D 10C 10H KD JD 9C 8C 3S AC 10S 4S KH".split()
)
CLASSIC_CARD = "4S"

# Deck top-to-bottom after each of the three iterations.
CLASSIC_AFTER = (
    "8D 2C 4C 2D KD 8C 10S 10D 3D 6C 10C JD 3S 4S 9H 5S 6H 10H 9C AC KH".split(),
    "8D 2D 10S 6C 3S 5S 9C 2C KD 10D 10C 4S 6H AC 4C 8C 3D JD 9H 10H KH".split(),
    "8D 6C 9C 10D 6H 8C 9H 10S 5S KD 4S 4C JD KH 2D 3S 2C 10C AC 3D 10H".split(),
)

# Stack tables after each deal, as rows of (stack 1, stack 2, stack 3).
CLASSIC_TABLES = (
    [("8D", "10D", "9H"), ("2C", "3D", "5S"), ("4C", "6C", "6H"), ("2D", "10C", "10H"),
     ("KD", "JD", "9C"), ("8C", "3S", "AC"), ("10S", "4S", "KH")],
    [("8D", "2C", "4C"), ("2D", "KD", "8C"), ("10S", "10D", "3D"), ("6C", "10C", "JD"),
     ("3S", "4S", "9H"), ("5S", "6H", "10H"), ("9C", "AC", "KH")],
    [("8D", "2D", "10S"), ("6C", "3S", "5S"), ("9C", "2C", "KD"), ("10D", "10C", "4S"),
     ("6H", "AC", "4C"), ("8C", "3D", "JD"), ("9H", "10H", "KH")],
)

CLASSIC_CHOSEN = (2, 2, 3)


def to_identities(names):
    """Map card names to their 1-based position in the starting deck."""
    index = {name: i for i, name in enumerate(CLASSIC_DECK, start=1)}
    return [index[name] for name in names]
