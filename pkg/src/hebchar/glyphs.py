"""Built-in 8x6 glyphs for the 52 English letters.

Every glyph touches all four borders of its box, so cropping leaves it
unchanged and the preprocessing pipeline maps it onto itself.  'A' is the
reference extraction used throughout the tests.
"""

import string

ROWS, COLS = 8, 6

LETTERS = tuple(string.ascii_uppercase + string.ascii_lowercase)

_GLYPHS = {
    "A": """
..##..
.#..#.
#....#
#....#
######
#....#
#....#
#....#""",
    "B": """
#####.
#....#
#....#
#####.
#....#
#....#
#....#
#####.""",
    "C": """
.####.
#....#
#.....
#.....
#.....
#.....
#....#
.####.""",
    "D": """
####..
#...#.
#....#
#....#
#....#
#....#
#...#.
####..""",
    "E": """
######
#.....
#.....
#####.
#.....
#.....
#.....
######""",
    "F": """
######
#.....
#.....
#####.
#.....
#.....
#.....
#.....""",
    "G": """
.####.
#....#
#.....
#.....
#..###
#....#
#....#
.####.""",
    "H": """
#....#
#....#
#....#
######
#....#
#....#
#....#
#....#""",
    "I": """
######
..##..
..##..
..##..
..##..
..##..
..##..
######""",
    "J": """
######
....#.
....#.
....#.
....#.
#...#.
#...#.
.###..""",
    "K": """
#....#
#...#.
#..#..
###...
#.#...
#..#..
#...#.
#....#""",
    "L": """
#.....
#.....
#.....
#.....
#.....
#.....
#.....
######""",
    "M": """
#....#
##..##
#.##.#
#.##.#
#....#
#....#
#....#
#....#""",
    "N": """
#....#
##...#
##...#
#.#..#
#..#.#
#...##
#...##
#....#""",
    "O": """
.####.
#....#
#....#
#....#
#....#
#....#
#....#
.####.""",
    "P": """
#####.
#....#
#....#
#....#
#####.
#.....
#.....
#.....""",
    "Q": """
.####.
#....#
#....#
#....#
#....#
#..#.#
#...#.
.###.#""",
    "R": """
#####.
#....#
#....#
#####.
#.#...
#..#..
#...#.
#....#""",
    "S": """
.####.
#....#
#.....
.####.
.....#
.....#
#....#
.####.""",
    "T": """
######
..##..
..##..
..##..
..##..
..##..
..##..
..##..""",
    "U": """
#....#
#....#
#....#
#....#
#....#
#....#
#....#
.####.""",
    "V": """
#....#
#....#
#....#
#....#
.#..#.
.#..#.
..##..
..##..""",
    "W": """
#....#
#....#
#....#
#....#
#.##.#
#.##.#
##..##
#....#""",
    "X": """
#....#
#....#
.#..#.
..##..
..##..
.#..#.
#....#
#....#""",
    "Y": """
#....#
#....#
.#..#.
..##..
..##..
..##..
..##..
..##..""",
    "Z": """
######
.....#
....#.
...#..
..#...
.#....
#.....
######""",
    "a": """
.####.
.....#
.....#
.#####
#....#
#....#
#...##
.###.#""",
    "b": """
#.....
#.....
#.....
#####.
#....#
#....#
#....#
#####.""",
    "c": """
..####
.#....
#.....
#.....
#.....
#.....
.#....
..####""",
    "d": """
.....#
.....#
.....#
.#####
#....#
#....#
#....#
.#####""",
    "e": """
.####.
#....#
#....#
######
#.....
#.....
#....#
.####.""",
    "f": """
..###.
.#...#
.#....
####..
.#....
.#....
.#....
.#....""",
    "g": """
.####.
#....#
#....#
#....#
.#####
.....#
#....#
.####.""",
    "h": """
#.....
#.....
#.....
#.###.
##...#
#....#
#....#
#....#""",
    "i": """
..##..
......
.###..
..##..
..##..
..##..
..##..
######""",
    "j": """
....##
......
...###
....##
....##
#...##
#...##
.####.""",
    "k": """
#.....
#.....
#...#.
#..#..
###...
#.#...
#..#..
#...##""",
    "l": """
###...
..#...
..#...
..#...
..#...
..#...
..#...
..####""",
    "m": """
##.##.
#.#..#
#.#..#
#.#..#
#.#..#
#.#..#
#.#..#
#.#..#""",
    "n": """
#.###.
##...#
#....#
#....#
#....#
#....#
#....#
#....#""",
    "o": """
..##..
.#..#.
#....#
#....#
#....#
#....#
.#..#.
..##..""",
    "p": """
#####.
#....#
#....#
#....#
#....#
#####.
#.....
#.....""",
    "q": """
.#####
#....#
#....#
#....#
.#####
.....#
.....#
.....#""",
    "r": """
#.###.
##...#
#.....
#.....
#.....
#.....
#.....
#.....""",
    "s": """
.#####
#.....
#.....
.####.
.....#
.....#
.....#
#####.""",
    "t": """
.#....
.#....
######
.#....
.#....
.#....
.#...#
..###.""",
    "u": """
#....#
#....#
#....#
#....#
#...##
#..#.#
.##..#
.....#""",
    "v": """
#....#
#....#
.#..#.
.#..#.
.#..#.
..##..
..##..
..##..""",
    "w": """
#....#
#....#
#....#
#.##.#
#.##.#
#.##.#
#.##.#
.#..#.""",
    "x": """
#....#
.#..#.
.#..#.
..##..
..##..
.#..#.
.#..#.
#....#""",
    "y": """
#....#
#....#
#....#
.#####
.....#
.....#
#....#
.####.""",
    "z": """
######
....#.
...#..
..#...
.#....
#.....
#.....
######""",
}


def glyph_rows(label):
    """Return the glyph for `label` as a list of 0/1 row lists."""
    text = _GLYPHS[label].strip().splitlines()
    return [[1 if ch == "#" else 0 for ch in line] for line in text]
