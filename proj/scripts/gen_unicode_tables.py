#!/usr/bin/env python3
"""Regenerate include/so/unicode_tables.hpp from Python's unicodedata.

Tokenization treats maximal runs of letters/digits as tokens; everything
else is a separator.  Letters are code points where str.isalpha() holds,
digits where str.isdigit() holds.  Lowercasing is the Unicode simple
(1:1) mapping: the full mapping where it stays a single code point,
identity otherwise, with U+0130 special-cased to U+0069.
"""

import sys
from datetime import date

MAX_CP = 0x10FFFF


def is_word_cp(cp):
    if 0xD800 <= cp <= 0xDFFF:
        return False
    ch = chr(cp)
    return ch.isalpha() or ch.isdigit()


def simple_lower(cp):
    if cp == 0x0130:  # LATIN CAPITAL LETTER I WITH DOT ABOVE
        return 0x0069
    low = chr(cp).lower()
    if len(low) == 1 and ord(low) != cp:
        return ord(low)
    return cp


def ranges(pred):
    out = []
    start = None
    for cp in range(MAX_CP + 1):
        if pred(cp):
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP))
    return out


def main(path):
    word_ranges = ranges(is_word_cp)
    lower_map = [(cp, simple_lower(cp))
                 for cp in range(MAX_CP + 1)
                 if is_word_cp(cp) and simple_lower(cp) != cp]

    with open(path, "w") as f:
        w = f.write
        w("// Generated by scripts/gen_unicode_tables.py on %s -- do not edit.\n"
          % date.today().isoformat())
        w("#pragma once\n\n")
        w("#include <cstdint>\n\n")
        w("namespace so::detail {\n\n")
        w("struct CpRange { char32_t first; char32_t last; };\n")
        w("struct CpPair { char32_t from; char32_t to; };\n\n")
        w("// Code points that count as letters or digits (%d ranges).\n"
          % len(word_ranges))
        w("inline constexpr CpRange kWordRanges[] = {\n")
        for i, (a, b) in enumerate(word_ranges):
            w("    {0x%X, 0x%X},\n" % (a, b))
        w("};\n\n")
        w("// Simple lowercase mappings that differ from identity (%d entries).\n"
          % len(lower_map))
        w("inline constexpr CpPair kLowerMap[] = {\n")
        for cp, lo in lower_map:
            w("    {0x%X, 0x%X},\n" % (cp, lo))
        w("};\n\n")
        w("}  // namespace so::detail\n")

    print("wrote %s: %d word ranges, %d lowercase pairs"
          % (path, len(word_ranges), len(lower_map)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "include/so/unicode_tables.hpp")
