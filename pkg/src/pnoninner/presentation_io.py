"""Text format for presentations.

    # comment
    p 5
    gens 3
    pow 1 = g3^2
    comm 2 1 = g3^4

Words are "1" or "*"-joined factors g<k> / g<k>^<e>; omitted relations are
trivial.  print_presentation emits the normalized form (factors in ascending
index, exponent suffix only when > 1), so parse -> print -> parse is the
identity on normalized text.
"""

from __future__ import annotations

import re

from .pc import PcPresentation, PresentationError


class ParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


_FACTOR = re.compile(r"^g(\d+)(?:\^(\d+))?$")


def _parse_word(text: str, n: int, line_no: int):
    text = text.strip()
    if text == "1":
        return (0,) * n
    out = [0] * n
    for factor in text.split("*"):
        factor = factor.strip()
        m = _FACTOR.match(factor)
        if not m:
            raise ParseError(line_no, f"bad factor {factor!r}")
        k = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        if not 1 <= k <= n:
            raise ParseError(line_no, f"generator g{k} out of range 1..{n}")
        out[k - 1] = (out[k - 1] + e)
    return tuple(out)


def parse_presentation(text: str) -> PcPresentation:
    p = None
    n = None
    power = {}
    comm = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(line_no, "expected 'p <prime>'")
            p = int(parts[1])
        elif parts[0] == "gens":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(line_no, "expected 'gens <n>'")
            n = int(parts[1])
        elif parts[0] == "pow":
            if n is None or p is None:
                raise ParseError(line_no, "'p' and 'gens' must come first")
            m = re.match(r"^pow\s+(\d+)\s*=\s*(.+)$", line)
            if not m:
                raise ParseError(line_no, "expected 'pow <i> = <word>'")
            i = int(m.group(1))
            if not 1 <= i <= n:
                raise ParseError(line_no, f"pow index {i} out of range")
            power[i] = _parse_word(m.group(2), n, line_no)
        elif parts[0] == "comm":
            if n is None or p is None:
                raise ParseError(line_no, "'p' and 'gens' must come first")
            m = re.match(r"^comm\s+(\d+)\s+(\d+)\s*=\s*(.+)$", line)
            if not m:
                raise ParseError(line_no, "expected 'comm <j> <i> = <word>'")
            j, i = int(m.group(1)), int(m.group(2))
            comm[(j, i)] = _parse_word(m.group(3), n, line_no)
        else:
            raise ParseError(line_no, f"unknown directive {parts[0]!r}")
    if p is None:
        raise ParseError(0, "missing 'p' line")
    if n is None:
        raise ParseError(0, "missing 'gens' line")
    try:
        return PcPresentation(p, n, power=power, comm=comm)
    except PresentationError as e:
        raise ParseError(0, str(e)) from e


def _word_str(w) -> str:
    parts = []
    for k, e in enumerate(w, start=1):
        if e:
            parts.append(f"g{k}" if e == 1 else f"g{k}^{e}")
    return "*".join(parts) if parts else "1"


def print_presentation(G: PcPresentation) -> str:
    lines = [f"p {G.p}", f"gens {G.n}"]
    for i in sorted(G.power_rel):
        lines.append(f"pow {i} = {_word_str(G.power_rel[i])}")
    for (j, i) in sorted(G.comm_rel):
        lines.append(f"comm {j} {i} = {_word_str(G.comm_rel[(j, i)])}")
    return "\n".join(lines) + "\n"
