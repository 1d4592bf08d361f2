"""Line-oriented text format for structure-constant algebras.

Grammar (one declaration per line, '#' comments, 1-based indices):

    algebra <name> dim <d>
    basis <l1> <l2> ...
    mul <i> <j> = <coeff>*<k> [+ <coeff>*<k> ...]     # omitted products are 0
    unit = <coeff>*<k> [+ ...]
    augmentation = <basis index>
    preset <preset-name>[:params]

Coefficients are integers or p/q rationals.  A 'preset' line stands alone.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebras import Algebra
from .errors import ParseError
from .presets import algebra_preset

_TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)\*(\d+)$")


def _parse_terms(text, line_no, dim):
    """'c*k + c*k - c*k' -> sparse vector over 0-based indices."""
    norm = text.replace("-", "+-").replace("++-", "+-")
    out = {}
    for chunk in norm.split("+"):
        chunk = chunk.replace(" ", "")
        if not chunk:
            continue
        m = _TERM.match(chunk)
        if m is None:
            raise ParseError(f"bad term '{chunk.strip()}' (expected coeff*index)", line=line_no)
        coeff = Fraction(m.group(1))
        k = int(m.group(2))
        if not 1 <= k <= dim:
            raise ParseError(f"basis index {k} out of range 1..{dim}", line=line_no)
        s = out.get(k - 1, Fraction(0)) + coeff
        if s:
            out[k - 1] = s
        else:
            out.pop(k - 1, None)
    return out


def parse_algebra(text: str) -> Algebra:
    name = None
    dim = None
    labels = None
    mul = {}
    unit = None
    augmentation = None
    saw_table_line = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()

        if head == "preset":
            if saw_table_line:
                raise ParseError("preset line cannot be mixed with table lines", line=line_no)
            if len(tokens) < 2:
                raise ParseError("preset needs a name", line=line_no)
            spec = tokens[1] if len(tokens) == 2 else tokens[1] + ":" + ",".join(tokens[2:])
            try:
                return algebra_preset(spec)
            except ParseError as exc:
                raise ParseError(str(exc), line=line_no) from None

        saw_table_line = True
        if head == "algebra":
            if len(tokens) != 4 or tokens[2].lower() != "dim":
                raise ParseError("expected: algebra <name> dim <d>", line=line_no)
            name = tokens[1]
            try:
                dim = int(tokens[3])
            except ValueError:
                raise ParseError(f"bad dimension '{tokens[3]}'", line=line_no) from None
            if dim < 0:
                raise ParseError("dimension must be >= 0", line=line_no)
        elif head == "basis":
            if dim is None:
                raise ParseError("basis line before algebra line", line=line_no)
            labels = tokens[1:]
            if len(labels) != dim:
                raise ParseError(f"expected {dim} basis labels, got {len(labels)}", line=line_no)
        elif head == "mul":
            if dim is None:
                raise ParseError("mul line before algebra line", line=line_no)
            m = re.match(r"^mul\s+(\d+)\s+(\d+)\s*=\s*(.+)$", line, re.IGNORECASE)
            if m is None:
                raise ParseError("expected: mul <i> <j> = <coeff>*<k> [+ ...]", line=line_no)
            i, j = int(m.group(1)), int(m.group(2))
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise ParseError(f"mul indices ({i},{j}) out of range 1..{dim}", line=line_no)
            vec = _parse_terms(m.group(3), line_no, dim)
            if (i - 1, j - 1) in mul:
                raise ParseError(f"duplicate mul {i} {j}", line=line_no)
            if vec:
                mul[(i - 1, j - 1)] = vec
        elif head == "unit":
            if dim is None:
                raise ParseError("unit line before algebra line", line=line_no)
            m = re.match(r"^unit\s*=\s*(.+)$", line, re.IGNORECASE)
            if m is None:
                raise ParseError("expected: unit = <coeff>*<k> [+ ...]", line=line_no)
            unit = _parse_terms(m.group(1), line_no, dim)
        elif head == "augmentation":
            if dim is None:
                raise ParseError("augmentation line before algebra line", line=line_no)
            m = re.match(r"^augmentation\s*=\s*(\d+)$", line, re.IGNORECASE)
            if m is None:
                raise ParseError("expected: augmentation = <basis index>", line=line_no)
            k = int(m.group(1))
            if not 1 <= k <= dim:
                raise ParseError(f"basis index {k} out of range 1..{dim}", line=line_no)
            augmentation = {k - 1: Fraction(1)}
        else:
            raise ParseError(f"unknown directive '{tokens[0]}'", line=line_no)

    if dim is None:
        raise ParseError("no algebra declaration found", line=1)
    return Algebra(dim, labels or None, mul, unit=unit, augmentation=augmentation, name=name)


def parse_algebra_file(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())
