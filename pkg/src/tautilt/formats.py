"""Line-oriented algebra files and canonical JSON for modules.

Algebra files look like::

    # preprojective algebra of type A3
    name: A3-preprojective
    field: Q
    vertices: 1 2 3
    arrow a1: 1 -> 2
    relation: a1*b2
    relation: a2*b1 - b2*a1

Every relation is a combination of parallel paths of one common length with
integer coefficients; paths compose left to right.
"""

from __future__ import annotations

import re
from fractions import Fraction
from importlib import resources
from pathlib import Path as FsPath
from typing import List, Optional, Union

from .algebra import DEFAULT_LENGTH_CAP, AlgebraError, Arrow, BoundQuiverAlgebra, Quiver, Relation
from .linalg import QQ, Field, field_from_spec

BUNDLED = ("3d", "3e", "36", "61", "kronecker", "a2", "semisimple2", "rad2zero")


class AlgebraParseError(AlgebraError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__("line %d: %s" % (line, message) if line is not None else message)


_ARROW = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?([A-Za-z_][\w']*(?:\s*\*\s*[A-Za-z_][\w']*)*)\s*")


def _parse_relation(text: str, lineno: int) -> Relation:
    pos = 0
    terms = []
    text = text.strip()
    if not text:
        raise AlgebraParseError("empty relation", lineno)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraParseError("cannot parse relation near %r" % text[pos:], lineno)
        sign, coeff, word = m.groups()
        if terms and sign is None:
            raise AlgebraParseError("missing + or - between terms near %r" % text[pos:], lineno)
        c = Fraction(int(coeff)) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        path = tuple(x.strip() for x in word.split("*"))
        terms.append((c, path))
        pos = m.end()
    return Relation(tuple(terms))


def parse_algebra(text: str, field: Optional[Field] = None, length_cap: int = DEFAULT_LENGTH_CAP,
                  name: str = "") -> BoundQuiverAlgebra:
    """Parse the algebra file format; ``field`` overrides the file's ``field:`` line."""
    file_field = None
    vertices = None
    arrows: List[Arrow] = []
    relations: List[Relation] = []
    rel_lines: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            name = name or line[5:].strip()
        elif line.startswith("field:"):
            try:
                file_field = field_from_spec(line[6:])
            except ValueError as e:
                raise AlgebraParseError(str(e), lineno)
        elif line.startswith("vertices:"):
            if vertices is not None:
                raise AlgebraParseError("vertices declared twice", lineno)
            vertices = line[9:].split()
            if not vertices:
                raise AlgebraParseError("no vertices listed", lineno)
        elif line.startswith("arrow"):
            m = _ARROW.match(line)
            if not m:
                raise AlgebraParseError("expected 'arrow <label>: <source> -> <target>'", lineno)
            if vertices is None:
                raise AlgebraParseError("arrow declared before vertices", lineno)
            label, s, t = m.groups()
            for v in (s, t):
                if v not in vertices:
                    raise AlgebraParseError("arrow %s uses undeclared vertex %s" % (label, v), lineno)
            if any(a.label == label for a in arrows):
                raise AlgebraParseError("duplicate arrow %s" % label, lineno)
            arrows.append(Arrow(label, s, t))
        elif line.startswith("relation:"):
            relations.append(_parse_relation(line[9:], lineno))
            rel_lines.append(lineno)
        else:
            raise AlgebraParseError("unrecognised line %r" % line, lineno)
    if vertices is None:
        raise AlgebraParseError("missing 'vertices:' line")
    try:
        quiver = Quiver(vertices, arrows)
    except AlgebraError as e:
        raise AlgebraParseError(str(e))
    from .algebra import _check_relation
    for rel, lineno in zip(relations, rel_lines):
        try:
            _check_relation(quiver, rel)
        except AlgebraError as e:
            raise AlgebraParseError(str(e), lineno)
    return BoundQuiverAlgebra(quiver, relations, field or file_field or QQ, length_cap, name=name)


def format_algebra(algebra: BoundQuiverAlgebra) -> str:
    lines = []
    if algebra.name:
        lines.append("name: %s" % algebra.name)
    f = algebra.field
    lines.append("field: " + ("Q" if f.characteristic == 0 else "F %d" % f.characteristic))
    lines.append("vertices: " + " ".join(algebra.quiver.vertices))
    for a in algebra.quiver.arrows:
        lines.append("arrow %s: %s -> %s" % (a.label, a.source, a.target))
    for r in algebra.relations:
        lines.append("relation: %s" % r)
    return "\n".join(lines) + "\n"


def bundled_path(name: str) -> FsPath:
    stem = FsPath(name).name
    if stem.endswith(".alg"):
        stem = stem[:-4]
    if stem not in BUNDLED:
        raise FileNotFoundError("no bundled algebra named %r (have: %s)" % (name, ", ".join(BUNDLED)))
    return FsPath(str(resources.files("tautilt") / "data" / (stem + ".alg")))


def load_algebra(source: Union[str, FsPath], field: Optional[Field] = None,
                 length_cap: int = DEFAULT_LENGTH_CAP) -> BoundQuiverAlgebra:
    """Load an algebra from a file path, falling back to the bundled examples by name."""
    p = FsPath(source)
    if not p.exists():
        p = bundled_path(str(source))
    return parse_algebra(p.read_text(encoding="utf-8"), field=field, length_cap=length_cap)


def bundled(name: str, field: Optional[Field] = None) -> BoundQuiverAlgebra:
    return parse_algebra(bundled_path(name).read_text(encoding="utf-8"), field=field)
