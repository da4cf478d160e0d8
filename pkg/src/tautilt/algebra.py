"""Bound quiver algebras KQ/I with I generated by length-homogeneous relations.

Paths compose left to right: ``a1*a2`` traverses ``a1`` and then ``a2`` and
requires ``target(a1) == source(a2)``.  The residue basis is computed one
path length at a time; at each length the relation consequences are reduced
to row echelon form with lexicographically larger paths eliminated first, so
the surviving basis paths are the lexicographically smallest ones.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .linalg import QQ, Field, Matrix, ModP, _rref_rows

DEFAULT_LENGTH_CAP = 30


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


class Quiver:
    """Finite quiver with labelled vertices and arrows."""

    def __init__(self, vertices: Sequence, arrows: Iterable):
        self.vertices = tuple(str(v) for v in vertices)
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arrs.append(a)
            else:
                label, s, t = a
                arrs.append(Arrow(str(label), str(s), str(t)))
        self.arrows = tuple(arrs)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex labels")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate arrow labels")
        if set(labels) & set(self.vertices):
            raise AlgebraError("arrow labels must differ from vertex labels")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        for a in self.arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise AlgebraError("arrow %s has an undeclared endpoint" % a.label)
        self.arrow_index = {a.label: i for i, a in enumerate(self.arrows)}
        self.src = tuple(self.vertex_index[a.source] for a in self.arrows)
        self.tgt = tuple(self.vertex_index[a.target] for a in self.arrows)

    def __len__(self):
        return len(self.vertices)

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.label, a.target, a.source) for a in self.arrows])

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return "Quiver(%s; %s)" % (" ".join(self.vertices),
                                   ", ".join("%s:%s->%s" % (a.label, a.source, a.target) for a in self.arrows))


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths of one common length >= 2."""

    terms: Tuple[Tuple[Fraction, Tuple[str, ...]], ...]

    @classmethod
    def of(cls, *terms) -> "Relation":
        """``Relation.of(("a1", "a2"))`` or ``Relation.of((1, ("b1", "a2")), (-1, ("b2", "a1")))``."""
        out = []
        for t in terms:
            if isinstance(t, tuple) and len(t) == 2 and not isinstance(t[0], str):
                c, p = t
            else:
                c, p = 1, t
            if isinstance(p, str):
                p = tuple(p.split("*"))
            out.append((c if isinstance(c, (Fraction, ModP)) else Fraction(c), tuple(p)))
        return cls(tuple(out))

    def reversed(self) -> "Relation":
        return Relation(tuple((c, tuple(reversed(p))) for c, p in self.terms))

    @property
    def length(self):
        return len(self.terms[0][1]) if self.terms else 0

    def __str__(self):
        parts = []
        for c, p in self.terms:
            word = "*".join(p)
            if c == 1:
                parts.append("+ " + word)
            elif c == -1:
                parts.append("- " + word)
            elif c < 0:
                parts.append("- %s*%s" % (-c, word))
            else:
                parts.append("+ %s*%s" % (c, word))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:] if s.startswith("- ") else s


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: Tuple[int, ...]

    @property
    def degree(self):
        return len(self.arrows)


def _check_relation(quiver: Quiver, rel: Relation):
    if not rel.terms:
        raise AlgebraError("empty relation")
    lengths = {len(p) for _, p in rel.terms}
    if len(lengths) != 1:
        raise AlgebraError("relation %s is not length-homogeneous" % rel)
    (ell,) = lengths
    if ell < 2:
        raise AlgebraError("relation %s is not admissible: paths must have length >= 2" % rel)
    ends = set()
    for _, p in rel.terms:
        for lab in p:
            if lab not in quiver.arrow_index:
                raise AlgebraError("relation %s uses unknown arrow %s" % (rel, lab))
        idx = [quiver.arrow_index[lab] for lab in p]
        for x, y in zip(idx, idx[1:]):
            if quiver.tgt[x] != quiver.src[y]:
                raise AlgebraError("path %s in relation %s does not compose (left to right)" % ("*".join(p), rel))
        ends.add((quiver.src[idx[0]], quiver.tgt[idx[-1]]))
    if len(ends) != 1:
        raise AlgebraError("relation %s mixes non-parallel paths" % rel)


class BoundQuiverAlgebra:
    """Finite dimensional algebra ``KQ/I`` with its path-residue basis and multiplication.

    Basis elements are ordered by path length, then lexicographically by
    ``(source, arrow labels)``; vertex idempotents come first in vertex order.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation] = (), field: Field = QQ,
                 length_cap: int = DEFAULT_LENGTH_CAP, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.name = name
        self.length_cap = length_cap
        rels = []
        for r in relations:
            _check_relation(quiver, r)
            terms = tuple((c, p) for c, p in r.terms if field(c))
            if terms:
                rels.append(Relation(terms))
        self.relations = tuple(rels)
        self._opposite: Optional[BoundQuiverAlgebra] = None
        self._cache: dict = {}
        self._build_basis()
        self._build_mult_table()
        for r in self.relations:
            if any(self.relation_element(r)):
                raise AlgebraError("relation %s does not vanish (internal error)" % r)

    # -- construction -------------------------------------------------------

    def _build_basis(self):
        Q, F = self.quiver, self.field
        n = len(Q)
        basis: List[Path] = [Path(v, v, ()) for v in range(n)]
        by_degree = [list(range(n))]
        # right_arrow[a] maps basis index b (target(b) == source(a)) to a sparse nf of b*a
        right_arrow: List[Dict[int, Dict[int, object]]] = [dict() for _ in Q.arrows]
        labels = [a.label for a in Q.arrows]
        rel_by_len: Dict[int, List[Relation]] = {}
        for r in self.relations:
            rel_by_len.setdefault(r.length, []).append(r)
        ell = 0
        while True:
            ell += 1
            prev = by_degree[ell - 1]
            words = []
            for b in prev:
                for a in range(len(Q.arrows)):
                    if basis[b].target == Q.src[a]:
                        words.append((b, a))
            if not words:
                break
            if ell > self.length_cap:
                raise AlgebraError("path basis still growing at length %d; relations are not admissible "
                                   "(raise length_cap if this is intended)" % ell)

            def word_labels(w):
                b, a = w
                return (basis[b].source, tuple(labels[x] for x in basis[b].arrows) + (labels[a],))

            words.sort(key=word_labels)
            widx = {w: i for i, w in enumerate(words)}
            # column order: lexicographically largest word first, so pivots land on large words
            ncol = len(words)
            col_of = {i: ncol - 1 - i for i in range(ncol)}
            rows = []
            for d, rels in rel_by_len.items():
                if d > ell:
                    continue
                for rel in rels:
                    first = [Q.arrow_index[x] for x in rel.terms[0][1]]
                    start = Q.src[first[0]]
                    for p in by_degree[ell - d]:
                        if basis[p].target != start:
                            continue
                        row = [F.zero] * ncol
                        nonzero = False
                        for c, path in rel.terms:
                            idx = [Q.arrow_index[x] for x in path]
                            vec = {p: F.one}
                            for a in idx[:-1]:
                                vec = _right_mult_sparse(vec, right_arrow[a], F)
                            last = idx[-1]
                            cf = F(c)
                            for b, x in vec.items():
                                w = widx.get((b, last))
                                if w is not None:
                                    row[col_of[w]] = row[col_of[w]] + cf * x
                                    nonzero = True
                        if nonzero and any(row):
                            rows.append(row)
            pivots = _rref_rows(rows, ncol) if rows else []
            pivot_words = {ncol - 1 - c: i for i, c in enumerate(pivots)}
            new_basis = []
            new_index = {}
            for i, w in enumerate(words):
                if i not in pivot_words:
                    b, a = w
                    path = Path(basis[b].source, Q.tgt[a], basis[b].arrows + (a,))
                    new_index[i] = len(basis) + len(new_basis)
                    new_basis.append(path)
            for i, w in enumerate(words):
                b, a = w
                if i in new_index:
                    nf = {new_index[i]: F.one}
                else:
                    row = rows[pivot_words[i]]
                    nf = {}
                    for j, k in new_index.items():
                        x = row[col_of[j]]
                        if x:
                            nf[k] = -x
                right_arrow[a][b] = nf
            if not new_basis:
                break
            basis.extend(new_basis)
            by_degree.append(list(range(len(basis) - len(new_basis), len(basis))))
        self.basis: Tuple[Path, ...] = tuple(basis)
        self._by_degree = by_degree
        self._right_arrow = right_arrow
        self.dimension = len(basis)
        self.nilpotency_degree = len(by_degree) - 1
        self.basis_index = {(p.source, p.arrows): i for i, p in enumerate(basis)}

    def _build_mult_table(self):
        F = self.field
        dim = self.dimension
        table: List[List[Dict[int, object]]] = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, x in enumerate(self.basis):
            for j, y in enumerate(self.basis):
                if x.target != y.source:
                    continue
                vec = {i: F.one}
                for a in y.arrows:
                    vec = _right_mult_sparse(vec, self._right_arrow[a], F)
                table[i][j] = vec
        self._mult = table

    # -- elements -------------------------------------------------------------

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def n_vertices(self):
        return len(self.quiver)

    def zero_element(self):
        return (self.field.zero,) * self.dimension

    def basis_element(self, i: int):
        v = [self.field.zero] * self.dimension
        v[i] = self.field.one
        return tuple(v)

    def idempotent(self, v: int):
        return self.basis_element(v)

    def path_element(self, path: Union[str, Sequence[str]], start: Optional[int] = None):
        """Residue of an arbitrary path given by arrow labels (or a vertex label for a trivial path)."""
        Q, F = self.quiver, self.field
        if isinstance(path, str):
            if path in Q.vertex_index:
                return self.idempotent(Q.vertex_index[path])
            path = path.split("*")
        idx = [Q.arrow_index[x] for x in path]
        if not idx:
            if start is None:
                raise AlgebraError("empty path needs a start vertex")
            return self.idempotent(start)
        for x, y in zip(idx, idx[1:]):
            if Q.tgt[x] != Q.src[y]:
                return self.zero_element()
        vec = {Q.src[idx[0]]: F.one}
        for a in idx:
            vec = _right_mult_sparse(vec, self._right_arrow[a], F)
        return self._dense(vec)

    def relation_element(self, rel: Relation):
        out = [self.field.zero] * self.dimension
        for c, p in rel.terms:
            v = self.path_element(list(p))
            cf = self.field(c)
            for i, x in enumerate(v):
                if x:
                    out[i] = out[i] + cf * x
        return tuple(out)

    def _dense(self, sparse):
        v = [self.field.zero] * self.dimension
        for k, x in sparse.items():
            v[k] = x
        return tuple(v)

    def multiply(self, x, y):
        F = self.field
        out = [F.zero] * self.dimension
        xs = [(i, c) for i, c in enumerate(x) if c]
        ys = [(j, c) for j, c in enumerate(y) if c]
        for i, a in xs:
            row = self._mult[i]
            for j, b in ys:
                prod = row[j]
                if prod:
                    ab = a * b
                    for k, c in prod.items():
                        out[k] = out[k] + ab * c
        return tuple(out)

    def basis_product(self, i: int, j: int) -> Dict[int, object]:
        return self._mult[i][j]

    def basis_between(self, i: int, j: int) -> List[int]:
        """Indices of basis paths from vertex ``i`` to vertex ``j`` (a basis of e_i A e_j)."""
        key = ("between", i, j)
        if key not in self._cache:
            self._cache[key] = [k for k, p in enumerate(self.basis) if p.source == i and p.target == j]
        return self._cache[key]

    def basis_from(self, i: int) -> List[int]:
        return [k for k, p in enumerate(self.basis) if p.source == i]

    def basis_to(self, j: int) -> List[int]:
        return [k for k, p in enumerate(self.basis) if p.target == j]

    def degree_of(self, k: int) -> int:
        return self.basis[k].degree

    def path_label(self, k: int) -> str:
        p = self.basis[k]
        if not p.arrows:
            return "e" + self.vertices[p.source]
        return "*".join(self.quiver.arrows[a].label for a in p.arrows)

    def element_str(self, x) -> str:
        parts = []
        for k, c in enumerate(x):
            if c:
                parts.append("%s*%s" % (c, self.path_label(k)) if c != 1 else self.path_label(k))
        return " + ".join(parts) if parts else "0"

    # -- structure ------------------------------------------------------------

    def radical_basis(self) -> List[int]:
        """Basis residues of length >= 1; they span the radical."""
        return [k for k, p in enumerate(self.basis) if p.degree >= 1]

    def is_radical_square_zero(self) -> bool:
        return self.nilpotency_degree <= 1

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            op = BoundQuiverAlgebra(self.quiver.reversed(), [r.reversed() for r in self.relations],
                                    self.field, self.length_cap,
                                    name=(self.name[:-3] if self.name.endswith("^op") else self.name + "^op"))
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_opposite_matrix(self) -> Matrix:
        """Linear isomorphism A -> A^op sending a path to its reversal, in the two residue bases."""
        key = "to_op"
        if key not in self._cache:
            op = self.opposite()
            cols = []
            for p in self.basis:
                if not p.arrows:
                    cols.append(op.idempotent(p.source))
                else:
                    cols.append(op.path_element([self.quiver.arrows[a].label for a in reversed(p.arrows)]))
            self._cache[key] = Matrix.from_columns(self.field, cols, self.dimension)
        return self._cache[key]

    def to_opposite(self, x):
        return self.to_opposite_matrix().apply(x)

    @property
    def key(self) -> str:
        """Content hash of the presentation; stable across runs."""
        if "key" not in self._cache:
            self._cache["key"] = hashlib.sha256(self.presentation_text().encode()).hexdigest()[:16]
        return self._cache["key"]

    def presentation_text(self) -> str:
        from .formats import format_algebra
        return format_algebra(self)

    def quotient_by_idempotent(self, vertices_to_kill: Iterable) -> "BoundQuiverAlgebra":
        kill = {self._vertex_label(v) for v in vertices_to_kill}
        Q = self.quiver
        verts = [v for v in Q.vertices if v not in kill]
        arrows = [a for a in Q.arrows if a.source not in kill and a.target not in kill]
        alive = {a.label for a in arrows}
        rels = []
        for r in self.relations:
            terms = tuple((c, p) for c, p in r.terms if all(x in alive for x in p))
            if terms:
                rels.append(Relation(terms))
        name = "%s/(%s)" % (self.name, ",".join("e" + v for v in sorted(kill))) if kill else self.name
        return BoundQuiverAlgebra(Quiver(verts, arrows), rels, self.field, self.length_cap, name=name)

    def quotient_by_ideal(self, generators: Sequence) -> "BoundQuiverAlgebra":
        """Quotient by the ideal generated by arrows and homogeneous relations of length >= 2."""
        Q = self.quiver
        dead = set()
        extra = []
        for g in generators:
            if isinstance(g, str):
                if g in Q.arrow_index:
                    dead.add(g)
                    continue
                raise AlgebraError("unsupported ideal shape: %r is not an arrow" % g)
            if isinstance(g, Relation):
                if any(len(p) == 0 for _, p in g.terms):
                    raise AlgebraError("unsupported ideal shape: generator contains a vertex idempotent")
                lengths = {len(p) for _, p in g.terms}
                if lengths == {1}:
                    if len(g.terms) == 1:
                        dead.add(g.terms[0][1][0])
                        continue
                    raise AlgebraError("unsupported ideal shape: combination of arrows")
                if len(lengths) != 1:
                    raise AlgebraError("unsupported ideal shape: mixed degree generator")
                _check_relation(Q, g)
                extra.append(g)
                continue
            raise AlgebraError("unsupported ideal shape: %r" % (g,))
        arrows = [a for a in Q.arrows if a.label not in dead]
        rels = []
        for r in list(self.relations) + extra:
            terms = tuple((c, p) for c, p in r.terms if not any(x in dead for x in p))
            if terms:
                rels.append(Relation(terms))
        name = self.name + "/I" if (dead or extra) else self.name
        return BoundQuiverAlgebra(Quiver(Q.vertices, arrows), rels, self.field, self.length_cap, name=name)

    def relation_from_element(self, x) -> Relation:
        """Turn a homogeneous element supported on parallel paths into a :class:`Relation`."""
        terms = []
        ends = set()
        for k, c in enumerate(x):
            if c:
                p = self.basis[k]
                ends.add((p.source, p.target, p.degree))
                terms.append((c, tuple(self.quiver.arrows[a].label for a in p.arrows)))
        if len(ends) != 1:
            raise AlgebraError("unsupported ideal shape: element is not homogeneous between two vertices")
        return Relation(tuple(terms))

    def _vertex_label(self, v) -> str:
        # ints are vertex indices, strings are vertex labels
        if isinstance(v, int) and not isinstance(v, bool):
            return self.quiver.vertices[v]
        v = str(v)
        if v not in self.quiver.vertex_index:
            raise AlgebraError("unknown vertex %s" % v)
        return v

    def vertex(self, v) -> int:
        """Vertex index from a label (or pass an index through)."""
        return self.quiver.vertex_index[self._vertex_label(v)]

    def __repr__(self):
        return "BoundQuiverAlgebra(%s, dim=%d)" % (self.name or repr(self.quiver), self.dimension)


def _right_mult_sparse(vec, table, F):
    out: Dict[int, object] = {}
    for b, x in vec.items():
        img = table.get(b)
        if not img:
            continue
        for k, y in img.items():
            out[k] = out.get(k, F.zero) + x * y
    return {k: v for k, v in out.items() if v}


def build_algebra(quiver: Quiver, relations: Sequence[Relation] = (), field: Field = QQ,
                  length_cap: int = DEFAULT_LENGTH_CAP, name: str = "") -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(quiver, relations, field, length_cap, name)


def opposite(algebra: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return algebra.opposite()


def radical_basis(algebra: BoundQuiverAlgebra) -> List[int]:
    return algebra.radical_basis()


def quotient_by_idempotent(algebra: BoundQuiverAlgebra, vertices_to_kill) -> BoundQuiverAlgebra:
    return algebra.quotient_by_idempotent(vertices_to_kill)


def quotient_by_ideal(algebra: BoundQuiverAlgebra, generators) -> BoundQuiverAlgebra:
    return algebra.quotient_by_ideal(generators)
