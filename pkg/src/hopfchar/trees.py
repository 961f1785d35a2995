"""Rooted trees, forests and the Connes-Kreimer Hopf structure maps.

Trees are unlabelled and unordered; a tree is stored with its children sorted
by their serialized bracket form, so structural equality is plain equality.
The text format is nested brackets: ``[]`` is the single vertex, ``[[]]`` the
two-vertex chain and ``[[],[]]`` the cherry. A forest is its trees joined by
commas in canonical order; the empty forest (the unit) is written ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Union

from .errors import DomainError, ParseError
from .linear import Element

UNIT_TEXT = "1"


@dataclass(frozen=True, eq=False)
class Tree:
    children: tuple[Tree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(sorted(self.children, key=str)))

    @cached_property
    def _text(self) -> str:
        return "[" + ",".join(c._text for c in self.children) + "]"

    @cached_property
    def order(self) -> int:
        return 1 + sum(c.order for c in self.children)

    @property
    def degree(self) -> int:
        return self.order

    def __str__(self) -> str:
        return self._text

    def __repr__(self) -> str:
        return f"Tree({self._text})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tree) and self._text == other._text

    def __hash__(self) -> int:
        return hash(self._text)

    def __lt__(self, other: Tree) -> bool:
        return (self.order, self._text) < (other.order, other._text)

    def as_forest(self) -> Forest:
        return Forest((self,))

    @classmethod
    def parse(cls, text: str) -> Tree:
        text = text.strip()
        tree, pos = _parse_tree(text, 0)
        if pos != len(text):
            raise ParseError(f"trailing characters in tree {text!r}")
        return tree


def _parse_tree(text: str, pos: int) -> tuple[Tree, int]:
    if pos >= len(text) or text[pos] != "[":
        raise ParseError(f"expected '[' at offset {pos} in {text!r}")
    pos += 1
    children = []
    if pos < len(text) and text[pos] == "]":
        return Tree(), pos + 1
    while True:
        child, pos = _parse_tree(text, pos)
        children.append(child)
        if pos >= len(text):
            raise ParseError(f"unterminated tree {text!r}")
        if text[pos] == ",":
            pos += 1
        elif text[pos] == "]":
            return Tree(tuple(children)), pos + 1
        else:
            raise ParseError(f"unexpected {text[pos]!r} at offset {pos} in {text!r}")


@dataclass(frozen=True, eq=False)
class Forest:
    """Commutative monomial ``t1 * ... * tk`` of trees; ``Forest()`` is the unit."""

    trees: tuple[Tree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(sorted(self.trees, key=str)))

    @cached_property
    def _text(self) -> str:
        return ",".join(str(t) for t in self.trees) if self.trees else UNIT_TEXT

    @cached_property
    def degree(self) -> int:
        return sum(t.order for t in self.trees)

    def __mul__(self, other: Forest) -> Forest:
        if isinstance(other, Tree):
            other = other.as_forest()
        if not isinstance(other, Forest):
            return NotImplemented
        return Forest(self.trees + other.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def is_unit(self) -> bool:
        return not self.trees

    def __str__(self) -> str:
        return self._text

    def __repr__(self) -> str:
        return f"Forest({self._text})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Forest) and self._text == other._text

    def __hash__(self) -> int:
        return hash(("F", self._text))

    def __lt__(self, other: Forest) -> bool:
        return (self.degree, len(self.trees), self._text) < (other.degree, len(other.trees), other._text)

    @classmethod
    def parse(cls, text: str) -> Forest:
        text = text.strip()
        if text == UNIT_TEXT:
            return cls()
        trees = []
        pos = 0
        while pos < len(text):
            tree, pos = _parse_tree(text, pos)
            trees.append(tree)
            if pos < len(text):
                if text[pos] != ",":
                    raise ParseError(f"expected ',' between trees in {text!r}")
                pos += 1
                if pos == len(text):
                    raise ParseError(f"dangling ',' in {text!r}")
        if not trees:
            raise ParseError("empty forest must be written as '1'")
        return cls(tuple(trees))


UNIT = Forest()
BULLET = Tree()

TreeLike = Union[Tree, Forest, Element]


def as_element(x: TreeLike) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Tree):
        return Element.basis(x.as_forest())
    if isinstance(x, Forest):
        return Element.basis(x)
    raise TypeError(f"cannot interpret {x!r} as a rooted-tree Hopf element")


# -- enumeration ------------------------------------------------------------


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (Tree(),)
    return tuple(sorted(Tree(f.trees) for f in _forests(n - 1)))


@lru_cache(maxsize=None)
def _forests(n: int) -> tuple[Forest, ...]:
    if n == 0:
        return (Forest(),)
    # multisets of trees with nonincreasing (order, text) key avoid duplicates
    out = []

    def rec(remaining: int, bound: tuple[int, str] | None, acc: list[Tree]):
        if remaining == 0:
            out.append(Forest(tuple(acc)))
            return
        for k in range(min(remaining, bound[0] if bound else remaining), 0, -1):
            for t in _trees(k):
                key = (t.order, str(t))
                if bound is not None and key > bound:
                    continue
                acc.append(t)
                rec(remaining - k, key, acc)
                acc.pop()

    rec(n, None, [])
    return tuple(sorted(out))


def enumerate_trees(n: int) -> list[Tree]:
    """All rooted trees with exactly ``n`` vertices, in deterministic order."""
    if not isinstance(n, int) or n < 1:
        raise DomainError("trees have at least one vertex (the empty tree is the unit forest)")
    return list(_trees(n))


def enumerate_forests(n: int) -> list[Forest]:
    """All forests (basis monomials) of degree ``n``; degree 0 is the unit."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    return list(_forests(n))


# -- vertex-level view ------------------------------------------------------


def _parents(t: Tree) -> list[int]:
    """Preorder parent array; the root is vertex 0 with parent -1."""
    parents: list[int] = []

    def walk(node: Tree, parent: int):
        me = len(parents)
        parents.append(parent)
        for c in node.children:
            walk(c, me)

    walk(t, -1)
    return parents


def _build(parents: list[int], keep: frozenset[int], root: int) -> Tree:
    kids = [v for v in keep if parents[v] == root]
    return Tree(tuple(_build(parents, keep, k) for k in kids))


def _components(parents: list[int], vertices: frozenset[int], edges: set[tuple[int, int]]) -> Forest:
    """Forest induced on ``vertices`` using only the given (parent, child) edges."""
    roots = [v for v in vertices if parents[v] < 0 or (parents[v], v) not in edges or parents[v] not in vertices]

    def build(v: int) -> Tree:
        return Tree(tuple(build(c) for c in vertices if parents[c] == v and (v, c) in edges))

    return Forest(tuple(build(r) for r in roots))


def _rooted_subsets(parents: list[int]) -> list[frozenset[int]]:
    children: dict[int, list[int]] = {v: [] for v in range(len(parents))}
    for v, p in enumerate(parents):
        if p >= 0:
            children[p].append(v)

    def grow(v: int) -> list[frozenset[int]]:
        acc = [frozenset((v,))]
        for c in children[v]:
            acc = [s | extra for s in acc for extra in [frozenset()] + grow(c)]
        return acc

    return grow(0)


def ordered_subtrees(t: Tree) -> list[tuple[frozenset[int], Forest, Forest]]:
    """Ordered subtrees ``s`` of ``t`` as ``(vertex set, cut forest, kept tree)``.

    Vertices are numbered in preorder with the root as 0. The kept part is the
    forest holding the single tree ``s`` (the unit when ``s`` is empty); the
    cut part is what remains after removing ``s``.
    """
    parents = _parents(t)
    everything = frozenset(range(len(parents)))
    tree_edges = {(p, v) for v, p in enumerate(parents) if p >= 0}
    out = [(frozenset(), t.as_forest(), UNIT)]
    for s in sorted(_rooted_subsets(parents), key=lambda s: (len(s), sorted(s))):
        kept = _build(parents, s, 0).as_forest()
        cut = _components(parents, everything - s, tree_edges)
        out.append((s, cut, kept))
    return out


def partitions(t: Tree) -> list[tuple[frozenset[tuple[int, int]], Forest]]:
    """All edge subsets ``p`` of ``t`` with the forest left after deleting them."""
    parents = _parents(t)
    everything = frozenset(range(len(parents)))
    edges = sorted((p, v) for v, p in enumerate(parents) if p >= 0)
    out = []
    for k in range(len(edges) + 1):
        for removed in combinations(edges, k):
            rest = set(edges) - set(removed)
            out.append((frozenset(removed), _components(parents, everything, rest)))
    return out


# -- Hopf structure maps ----------------------------------------------------


@lru_cache(maxsize=None)
def _tree_coproduct(t: Tree) -> Element:
    return Element(((cut, kept), 1) for _, cut, kept in ordered_subtrees(t))


@lru_cache(maxsize=None)
def _forest_coproduct(f: Forest) -> Element:
    acc = Element.basis((UNIT, UNIT))
    for t in f.trees:
        acc = acc.bilinear(_tree_coproduct(t), lambda a, b: Element.basis((a[0] * b[0], a[1] * b[1])))
    return acc


@lru_cache(maxsize=None)
def _tree_antipode(t: Tree) -> Element:
    return Element((forest, (-1) ** len(forest)) for _, forest in partitions(t))


@lru_cache(maxsize=None)
def _forest_antipode(f: Forest) -> Element:
    acc = Element.basis(UNIT)
    for t in f.trees:
        acc = acc.bilinear(_tree_antipode(t), lambda a, b: Element.basis(a * b))
    return acc


def coproduct(x: TreeLike) -> Element:
    """Connes-Kreimer coproduct: cut forest on the left, kept root part on the right."""
    return as_element(x).linear_map(_forest_coproduct)


def antipode(x: TreeLike) -> Element:
    return as_element(x).linear_map(_forest_antipode)


def counit(x: TreeLike):
    return as_element(x).coefficient(UNIT)


def multiply(x: TreeLike, y: TreeLike) -> Element:
    return as_element(x).bilinear(as_element(y), lambda a, b: Element.basis(a * b))


def graft(u: Tree, v: Tree) -> Tree:
    """Butcher product: attach the root of ``v`` as a new child of the root of ``u``."""
    return Tree(u.children + (v,))


def tree(text: str) -> Tree:
    return Tree.parse(text)


def forest(*items: Tree | str) -> Forest:
    return Forest(tuple(Tree.parse(t) if isinstance(t, str) else t for t in items))


def trees_upto(n: int) -> Iterable[Tree]:
    for k in range(1, n + 1):
        yield from _trees(k)
