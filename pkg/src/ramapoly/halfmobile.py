"""Half-mobile trees and forests, their statistics, and the theta bijection.

A half-mobile tree mixes *white* vertices (labeled; children unordered) and
*black* vertices (unlabeled; at least two children, all white, carrying a
cyclic order).  Canonical storage makes structural equality plain recursion:

* a white vertex's children are listed by ascending beta (beta of a node is
  the smallest white label in its subtree);
* a black vertex's cyclic order is stored as the unique linearization whose
  last child has the smallest beta.

``theta`` maps plane trees rooted at 1 on [n+1] to forests on [n]: at every
vertex the children are cut into blocks ending at the right-to-left minima
of the child beta word, each block of length > 1 becomes a black vertex
carrying the block cyclically, then the root is deleted and labels shift
down by one.  It transports young(1) -> tree count, eld -> black degree
excess, and improper edge count -> improper edge count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .polyring import Poly
from .treecore import PlaneTree, TreeEnumerator

HM_VARS = ("x", "y", "t")


class HmNode:
    """One half-mobile vertex; label None means black.  Children are stored
    as given: use :func:`white` / :func:`black` for canonical building and
    :func:`validate` to check an arbitrary instance."""

    __slots__ = ("label", "children", "beta", "_hash")

    def __init__(self, label: int | None, children: Sequence["HmNode"] = ()):
        self.label = label
        self.children = tuple(children)
        betas = [c.beta for c in self.children if c.beta is not None]
        if label is not None:
            betas.append(label)
        self.beta = min(betas) if betas else None
        self._hash = hash((label, self.children))

    @property
    def is_white(self) -> bool:
        return self.label is not None

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, HmNode):
            return NotImplemented
        return (self._hash == other._hash and self.label == other.label
                and self.children == other.children)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        head = f"white({self.label}" if self.is_white else "black("
        inner = ", ".join(repr(c) for c in self.children)
        if self.is_white and inner:
            return f"{head}, {inner})"
        return f"{head}{inner})"

    def white_labels(self) -> list[int]:
        out = [] if self.label is None else [self.label]
        for c in self.children:
            out.extend(c.white_labels())
        return out

    def to_obj(self) -> dict:
        if self.is_white:
            return {"kind": "white", "label": self.label,
                    "children": [c.to_obj() for c in self.children]}
        return {"kind": "black", "children": [c.to_obj() for c in self.children]}


def white(label: int, *children: HmNode) -> HmNode:
    """Canonical white vertex: children sorted by ascending beta."""
    return HmNode(label, tuple(sorted(children, key=lambda c: c.beta)))


def black(*children: HmNode) -> HmNode:
    """Canonical black vertex: the given cyclic order rotated so the child
    of smallest beta comes last."""
    if children:
        pos = min(range(len(children)), key=lambda idx: children[idx].beta)
        children = children[pos + 1:] + children[:pos + 1]
    return HmNode(None, children)


@dataclass(frozen=True)
class HalfMobileForest:
    components: tuple[HmNode, ...]

    @classmethod
    def build(cls, components: Sequence[HmNode]) -> "HalfMobileForest":
        return cls(tuple(sorted(components, key=lambda c: c.beta)))

    def white_labels(self) -> list[int]:
        out = []
        for c in self.components:
            out.extend(c.white_labels())
        return out

    def to_obj(self) -> dict:
        return {"components": [c.to_obj() for c in self.components]}


@dataclass(frozen=True)
class HmStats:
    imp: int
    tree: int
    bdeg: int


# -- validation ----------------------------------------------------------------


def validate(forest: HalfMobileForest) -> str | None:
    """None when every structural invariant holds, else the first violation
    with the path to the offending node."""

    def describe(node: HmNode) -> str:
        return f"white {node.label}" if node.is_white else "black"

    def check(node: HmNode, path: str) -> str | None:
        here = f"{path}/{describe(node)}"
        if node.is_white:
            betas = [c.beta for c in node.children]
            if betas != sorted(betas):
                return f"{here}: white children not sorted by beta"
        else:
            if len(node.children) < 2:
                return f"{here}: black vertex with fewer than two children"
            if not all(c.is_white for c in node.children):
                return f"{here}: black vertex with an unlabeled child"
            last = node.children[-1]
            if any(c.beta < last.beta for c in node.children):
                return f"{here}: last child of black vertex lacks minimal beta"
        for c in node.children:
            problem = check(c, here)
            if problem:
                return problem
        return None

    labels = forest.white_labels()
    if len(labels) != len(set(labels)):
        return "forest: duplicate white labels"
    betas = [c.beta for c in forest.components]
    if betas != sorted(betas):
        return "forest: components not sorted by beta"
    for idx, comp in enumerate(forest.components):
        problem = check(comp, f"component {idx}")
        if problem:
            return problem
    return None


def hm_stats(forest: HalfMobileForest) -> HmStats:
    imp = 0
    bdeg = 0

    def walk_white(u: HmNode) -> None:
        nonlocal imp, bdeg
        for c in u.children:
            if c.is_white:
                if u.label > c.beta:
                    imp += 1
                walk_white(c)
            else:
                bdeg += len(c.children) - 1
                if u.label > c.children[-1].beta:
                    imp += 1
                for w in c.children:
                    walk_white(w)

    for comp in forest.components:
        if comp.is_white:
            walk_white(comp)
        else:
            # a black component root has no labeled father: its rightmost
            # edge is proper
            bdeg += len(comp.children) - 1
            for w in comp.children:
                walk_white(w)
    return HmStats(imp=imp, tree=len(forest.components), bdeg=bdeg)


# -- theta ------------------------------------------------------------------------


def _rl_minima_blocks(children: Sequence[PlaneTree]) -> Iterator[Sequence[PlaneTree]]:
    current = None
    marks = []
    for idx in range(len(children) - 1, -1, -1):
        beta = children[idx].beta
        if current is None or beta < current:
            marks.append(idx)
            current = beta
    marks.reverse()
    prev = -1
    for pos in marks:
        yield children[prev + 1:pos + 1]
        prev = pos


def _to_hm(v: PlaneTree, shift: int) -> HmNode:
    return HmNode(v.label - shift, tuple(_hm_blocks(v, shift)))


def _hm_blocks(v: PlaneTree, shift: int) -> list[HmNode]:
    blocks = []
    for block in _rl_minima_blocks(v.children):
        if len(block) == 1:
            blocks.append(_to_hm(block[0], shift))
        else:
            blocks.append(HmNode(None, tuple(_to_hm(c, shift) for c in block)))
    return blocks


def theta(tree: PlaneTree) -> HalfMobileForest:
    """Plane tree rooted at 1 on [n+1] -> half-mobile forest on [n]."""
    if tree.label != 1:
        raise ValueError(f"theta needs root 1, got root {tree.label}")
    if tree.labels() != frozenset(range(1, tree.size + 1)):
        raise ValueError("theta needs the label set {1, ..., n+1}")
    return HalfMobileForest(tuple(_hm_blocks(tree, shift=1)))


def theta_inv(forest: HalfMobileForest) -> PlaneTree:
    """Inverse of theta; the forest must validate."""
    problem = validate(forest)
    if problem:
        raise ValueError(problem)
    labels = forest.white_labels()
    if set(labels) != set(range(1, len(labels) + 1)):
        raise ValueError("theta_inv needs white labels {1, ..., n}")

    def expand(children: Sequence[HmNode]) -> list[PlaneTree]:
        plane: list[PlaneTree] = []
        for child in children:
            if child.is_white:
                plane.append(to_plane(child))
            else:
                plane.extend(to_plane(w) for w in child.children)
        return plane

    def to_plane(w: HmNode) -> PlaneTree:
        return PlaneTree(w.label + 1, expand(w.children))

    return PlaneTree(1, expand(forest.components))


# -- enumeration -------------------------------------------------------------------


def enumerate_hm(n: int, k: int | None = None,
                 enumerator: TreeEnumerator | None = None) -> Iterator[HalfMobileForest]:
    """All half-mobile forests on [n] (k improper edges if given), produced
    as theta images of the root-1 plane trees on [n+1]; a duplicate image
    would mean theta is not injective and raises."""
    enum = enumerator or TreeEnumerator()
    seen: set[HalfMobileForest] = set()
    for tree in enum.trees(range(1, n + 2), root=1):
        forest = theta(tree)
        if forest in seen:
            raise RuntimeError(f"theta collision on {forest!r}")
        seen.add(forest)
        if k is None or hm_stats(forest).imp == k:
            yield forest


def enumerate_hm_direct(n: int) -> Iterator[HalfMobileForest]:
    """Independent recursive generator of all half-mobile forests on [n],
    used to check theta's surjectivity against :func:`enumerate_hm`."""

    def set_partitions(labels: frozenset[int]) -> Iterator[list[frozenset[int]]]:
        if not labels:
            yield []
            return
        first_min = min(labels)
        rest = sorted(labels - {first_min})
        for mask in range(1 << len(rest)):
            head = frozenset([first_min] + [e for i, e in enumerate(rest) if mask >> i & 1])
            for tail in set_partitions(labels - head):
                yield [head] + tail

    def compositions(labels: frozenset[int]) -> Iterator[list[frozenset[int]]]:
        if not labels:
            yield []
            return
        elems = sorted(labels)
        for mask in range(1, 1 << len(elems)):
            head = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
            for tail in compositions(labels - head):
                yield [head] + tail

    def choices(blocks: list[frozenset[int]], gen) -> Iterator[tuple[HmNode, ...]]:
        if not blocks:
            yield ()
            return
        for head in gen(blocks[0]):
            for tail in choices(blocks[1:], gen):
                yield (head,) + tail

    def white_trees(labels: frozenset[int]) -> Iterator[HmNode]:
        for root in sorted(labels):
            for part in set_partitions(labels - {root}):
                for kids in choices(part, hm_trees):
                    yield HmNode(root, kids)   # blocks ascend by min == beta

    def hm_trees(labels: frozenset[int]) -> Iterator[HmNode]:
        yield from white_trees(labels)
        # black root: >= 2 children, each a white-rooted tree; the cyclic
        # order is stored rotated so the smallest beta sits last, so the
        # last block holds min(labels) and the rest is any ordered sequence.
        low = min(labels)
        others = sorted(labels - {low})
        for mask in range(1 << len(others)):
            last_block = frozenset([low] + [e for i, e in enumerate(others) if mask >> i & 1])
            remainder = labels - last_block
            if not remainder:
                continue
            for blocks in compositions(remainder):
                for kids in choices(blocks + [last_block], white_trees):
                    yield HmNode(None, kids)

    for part in set_partitions(frozenset(range(1, n + 1))):
        for comps in choices(part, hm_trees):
            yield HalfMobileForest(comps)


def hm_generating_poly(n: int, enumerator: TreeEnumerator | None = None) -> Poly:
    """Sum of x^(tree-1) y^imp t^bdeg over all half-mobile forests on [n]."""
    terms: dict[tuple[int, int, int], int] = {}
    for forest in enumerate_hm(n, enumerator=enumerator):
        st = hm_stats(forest)
        key = (st.tree - 1, st.imp, st.bdeg)
        terms[key] = terms.get(key, 0) + 1
    return Poly(HM_VARS, terms)


# -- JSON ---------------------------------------------------------------------------


def node_from_obj(obj: Mapping) -> HmNode:
    kind = obj.get("kind")
    children = tuple(node_from_obj(c) for c in obj.get("children", []))
    if kind == "white":
        label = obj.get("label")
        if not isinstance(label, int) or label < 1:
            raise ValueError(f"white node needs a positive integer label, got {label!r}")
        return HmNode(label, children)
    if kind == "black":
        return HmNode(None, children)
    raise ValueError(f"unknown node kind {kind!r}")


def forest_from_obj(obj: Mapping) -> HalfMobileForest:
    if "components" not in obj:
        raise ValueError("forest object needs a 'components' list")
    return HalfMobileForest(tuple(node_from_obj(c) for c in obj["components"]))


def forest_to_json(forest: HalfMobileForest) -> str:
    return json.dumps(forest.to_obj(), sort_keys=True)
