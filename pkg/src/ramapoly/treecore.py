"""Labeled plane trees: data model, exhaustive enumeration, and statistics.

A plane tree is a rooted tree on distinct positive integer labels in which
the children of every vertex are linearly ordered.  The statistics:

* beta(v): the smallest label among v's descendants (v included);
* a child is *elder* if some brother to its right has a smaller beta,
  *younger* otherwise; eld(T) counts elder vertices;
* the edge (i, j) is *improper* when j is neither an elder child of i nor
  satisfies i < beta(j);
* the *really*-variants replace the child's beta by its label in the elder
  comparison (the improper test keeps beta);
* young(v) = deg(v) - eld(v), and likewise for the really-variant.

``PlaneTree`` nodes are immutable and cache all subtree aggregates at
construction, so enumeration can share subtrees freely and read per-tree
statistics in O(1).  ``TreeEnumerator`` produces every plane tree / ordered
forest on a label set exactly once (first component's vertex subset in
binary order, roots ascending) and memoizes small sub-forests.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .polyring import Poly

QK_VARS = ("x", "t")

MEMO_LIMIT = 5             # label-set size up to which forest/tree lists are cached
DEFAULT_MAX_LABELS = 8     # enumeration hard cap; |P_8| = 17,297,280
ENV_MAX_LABELS = "RAMAPOLY_MAX_LABELS"


class BoundExceeded(RuntimeError):
    """An enumeration request exceeded the configured hard cap."""


class PlaneTree:
    """Immutable plane tree node with cached subtree statistics.

    eld_sub / imp_sub count elder vertices / improper edges inside the
    subtree (the subtree root itself has no brothers here, so it is not
    counted); young_at_1 is young(vertex 1) if label 1 occurs in the
    subtree, else None.  r*-fields are the really-variants.
    """

    __slots__ = ("label", "children", "beta", "size", "leaf_count",
                 "young_self", "eld_sub", "imp_sub", "young_at_1",
                 "ryoung_self", "reld_sub", "rimp_sub", "ryoung_at_1",
                 "_hash")

    def __init__(self, label: int, children: Sequence["PlaneTree"] = ()):
        children = tuple(children)
        self.label = label
        self.children = children
        beta = label
        size = 1
        leaves = 0
        eld_sub = imp_sub = reld_sub = rimp_sub = 0
        y1 = ry1 = None
        for c in children:
            size += c.size
            leaves += c.leaf_count
            eld_sub += c.eld_sub
            imp_sub += c.imp_sub
            reld_sub += c.reld_sub
            rimp_sub += c.rimp_sub
            if c.beta < beta:
                beta = c.beta
            if c.young_at_1 is not None:
                y1 = c.young_at_1
            if c.ryoung_at_1 is not None:
                ry1 = c.ryoung_at_1
        eld_here = reld_here = 0
        min_beta_right = min_label_right = None
        for c in reversed(children):
            if min_beta_right is not None and min_beta_right < c.beta:
                eld_here += 1
            elif label > c.beta:
                imp_sub += 1
            if min_label_right is not None and min_label_right < c.label:
                reld_here += 1
            elif label > c.beta:
                rimp_sub += 1
            if min_beta_right is None or c.beta < min_beta_right:
                min_beta_right = c.beta
            if min_label_right is None or c.label < min_label_right:
                min_label_right = c.label
        self.beta = beta
        self.size = size
        self.leaf_count = leaves if children else 1
        self.young_self = len(children) - eld_here
        self.eld_sub = eld_sub + eld_here
        self.imp_sub = imp_sub
        self.ryoung_self = len(children) - reld_here
        self.reld_sub = reld_sub + reld_here
        self.rimp_sub = rimp_sub
        if label == 1:
            y1 = self.young_self
            ry1 = self.ryoung_self
        self.young_at_1 = y1
        self.ryoung_at_1 = ry1
        self._hash = hash((label, children))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, PlaneTree):
            return NotImplemented
        return (self._hash == other._hash and self.label == other.label
                and self.children == other.children)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.children:
            return f"node({self.label})"
        inner = ", ".join(repr(c) for c in self.children)
        return f"node({self.label}, {inner})"

    # -- traversal helpers ---------------------------------------------------

    def walk(self) -> Iterator["PlaneTree"]:
        """Pre-order traversal of the subtree."""
        stack = [self]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(v.children))

    def labels(self) -> frozenset[int]:
        return frozenset(v.label for v in self.walk())

    def edges(self) -> list[tuple[int, int]]:
        return [(v.label, c.label) for v in self.walk() for c in v.children]

    def find(self, label: int) -> "PlaneTree | None":
        for v in self.walk():
            if v.label == label:
                return v
        return None

    def to_obj(self) -> dict:
        return {"label": self.label,
                "children": [c.to_obj() for c in self.children]}


def node(label: int, *children: PlaneTree) -> PlaneTree:
    """Terse constructor: node(1, node(2), node(3, node(4)))."""
    return PlaneTree(label, children)


def tree_from_obj(obj: Mapping) -> PlaneTree:
    """Build a PlaneTree from the JSON form {"label": int, "children": [...]}."""
    if not isinstance(obj, Mapping) or "label" not in obj:
        raise ValueError("tree object must be a mapping with a 'label' key")
    label = obj["label"]
    if not isinstance(label, int) or label < 1:
        raise ValueError(f"labels must be positive integers, got {label!r}")
    tree = PlaneTree(label, [tree_from_obj(c) for c in obj.get("children", [])])
    seen = [v.label for v in tree.walk()]
    if len(seen) != len(set(seen)):
        raise ValueError("labels are not pairwise distinct")
    return tree


# -- statistics ---------------------------------------------------------------


def gdes(word: Sequence[int]) -> int:
    """Number of positions with a smaller entry somewhere to the right."""
    if len(set(word)) != len(word):
        raise ValueError("entries must be distinct")
    count = 0
    suffix_min = None
    for a in reversed(word):
        if suffix_min is not None and suffix_min < a:
            count += 1
        if suffix_min is None or a < suffix_min:
            suffix_min = a
    return count


@dataclass(frozen=True)
class TreeStats:
    beta: dict[int, int]
    deg: dict[int, int]
    eld_per_vertex: dict[int, int]
    young_per_vertex: dict[int, int]
    reld_per_vertex: dict[int, int]
    ryoung_per_vertex: dict[int, int]
    elder_vertices: frozenset[int]
    really_elder_vertices: frozenset[int]
    improper_edges: frozenset[tuple[int, int]]
    really_improper_edges: frozenset[tuple[int, int]]
    eld_total: int
    reld_total: int
    leaves: frozenset[int]
    increasing: bool


def stats(tree: PlaneTree) -> TreeStats:
    """Full statistics bundle for one tree (fixture/CLI path, not the hot loop)."""
    beta = {}
    deg = {}
    eld = {}
    young = {}
    reld = {}
    ryoung = {}
    elders = set()
    relders = set()
    improper = set()
    rimproper = set()
    leaves = set()
    increasing = True
    for v in tree.walk():
        beta[v.label] = v.beta
        deg[v.label] = len(v.children)
        eld[v.label] = len(v.children) - v.young_self
        young[v.label] = v.young_self
        reld[v.label] = len(v.children) - v.ryoung_self
        ryoung[v.label] = v.ryoung_self
        if not v.children:
            leaves.add(v.label)
        min_beta_right = min_label_right = None
        for c in reversed(v.children):
            if c.label < v.label:
                increasing = False
            if min_beta_right is not None and min_beta_right < c.beta:
                elders.add(c.label)
            elif v.label > c.beta:
                improper.add((v.label, c.label))
            if min_label_right is not None and min_label_right < c.label:
                relders.add(c.label)
            elif v.label > c.beta:
                rimproper.add((v.label, c.label))
            if min_beta_right is None or c.beta < min_beta_right:
                min_beta_right = c.beta
            if min_label_right is None or c.label < min_label_right:
                min_label_right = c.label
    return TreeStats(beta=beta, deg=deg, eld_per_vertex=eld, young_per_vertex=young,
                     reld_per_vertex=reld, ryoung_per_vertex=ryoung,
                     elder_vertices=frozenset(elders),
                     really_elder_vertices=frozenset(relders),
                     improper_edges=frozenset(improper),
                     really_improper_edges=frozenset(rimproper),
                     eld_total=len(elders), reld_total=len(relders),
                     leaves=frozenset(leaves), increasing=increasing)


# -- enumeration ---------------------------------------------------------------


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate and how to weight it.

    weight_mode: "o"  -> x^(young(1) - 1) * t^eld   (root-1 convention)
                 "p"  -> x^young(1) * t^eld
                 "multivar" -> t^eld * prod_i x_i^young(i)
    really_stats switches the o/p weights (and the improper filter the census
    buckets by) to the really-variants.
    """

    labels: frozenset[int]
    root: int | None = None
    improper_count: int | None = None
    really_improper_count: int | None = None
    weight_mode: str = "p"
    really_stats: bool = False

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))
        if not self.labels:
            raise ValueError("empty label set")
        if self.improper_count is not None and self.really_improper_count is not None:
            raise ValueError("at most one of improper_count / really_improper_count")
        if self.root is not None and self.root not in self.labels:
            raise ValueError(f"root {self.root} not in label set")
        if self.weight_mode not in ("o", "p", "multivar"):
            raise ValueError(f"unknown weight mode {self.weight_mode!r}")


class TreeEnumerator:
    """Streams every plane tree / ordered forest on a label set exactly once.

    A tree on S rooted at r is r over an ordered forest on S - {r}; an
    ordered forest is the first component's tree followed by a forest on the
    remaining labels.  Subset choices run in binary order over the sorted
    labels, roots ascend, so streams are deterministic.  Forest and tree
    tuples for label sets of size <= MEMO_LIMIT are cached, which shares
    subtree objects (and their precomputed statistics) across the stream.
    """

    def __init__(self, max_labels: int | None = None):
        if max_labels is None:
            max_labels = int(os.environ.get(ENV_MAX_LABELS, DEFAULT_MAX_LABELS))
        self.max_labels = max_labels
        self._forest_memo: dict[frozenset[int], tuple] = {}
        self._tree_memo: dict[tuple[frozenset[int], int], tuple] = {}

    def check_bound(self, labels: Iterable[int]) -> frozenset[int]:
        labels = frozenset(labels)
        if len(labels) > self.max_labels:
            raise BoundExceeded(
                f"label set of size {len(labels)} exceeds cap {self.max_labels} "
                f"(override via {ENV_MAX_LABELS} or max_labels)")
        return labels

    # ordered forests ---------------------------------------------------------

    def forests(self, labels: frozenset[int]) -> Iterator[tuple[PlaneTree, ...]]:
        if len(labels) <= MEMO_LIMIT:
            yield from self._forest_list(labels)
        else:
            yield from self._forest_stream(labels)

    def _forest_list(self, labels: frozenset[int]) -> tuple:
        cached = self._forest_memo.get(labels)
        if cached is None:
            cached = tuple(self._forest_stream(labels))
            self._forest_memo[labels] = cached
        return cached

    def _forest_stream(self, labels: frozenset[int]) -> Iterator[tuple[PlaneTree, ...]]:
        if not labels:
            yield ()
            return
        elems = sorted(labels)
        for mask in range(1, 1 << len(elems)):
            first_set = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
            rest = labels - first_set
            for root in sorted(first_set):
                for first in self.trees_rooted(first_set, root):
                    for tail in self.forests(rest):
                        yield (first,) + tail

    # trees --------------------------------------------------------------------

    def trees_rooted(self, labels: frozenset[int], root: int) -> Iterator[PlaneTree]:
        if len(labels) <= MEMO_LIMIT:
            key = (labels, root)
            cached = self._tree_memo.get(key)
            if cached is None:
                rest = labels - {root}
                cached = tuple(PlaneTree(root, f) for f in self._forest_list(rest))
                self._tree_memo[key] = cached
            yield from cached
        else:
            for forest in self.forests(labels - {root}):
                yield PlaneTree(root, forest)

    def trees(self, labels: Iterable[int], root: int | None = None) -> Iterator[PlaneTree]:
        labels = self.check_bound(labels)
        if not labels:
            raise ValueError("empty label set")
        if root is not None:
            if root not in labels:
                raise ValueError(f"root {root} not in label set")
            yield from self.trees_rooted(labels, root)
        else:
            for r in sorted(labels):
                yield from self.trees_rooted(labels, r)


def enumerate_trees(spec: EnumSpec, enumerator: TreeEnumerator | None = None) -> Iterator[PlaneTree]:
    """Yield each qualifying plane tree exactly once."""
    enum = enumerator or TreeEnumerator()
    for tree in enum.trees(spec.labels, spec.root):
        if spec.improper_count is not None and tree.imp_sub != spec.improper_count:
            continue
        if spec.really_improper_count is not None and tree.rimp_sub != spec.really_improper_count:
            continue
        yield tree


# -- generating polynomials -----------------------------------------------------


def weight_census(labels: Iterable[int], root: int | None = None, *,
                  really: bool = False,
                  enumerator: TreeEnumerator | None = None) -> dict[int, dict[tuple[int, int], int]]:
    """One enumeration pass, bucketed by improper count.

    Returns {k: {(young(1), eld): multiplicity}} over all trees on the label
    set (optionally root-constrained); the really-variant buckets by really
    improper count and uses (ryoung(1), reld).
    """
    enum = enumerator or TreeEnumerator()
    labels = frozenset(labels)
    if 1 not in labels:
        raise ValueError("weight census needs vertex 1 in the label set")
    census: dict[int, dict[tuple[int, int], int]] = {}
    for tree in enum.trees(labels, root):
        if really:
            k, key = tree.rimp_sub, (tree.ryoung_at_1, tree.reld_sub)
        else:
            k, key = tree.imp_sub, (tree.young_at_1, tree.eld_sub)
        cells = census.setdefault(k, {})
        cells[key] = cells.get(key, 0) + 1
    return census


def census_poly(cells: Mapping[tuple[int, int], int], mode: str) -> Poly:
    """Collapse census cells to a polynomial in {x, t}; mode "o" uses x^(young-1)."""
    terms: dict[tuple[int, int], int] = {}
    for (young1, eld), count in cells.items():
        expo = young1 - 1 if mode == "o" else young1
        if expo < 0:
            raise ValueError("mode 'o' needs young(1) >= 1 on every tree")
        key = (expo, eld)
        terms[key] = terms.get(key, 0) + count
    return Poly(QK_VARS, terms)


def multivar_universe(labels: Iterable[int]) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in sorted(labels)) + ("t",)


def generating_poly(spec: EnumSpec, enumerator: TreeEnumerator | None = None) -> Poly:
    """Exact sum of weight monomials over the enumerated set."""
    enum = enumerator or TreeEnumerator()
    if spec.weight_mode in ("o", "p"):
        cells: dict[tuple[int, int], int] = {}
        for tree in enumerate_trees(spec, enum):
            if spec.really_stats:
                key = (tree.ryoung_at_1, tree.reld_sub)
            else:
                key = (tree.young_at_1, tree.eld_sub)
            if key[0] is None:
                raise ValueError("o/p weights need vertex 1 in the label set")
            cells[key] = cells.get(key, 0) + 1
        return census_poly(cells, spec.weight_mode)
    if spec.really_stats:
        raise ValueError("multivar weights are defined for the plain statistics only")
    labels = sorted(spec.labels)
    position = {lab: idx for idx, lab in enumerate(labels)}
    uni = multivar_universe(labels)
    terms: dict[tuple[int, ...], int] = {}
    for tree in enumerate_trees(spec, enum):
        exps = [0] * (len(labels) + 1)
        for v in tree.walk():
            exps[position[v.label]] = v.young_self
        exps[-1] = tree.eld_sub
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + 1
    return Poly(uni, terms)


def leaf_set_count(n: int, k: int) -> int:
    """Number of plane trees on [n+1] whose leaf set is exactly {1, ..., k},
    by inclusion-exclusion over the vertices k+1..n+1 allowed to be leaves."""
    total = 0
    for i in range(n - k + 2):
        prod = 1
        for s in range(n):
            prod *= n + 1 - k - i + s
        total += (-1) ** i * comb(n - k + 1, i) * prod
    return total


def leaf_profile(n: int, enumerator: TreeEnumerator | None = None) -> dict[int, int]:
    """Map leaf count -> number of labeled plane trees on [n] with that many leaves."""
    enum = enumerator or TreeEnumerator()
    profile: dict[int, int] = {}
    for tree in enum.trees(range(1, n + 1)):
        profile[tree.leaf_count] = profile.get(tree.leaf_count, 0) + 1
    return dict(sorted(profile.items()))


# -- increasing trees (no improper edges) ----------------------------------------


def _grow_increasing(n: int, plane: bool) -> Iterator[PlaneTree]:
    children: dict[int, list[int]] = {1: []}

    def build(v: int) -> PlaneTree:
        return PlaneTree(v, [build(c) for c in children[v]])

    def rec(k: int) -> Iterator[PlaneTree]:
        if k > n:
            yield build(1)
            return
        for v in list(children):
            row = children[v]
            positions = range(len(row) + 1) if plane else (len(row),)
            for pos in positions:
                row.insert(pos, k)
                children[k] = []
                yield from rec(k + 1)
                del children[k]
                row.pop(pos)

    if n >= 1:
        yield from rec(2)


def increasing_plane_trees(n: int) -> Iterator[PlaneTree]:
    """All increasing plane trees on [n] (exactly the trees with no improper edge)."""
    return _grow_increasing(n, plane=True)


def increasing_rooted_trees(n: int) -> Iterator[PlaneTree]:
    """Increasing unordered trees on [n], one canonical plane form each
    (children ascending, i.e. the eld = 0 representatives)."""
    return _grow_increasing(n, plane=False)
