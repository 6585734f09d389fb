"""Finite-support functions under the largest-disagreement order, strictly
branching value trees over decreasing sequences, and the support-chain
embedding that collapses point colourings to few colours.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple

from .errors import ScatterCalcError
from .ordinal import (
    CnfOrdinal,
    ZERO,
    ensure_ordinal,
    format_ordinal,
    from_int,
    ord_add,
    ord_compare,
    parse_ordinal,
)
from .terms import (
    Fin,
    FinSupp,
    FinSuppElem,
    InvalidElement,
    Ord,
    OrderTerm,
    Rev,
    Scaled,
    SumList,
    compare_elements,
    finsupp_elem,
    format_term,
    validate_element,
)


class AntilexError(ScatterCalcError):
    pass


class EqualInputs(AntilexError):
    pass


class HostMismatch(AntilexError):
    pass


class NotSorted(AntilexError):
    pass


class TreeDomainMiss(AntilexError):
    def __init__(self, prefix):
        super().__init__(f"tree has no value for prefix {prefix}")
        self.prefix = prefix


class FragmentIncomplete(AntilexError):
    pass


class UnsupportedHost(AntilexError):
    pass


@dataclass(frozen=True)
class FinSuppFn:
    """An element of an anti-lexicographic finite-support sum, tied to its host."""

    host: FinSupp
    elem: FinSuppElem

    def __post_init__(self):
        if not validate_element(self.host, self.elem):
            raise InvalidElement(
                f"{self.elem!r} is not an element of {format_term(self.host)}")

    @classmethod
    def build(cls, host: FinSupp, mapping) -> "FinSuppFn":
        return cls(host, finsupp_elem(mapping))

    @classmethod
    def zero(cls, host: FinSupp) -> "FinSuppFn":
        return cls(host, FinSuppElem())

    def support(self) -> Tuple[Tuple[CnfOrdinal, Any], ...]:
        return self.elem.entries

    def value_at(self, position) -> Any:
        return self.elem.value_at(ensure_ordinal(position), self.host.zero)

    def is_zero(self) -> bool:
        return not self.elem.entries


def delta_prime(f: FinSuppFn, g: FinSuppFn) -> CnfOrdinal:
    """Largest position where f and g disagree."""
    if f.host != g.host:
        raise HostMismatch("both functions must live in the same sum")
    if f.elem == g.elem:
        raise EqualInputs("equal functions have no disagreement")
    positions = {p for p, _ in f.elem.entries} | {p for p, _ in g.elem.entries}
    best = None
    for p in positions:
        if f.value_at(p) != g.value_at(p):
            if best is None or ord_compare(p, best) > 0:
                best = p
    if best is None:
        raise AntilexError("internal: distinct supports with no disagreement")
    return best


def compare_antilex(f: FinSuppFn, g: FinSuppFn) -> int:
    """Order decided at the largest disagreement; same code path as the
    host-term comparator."""
    if f.host != g.host:
        raise HostMismatch("both functions must live in the same sum")
    return compare_elements(f.host, f.elem, g.elem)


def check_antilex_lemma(f: FinSuppFn, g: FinSuppFn, h: FinSuppFn) -> bool:
    """For f < g < h: max of the two adjacent disagreements is at most the
    outer one.  Always true; a False signals a build defect."""
    if not (compare_antilex(f, g) < 0 and compare_antilex(g, h) < 0):
        raise NotSorted("inputs must satisfy f < g < h")
    left = delta_prime(f, g)
    right = delta_prime(g, h)
    outer = delta_prime(f, h)
    biggest = left if ord_compare(left, right) >= 0 else right
    return ord_compare(biggest, outer) <= 0


# -- decreasing sequences and value trees ------------------------------------------


@dataclass(frozen=True)
class DecSeq:
    """Finite strictly decreasing sequence of ordinals."""

    entries: Tuple[CnfOrdinal, ...] = ()

    def __post_init__(self):
        prev = None
        for x in self.entries:
            if not isinstance(x, CnfOrdinal):
                raise AntilexError("DecSeq entries must be CnfOrdinal")
            if prev is not None and ord_compare(prev, x) <= 0:
                raise AntilexError("DecSeq entries must be strictly decreasing")
            prev = x

    def __len__(self):
        return len(self.entries)

    def last(self) -> CnfOrdinal:
        return self.entries[-1]

    def parent(self) -> "DecSeq":
        return DecSeq(self.entries[:-1])

    def prefixes(self) -> List["DecSeq"]:
        return [DecSeq(self.entries[: i + 1]) for i in range(len(self.entries))]


def dec_seq(values) -> DecSeq:
    return DecSeq(tuple(ensure_ordinal(v) for v in values))


@dataclass
class AlphaTree:
    """Partial assignment of ordinal values to nonempty decreasing sequences
    below alpha, increasing across siblings and decreasing into parents."""

    alpha: CnfOrdinal
    entries: Dict[DecSeq, CnfOrdinal] = field(default_factory=dict)

    def value(self, seq: DecSeq) -> CnfOrdinal:
        if seq not in self.entries:
            raise TreeDomainMiss(tuple(format_ordinal(x) for x in seq.entries))
        return self.entries[seq]

    def to_json(self) -> dict:
        items = sorted(self.entries.items(),
                       key=lambda kv: (len(kv[0]), [format_ordinal(x) for x in kv[0].entries]))
        return {
            "alpha": format_ordinal(self.alpha),
            "entries": [{"seq": [format_ordinal(x) for x in seq.entries],
                         "val": format_ordinal(val)} for seq, val in items],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlphaTree":
        entries = {}
        for item in data["entries"]:
            seq = dec_seq([parse_ordinal(s) for s in item["seq"]])
            entries[seq] = parse_ordinal(item["val"])
        return cls(parse_ordinal(data["alpha"]), entries)


def validate_alpha_tree(tree: AlphaTree) -> Optional[tuple]:
    """None when coherent; otherwise a witness describing the violation."""
    for seq in tree.entries:
        if len(seq) == 0:
            return ("empty-sequence", seq)
        for x in seq.entries:
            if ord_compare(x, tree.alpha) >= 0:
                return ("entry-above-alpha", seq)
    for seq, val in tree.entries.items():
        if len(seq) > 1:
            parent = seq.parent()
            if parent in tree.entries and ord_compare(val, tree.entries[parent]) >= 0:
                return ("child-not-below-parent", seq, parent)
    for seq_a, seq_b in itertools.combinations(tree.entries, 2):
        if len(seq_a) != len(seq_b) or seq_a.entries[:-1] != seq_b.entries[:-1]:
            continue
        ca, cb = seq_a.entries[-1], seq_b.entries[-1]
        va, vb = tree.entries[seq_a], tree.entries[seq_b]
        if ord_compare(ca, cb) < 0 and ord_compare(va, vb) >= 0:
            return ("siblings-not-increasing", seq_a, seq_b)
        if ord_compare(ca, cb) > 0 and ord_compare(va, vb) <= 0:
            return ("siblings-not-increasing", seq_b, seq_a)
    return None


# -- the support-chain embedding -----------------------------------------------------


def ks_embed(tree: AlphaTree, f: FinSuppFn, target_host: FinSupp) -> FinSuppFn:
    """Transport f along the tree: the i-th support position (in decreasing
    order) moves to the tree value of its prefix chain, keeping its value."""
    if not isinstance(target_host, FinSupp):
        raise UnsupportedHost("target host must be a finite-support term")
    if target_host.inner != f.host.inner or target_host.zero != f.host.zero:
        raise HostMismatch("source and target must share inner order and zero")
    support = f.support()
    mapping = {}
    prefix: List[CnfOrdinal] = []
    for position, value in support:
        prefix.append(position)
        t = tree.value(dec_seq(prefix))
        mapping[t] = value
    return FinSuppFn.build(target_host, mapping)


def induced_seq_coloring(H: Callable[[FinSuppFn], Any], host: FinSupp,
                         seq: DecSeq, alphabet: Sequence[Any]) -> Dict[tuple, Any]:
    """Restrict a point colouring of the host to the fragment spanned by the
    positions of seq: value tuples over the alphabet map to H of the function
    with those values (zero entries dropped from the support)."""
    n = len(seq)
    out: Dict[tuple, Any] = {}
    for values in itertools.product(list(alphabet), repeat=n):
        mapping = {seq.entries[i]: v for i, v in enumerate(values)
                   if v != host.zero}
        fn = FinSuppFn.build(host, mapping)
        try:
            colour = H(fn)
        except Exception as exc:
            raise FragmentIncomplete(f"colouring undefined at {values!r}: {exc}") from exc
        if colour is None:
            raise FragmentIncomplete(f"colouring undefined at {values!r}")
        out[tuple(values)] = colour
    return out


def freeze_pattern(pattern: Dict[tuple, Any]) -> tuple:
    """Canonical hashable form of an induced colouring pattern."""
    return tuple(sorted(pattern.items(), key=lambda kv: repr(kv[0])))


# -- exhaustive tree search ------------------------------------------------------------


def _universe(delta: int, level_bound: int) -> List[Tuple[int, ...]]:
    nodes = []
    for length in range(1, level_bound + 1):
        for combo in itertools.combinations(range(delta), length):
            nodes.append(tuple(sorted(combo, reverse=True)))
    nodes.sort(key=lambda s: (len(s), s))
    return nodes


def search_alpha_tree(F: Callable[[Tuple[int, ...]], Any], delta: int,
                      mu_range: int, level_bound: int
                      ) -> Optional[Tuple[AlphaTree, Dict[int, Any]]]:
    """Backtracking search for a coherent value tree whose chains are
    level-constant under F.

    The universe is every nonempty decreasing sequence over range(delta) of
    length at most level_bound; values range over range(mu_range).  Returns
    the lexicographically least witness with its level pattern, or None
    after exhausting the space.
    """
    if delta < 1 or mu_range < 1 or level_bound < 1:
        raise ValueError("delta, mu_range and level_bound must be >= 1")
    nodes = _universe(delta, level_bound)
    values: Dict[Tuple[int, ...], int] = {}
    colours: Dict[int, Any] = {}

    def admissible(node: Tuple[int, ...], v: int) -> bool:
        if len(node) > 1:
            parent = node[:-1]
            if v >= values[parent]:
                return False
        gamma = node[-1]
        if gamma > 0:
            sibling = node[:-1] + (gamma - 1,)
            if sibling in values and v <= values[sibling]:
                return False
        return True

    def assign(i: int) -> bool:
        if i == len(nodes):
            return True
        node = nodes[i]
        for v in range(mu_range):
            if not admissible(node, v):
                continue
            chain = tuple(values[node[: j + 1]] for j in range(len(node) - 1)) + (v,)
            colour = F(chain)
            level = len(node) - 1
            if level in colours:
                if colours[level] != colour:
                    continue
                owned = False
            else:
                colours[level] = colour
                owned = True
            values[node] = v
            if assign(i + 1):
                return True
            del values[node]
            if owned:
                del colours[level]
        return False

    if not assign(0):
        return None
    tree = AlphaTree(from_int(delta),
                     {dec_seq(node): from_int(values[node]) for node in nodes})
    return tree, dict(colours)


def universal_sum_catalogue(max_size: int) -> List[Tuple[Fin, int]]:
    """Every (finite chain, designated point) pair up to max_size,
    lexicographic in (size, point)."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    return [(Fin(n), p) for n in range(1, max_size + 1) for p in range(n)]


def verify_color_collapse(H: Callable[[FinSuppFn], Any], tree: AlphaTree,
                          colours: Dict[int, Any], sample: Sequence[FinSuppFn],
                          target_host: FinSupp) -> Tuple[bool, Set[Any]]:
    """Check H(embedded f) against the level pattern for each sampled f and
    collect the realized colour set."""
    ok = True
    realized: Set[Any] = set()
    for f in sample:
        image = ks_embed(tree, f, target_host)
        got = H(image)
        realized.add(got)
        support = f.support()
        if not support:
            continue
        level = len(support) - 1
        if level not in colours:
            raise TreeDomainMiss(f"no level pattern for support size {len(support)}")
        raw = colours[level]
        if isinstance(raw, tuple) and all(
                isinstance(kv, tuple) and len(kv) == 2 for kv in raw):
            pattern = dict(raw)
        else:
            pattern = raw
        key = tuple(v for _, v in support)
        if isinstance(pattern, dict):
            expected = pattern.get(key)
            if expected is None:
                raise FragmentIncomplete(f"pattern lacks value tuple {key!r}")
        else:
            expected = pattern
        if got != expected:
            ok = False
    return ok, realized


# -- marker embedding into a finite-support host ---------------------------------------

MARKER_INNER = Fin(3)
MARKER_ZERO = 1
MARKER_UP = 2
MARKER_DOWN = 0


def _index_kind(term: OrderTerm) -> str:
    if isinstance(term, Fin):
        return "up"
    if isinstance(term, Ord):
        return "up"
    if isinstance(term, Rev) and isinstance(term.inner, (Ord, Fin)):
        return "down"
    raise UnsupportedHost(f"unsupported index {format_term(term)} for marker embedding")


def _index_length(term: OrderTerm) -> CnfOrdinal:
    if isinstance(term, Fin):
        return from_int(term.size)
    if isinstance(term, Ord):
        return term.ordinal
    if isinstance(term, Rev):
        return _index_length(term.inner)
    raise UnsupportedHost(f"unsupported index {format_term(term)}")


def _index_position(term: OrderTerm, elem) -> CnfOrdinal:
    if isinstance(term, Fin):
        return from_int(elem)
    if isinstance(term, Ord):
        return elem
    if isinstance(term, Rev):
        return _index_position(term.inner, elem)
    raise UnsupportedHost(f"unsupported index {format_term(term)}")


def marker_host_length(term: OrderTerm) -> CnfOrdinal:
    if isinstance(term, (Fin, Ord)) or (
            isinstance(term, Rev) and isinstance(term.inner, (Fin, Ord))):
        return _index_length(term)
    if isinstance(term, SumList):
        base = ZERO
        for child in term.children:
            length = marker_host_length(child)
            if ord_compare(length, base) > 0:
                base = length
        return ord_add(base, from_int(len(term.children)))
    if isinstance(term, Scaled):
        return ord_add(marker_host_length(term.inner), _index_length(term.index))
    raise UnsupportedHost(
        f"marker embedding does not cover {format_term(term)}")


def marker_host(term: OrderTerm) -> FinSupp:
    """Finite-support host receiving the marker embedding of term."""
    return FinSupp(marker_host_length(term), MARKER_INNER, MARKER_ZERO)


def marker_embed(term: OrderTerm, elem) -> FinSuppFn:
    """Order-embedding of a term element into the marker host: inner
    coordinates keep their positions, a fresh top region carries one marker
    per index point (an up marker for well-ordered indices, a down marker
    for reversed ones)."""
    if not validate_element(term, elem):
        raise InvalidElement(f"{elem!r} is not an element of {format_term(term)}")
    host = marker_host(term)
    return FinSuppFn.build(host, _embed_entries(term, elem))


def _embed_entries(term: OrderTerm, elem) -> Dict[CnfOrdinal, int]:
    if isinstance(term, (Fin, Ord)) or (
            isinstance(term, Rev) and isinstance(term.inner, (Fin, Ord))):
        marker = MARKER_UP if _index_kind(term) == "up" else MARKER_DOWN
        return {_index_position(term, elem): marker}
    if isinstance(term, SumList):
        k, inner_elem = elem
        shared = ZERO
        for child in term.children:
            length = marker_host_length(child)
            if ord_compare(length, shared) > 0:
                shared = length
        entries = _embed_entries(term.children[k], inner_elem)
        entries[ord_add(shared, from_int(k))] = MARKER_UP
        return entries
    if isinstance(term, Scaled):
        index_elem, inner_elem = elem
        shared = marker_host_length(term.inner)
        entries = _embed_entries(term.inner, inner_elem)
        marker = MARKER_UP if _index_kind(term.index) == "up" else MARKER_DOWN
        entries[ord_add(shared, _index_position(term.index, index_elem))] = marker
        return entries
    raise UnsupportedHost(f"marker embedding does not cover {format_term(term)}")
