"""Countable-scale decomposition labellings with symbolic class-size bounds.

An ordinal below epsilon_0 is split into countably many classes whose order
types stay below w^(n+1); the same recursion lifts to composite order terms
through an injective pairing of the index and summand labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Tuple

from .errors import ScatterCalcError
from .ordinal import (
    CnfOrdinal,
    ZERO,
    ensure_ordinal,
    fundamental_sequence,
    from_int,
    omega_power,
    ord_add,
    ord_compare,
    ord_mul,
    ord_sub_left,
    split_at_exponent,
)
from . import terms
from .terms import (
    Fin,
    FinSupp,
    Ord,
    OrderTerm,
    Rev,
    Scaled,
    Shuffle,
    SumList,
    pow_term,
    search_embedding,
    validate_element,
)
from .partition import Labeling


class MilnerRadoError(ScatterCalcError):
    pass


class ElementOutOfRange(MilnerRadoError):
    pass


class UnsupportedConstructor(MilnerRadoError):
    pass


@dataclass(frozen=True)
class PairingFn:
    """Injective pairing of naturals with pi(m, n) >= m + n + 1."""

    name: str
    fn: Callable[[int, int], int]

    def __call__(self, m: int, n: int) -> int:
        return self.fn(m, n)


def _cantor_shifted(m: int, n: int) -> int:
    return (m + n) * (m + n + 1) // 2 + n + 1


CANTOR1 = PairingFn("cantor1", _cantor_shifted)

PAIRINGS = {"cantor1": CANTOR1}


def check_pairing(pi: PairingFn, bound: int) -> bool:
    """Pointwise check of injectivity and the m+n+1 lower bound on [0, bound)^2."""
    seen = {}
    for m in range(bound):
        for n in range(bound):
            v = pi(m, n)
            if v < m + n + 1:
                return False
            if v in seen and seen[v] != (m, n):
                return False
            seen[v] = (m, n)
    return True


# -- ordinal labelling ----------------------------------------------------------

def _label_within_power(exponent: CnfOrdinal, xi: CnfOrdinal) -> int:
    """Label of position xi inside a block of type w^exponent."""
    if exponent.is_zero():
        return 0
    if exponent.is_successor():
        gamma = exponent.predecessor()
        _, rest = split_at_exponent(xi, gamma)
        return 1 + _label_within_power(gamma, rest)
    i = 0
    while ord_compare(xi, omega_power(fundamental_sequence(exponent, i))) >= 0:
        i += 1
    return 1 + _label_within_power(fundamental_sequence(exponent, i), xi)


def mr_label_ordinal(alpha, xi) -> int:
    """Class index of xi in the decomposition of alpha.

    Finite ordinals collapse to class 0; each CNF summand is handled inside
    its own block, successor-exponent blocks descend one power per level and
    limit exponents descend along their fundamental sequence.  The class of
    label n always has order type below w^(n+1).
    """
    alpha, xi = ensure_ordinal(alpha), ensure_ordinal(xi)
    if ord_compare(xi, alpha) >= 0:
        raise ElementOutOfRange(f"{xi} is not an element of {alpha}")
    if alpha.is_finite():
        return 0
    running = ZERO
    for exponent, coefficient in alpha.terms:
        nxt = ord_add(running, omega_power(exponent, coefficient))
        if ord_compare(xi, nxt) < 0:
            delta = ord_sub_left(running, xi)
            _, rest = split_at_exponent(delta, exponent)
            return _label_within_power(exponent, rest)
        running = nxt
    raise MilnerRadoError("unreachable: xi below alpha but in no block")


def _bound_within_power(exponent: CnfOrdinal, n: int) -> CnfOrdinal:
    if exponent.is_zero():
        return from_int(1) if n == 0 else ZERO
    if n == 0:
        return ZERO
    if exponent.is_successor():
        inner = _bound_within_power(exponent.predecessor(), n - 1)
        if inner.is_zero():
            return ZERO
        return ord_mul(inner, omega_power(from_int(1)))
    # limit exponent: omega-many segment pieces each below w^n sum to at most w^n
    if n <= 1:
        return ZERO
    return omega_power(from_int(n))


def mr_class_type_bound(alpha, n: int) -> CnfOrdinal:
    """Ordinal B with otp(class n of alpha) <= B and B < w^(n+1).

    Exact for finite ordinals and successor-exponent blocks; limit-exponent
    blocks are capped at w^n, the value of the omega-fold segment sum.
    """
    alpha = ensure_ordinal(alpha)
    if n < 0:
        raise ValueError("class index must be a natural number")
    total = ZERO
    for exponent, coefficient in alpha.terms:
        piece = _bound_within_power(exponent, n)
        total = ord_add(total, ord_mul(piece, coefficient))
    return total


# -- term labelling ---------------------------------------------------------------

def _term_label(term: OrderTerm, elem: Any, pi: PairingFn,
                trace: Optional[List[Tuple[int, int, int]]]) -> int:
    if isinstance(term, Fin):
        return 0
    if isinstance(term, Ord):
        return mr_label_ordinal(term.ordinal, elem)
    if isinstance(term, Rev):
        if isinstance(term.inner, Ord):
            return mr_label_ordinal(term.inner.ordinal, elem)
        if isinstance(term.inner, Fin):
            return 0
        raise UnsupportedConstructor(
            "reversal is only labelled over ordinal and finite bases")
    if isinstance(term, SumList):
        k, inner_elem = elem
        m = 0
        n = _term_label(term.children[k], inner_elem, pi, trace)
        value = pi(m, n)
        if trace is not None:
            trace.append((m, n, value))
        return value
    if isinstance(term, Scaled):
        index_elem, inner_elem = elem
        m = _term_label(term.index, index_elem, pi, None)
        n = _term_label(term.inner, inner_elem, pi, trace)
        value = pi(m, n)
        if trace is not None:
            trace.append((m, n, value))
        return value
    if isinstance(term, (Shuffle, FinSupp)):
        raise UnsupportedConstructor(
            f"{type(term).__name__} terms are outside the labelled fragment")
    raise MilnerRadoError(f"not an OrderTerm: {term!r}")


def mr_label_term(term: OrderTerm, elem: Any, pi: PairingFn = CANTOR1) -> int:
    """Label of a term element: base blocks via mr_label_ordinal, composite
    constructors via pi(index label, inner label)."""
    if not validate_element(term, elem):
        raise ElementOutOfRange(f"{elem!r} is not an element of {terms.format_term(term)}")
    return _term_label(term, elem, pi, None)


def mr_label_term_trace(term: OrderTerm, elem: Any, pi: PairingFn = CANTOR1
                        ) -> Tuple[int, List[Tuple[int, int, int]]]:
    """Label plus the (m, n, pi(m, n)) combination executed at each level,
    innermost first."""
    if not validate_element(term, elem):
        raise ElementOutOfRange(f"{elem!r} is not an element of {terms.format_term(term)}")
    trace: List[Tuple[int, int, int]] = []
    label = _term_label(term, elem, pi, trace)
    return label, trace


def mr_labeling(term: OrderTerm, elements, pi: PairingFn = CANTOR1) -> Labeling:
    labeling = Labeling(list(elements), [mr_label_term(term, e, pi) for e in elements])
    labeling.validate()
    return labeling


# -- verification-only subset check -------------------------------------------------

def down_up_block_power(n: int, block: int = 2) -> OrderTerm:
    """Finite stand-in for the n-th power of (descending block + ascending block)."""
    if n == 0:
        return Fin(1)
    base = SumList((Rev(Fin(block)), Fin(block)))
    return pow_term(base, n)


def ks_omega_check(labeling: Labeling, n: int, block: int = 2) -> bool:
    """True iff the size-4^n down-up approximant does not embed into class n.

    A sound necessary check only: the sample is finite, so failure to embed
    here never certifies the infinite avoidance statement.
    """
    cls = [labeling.elements[i] for i in labeling.class_indices(n)]
    pattern = down_up_block_power(n, block)
    return search_embedding(pattern, cls) is None
