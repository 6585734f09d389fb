"""Ordinals below epsilon_0 in Cantor normal form.

A value is a finite sum ``w^e1*c1 + ... + w^em*cm`` with strictly decreasing
exponents (themselves ordinals of the same kind) and positive integer
coefficients.  The empty sum is 0.  Equality is structural, which coincides
with ordinal equality because the representation is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

from .errors import ScatterCalcError

# Resource guard: exponent towers nested deeper than this are rejected as
# "not representable" even though CNF arithmetic is formally closed below
# epsilon_0.
EXPONENT_DEPTH_LIMIT = 64

FUNDAMENTAL_SEQUENCE_ID = "wainer-cnf"


class OrdinalError(ScatterCalcError):
    pass


class OverflowBeyondEpsilon0(OrdinalError):
    """Result would need an exponent tower deeper than the supported limit."""


class ZeroInput(OrdinalError):
    pass


class NotALimit(OrdinalError):
    pass


class OrdinalSyntaxError(OrdinalError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class CnfOrdinal:
    """Cantor normal form ordinal; ``terms`` is a tuple of (exponent, coefficient)."""

    terms: Tuple[Tuple["CnfOrdinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exponent, coefficient in self.terms:
            if not isinstance(exponent, CnfOrdinal):
                raise OrdinalError(f"exponent must be a CnfOrdinal, got {exponent!r}")
            if not isinstance(coefficient, int) or coefficient < 1:
                raise OrdinalError(f"coefficient must be a positive int, got {coefficient!r}")
            if prev is not None and ord_compare(prev, exponent) <= 0:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = exponent

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if not self.terms:
            return 0
        if self.is_finite():
            return self.terms[0][1]
        raise OrdinalError(f"{self} is not finite")

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def predecessor(self) -> "CnfOrdinal":
        if not self.is_successor():
            raise OrdinalError(f"{self} is not a successor")
        exp, c = self.terms[-1]
        rest = self.terms[:-1]
        if c > 1:
            rest = rest + ((exp, c - 1),)
        return CnfOrdinal(rest)

    def leading_exponent(self) -> "CnfOrdinal":
        if not self.terms:
            raise ZeroInput("0 has no leading exponent")
        return self.terms[0][0]

    def depth(self) -> int:
        if not self.terms:
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    # -- operators ----------------------------------------------------------

    def __lt__(self, other): return ord_compare(self, _coerce(other)) < 0
    def __le__(self, other): return ord_compare(self, _coerce(other)) <= 0
    def __gt__(self, other): return ord_compare(self, _coerce(other)) > 0
    def __ge__(self, other): return ord_compare(self, _coerce(other)) >= 0
    def __add__(self, other): return ord_add(self, _coerce(other))
    def __mul__(self, other): return ord_mul(self, _coerce(other))
    def __pow__(self, other): return ord_pow(self, _coerce(other))

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"CnfOrdinal<{format_ordinal(self)}>"


OrdinalLike = Union[CnfOrdinal, int]

ZERO = CnfOrdinal()
ONE = CnfOrdinal(((ZERO, 1),))
OMEGA = CnfOrdinal(((ONE, 1),))


def from_int(n: int) -> CnfOrdinal:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return CnfOrdinal(((ZERO, n),))


def _coerce(value: OrdinalLike) -> CnfOrdinal:
    if isinstance(value, CnfOrdinal):
        return value
    if isinstance(value, int):
        return from_int(value)
    raise OrdinalError(f"cannot interpret {value!r} as an ordinal")


def ensure_ordinal(value: OrdinalLike) -> CnfOrdinal:
    """Public coercion helper: ints become finite ordinals."""
    return _coerce(value)


def omega_power(exponent: OrdinalLike, coefficient: int = 1) -> CnfOrdinal:
    exponent = _coerce(exponent)
    if coefficient == 0:
        return ZERO
    return CnfOrdinal(((exponent, coefficient),))


def ord_compare(a: OrdinalLike, b: OrdinalLike) -> int:
    """Total ordinal order: -1, 0 or 1."""
    a, b = _coerce(a), _coerce(b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def ord_add(a: OrdinalLike, b: OrdinalLike) -> CnfOrdinal:
    a, b = _coerce(a), _coerce(b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    eb = b.terms[0][0]
    keep = []
    merged = None
    for exponent, coefficient in a.terms:
        c = ord_compare(exponent, eb)
        if c > 0:
            keep.append((exponent, coefficient))
        elif c == 0:
            merged = coefficient
            break
        else:
            break
    if merged is not None:
        head = (eb, merged + b.terms[0][1])
        return CnfOrdinal(tuple(keep) + (head,) + b.terms[1:])
    return CnfOrdinal(tuple(keep) + b.terms)


def ord_sub_left(a: OrdinalLike, b: OrdinalLike) -> CnfOrdinal:
    """The unique s with a + s = b; requires a <= b."""
    a, b = _coerce(a), _coerce(b)
    for i, (ta, tb) in enumerate(zip(a.terms, b.terms)):
        if ta == tb:
            continue
        c = ord_compare(ta[0], tb[0])
        if c < 0:
            return CnfOrdinal(b.terms[i:])
        if c > 0:
            raise OrdinalError(f"{a} > {b}: left subtraction undefined")
        if ta[1] < tb[1]:
            return CnfOrdinal(((tb[0], tb[1] - ta[1]),) + b.terms[i + 1:])
        raise OrdinalError(f"{a} > {b}: left subtraction undefined")
    if len(a.terms) > len(b.terms):
        raise OrdinalError(f"{a} > {b}: left subtraction undefined")
    return CnfOrdinal(b.terms[len(a.terms):])


def ord_mul(a: OrdinalLike, b: OrdinalLike) -> CnfOrdinal:
    a, b = _coerce(a), _coerce(b)
    if a.is_zero() or b.is_zero():
        return ZERO
    e1, c1 = a.terms[0]
    out = []
    for exponent, coefficient in b.terms:
        if exponent.is_zero():
            out.append((e1, c1 * coefficient))
            out.extend(a.terms[1:])
        else:
            out.append((ord_add(e1, exponent), coefficient))
    return CnfOrdinal(tuple(out))


def _finite_pow(a: CnfOrdinal, n: int) -> CnfOrdinal:
    result = ONE
    base = a
    while n:
        if n & 1:
            result = ord_mul(result, base)
        base_needed = n >> 1
        if base_needed:
            base = ord_mul(base, base)
        n >>= 1
    return result


def ord_pow(a: OrdinalLike, b: OrdinalLike) -> CnfOrdinal:
    a, b = _coerce(a), _coerce(b)
    if b.is_zero():
        return ONE
    if a.is_zero():
        return ZERO
    if a == ONE:
        return ONE
    if b.is_finite():
        result = _finite_pow(a, b.as_int())
    else:
        infinite = CnfOrdinal(tuple(t for t in b.terms if not t[0].is_zero()))
        finite_part = b.terms[-1][1] if b.terms[-1][0].is_zero() else 0
        if a.is_finite():
            # k^(w^e*d) = w^(w^e'*d) with e' = e-1 for finite e, e' = e for limit e
            image_terms = []
            for exponent, coefficient in infinite.terms:
                if exponent.is_finite():
                    shifted = from_int(exponent.as_int() - 1)
                else:
                    shifted = exponent
                image_terms.append((shifted, coefficient))
            head = omega_power(CnfOrdinal(tuple(image_terms)))
        else:
            head = omega_power(ord_mul(a.terms[0][0], infinite))
        result = ord_mul(head, _finite_pow(a, finite_part))
    if result.depth() > EXPONENT_DEPTH_LIMIT:
        raise OverflowBeyondEpsilon0(
            f"exponent tower deeper than {EXPONENT_DEPTH_LIMIT} is not representable")
    return result


def is_indecomposable(a: OrdinalLike) -> bool:
    """True iff a is a single omega power (1 = w^0 counts)."""
    a = _coerce(a)
    if a.is_zero():
        raise ZeroInput("0 is neither decomposable nor indecomposable here")
    return len(a.terms) == 1 and a.terms[0][1] == 1


def fundamental_sequence(a: OrdinalLike, i: int) -> CnfOrdinal:
    """i-th member of the canonical increasing sequence converging to limit a.

    Rules: (s+t)[i] = s + t[i] for t the last CNF term;
    (w^(g+1)*c)[i] = w^(g+1)*(c-1) + w^g*(i+1);
    (w^l*c)[i] = w^l*(c-1) + w^(l[i]) for limit l.
    """
    a = _coerce(a)
    if not a.is_limit():
        raise NotALimit(f"{a} is not a limit ordinal")
    if i < 0:
        raise OrdinalError("index must be a natural number")
    if len(a.terms) > 1:
        prefix = CnfOrdinal(a.terms[:-1])
        return ord_add(prefix, fundamental_sequence(CnfOrdinal(a.terms[-1:]), i))
    exponent, coefficient = a.terms[0]
    prefix = omega_power(exponent, coefficient - 1)
    if exponent.is_successor():
        step = omega_power(exponent.predecessor(), i + 1)
    else:
        step = omega_power(fundamental_sequence(exponent, i))
    return ord_add(prefix, step)


def split_at_exponent(xi: OrdinalLike, gamma: OrdinalLike) -> Tuple[int, CnfOrdinal]:
    """Write xi < w^(gamma+1) as w^gamma*i + rest with rest < w^gamma."""
    xi, gamma = _coerce(xi), _coerce(gamma)
    count = 0
    rest = []
    for exponent, coefficient in xi.terms:
        c = ord_compare(exponent, gamma)
        if c > 0:
            raise OrdinalError(f"{xi} is not below w^({gamma}+1)")
        if c == 0:
            count = coefficient
        else:
            rest.append((exponent, coefficient))
    return count, CnfOrdinal(tuple(rest))


# -- text form ---------------------------------------------------------------

def format_ordinal(a: OrdinalLike) -> str:
    a = _coerce(a)
    if a.is_zero():
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent.is_zero():
            parts.append(str(coefficient))
            continue
        if exponent == ONE:
            body = "w"
        elif exponent.is_finite():
            body = f"w^{exponent.as_int()}"
        elif exponent == OMEGA:
            body = "w^w"
        else:
            body = f"w^({format_ordinal(exponent)})"
        if coefficient > 1:
            body += f"*{coefficient}"
        parts.append(body)
    return " + ".join(parts)


class _OrdinalParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> OrdinalSyntaxError:
        return OrdinalSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def exponent(self) -> CnfOrdinal:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            value = self.ordinal()
            self.take(")")
            return value
        if ch == "w":
            self.pos += 1
            return OMEGA
        return from_int(self.natural())

    def term(self) -> CnfOrdinal:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            exponent = ONE
            if self.peek() == "^":
                self.take("^")
                exponent = self.exponent()
            coefficient = 1
            if self.peek() == "*":
                self.take("*")
                coefficient = self.natural()
            return omega_power(exponent, coefficient)
        if ch.isdigit():
            return from_int(self.natural())
        raise self.error("expected 'w' or a natural number")

    def ordinal(self) -> CnfOrdinal:
        value = self.term()
        while self.peek() == "+":
            self.take("+")
            value = ord_add(value, self.term())
        return value


def parse_ordinal(text: str) -> CnfOrdinal:
    parser = _OrdinalParser(text)
    value = parser.ordinal()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input after ordinal")
    if value.depth() > EXPONENT_DEPTH_LIMIT:
        raise OverflowBeyondEpsilon0("ordinal literal nests too deep")
    return value


def ordinals_below(a: OrdinalLike) -> Iterator[CnfOrdinal]:
    """Ascending enumeration of all ordinals below finite a."""
    a = _coerce(a)
    n = a.as_int()
    for i in range(n):
        yield from_int(i)
