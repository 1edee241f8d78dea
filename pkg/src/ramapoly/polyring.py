"""Exact sparse multivariate polynomial arithmetic over the integers.

A polynomial lives in a fixed *universe*: an ordered tuple of variable names,
e.g. ``("x", "y", "z", "t")``.  Terms are stored as a dict mapping exponent
tuples (one entry per universe variable) to nonzero ``int`` coefficients; the
zero polynomial has an empty term map.  Coefficients are plain Python ints,
so nothing overflows or rounds.

Canonical text form (bit-stable, used for golden comparisons): terms sorted
by descending total degree, ties broken lexicographically by the exponent
vector in universe order; terms joined with `` + `` / `` - ``; a coefficient
of magnitude 1 is dropped in front of a nonempty monomial; ``^e`` only for
e >= 2; variables joined by ``*``.

The parser accepts the canonical form plus relaxed input: implicit
multiplication (``3x``, ``(x+1)t``), parentheses with integer powers, and
arbitrary whitespace.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Union


class PolyError(ValueError):
    """Base class for polynomial errors."""


class UniverseMismatch(PolyError):
    """Operands live in different variable universes."""


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


Universe = tuple[str, ...]
Exponents = tuple[int, ...]


class Poly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("universe", "terms")

    def __init__(self, universe: Iterable[str], terms: Mapping[Exponents, int] | None = None):
        uni = tuple(universe)
        if len(set(uni)) != len(uni):
            raise PolyError(f"duplicate variable names in universe {uni}")
        object.__setattr__(self, "universe", uni)
        clean: dict[Exponents, int] = {}
        if terms:
            arity = len(uni)
            for exps, coeff in terms.items():
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != arity or any(e < 0 for e in exps):
                    raise PolyError(f"bad exponent vector {exps} for universe {uni}")
                clean[exps] = clean.get(exps, 0) + coeff
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, universe: Iterable[str]) -> "Poly":
        return cls(universe)

    @classmethod
    def const(cls, universe: Iterable[str], value: int) -> "Poly":
        uni = tuple(universe)
        return cls(uni, {(0,) * len(uni): value})

    @classmethod
    def var(cls, universe: Iterable[str], name: str, power: int = 1) -> "Poly":
        uni = tuple(universe)
        if name not in uni:
            raise PolyError(f"unknown variable {name!r} in universe {uni}")
        if power < 0:
            raise PolyError("negative powers are not supported")
        exps = tuple(power if v == name else 0 for v in uni)
        return cls(uni, {exps: 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, exps: Exponents) -> int:
        return self.terms.get(tuple(exps), 0)

    def variables_used(self) -> set[str]:
        used = set()
        for exps in self.terms:
            for name, e in zip(self.universe, exps):
                if e:
                    used.add(name)
        return used

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: Union["Poly", int]) -> "Poly":
        if isinstance(other, Poly):
            if other.universe != self.universe:
                raise UniverseMismatch(
                    f"universe mismatch: {self.universe} vs {other.universe}")
            return other
        if isinstance(other, int):
            return Poly.const(self.universe, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Union["Poly", int]) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, 0) + coeff
        return Poly(self.universe, out)

    __radd__ = __add__

    def __sub__(self, other: Union["Poly", int]) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, 0) - coeff
        return Poly(self.universe, out)

    def __rsub__(self, other: Union["Poly", int]) -> "Poly":
        return (-self) + other

    def __neg__(self) -> "Poly":
        return Poly(self.universe, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Union["Poly", int]) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return Poly(self.universe, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise PolyError("polynomial powers must be nonnegative integers")
        result = Poly.const(self.universe, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == Poly.const(self.universe, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self.terms.items())))

    # -- calculus and substitution -----------------------------------------

    def derivative(self, name: str) -> "Poly":
        idx = self._var_index(name)
        out: dict[Exponents, int] = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            key = exps[:idx] + (e - 1,) + exps[idx + 1:]
            out[key] = out.get(key, 0) + coeff * e
        return Poly(self.universe, out)

    def shifted_derivative(self, name: str, shift: int) -> "Poly":
        """Apply the operator (shift + v * d/dv) for v = name."""
        if shift < 0:
            raise PolyError("shift must be nonnegative")
        return self * shift + Poly.var(self.universe, name) * self.derivative(name)

    def substitute(self, assignment: Mapping[str, Union["Poly", int]]) -> "Poly":
        """Simultaneous substitution; unassigned variables map to themselves."""
        values: list[Poly] = []
        for name in assignment:
            if name not in self.universe:
                raise UniverseMismatch(
                    f"cannot substitute unknown variable {name!r} in universe {self.universe}")
        for name in self.universe:
            value = assignment.get(name, None)
            if value is None:
                values.append(Poly.var(self.universe, name))
            elif isinstance(value, int):
                values.append(Poly.const(self.universe, value))
            else:
                if value.universe != self.universe:
                    raise UniverseMismatch(
                        f"substituted value for {name!r} lives in {value.universe}, "
                        f"expected {self.universe}")
                values.append(value)
        result = Poly.zero(self.universe)
        power_cache: dict[tuple[int, int], Poly] = {}
        for exps, coeff in self.terms.items():
            term = Poly.const(self.universe, coeff)
            for idx, e in enumerate(exps):
                if e == 0:
                    continue
                key = (idx, e)
                if key not in power_cache:
                    power_cache[key] = values[idx] ** e
                term = term * power_cache[key]
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, int]) -> int:
        """Exact integer evaluation; every variable appearing in p must be assigned."""
        missing = self.variables_used() - set(point)
        if missing:
            raise PolyError(f"unassigned variables: {sorted(missing)}")
        values = [point.get(name, 0) for name in self.universe]
        total = 0
        for exps, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(values, exps):
                if e:
                    prod *= v ** e
            total += prod
        return total

    def extend(self, universe: Iterable[str]) -> "Poly":
        """Embed into a larger universe (matching variables by name)."""
        uni = tuple(universe)
        try:
            positions = [uni.index(name) for name in self.universe]
        except ValueError as exc:
            raise UniverseMismatch(
                f"universe {uni} does not contain all of {self.universe}") from exc
        out: dict[Exponents, int] = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(uni)
            for pos, e in zip(positions, exps):
                new[pos] = e
            out[tuple(new)] = coeff
        return Poly(uni, out)

    # -- rendering ---------------------------------------------------------

    def _var_index(self, name: str) -> int:
        try:
            return self.universe.index(name)
        except ValueError:
            raise UniverseMismatch(
                f"unknown variable {name!r} in universe {self.universe}") from None

    def _ordered_terms(self) -> Iterator[tuple[Exponents, int]]:
        def key(exps: Exponents):
            return (-sum(exps), tuple(-e for e in exps))
        for exps in sorted(self.terms, key=key):
            yield exps, self.terms[exps]

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exps, coeff in self._ordered_terms():
            factors = []
            for name, e in zip(self.universe, exps):
                if e == 1:
                    factors.append(name)
                elif e >= 2:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"{' - ' if coeff < 0 else ' + '}{body}")
        return "".join(pieces)

    __str__ = render

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"


def poly_prod(factors: Iterable[Union[Poly, int]], universe: Iterable[str]) -> Poly:
    """Product of an iterable of polynomials; the empty product is 1."""
    result = Poly.const(universe, 1)
    for f in factors:
        result = result * f
    return result


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*^()])|(\S)")


def _split_name(word: str, universe: Universe) -> list[str] | None:
    """Split a run of letters into universe names by greedy longest match,
    so relaxed input like "3xy" or "2xt^2" reads as products."""
    names = sorted(universe, key=len, reverse=True)
    parts = []
    i = 0
    while i < len(word):
        for name in names:
            if word.startswith(name, i):
                parts.append(name)
                i += len(name)
                break
        else:
            return None
    return parts


def _tokenize(text: str, universe: Universe) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        pos = m.start()
        if m.group(1):
            tokens.append(("num", m.group(1), pos))
        elif m.group(2):
            word = m.group(2)
            if word in universe:
                tokens.append(("name", word, pos))
            else:
                parts = _split_name(word, universe)
                if parts is None:
                    tokens.append(("name", word, pos))  # parser reports it
                else:
                    tokens.extend(("name", part, pos) for part in parts)
        elif m.group(3):
            tokens.append(("op", m.group(3), pos))
        else:
            raise ParseError(f"unexpected character {m.group(4)!r}", pos)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, universe: Universe):
        self.tokens = _tokenize(text, universe)
        self.universe = universe
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Poly:
        poly = self.parse_sum()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos)
        return poly

    def parse_sum(self) -> Poly:
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.advance()
            sign = -1 if value == "-" else 1
        total = self.parse_term() * sign
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                term = self.parse_term()
                total = total - term if value == "-" else total + term
            else:
                return total

    def parse_term(self) -> Poly:
        result = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                result = result * self.parse_factor()
            elif kind in ("num", "name") or (kind == "op" and value == "("):
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> Poly:
        kind, value, pos = self.advance()
        if kind == "op" and value in "+-":
            inner = self.parse_factor()
            return -inner if value == "-" else inner
        if kind == "num":
            base = Poly.const(self.universe, int(value))
        elif kind == "name":
            if value not in self.universe:
                raise ParseError(f"unknown variable {value!r}", pos)
            base = Poly.var(self.universe, value)
        elif kind == "op" and value == "(":
            base = self.parse_sum()
            kind, value, pos = self.advance()
            if not (kind == "op" and value == ")"):
                raise ParseError("expected ')'", pos)
        else:
            raise ParseError(f"unexpected token {value!r}", pos)
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.advance()
            if kind != "num":
                raise ParseError("expected integer exponent after '^'", pos)
            base = base ** int(value)
        return base


def parse(text: str, universe: Iterable[str]) -> Poly:
    """Parse canonical-or-relaxed polynomial text over the given universe."""
    return _Parser(text, tuple(universe)).parse()
