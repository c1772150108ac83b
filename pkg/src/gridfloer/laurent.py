"""Sparse multivariable Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

Exp = tuple[int, ...]


class LaurentPoly:
    """``sum c * t^e`` over exponent vectors ``e`` in ``Z^nvars``.

    With ``doubled=True`` the stored exponents are twice the actual ones, which
    lets link invariants carry half-integer powers exactly.
    """

    __slots__ = ("terms", "nvars", "doubled")

    def __init__(self, terms: Mapping[Exp, int] | None = None, nvars: int = 1, doubled: bool = False):
        self.nvars = nvars
        self.doubled = doubled
        self.terms: dict[Exp, int] = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(int(v) for v in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                self.terms[e] = int(c)

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: int, nvars: int = 1, doubled: bool = False) -> "LaurentPoly":
        return cls({(0,) * nvars: c}, nvars, doubled)

    @classmethod
    def monomial(cls, e: Iterable[int], c: int = 1, doubled: bool = False) -> "LaurentPoly":
        e = tuple(e)
        return cls({e: c}, len(e), doubled)

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls.monomial(e)

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self) -> tuple[Exp, int]:
        e = max(self.terms)
        return e, self.terms[e]

    def trailing(self) -> tuple[Exp, int]:
        e = min(self.terms)
        return e, self.terms[e]

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars or self.doubled != other.doubled:
            raise ValueError("incompatible Laurent polynomials")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars, self.doubled)
        self._check(other)
        return other

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.nvars, self.doubled)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.doubled)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        out: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.nvars, self.doubled)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("non-unit monomial")
            return LaurentPoly({tuple(k * v for v in e): c ** (-k)}, self.nvars, self.doubled)
        out = LaurentPoly.const(1, self.nvars, self.doubled)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars, self.doubled)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.doubled == other.doubled and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.doubled, frozenset(self.terms.items())))

    def shift(self, e: Iterable[int]) -> "LaurentPoly":
        e = tuple(e)
        return LaurentPoly(
            {tuple(a + b for a, b in zip(k, e)): c for k, c in self.terms.items()}, self.nvars, self.doubled
        )

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient ``self / other`` or ``None`` when ``other`` does not divide."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly({}, self.nvars, self.doubled)
        lead_e, lead_c = other.leading()
        if other.is_monomial():
            if any(c % lead_c for c in self.terms.values()):
                return None
            return LaurentPoly(
                {tuple(a - b for a, b in zip(e, lead_e)): c // lead_c for e, c in self.terms.items()},
                self.nvars,
                self.doubled,
            )
        # any quotient term is at least trailing(self) / trailing(other) in lex order
        floor = tuple(a - b for a, b in zip(self.trailing()[0], other.trailing()[0]))
        rem = dict(self.terms)
        quot: dict[Exp, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c:
                return None
            q_e = tuple(a - b for a, b in zip(e, lead_e))
            if q_e < floor:
                return None
            q_c = c // lead_c
            quot[q_e] = q_c
            for oe, oc in other.terms.items():
                k = tuple(a + b for a, b in zip(q_e, oe))
                v = rem.get(k, 0) - q_c * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot, self.nvars, self.doubled)

    def __floordiv__(self, other) -> "LaurentPoly":
        q = self.divmod_exact(other)
        if q is None:
            raise ArithmeticError("inexact Laurent division")
        return q

    # -- transformations ----------------------------------------------------
    def invert_vars(self) -> "LaurentPoly":
        """``t_i -> t_i^{-1}`` for every variable."""
        return LaurentPoly({tuple(-v for v in e): c for e, c in self.terms.items()}, self.nvars, self.doubled)

    def to_doubled(self) -> "LaurentPoly":
        if self.doubled:
            return self
        return LaurentPoly({tuple(2 * v for v in e): c for e, c in self.terms.items()}, self.nvars, True)

    def to_undoubled(self) -> "LaurentPoly":
        """Halve exponents; raises ``ValueError`` if some exponent is odd."""
        if not self.doubled:
            return self
        if any(v % 2 for e in self.terms for v in e):
            raise ValueError("half-integer exponents present")
        return LaurentPoly({tuple(v // 2 for v in e): c for e, c in self.terms.items()}, self.nvars, False)

    def evaluate(self, values) -> "Fraction":
        from fractions import Fraction

        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(values, e):
                if self.doubled:
                    if k % 2:
                        raise ValueError("cannot evaluate half-integer powers exactly")
                    k //= 2
                term *= Fraction(v) ** k
            total += term
        return total

    def specialize_equal(self) -> "LaurentPoly":
        """Set every ``t_i`` equal to a single ``t``."""
        out: dict[Exp, int] = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, 1, self.doubled)

    def degree_span(self) -> list[tuple[int, int]]:
        return [
            (min(e[i] for e in self.terms), max(e[i] for e in self.terms)) for i in range(self.nvars)
        ]

    # -- output -------------------------------------------------------------
    def _var(self, i: int) -> str:
        return "t" if self.nvars == 1 else f"t{i + 1}"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if self.doubled:
                    factors.append(f"{self._var(i)}^{{{k}/2}}" if k % 2 else self._power(i, k // 2))
                else:
                    factors.append(self._power(i, k))
            mono = " * ".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c} * {mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def _power(self, i: int, k: int) -> str:
        return self._var(i) if k == 1 else f"{self._var(i)}^{k}"

    def to_json(self) -> list[dict]:
        d = self.to_doubled()
        return [{"exponents_doubled": list(e), "coeff": c} for e, c in sorted(d.terms.items())]

    @classmethod
    def from_json(cls, rows: list[dict], nvars: int | None = None) -> "LaurentPoly":
        terms = {tuple(r["exponents_doubled"]): r["coeff"] for r in rows}
        if nvars is None:
            nvars = len(next(iter(terms))) if terms else 1
        return cls(terms, nvars, True)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    __str__ = to_text
