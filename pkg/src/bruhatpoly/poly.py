"""Exact polynomial arithmetic.

Everything in this module is exact: univariate polynomials over unbounded
Python integers, monomial weights with rational exponents, and sparse
bivariate polynomials. No floating point is used anywhere; averages and
exponents are `fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

__all__ = [
    "IntPoly",
    "Monomial",
    "BiPoly",
    "AverageUndefinedError",
    "ZERO",
    "ONE",
    "Q",
    "Q_PLUS_ONE",
    "Q_MINUS_ONE",
    "monomial",
    "shift_plus_one",
    "size",
    "total",
    "average",
    "monomialize",
    "monomial_add",
    "coeffwise_leq",
]


class AverageUndefinedError(ArithmeticError):
    """The average of the zero polynomial is left undefined."""


class IntPoly:
    """Dense univariate polynomial in q over the integers.

    ``coeffs[i]`` is the coefficient of ``q**i``. The tuple is normalized
    (no trailing zeros); the zero polynomial has an empty tuple. Instances
    are immutable, hashable and safe to share between workers.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({self.text()})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    def __rmul__(self, other: int) -> "IntPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple((i + 1) * c for i, c in enumerate(self.coeffs[1:])))

    def __call__(self, x: Scalar) -> Scalar:
        """Evaluate at an integer or exact rational point (Horner)."""
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- rendering ---------------------------------------------------------

    def text(self, descending: bool = True) -> str:
        """Render as e.g. ``q^3 + 2*q^2 - 1``."""
        if not self.coeffs:
            return "0"
        terms = []
        indices = range(len(self.coeffs))
        for i in (reversed(indices) if descending else indices):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "q" if i == 1 else f"q^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        sign0, body0 = terms[0]
        out = body0 if sign0 == "+" else f"-{body0}"
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


ZERO = IntPoly()
ONE = IntPoly((1,))
Q = IntPoly((0, 1))
Q_PLUS_ONE = IntPoly((1, 1))
Q_MINUS_ONE = IntPoly((-1, 1))


def monomial(exponent: int, coefficient: int = 1) -> IntPoly:
    """The polynomial ``coefficient * q**exponent``."""
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    return IntPoly((0,) * exponent + (coefficient,))


def shift_plus_one(f: IntPoly) -> IntPoly:
    """Return f(q+1), re-expanded exactly (Horner in q+1)."""
    acc = ZERO
    for c in reversed(f.coeffs):
        acc = acc * Q_PLUS_ONE + IntPoly((c,))
    return acc


def size(f: IntPoly) -> int:
    """f(1); 0 for the zero polynomial."""
    return sum(f.coeffs)


def total(f: IntPoly) -> int:
    """f'(1); 0 for the zero polynomial."""
    return sum(i * c for i, c in enumerate(f.coeffs))


def average(f: IntPoly) -> Fraction:
    """Exact average f'(1)/f(1) of a nonzero polynomial."""
    s = size(f)
    if s == 0:
        raise AverageUndefinedError("average of the zero polynomial is undefined")
    return Fraction(total(f), s)


def coeffwise_leq(f: IntPoly, g: IntPoly) -> bool:
    """True when every coefficient of f is <= the matching coefficient of g."""
    n = max(len(f.coeffs), len(g.coeffs))
    return all(f.coefficient(i) <= g.coefficient(i) for i in range(n))


@dataclass(frozen=True)
class Monomial:
    """Monomial weight ``size * q**exponent`` with an exact rational exponent.

    A size of 0 denotes the zero monomial; its exponent is normalized to 0.
    """

    size: int
    exponent: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("monomial size must be nonnegative")
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.size == 0:
            object.__setattr__(self, "exponent", Fraction(0))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.size == 0 or other.size == 0:
            return Monomial(0)
        return Monomial(self.size * other.size, self.exponent + other.exponent)

    def __pow__(self, n: int) -> "Monomial":
        if n < 0:
            raise ValueError("negative power of a monomial")
        out = Monomial(1)
        for _ in range(n):
            out = out * self
        return out

    def text(self) -> str:
        if self.size == 0:
            return "0"
        if self.exponent == 0:
            return str(self.size)
        e = self.exponent
        expo = str(e.numerator) if e.denominator == 1 else f"({e})"
        head = "" if self.size == 1 else f"{self.size}*"
        return f"{head}q^{expo}"


def monomialize(f: IntPoly) -> Monomial:
    """The monomial with the same size and average as f; 0 maps to 0."""
    s = size(f)
    if s == 0:
        return Monomial(0)
    return Monomial(s, average(f))


def monomial_add(a: Monomial, b: Monomial) -> Monomial:
    """Re-monomialized sum: sizes add, totals add, average is recomputed."""
    s = a.size + b.size
    if s == 0:
        return Monomial(0)
    grand_total = a.size * a.exponent + b.size * b.exponent
    return Monomial(s, Fraction(grand_total, s))


class BiPoly:
    """Sparse bivariate polynomial in commuting variables (p, q).

    Terms map exponent pairs ``(i, j)`` (power of p, power of q) to nonzero
    integer coefficients.
    """

    __slots__ = ("terms",)

    MODES = ("q,q", "q+1,q+1", "1,q+1", "0,q+1")

    def __init__(self, terms: Union[Mapping[tuple[int, int], int], Iterable] = ()) -> None:
        d = dict(terms)
        self.terms: dict[tuple[int, int], int] = {
            (int(i), int(j)): int(c) for (i, j), c in d.items() if c != 0
        }

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        items = ", ".join(f"p^{i}*q^{j}: {c}" for (i, j), c in sorted(self.terms.items()))
        return f"BiPoly({{{items}}})"

    def specialize(self, p_value: IntPoly, q_value: IntPoly) -> IntPoly:
        """Substitute univariate polynomials for p and q."""
        p_powers: dict[int, IntPoly] = {0: ONE}
        q_powers: dict[int, IntPoly] = {0: ONE}

        def power(cache: dict[int, IntPoly], base: IntPoly, n: int) -> IntPoly:
            while n not in cache:
                k = max(cache)
                cache[k + 1] = cache[k] * base
            return cache[n]

        out = ZERO
        for (i, j), c in sorted(self.terms.items()):
            out = out + power(p_powers, p_value, i) * power(q_powers, q_value, j) * c
        return out

    def specialize_named(self, mode: str) -> IntPoly:
        """One of the four standard substitutions, by name.

        ``"q,q"`` sets p = q; ``"q+1,q+1"`` sets both variables to q+1;
        ``"1,q+1"`` sets p = 1, q = q+1; ``"0,q+1"`` sets p = 0, q = q+1.
        """
        if mode == "q,q":
            return self.specialize(Q, Q)
        if mode == "q+1,q+1":
            return self.specialize(Q_PLUS_ONE, Q_PLUS_ONE)
        if mode == "1,q+1":
            return self.specialize(ONE, Q_PLUS_ONE)
        if mode == "0,q+1":
            return self.specialize(ZERO, Q_PLUS_ONE)
        raise ValueError(f"unknown specialization mode {mode!r}; expected one of {self.MODES}")
