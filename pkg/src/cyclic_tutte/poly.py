"""Exact polynomial arithmetic for rank generating and Tutte polynomials.

Two value types are provided:

- `BivarPoly`: sparse polynomial in `x, y` with integer coefficients, used
  for S(M; x, y), T(M; x, y) and products of cloud and flock polynomials.
- `UnivarPoly`: sparse polynomial in one variable, used for cloud
  polynomials (in `x`), flock polynomials (in `y`) and the binomial
  polynomials `bx`, `by`.

Both are immutable, hashable and normalized (no zero coefficient is ever
stored). Coefficients are Python ints, so there is no overflow at Golay
scale.

The module also provides the two linear maps used to recover the cloud of
the bottom and the flock of the top of a lattice interval:

- `delta_x(f)`: substitute `y = 1/x`, keep the strictly positive degrees.
- `delta_y(f)`: substitute `x = 1/y`, keep the nonnegative degrees.

Example:
    ```python
    f = BivarPoly({(1, 0): 6, (1, 1): 2})     # 6x + 2xy
    delta_x(f)                                 # 6x
    delta_y(f)                                 # 2
    ```
"""

import re
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping

from cyclic_tutte.errors import ValidationError

Exponent = tuple[int, int]


def _normalized(items) -> dict:
    out = {}
    for key, coeff in items:
        if coeff:
            out[key] = out.get(key, 0) + coeff
    return {k: c for k, c in out.items() if c}


class UnivarPoly:
    """Sparse univariate polynomial `sum(coeff * t**degree)`.

    The variable name is not stored; cloud polynomials are read in `x` and
    flock polynomials in `y` by convention.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None) -> None:
        items = (coeffs or {}).items()
        for degree, _ in items:
            if degree < 0:
                raise ValidationError(f"Negative degree {degree} in UnivarPoly.")
        self._coeffs = _normalized(items)
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "UnivarPoly":
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coefficient(self, degree: int) -> int:
        return self._coeffs.get(degree, 0)

    def degrees(self) -> list[int]:
        return sorted(self._coeffs)

    def items(self) -> list[tuple[int, int]]:
        """Return `(degree, coeff)` pairs by decreasing degree."""
        return sorted(self._coeffs.items(), reverse=True)

    def min_coefficient(self) -> int:
        return min(self._coeffs.values(), default=0)

    def evaluate(self, t):
        return sum(c * t ** d for d, c in self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "UnivarPoly") -> "UnivarPoly":
        if isinstance(other, int):
            other = UnivarPoly.constant(other)
        return UnivarPoly._from_items(list(self._coeffs.items()) + list(other._coeffs.items()))

    __radd__ = __add__

    def __neg__(self) -> "UnivarPoly":
        return self.scale(-1)

    def __sub__(self, other: "UnivarPoly") -> "UnivarPoly":
        return self + (-other)

    def __mul__(self, other) -> "UnivarPoly":
        if isinstance(other, int):
            return self.scale(other)
        return UnivarPoly._from_items(
            (d1 + d2, c1 * c2)
            for d1, c1 in self._coeffs.items()
            for d2, c2 in other._coeffs.items()
        )

    __rmul__ = __mul__

    def scale(self, c: int) -> "UnivarPoly":
        return UnivarPoly._from_items((d, c * v) for d, v in self._coeffs.items())

    def in_x(self) -> "BivarPoly":
        return BivarPoly({(d, 0): c for d, c in self._coeffs.items()})

    def in_y(self) -> "BivarPoly":
        return BivarPoly({(0, d): c for d, c in self._coeffs.items()})

    @classmethod
    def _from_items(cls, items) -> "UnivarPoly":
        poly = cls.__new__(cls)
        poly._coeffs = _normalized(items)
        poly._hash = None
        return poly

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = UnivarPoly.constant(other)
        if not isinstance(other, UnivarPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def format(self, var: str = "x") -> str:
        return format_poly(self.in_x() if var == "x" else self.in_y())

    def __repr__(self) -> str:
        return f"UnivarPoly({self._coeffs!r})"


class BivarPoly:
    """Sparse bivariate polynomial `sum(coeff * x**dx * y**dy)`.

    Attributes are read-only; arithmetic returns new instances.

    Example:
        ```python
        s = BivarPoly({(2, 0): 1, (1, 0): 3, (0, 0): 3, (0, 1): 1})
        str(s)                 # "x^2 + 3x + 3 + y"
        s.evaluate(1, 1)       # 8
        ```
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None) -> None:
        items = (terms or {}).items()
        for (dx, dy), _ in items:
            if dx < 0 or dy < 0:
                raise ValidationError(f"Negative exponent ({dx}, {dy}) in BivarPoly.")
        self._terms = _normalized(items)
        self._hash = None

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls()

    @classmethod
    def one(cls) -> "BivarPoly":
        return cls({(0, 0): 1})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, dx: int, dy: int, coeff: int = 1) -> "BivarPoly":
        return cls({(dx, dy): coeff})

    @classmethod
    def _from_items(cls, items) -> "BivarPoly":
        poly = cls.__new__(cls)
        poly._terms = _normalized(items)
        poly._hash = None
        return poly

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def coefficient(self, dx: int, dy: int) -> int:
        return self._terms.get((dx, dy), 0)

    def items(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self._terms.items())

    def min_coefficient(self) -> int:
        return min(self._terms.values(), default=0)

    def evaluate(self, x, y):
        """Evaluate at a point; ints and `Fraction`s stay exact."""
        return sum(c * x ** dx * y ** dy for (dx, dy), c in self._terms.items())

    def swap(self) -> "BivarPoly":
        """Exchange the roles of `x` and `y`."""
        return BivarPoly._from_items(((dy, dx), c) for (dx, dy), c in self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other) -> "BivarPoly":
        if isinstance(other, int):
            other = BivarPoly({(0, 0): other})
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return BivarPoly._from_items(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return self.scale(-1)

    def __sub__(self, other) -> "BivarPoly":
        if isinstance(other, int):
            other = BivarPoly({(0, 0): other})
        return self + (-other)

    def __mul__(self, other) -> "BivarPoly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return BivarPoly._from_items(
            ((a1 + a2, b1 + b2), c1 * c2)
            for (a1, b1), c1 in self._terms.items()
            for (a2, b2), c2 in other._terms.items()
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BivarPoly":
        if k < 0:
            raise ValueError(f"BivarPoly powers need a nonnegative exponent, got {k}.")
        result = BivarPoly.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c: int) -> "BivarPoly":
        return BivarPoly._from_items((e, c * v) for e, v in self._terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BivarPoly({(0, 0): other})
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"BivarPoly({format_poly(self)!r})"


def add(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    return a + b


def mul(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    return a * b


def scale(a: BivarPoly, c: int) -> BivarPoly:
    return a.scale(c)


def cross(cloud: UnivarPoly, flock: UnivarPoly) -> BivarPoly:
    """Product of a cloud polynomial (in `x`) and a flock polynomial (in `y`)."""
    return BivarPoly._from_items(
        ((dx, dy), cx * cy)
        for dx, cx in cloud.coeffs.items()
        for dy, cy in flock.coeffs.items()
    )


def delta_x(f: BivarPoly) -> UnivarPoly:
    """Substitute `y = 1/x` and keep the terms of degree >= 1.

    Terms landing on negative or zero degree are discarded; in particular the
    constant term is cut.
    """
    return UnivarPoly._from_items((dx - dy, c) for (dx, dy), c in f.items() if dx - dy >= 1)


def delta_y(f: BivarPoly) -> UnivarPoly:
    """Substitute `x = 1/y` and keep the terms of degree >= 0.

    Unlike `delta_x`, the constant term is kept.
    """
    return UnivarPoly._from_items((dy - dx, c) for (dx, dy), c in f.items() if dy - dx >= 0)


def _check_uniform(n: int, r: int) -> None:
    if n < 0 or r < 0:
        raise ValidationError(f"bx/by need nonnegative n, r; got n={n}, r={r}.")
    if r >= n and n > 0:
        raise ValidationError(f"bx/by need r < n (coloop-free uniform matroid); got n={n}, r={r}.")


@lru_cache(maxsize=None)
def bx(n: int, r: int) -> UnivarPoly:
    """Cloud of the empty set in U(r, n): `sum_{0 <= i < r} C(n, i) x^(r - i)`.

    `bx(0, 0)` is 1.

    Raises:
        ValidationError: If `r >= n > 0`.
    """
    _check_uniform(n, r)
    if n == 0:
        return UnivarPoly.constant(1)
    return UnivarPoly({r - i: comb(n, i) for i in range(r)})


@lru_cache(maxsize=None)
def by(n: int, r: int) -> UnivarPoly:
    """Flock of the ground set in U(r, n): `sum_{r <= i <= n} C(n, i) y^(i - r)`.

    `by(0, 0)` is 1.

    Raises:
        ValidationError: If `r >= n > 0`.
    """
    _check_uniform(n, r)
    if n == 0:
        return UnivarPoly.constant(1)
    return UnivarPoly({i - r: comb(n, i) for i in range(r, n + 1)})


def _shift(f: BivarPoly, s: int) -> BivarPoly:
    """Substitute `x -> x + s`, `y -> y + s`."""
    items = []
    for (dx, dy), c in f.items():
        for i in range(dx + 1):
            cx = comb(dx, i) * s ** (dx - i)
            for j in range(dy + 1):
                items.append(((i, j), c * cx * comb(dy, j) * s ** (dy - j)))
    return BivarPoly._from_items(items)


def tutte_from_rgp(s: BivarPoly) -> BivarPoly:
    """T(x, y) = S(x - 1, y - 1)."""
    return _shift(s, -1)


def rgp_from_tutte(t: BivarPoly) -> BivarPoly:
    """S(x, y) = T(x + 1, y + 1)."""
    return _shift(t, 1)


def pretty_order(exponent: Exponent) -> tuple[int, int]:
    """Sort key of the human-readable form: by `dx - dy` descending, then `dy`."""
    dx, dy = exponent
    return (dy - dx, dy)


def json_order(exponent: Exponent) -> tuple[int, int]:
    """Sort key of the JSON term list: `dx` descending, then `dy` ascending."""
    dx, dy = exponent
    return (-dx, dy)


def _monomial_text(dx: int, dy: int) -> str:
    text = ""
    if dx:
        text += "x" if dx == 1 else f"x^{dx}"
    if dy:
        text += "y" if dy == 1 else f"y^{dy}"
    return text


def format_poly(f: BivarPoly) -> str:
    """Render `f` as e.g. `x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3`."""
    if not f:
        return "0"
    parts = []
    for exponent in sorted(f.terms, key=pretty_order):
        c = f.coefficient(*exponent)
        mono = _monomial_text(*exponent)
        body = str(abs(c)) if not mono else (mono if abs(c) == 1 else f"{abs(c)}{mono}")
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


TERM_PATTERN = re.compile(r'^(?P<c>\d*)\*?(?P<x>x(?:\^(?P<a>\d+))?)?\*?(?P<y>y(?:\^(?P<b>\d+))?)?$')


def parse_poly(text: str) -> BivarPoly:
    """Parse the output of `format_poly` (a `*` between factors is also accepted).

    Raises:
        ValidationError: If a term does not match `c*x^a*y^b`.
    """
    compact = "".join(text.split())
    if not compact:
        raise ValidationError("Empty polynomial text.")
    if compact[0] not in "+-":
        compact = "+" + compact
    tokens = re.findall(r'[+-][^+-]*', compact)
    if "".join(tokens) != compact:
        raise ValidationError(f"Malformed polynomial: '{text}'.")
    items = []
    for token in tokens:
        sign, body = (-1 if token[0] == "-" else 1), token[1:]
        match = TERM_PATTERN.match(body)
        if not body or match is None or not (match["c"] or match["x"] or match["y"]):
            raise ValidationError(f"Malformed term '{token}' in '{text}'.")
        coeff = int(match["c"]) if match["c"] else 1
        dx = (int(match["a"]) if match["a"] else 1) if match["x"] else 0
        dy = (int(match["b"]) if match["b"] else 1) if match["y"] else 0
        items.append(((dx, dy), sign * coeff))
    return BivarPoly._from_items(items)
