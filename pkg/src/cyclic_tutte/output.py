"""Polynomial output in the two forms the CLI prints.

The JSON term list is the stable machine contract: terms sorted by `dx`
descending then `dy` ascending, plus `S(1, 1)` and `T(1, 1)` when asked for.
`preview()` is the human form, e.g. `x^2 + 3x + 3 + y`; it parses back to
the same polynomial with `from_text`.
"""

from typing import Literal

from pydantic import BaseModel

from cyclic_tutte.poly import BivarPoly, format_poly, json_order, parse_poly, rgp_from_tutte, tutte_from_rgp


class Term(BaseModel):
    dx: int
    dy: int
    coeff: int


class PolynomialOutput(BaseModel):
    """A rank generating or Tutte polynomial ready for printing.

    Attributes:
        kind: `"rgp"` for S(M; x, y), `"tutte"` for T(M; x, y).
        terms: Nonzero terms in JSON order.
        s11: `S(1, 1)`, the number of subsets, if requested.
        t11: `T(1, 1)`, the number of bases, if requested.
    """
    kind: Literal["rgp", "tutte"] = "rgp"
    terms: list[Term]
    s11: int | None = None
    t11: int | None = None

    @classmethod
    def from_rgp(cls, s: BivarPoly, *, as_tutte: bool = False, summary: bool = True) -> "PolynomialOutput":
        """Build the output for S, converted to T when `as_tutte` is set."""
        shown = tutte_from_rgp(s) if as_tutte else s
        terms = [
            Term(dx=dx, dy=dy, coeff=shown.coefficient(dx, dy))
            for dx, dy in sorted(shown.terms, key=json_order)
        ]
        out = cls(kind="tutte" if as_tutte else "rgp", terms=terms)
        if summary:
            out.s11 = s.evaluate(1, 1)
            out.t11 = s.evaluate(0, 0)
        return out

    @classmethod
    def from_text(cls, text: str, kind: Literal["rgp", "tutte"] = "rgp") -> "PolynomialOutput":
        s = parse_poly(text)
        if kind == "tutte":
            return cls.from_rgp(rgp_from_tutte(s), as_tutte=True, summary=False)
        return cls.from_rgp(s, summary=False)

    def to_poly(self) -> BivarPoly:
        return BivarPoly({(t.dx, t.dy): t.coeff for t in self.terms})

    def preview(self) -> str:
        return format_poly(self.to_poly())

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"
