"""Sparse trivariate Laurent polynomials over arbitrary-precision integers.

A generating function is a finite map from exponent triples ``(m, n, l)``
(for ``x**m * y**n * z**l``) to nonzero Python ints.  Exponents may be
negative while assembling formula prefactors such as ``x/y``; a value is a
proper polynomial when every exponent is nonnegative.

Rationals enter only at evaluation time, as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

Monomial = Tuple[int, int, int]

SCHEMA_VERSION = 1


class GFPoly:
    """Immutable sparse polynomial in x, y, z with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, int]] = None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                if coef:
                    m, n, l = mono
                    clean[(int(m), int(n), int(l))] = int(coef)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("GFPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "GFPoly":
        return GFPoly()

    @staticmethod
    def const(c: int) -> "GFPoly":
        return GFPoly({(0, 0, 0): c})

    @staticmethod
    def monomial(m: int, n: int, l: int, coef: int = 1) -> "GFPoly":
        return GFPoly({(m, n, l): coef})

    @staticmethod
    def variable(name: str) -> "GFPoly":
        idx = "xyz".index(name)
        mono = [0, 0, 0]
        mono[idx] = 1
        return GFPoly({tuple(mono): 1})

    # -- basics ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GFPoly.const(other)
        return isinstance(other, GFPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (m, n, l), c in self.sorted_terms():
            s = "" if c == 1 and (m, n, l) != (0, 0, 0) else str(c)
            for name, e in zip("xyz", (m, n, l)):
                if e == 1:
                    s += name
                elif e:
                    s += f"{name}^{e}"
            bits.append(s)
        return " + ".join(bits)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "GFPoly") -> "GFPoly":
        if isinstance(other, int):
            other = GFPoly.const(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            nc = out.get(mono, 0) + c
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return GFPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "GFPoly":
        return GFPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GFPoly") -> "GFPoly":
        return self + (-other if isinstance(other, GFPoly) else GFPoly.const(-other))

    def __rsub__(self, other) -> "GFPoly":
        return (-self) + other

    def __mul__(self, other) -> "GFPoly":
        if isinstance(other, int):
            return GFPoly({m: c * other for m, c in self.terms.items()})
        out: Dict[Monomial, int] = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for (m1, n1, l1), c1 in a.items():
            for (m2, n2, l2), c2 in b.items():
                mono = (m1 + m2, n1 + n2, l1 + l2)
                nc = out.get(mono, 0) + c1 * c2
                if nc:
                    out[mono] = nc
                else:
                    out.pop(mono, None)
        return GFPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GFPoly":
        if e < 0:
            if len(self.terms) == 1:
                ((m, n, l), c), = self.terms.items()
                if c in (1, -1):
                    return GFPoly({(m * e, n * e, l * e): c if e % 2 else 1})
            raise ValueError("negative powers only for unit monomials")
        result = GFPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- queries -------------------------------------------------------------

    def is_proper(self) -> bool:
        """True when no exponent is negative (a genuine polynomial)."""
        return all(m >= 0 and n >= 0 and l >= 0 for m, n, l in self.terms)

    def is_homogeneous(self) -> Optional[int]:
        """Total degree when homogeneous, else None (zero counts, degree 0)."""
        degs = {m + n + l for m, n, l in self.terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def total_degree(self) -> int:
        return max((m + n + l for m, n, l in self.terms), default=0)

    def dehomogenize_z(self) -> "GFPoly":
        """Substitute z = 1."""
        out: Dict[Monomial, int] = {}
        for (m, n, l), c in self.terms.items():
            mono = (m, n, 0)
            nc = out.get(mono, 0) + c
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return GFPoly(out)

    def homogenize_z(self, degree: int) -> "GFPoly":
        """Pad each term with the z power reaching the given total degree."""
        out: Dict[Monomial, int] = {}
        for (m, n, l), c in self.terms.items():
            pad = degree - (m + n + l)
            mono = (m, n, l + pad)
            nc = out.get(mono, 0) + c
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return GFPoly(out)

    def eval(self, x: Fraction, y: Fraction, z: Fraction) -> Fraction:
        """Exact value at a rational point."""
        total = Fraction(0)
        x, y, z = Fraction(x), Fraction(y), Fraction(z)
        for (m, n, l), c in self.terms.items():
            total += c * x ** m * y ** n * z ** l
        return total

    # -- division -------------------------------------------------------------

    def leading(self) -> Tuple[Monomial, int]:
        return max(self.terms.items())

    def try_divide(self, divisor: "GFPoly") -> Optional["GFPoly"]:
        """Exact quotient self / divisor, or None when not divisible.

        Leading-term long division under the lexicographic order on
        (m, n, l).  Both operands must be proper polynomials.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not (self.is_proper() and divisor.is_proper()):
            raise ValueError("try_divide requires proper polynomials")
        rem = dict(self.terms)
        (dm, dn, dl), dc = divisor.leading()
        quo: Dict[Monomial, int] = {}
        while rem:
            (m, n, l) = max(rem)
            c = rem[(m, n, l)]
            qm, qn, ql = m - dm, n - dn, l - dl
            if qm < 0 or qn < 0 or ql < 0 or c % dc:
                return None
            qc = c // dc
            quo[(qm, qn, ql)] = qc
            for (m2, n2, l2), c2 in divisor.terms.items():
                mono = (m2 + qm, n2 + qn, l2 + ql)
                nc = rem.get(mono, 0) - qc * c2
                if nc:
                    rem[mono] = nc
                else:
                    rem.pop(mono, None)
        return GFPoly(quo)

    # -- serialization ----------------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "terms": [
                {"m": m, "n": n, "l": l, "c": str(c)}
                for (m, n, l), c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_obj(obj: dict) -> "GFPoly":
        terms: Dict[Monomial, int] = {}
        for t in obj["terms"]:
            mono = (int(t["m"]), int(t["n"]), int(t["l"]))
            if mono in terms:
                raise ValueError("duplicate monomial in polynomial JSON")
            terms[mono] = int(t["c"])
        return GFPoly(terms)

    @staticmethod
    def from_json(text: str) -> "GFPoly":
        return GFPoly.from_obj(json.loads(text))


def scale_identity_check(p: GFPoly, degree: int) -> bool:
    """Verify p(x, y, z) == z**degree * p(x/z, y/z, 1) as polynomials.

    For a homogeneous p of the given total degree this is the identity
    relating a generating function to its kite-normalized form.
    """
    return p.is_homogeneous() == degree and p.dehomogenize_z().homogenize_z(degree) == p


def from_counts(counts: Dict[Monomial, int]) -> GFPoly:
    return GFPoly(dict(counts))
