"""Closed-form layer: exponent functions, correction factors, the two fixed
polynomials, product formulas for the region generating functions, the
condensation recurrence residuals, and the specialized-count evaluators.

Everything is implemented exactly as printed; reconciliation against the
matching engines happens in the verify layer.  Laurent monomials (negative
exponents) occur inside prefactors such as x/y and (y/z)**2 and are allowed
throughout; final products destined for comparison with matching
polynomials are checked for nonnegative exponents by the callers.

Two variants of the dungeon product formula are provided, because its two
derivations in the source disagree in the y/z exponent bookkeeping ("printed"
uses the theorem's explicit exponents, "split" uses the wing-splitting
pipeline).  The enumeration oracle decides; see OQ1_VARIANT.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .polyring import GFPoly

X = GFPoly.variable("x")
Y = GFPoly.variable("y")
Z = GFPoly.variable("z")

#: x^6 + 3x^4y^2 + 3x^2y^4 + y^6 + 2x^3z^3 + 2xy^2z^3 + z^6; value 13 at unit weights.
P_POLY = (X ** 6 + 3 * (X ** 4 * Y ** 2) + 3 * (X ** 2 * Y ** 4) + Y ** 6
          + 2 * (X ** 3 * Z ** 3) + 2 * (X * Y ** 2 * Z ** 3) + Z ** 6)

#: The degree-6 product whose value is 14 at unit weights.
Q_POLY = ((X ** 4 + 2 * (X ** 2 * Y ** 2) + Y ** 4 + X ** 3 * Z
           + X * Y ** 2 * Z - Y ** 2 * Z ** 2 + X * Z ** 3 + Z ** 4)
          * (X ** 2 + Y ** 2 - X * Z + Z ** 2))

P_XY = P_POLY.dehomogenize_z()
Q_XY = Q_POLY.dehomogenize_z()

#: Which dungeon-formula variant the enumeration oracle confirmed (OQ-1).
#: Pinned by the regression suite; see tests and the verify layer.
OQ1_VARIANT = "printed"


def g_exp(a: int, b: int, c: int) -> int:
    return (b - a) * (b - c) + (a - c) ** 2 // 3


def q_exp(a: int, b: int, c: int) -> int:
    return (a - b + c) ** 2 // 4


def tau_exp(a: int, b: int, c: int) -> int:
    base = 4 * a * a + 8 * b * b + 4 * c * c - 10 * a * b - 10 * b * c + 6 * a * c
    if 2 * a + c - 2 * b > 0:
        return base - 2 * b + c
    return base + 6 * a - 8 * b + 4 * c


_XOY = GFPoly.monomial(1, -1, 0)  # x/y

_CASE_POLYS = {
    "quartic": (X ** 4 + 2 * (X ** 2 * Y ** 2) + Y ** 4 + X) * _XOY,
    "cubic": (X ** 3 + X * Y ** 2 + 1) * _XOY,
    "square": X ** 2 + Y ** 2,
    "y": Y,
    "one": GFPoly.const(1),
}


def h_factor(a: int, b: int, c: int) -> GFPoly:
    """Correction factor of the first region family, keyed on 3b+a-c mod 6."""
    r = (3 * b + a - c) % 6
    case = {5: "quartic", 1: "cubic", 4: "square", 3: "y"}.get(r, "one")
    return _CASE_POLYS[case]


def p_factor(a: int, b: int, c: int) -> GFPoly:
    """Correction factor of the second family; the mod-6 cases mirror h's."""
    r = (3 * b + a - c) % 6
    case = {1: "quartic", 5: "cubic", 2: "square", 3: "y"}.get(r, "one")
    return _CASE_POLYS[case]


@dataclass(frozen=True)
class ExponentBundle:
    g: int
    q: int
    tau: int
    h_factor: GFPoly
    p_factor: GFPoly
    gamma: GFPoly


def gamma_factor(a: int) -> GFPoly:
    """(y/z)**(1 - (-1)**a): 1 for even a, (y/z)**2 for odd a."""
    return GFPoly.monomial(0, 2, -2) if a % 2 else GFPoly.const(1)


def exponents(a: int, b: int, c: int) -> ExponentBundle:
    return ExponentBundle(
        g=g_exp(a, b, c), q=q_exp(a, b, c), tau=tau_exp(a, b, c),
        h_factor=h_factor(a, b, c), p_factor=p_factor(a, b, c),
        gamma=gamma_factor(a))


@dataclass(frozen=True)
class FormulaResult:
    value: GFPoly
    provenance: Dict[str, object]


def _check_thm2_window(a: int, b: int, c: int) -> Tuple[int, int]:
    d = 2 * b - a - 2 * c
    e = 3 * b - 2 * a - 2 * c
    if b < 2 or d < 0 or e < 0:
        raise ValueError(f"hypotheses violated: b>=2, d>=0, e>=0 needed, got "
                         f"(a,b,c)=({a},{b},{c}), d={d}, e={e}")
    g, q = g_exp(a, b, c), q_exp(a, b, c)
    if g < 0 or q < 0:
        raise ValueError(f"negative product powers g={g}, q={q}")
    return g, q


def _core(a: int, b: int, c: int, factor: GFPoly) -> GFPoly:
    g, q = g_exp(a, b, c), q_exp(a, b, c)
    pre = GFPoly.monomial(2 * g + 3 * q, tau_exp(a, b, c), 0)
    return factor * pre * P_XY ** g * Q_XY ** q


def phi_formula(a: int, b: int, c: int) -> FormulaResult:
    """Product form of the first family's generating function (x, y only)."""
    _check_thm2_window(a, b, c)
    return FormulaResult(_core(a, b, c, h_factor(a, b, c)),
                         {"formula": "phi", "a": a, "b": b, "c": c})


def psi_formula(a: int, b: int, c: int) -> FormulaResult:
    """Product form of the second family's generating function."""
    _check_thm2_window(a, b, c)
    return FormulaResult(_core(a, b, c, p_factor(a, b, c)),
                         {"formula": "psi", "a": a, "b": b, "c": c})


def tile_count(a: int, b: int) -> int:
    """Total number of tiles of the a,2a,b dungeon."""
    return 6 * (3 * a * b + 2 * a * a) - 3 * (3 * a + b)


def f_exponents(a: int, b: int, variant: str) -> Tuple[int, int, int]:
    w = a * a // 2
    x_exp = 3 * a * b - 2 * a * a + 3 * w
    if variant == "printed":
        y_exp = 6 * a * b - a * a + 3 * a - b - 2 * w
        z_exp = 9 * a * b + 3 * a * a - 7 * w - 2 * b - 12 * a
    elif variant == "split":
        y_exp = 6 * a * b + 4 * a * a - 3 * a - b
        z_exp = 9 * a * b - 2 * a * a - 6 * a - 2 * b - 9 * w
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return x_exp, y_exp, z_exp


def f_formula(a: int, b: int, variant: Optional[str] = None) -> FormulaResult:
    """The dungeon tiling generating function as a product formula.

    variant "printed" takes the theorem's explicit exponents; "split" takes
    the exponents implied by the wing-splitting pipeline (they differ, which
    is the OQ-1 discrepancy).  Defaults to the oracle-pinned OQ1_VARIANT.
    """
    if a < 1 or b < 2 * a:
        raise ValueError("hypotheses violated: need a >= 1 and b >= 2a")
    variant = variant or OQ1_VARIANT
    w = a * a // 2
    xe, ye, ze = f_exponents(a, b, variant)
    value = (gamma_factor(a) * GFPoly.monomial(xe, ye, ze)
             * P_POLY ** (2 * a * a) * Q_POLY ** w)
    return FormulaResult(value, {"formula": "f", "a": a, "b": b,
                                 "variant": variant})


def hd_count(a: int, b: int) -> int:
    """Unweighted tiling count 13**(2a^2) * 14**floor(a^2/2)."""
    if a < 1 or b < 2 * a:
        raise ValueError("need a >= 1 and b >= 2a")
    return 13 ** (2 * a * a) * 14 ** (a * a // 2)


def c_count(a: int, b: int) -> int:
    """Number of renewal sites in the variant-lattice dual graphs."""
    return ((6 * a - 1) * (b - 2 * a) + 3 * a * (b - 2 * a + 1)
            + 4 * a * (2 * a - 1) + 4 * a * (4 * a - 1))


# ---------------------------------------------------------------------------
# Corollary evaluators: printed closed forms vs the specialization route.
# ---------------------------------------------------------------------------

COROLLARY_WEIGHTS = {
    1: (Fraction(1, 2), Fraction(3, 2), Fraction(1)),
    2: (Fraction(3, 2), Fraction(3, 2), Fraction(1)),
    3: (Fraction(3, 2), Fraction(1, 2), Fraction(1)),
}


def _printed_corollary(k: int, a: int, b: int):
    """Printed prime-power form; exponent None marks the undefined symbol."""
    w = a * a // 2
    odd = a % 2 == 1
    if k == 1:
        return {
            "prefactor": Fraction(9, 4) if odd else Fraction(1),
            "exponents": {2: 9 * a * a - 6 * a - 3 * w,
                          3: None,  # printed exponent contains an undefined gamma
                          17: 2 * a * a},
            "exponent_3_known_part": 3 * a * a + 2 * w + 6 * a * b + 3 * a - b,
        }
    if k == 2:
        return {
            "prefactor": Fraction(9, 4) if odd else Fraction(1),
            "exponents": {2: 9 * a * a - 6 * a - w,
                          3: 9 * a * b - 3 * a * a + w + 3 * a - b,
                          5: 2 * a * a,
                          13: 4 * a * a + w,
                          109: w},
        }
    if k == 3:
        return {
            "prefactor": Fraction(1, 4) if odd else Fraction(1),
            "exponents": {2: 9 * a * a - 6 * a - 2 * w,
                          3: 3 * a * b - 2 * a * a + 5 * w,
                          5: w,
                          193: 2 * a * a},
        }
    raise ValueError("corollary index must be 1, 2 or 3")


def corollary_record(k: int, a: int, b: int,
                     variant: Optional[str] = None) -> Dict[str, object]:
    """Dual-route comparison record for one of the three derived counts.

    The specialization route is 2**C * F(weights) with F the dungeon product
    formula; the printed route is the paper-facing closed form.  Where the
    printed exponent of 3 is undefined (k=1), the record reports the exponent
    that would reconcile the two routes instead of a boolean match.
    """
    weights = COROLLARY_WEIGHTS[k]
    cc = c_count(a, b)
    f_val = f_formula(a, b, variant).value.eval(*weights)
    spec_value = Fraction(2) ** cc * f_val
    printed = _printed_corollary(k, a, b)
    printed_value: Optional[Fraction] = None
    match: Optional[bool] = None
    solved_exponent: Optional[Fraction] = None
    if all(e is not None for e in printed["exponents"].values()):
        printed_value = printed["prefactor"]
        for prime, e in printed["exponents"].items():
            printed_value *= Fraction(prime) ** e
        match = printed_value == spec_value
    else:
        known = printed["prefactor"] * Fraction(3) ** printed["exponent_3_known_part"]
        for prime, e in printed["exponents"].items():
            if e is not None:
                known *= Fraction(prime) ** e
        ratio = spec_value / known
        # if the ratio is an exact power of 3 the undefined symbol is solved
        num, den = ratio.numerator, ratio.denominator
        e3 = 0
        if den == 1:
            while num % 3 == 0:
                num //= 3
                e3 += 1
            if num == 1:
                solved_exponent = e3
        elif num == 1:
            while den % 3 == 0:
                den //= 3
                e3 -= 1
            if den == 1:
                solved_exponent = e3
    return {
        "corollary": k,
        "a": a,
        "b": b,
        "weights": [str(w) for w in weights],
        "c_exponent": cc,
        "printed": {
            "prefactor": str(printed["prefactor"]),
            "exponents": {str(p): e for p, e in printed["exponents"].items()},
            "value": str(printed_value) if printed_value is not None else None,
        },
        "specialization": {"f_eval": str(f_val), "value": str(spec_value)},
        "match": match,
        "solved_undefined_exponent": solved_exponent,
    }


def cor1(a: int, b: int, variant: Optional[str] = None) -> Dict[str, object]:
    return corollary_record(1, a, b, variant)


def cor2(a: int, b: int, variant: Optional[str] = None) -> Dict[str, object]:
    return corollary_record(2, a, b, variant)


def cor3(a: int, b: int, variant: Optional[str] = None) -> Dict[str, object]:
    return corollary_record(3, a, b, variant)


# ---------------------------------------------------------------------------
# Condensation recurrences: residuals of the closed forms.
# ---------------------------------------------------------------------------

_XY2 = GFPoly.monomial(1, 2, 0)
_X2Y4 = GFPoly.monomial(2, 4, 0)

#: (coefficient, [(family, triple), (family, triple)]) per recurrence side;
#: families: "s" = the same family as requested, "o" = the other one.
_RECURRENCES = {
    "R1": [
        (GFPoly.const(1), [("s", (0, 0, 0)), ("s", (-3, -3, -2))]),
        (-1 * _XY2, [("s", (-2, -1, 0)), ("s", (-1, -2, -2))]),
        (-1 * _X2Y4, [("s", (-1, -1, -1)), ("s", (-2, -2, -1))]),
    ],
    "R2": [
        (GFPoly.const(1), [("s", (0, 0, 0)), ("s", (-2, -2, 0))]),
        (-1 * _X2Y4, [("s", (-1, -1, 0)), ("s", (-1, -1, 0))]),
        (GFPoly.const(-1), [("s", (0, 0, 1)), ("s", (-2, -2, -1))]),
    ],
    "R4": [
        (GFPoly.const(1), [("s", (0, 0, 0)), ("s", (-2, -3, -2))]),
        (-1 * _XY2, [("s", (-1, -1, 0)), ("s", (-1, -2, -2))]),
        (-1 * _XY2, [("s", (-2, -2, -1)), ("s", (0, -1, -1))]),
    ],
    "R5": [
        (GFPoly.const(1), [("s", (0, 0, 0)), ("s", (-2, -3, -2))]),
        (-1 * _XY2, [("o", "swap-1"), ("s", (-1, -2, -2))]),
        (-1 * _XY2, [("s", (-2, -2, -1)), ("s", (0, -1, -1))]),
    ],
}


def _formula_parts(fam: str, a: int, b: int, c: int) -> Tuple[GFPoly, int, int]:
    """(Laurent prefactor, P power, Q power) of one closed form."""
    g, q = g_exp(a, b, c), q_exp(a, b, c)
    if g < 0 or q < 0:
        raise ValueError(f"negative product power at ({a},{b},{c}): g={g}, q={q}")
    factor = h_factor(a, b, c) if fam == "phi" else p_factor(a, b, c)
    pre = factor * GFPoly.monomial(2 * g + 3 * q, tau_exp(a, b, c), 0)
    return pre, g, q


def recurrence_residual(which: str, family: str, a: int, b: int, c: int
                        ) -> List[FormulaResult]:
    """LHS - RHS of one condensation recurrence with the closed forms
    substituted, as an exact Laurent polynomial (zero certifies the identity).

    The common factor P**Gmin * Q**Qmin of all products is divided out
    before expanding, which keeps the computation at the size of the
    correction factors; the extracted powers are recorded in provenance.
    R3 applies at c = 0 only; R5 couples the two families and, with
    family="pair", yields both residuals.
    """
    if family not in ("phi", "psi", "pair"):
        raise ValueError("family must be phi, psi or pair")
    if which == "R3":
        if c != 0:
            raise ValueError("R3 requires c = 0")
        terms = [
            (GFPoly.const(1), [("s", (a, b, 0)), ("s", (a - 2, b - 2, 0))]),
            (-1 * _X2Y4, [("s", (a - 1, b - 1, 0)), ("s", (a - 1, b - 1, 0))]),
            (GFPoly.const(-1), [("s", (a, b, 1)),
                                ("s", (3 * b - 2 * a, 2 * b - a, 1))]),
        ]
    elif which in _RECURRENCES:
        terms = [
            (coef, [(fam, _resolve_triple(t, a, b, c)) for fam, t in prods])
            for coef, prods in _RECURRENCES[which]
        ]
    else:
        raise ValueError(f"unknown recurrence {which!r}")

    if which == "R5" and family == "pair":
        return (recurrence_residual("R5", "phi", a, b, c)
                + recurrence_residual("R5", "psi", a, b, c))

    base = family if family != "pair" else "phi"
    other = "psi" if base == "phi" else "phi"

    rows = []
    for coef, prods in terms:
        pre = coef
        gg = qq = 0
        for fam_tag, triple in prods:
            fam = base if fam_tag == "s" else other
            p, g, q = _formula_parts(fam, *triple)
            pre = pre * p
            gg += g
            qq += q
        rows.append((pre, gg, qq))
    gmin = min(g for _, g, _ in rows)
    qmin = min(q for _, _, q in rows)
    residual = GFPoly.zero()
    for pre, g, q in rows:
        residual = residual + pre * P_XY ** (g - gmin) * Q_XY ** (q - qmin)
    return [FormulaResult(residual, {
        "recurrence": which, "family": base, "a": a, "b": b, "c": c,
        "common_P_power": gmin, "common_Q_power": qmin,
    })]


def _resolve_triple(shift, a, b, c):
    if shift == "swap-1":
        return (c, b - 1, a - 1)
    da, db, dc = shift
    return (a + da, b + db, c + dc)
