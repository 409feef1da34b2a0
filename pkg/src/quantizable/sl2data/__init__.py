"""Virtual classes of SL2(C)-representation varieties of closed surfaces.

The shipped dataset holds the classes for genus 0..11 as polynomials in the
Lefschetz class ``q``. :func:`sl2_pipeline` feeds them to the quantizer,
compares the recovered order-6 recurrence with the published coefficients
and cross-checks every prediction against the closed genus formula.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

from ..exactmath import QQq, Polynomial, RationalFunction, format_polynomial, parse_polynomial
from ..quantize import InvariantSequence, QuantizationReport, extend, quantization_report

DATA_FILE = "sl2_rep_varieties.json"

# Published coefficients P_0..P_5, as printed. The data satisfy
# chi_g = P_0 chi_{g-1} + P_1 chi_{g-2} + ... + P_5 chi_{g-6}, so the
# quantizer's a_i (coefficient of chi_{g-6+i}) is P_{5-i}.
PUBLISHED_COEFFICIENTS = (
    "q^6 + 9*q^4 + 9*q^2 + 1",
    "-11*q^10 - 29*q^8 + 16*q^6 - 29*q^4 - 11*q^2",
    "43*q^14 - 25*q^12 - 18*q^10 - 18*q^8 - 25*q^6 + 43*q^4",
    "-73*q^18 + 198*q^16 - 135*q^14 + 20*q^12 - 135*q^10 + 198*q^8 - 73*q^6",
    "56*q^22 - 280*q^20 + 504*q^18 - 280*q^16 - 280*q^14 + 504*q^12 - 280*q^10 + 56*q^8",
    "-16*q^26 + 128*q^24 - 448*q^22 + 896*q^20 - 1120*q^18 + 896*q^16 - 448*q^14"
    " + 128*q^12 - 16*q^10",
)

# [SL2(C)] = q^3 - q
GROUP_CLASS = Polynomial([0, -1, 0, 1])


class NonPolynomialResult(ArithmeticError):
    """The closed formula produced a proper rational function."""


class CrossCheckError(AssertionError):
    """A recovered or predicted value disagrees with its independent counterpart."""


@dataclass(frozen=True)
class Sl2Dataset:
    values: InvariantSequence
    provenance: tuple[str, ...]
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        vals = self.values.values
        if vals[0] != 1:
            raise ValueError("genus-0 entry must be 1")
        if len(vals) > 1 and vals[1] != RationalFunction(parse_polynomial("q^4 + 4*q^3 - q^2 - 4*q")):
            raise ValueError("unexpected genus-1 entry")
        for g, v in enumerate(vals[2:], 2):
            if not v.is_polynomial() or v.num.degree != 6 * g - 3:
                raise ValueError(f"genus-{g} entry does not have degree {6 * g - 3}")


def load_dataset() -> Sl2Dataset:
    text = resources.files(__package__).joinpath(DATA_FILE).read_text()
    doc = json.loads(text)
    seq = InvariantSequence.from_document(doc)
    return Sl2Dataset(seq, tuple(doc.get("provenance", ())), tuple(doc.get("notes", ())))


def published_coefficients() -> list[Polynomial]:
    return [parse_polynomial(s) for s in PUBLISHED_COEFFICIENTS]


def closed_formula_eval(g: int, r: int = 0) -> RationalFunction:
    """The closed genus formula; ``r`` is the exponent shift in its third term."""
    if g < 1:
        raise ValueError("the closed formula is stated for g >= 1")
    q = Polynomial.q()
    e = 2 * g - 1
    four_g = 2 ** (2 * g)
    half = Fraction(1, 2)
    base = (q * q - 1) ** e * q**e + q * (q * q - 1) ** e
    t2 = (q - 1) ** e * q**e * (q + 1) * (q + (four_g - 3)) * half
    if e + r < 0:
        raise NonPolynomialResult(f"negative exponent {e + r} for r = {r}")
    t3 = (q + 1) ** (e + r) * q**e * (q - 1) * (q + (four_g - 1)) * half
    value = RationalFunction(base + t2 + t3)
    if not value.is_polynomial() or value.num.integer_coefficients() is None:
        raise NonPolynomialResult(f"closed formula at genus {g} is {value}")
    return value


@dataclass
class Sl2Result:
    report: QuantizationReport
    coefficients: list[str]  # recovered P_0..P_5, formatted
    predictions: dict[int, RationalFunction]
    formula_checked: list[int] = dc_field(default_factory=list)
    genus11_recurrence: RationalFunction | None = None
    genus11_formula: RationalFunction | None = None

    def rescaled_handle(self) -> list[list[RationalFunction]]:
        """``(q^3 - q) T`` in the basis v_0..v_5: the handle map without the
        basepoint normalization."""
        alg = self.report.algebra.to_almost_frobenius()
        c = RationalFunction(GROUP_CLASS)
        return [[c * x for x in row] for row in alg.T]


def sl2_pipeline(max_genus: int = 12) -> Sl2Result:
    """Recover the order-6 recurrence and cross-check it every way available.

    Raises :class:`CrossCheckError` naming the first disagreement.
    """
    if max_genus < 12:
        raise ValueError("max_genus must be at least 12")
    data = load_dataset()
    seq = data.values
    report = quantization_report(seq, range(12, max_genus + 1))
    rec = report.recurrence
    if rec is None:
        raise CrossCheckError(f"no recurrence recovered: {report.diagnostic}")
    if rec.order != 6:
        raise CrossCheckError(f"recovered order {rec.order}, expected 6")
    recovered = [format_polynomial(rec.coefficients[5 - i].num) for i in range(6)]
    for i, (got, want) in enumerate(zip(recovered, PUBLISHED_COEFFICIENTS)):
        if got != want:
            raise CrossCheckError(f"P_{i} mismatch: recovered {got}, published {want}")
        if not rec.coefficients[5 - i].is_polynomial():
            raise CrossCheckError(f"P_{i} recovered with a denominator")

    checked = []
    for g in range(1, len(seq)):
        if seq.values[g] != closed_formula_eval(g):
            raise CrossCheckError(f"dataset genus {g} disagrees with the closed formula")
        checked.append(g)
    for g, v in sorted(report.predictions.items()):
        if v != closed_formula_eval(g):
            raise CrossCheckError(f"prediction at genus {g} disagrees with the closed formula")
        checked.append(g)

    # genus 11 from the published coefficients on genus 5..10 alone
    published = [RationalFunction(p) for p in published_coefficients()]
    g11 = sum((published[i] * seq.values[10 - i] for i in range(6)), QQq.zero())
    f11 = closed_formula_eval(11)
    if g11 != f11:
        raise CrossCheckError("genus 11: recurrence and closed formula disagree")
    head = InvariantSequence(seq.values[:11], QQq)
    if extend(head, 12, rec)[11] != f11:
        raise CrossCheckError("genus 11: recovered recurrence disagrees with the closed formula")

    return Sl2Result(report, recovered, dict(report.predictions), checked, g11, f11)
