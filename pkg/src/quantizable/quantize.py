"""From finitely many surface-invariant values to an almost-Frobenius algebra.

Given ``chi_0, chi_1, ...`` (the invariant on closed surfaces of genus g),
look for the smallest ``n`` with

    chi_{n+k} = a_0 chi_k + ... + a_{n-1} chi_{n-1+k}

for every ``k`` the data reaches. The recurrence is the quotient-ring
presentation of the minimal wide almost-Frobenius algebra computing the
invariant, which then goes through the monoidality test.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd
from typing import Any, Iterable, Sequence

from sympy import factorint

from .exactmath import QQ, Field, Polynomial, field_by_name, poly_divmod
from .frobenius import (
    MonoidalityVerdict,
    Verdict,
    WideFrobeniusAlgebra,
    check_monoidality,
    integer_subring_necessary_check,
)
from .linalg import determinant, solve_linear


class InsufficientDataError(ValueError):
    """No recurrence of order n with 2n <= len(values) fits the data."""


class InconsistentRecurrenceError(ValueError):
    """A recurrence of the requested order is contradicted by the data."""


@dataclass(frozen=True)
class InvariantSequence:
    values: tuple
    field: Field = QQ
    genus_offset: int = 0

    def __post_init__(self):
        vals = tuple(self.field(v) for v in self.values)
        if not vals:
            raise ValueError("an invariant sequence needs at least one value")
        if self.genus_offset < 0:
            raise ValueError("genus_offset must be nonnegative")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def to_document(self) -> dict:
        doc = {"field": self.field.name, "values": [self.field.format(v) for v in self.values]}
        if self.genus_offset:
            doc["genus_offset"] = self.genus_offset
        return doc

    @classmethod
    def from_document(cls, doc: dict, field: Field | None = None) -> "InvariantSequence":
        if field is None:
            if "field" not in doc:
                raise ValueError("sequence document has no 'field'; pass one explicitly")
            field = field_by_name(doc["field"])
        values = []
        for v in doc["values"]:
            if isinstance(v, str):
                values.append(field.parse(v))
            elif isinstance(v, int) and not isinstance(v, bool):
                values.append(field(v))
            else:
                raise ValueError(f"sequence values must be strings or integers, got {v!r}")
        return cls(tuple(values), field, int(doc.get("genus_offset", 0)))


@dataclass(frozen=True)
class RecurrenceResult:
    order: int
    coefficients: tuple
    values_consumed: int
    certified: bool
    hankel_invertible: bool
    # None when the data is too short to form the next Hankel matrix
    next_hankel_singular: bool | None = None

    @property
    def certainty(self) -> str:
        return "certified" if self.certified else "provisional"


def _hankel(values: Sequence, n: int, shift: int = 0) -> list[list]:
    return [[values[shift + i + j] for j in range(n)] for i in range(n)]


def _fits(values: Sequence, coeffs: Sequence, field: Field) -> bool:
    n = len(coeffs)
    for k in range(len(values) - n):
        rhs = field.zero()
        for i, a in enumerate(coeffs):
            if a:
                rhs = rhs + a * values[k + i]
        if rhs != values[n + k]:
            return False
    return True


def _try_order(values: Sequence, n: int, field: Field) -> tuple[list | None, bool]:
    """A recurrence of order ``n`` fitting every value, and whether H_n is invertible."""
    H = _hankel(values, n)
    rhs = [values[n + i] for i in range(n)]
    invertible = bool(determinant(H, field))
    if invertible:
        # unique candidate; check it against the surplus values
        sol = solve_linear(H, rhs, field)
        return (sol if _fits(values, sol, field) else None), True
    rows = [[values[k + i] for i in range(n)] for k in range(len(values) - n)]
    sol = solve_linear(rows, [values[n + k] for k in range(len(values) - n)], field)
    return sol, False


def extract_recurrence(seq: InvariantSequence, order: int | None = None) -> RecurrenceResult:
    """Minimal-order linear recurrence of the sequence.

    Orders are tried from 1 upwards while ``2n <= len(values)``; an order is
    accepted when some coefficient vector satisfies every available
    equation (free coefficients are set to zero). With ``order`` given only
    that order is tried and a contradiction raises
    :class:`InconsistentRecurrenceError`.
    """
    values, f = seq.values, seq.field
    N = len(values)
    if N < 2:
        raise InsufficientDataError(f"need at least 2 values, got {N}")
    orders: Iterable[int] = [order] if order is not None else range(1, N // 2 + 1)
    for n in orders:
        if n < 1 or n >= N:
            raise InsufficientDataError(f"order {n} cannot be tested with {N} values")
        sol, invertible = _try_order(values, n, f)
        if sol is None:
            if order is not None:
                raise InconsistentRecurrenceError(f"no order-{n} recurrence fits the data")
            continue
        next_singular = None
        if N >= 2 * n + 1:
            next_singular = not determinant(_hankel(values, n + 1), f)
        return RecurrenceResult(
            order=n,
            coefficients=tuple(sol),
            values_consumed=N,
            certified=N >= 2 * n and invertible,
            hankel_invertible=invertible,
            next_hankel_singular=next_singular,
        )
    raise InsufficientDataError(
        f"no recurrence of order n with 2n <= {N} fits; supply more values"
    )


def build_algebra(seq: InvariantSequence, rec: RecurrenceResult | None = None) -> WideFrobeniusAlgebra:
    """The wide algebra: ``eps(1) = v_0`` and ``eta`` reading the first value."""
    rec = rec or extract_recurrence(seq)
    return WideFrobeniusAlgebra(rec.coefficients, seq.values[: rec.order], seq.field)


def extend(seq: InvariantSequence, length: int, rec: RecurrenceResult | None = None) -> list:
    """The first ``length`` values, continuing past the data by the recurrence."""
    vals = list(seq.values[:length])
    if len(vals) == length:
        return vals
    rec = rec or extract_recurrence(seq)
    a, n, zero = rec.coefficients, rec.order, seq.field.zero()
    while len(vals) < length:
        k = len(vals) - n
        vals.append(sum((a[i] * vals[k + i] for i in range(n) if a[i]), zero))
    return vals


def predict(seq: InvariantSequence, g: int, rec: RecurrenceResult | None = None):
    """The invariant at genus ``g``; input values are returned as given."""
    idx = g - seq.genus_offset
    if idx < 0:
        raise ValueError(f"genus {g} precedes the first supplied genus {seq.genus_offset}")
    return extend(seq, idx + 1, rec)[idx]


# -- closed form over Q ------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormBlock:
    eigenvalue: Fraction
    multiplicity: int
    coefficients: tuple  # a_{i,0}, ..., a_{i,m-1}


@dataclass(frozen=True)
class ClosedForm:
    """``chi_g = sum_i sum_j a_{i,j} binom(g, j) lambda_i^(g-j)``, valid for g >= max m_i."""

    blocks: tuple

    @property
    def valid_from(self) -> int:
        return max(b.multiplicity for b in self.blocks)

    def evaluate(self, g: int) -> Fraction:
        total = Fraction(0)
        for b in self.blocks:
            for j, a in enumerate(b.coefficients):
                if a and g >= j:
                    total += a * comb(g, j) * b.eigenvalue ** (g - j)
        return total


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(abs(n)).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: Polynomial) -> tuple[list[tuple[Fraction, int]], Polynomial]:
    """Rational roots of ``p`` with multiplicity, and the leftover cofactor."""
    roots: list[tuple[Fraction, int]] = []
    rest = p
    zero_mult = 0
    while rest.degree > 0 and not rest.constant_term():
        rest = Polynomial(rest.coeffs[1:])
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if rest.degree <= 0:
        return roots, rest
    den = 1
    for c in rest.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in rest.coeffs]
    candidates = sorted(
        {Fraction(s * d, e) for d in _divisors(ints[0]) for e in _divisors(ints[-1]) for s in (1, -1)}
    )
    for r in candidates:
        if rest.degree <= 0:
            break
        lin = Polynomial((-r, 1))
        mult = 0
        while rest.degree > 0:
            quo, rem = poly_divmod(rest, lin)
            if rem:
                break
            rest, mult = quo, mult + 1
        if mult:
            roots.append((r, mult))
    return roots, rest


def characteristic_polynomial(rec: RecurrenceResult) -> Polynomial:
    """``t^n - sum a_i t^i``."""
    return Polynomial([-a for a in rec.coefficients] + [1])


def closed_form_rational(rec: RecurrenceResult, seq: InvariantSequence) -> ClosedForm | None:
    """Eigenvalue/binomial closed form when the recurrence splits over Q.

    Returns None when the characteristic polynomial has an irrational root or
    the sequence is not over Q.
    """
    if seq.field is not QQ:
        return None
    roots, rest = rational_roots(characteristic_polynomial(rec))
    if rest.degree > 0:
        return None
    roots.sort(key=lambda rm: rm[0])
    n = rec.order
    M = max(m for _, m in roots)
    unknowns = [(lam, j) for lam, m in roots for j in range(m)]
    target = extend(seq, M + 2 * n + 1 + seq.genus_offset, rec)
    offset = seq.genus_offset

    def basis_fn(lam: Fraction, j: int, g: int) -> Fraction:
        return Fraction(comb(g, j)) * lam ** (g - j) if g >= j else Fraction(0)

    gs = range(max(M, offset), max(M, offset) + n)
    A = [[basis_fn(lam, j, g) for lam, j in unknowns] for g in gs]
    b = [target[g - offset] for g in gs]
    sol = solve_linear(A, b, QQ)
    if sol is None:
        return None
    blocks, k = [], 0
    for lam, m in roots:
        blocks.append(ClosedFormBlock(lam, m, tuple(sol[k:k + m])))
        k += m
    cf = ClosedForm(tuple(blocks))
    for idx, val in enumerate(target):
        g = idx + offset
        if g >= M and cf.evaluate(g) != val:
            return None
    return cf


# -- the report -------------------------------------------------------------------


@dataclass
class QuantizationReport:
    sequence: InvariantSequence
    recurrence: RecurrenceResult | None = None
    algebra: WideFrobeniusAlgebra | None = None
    verdict: MonoidalityVerdict | None = None
    integer_subring: bool | None = None
    closed_form: ClosedForm | None = None
    predictions: dict[int, Any] = dc_field(default_factory=dict)
    diagnostic: str | None = None

    @property
    def almost_quantizable(self) -> str:
        if self.recurrence is None:
            return "unknown"
        return "yes" if self.recurrence.certified else "provisional"

    @property
    def strongly_quantizable(self) -> bool | None:
        if self.verdict is None:
            return None
        return self.verdict.verdict is Verdict.MONOIDAL

    def summary(self) -> str:
        if self.recurrence is None:
            return f"insufficient data: {self.diagnostic}"
        parts = [f"n={self.recurrence.order}", f"almost-quantizable: {self.almost_quantizable}"]
        if self.verdict is None:
            parts.append("monoidal: not evaluated")
        elif self.strongly_quantizable:
            parts.append("monoidal: yes")
        else:
            failed = ", ".join(
                c if c == "not wide" else f"{c} failed" for c in self.verdict.failed_checks()
            )
            parts.append(f"monoidal: no ({failed})")
        if self.closed_form is not None and all(b.multiplicity == 1 for b in self.closed_form.blocks):
            lams = ", ".join(QQ.format(b.eigenvalue) for b in self.closed_form.blocks)
            parts.append(f"λ={lams}")
        return ", ".join(parts)

    def to_document(self) -> dict:
        f = self.sequence.field
        fmt = f.format

        def vec(xs):
            return [fmt(x) for x in xs]

        doc: dict[str, Any] = {"sequence": self.sequence.to_document()}
        if self.recurrence is not None:
            r = self.recurrence
            doc["recurrence"] = {
                "order": r.order,
                "coefficients": vec(r.coefficients),
                "values_consumed": r.values_consumed,
                "certainty": r.certainty,
                "hankel_invertible": r.hankel_invertible,
                "next_hankel_singular": r.next_hankel_singular,
            }
        if self.algebra is not None:
            doc["algebra"] = {
                "dim": self.algebra.dim,
                "recurrence": vec(self.algebra.recurrence),
                "eta_values": vec(self.algebra.eta_values),
            }
        if self.verdict is not None:
            v = self.verdict
            wit = {}
            for k, x in v.witnesses.items():
                wit[k] = vec(x) if isinstance(x, list) else x
            doc["monoidality"] = {
                "wide": v.wide,
                "gram_nondegenerate": v.gram_nondegenerate,
                "condition_two": v.condition_two,
                "euler_check": v.euler_check,
                "verdict": v.verdict.value,
                "witnesses": wit,
            }
        doc["integer_subring"] = self.integer_subring
        if self.closed_form is not None:
            doc["closed_form"] = [
                {
                    "eigenvalue": QQ.format(b.eigenvalue),
                    "multiplicity": b.multiplicity,
                    "coefficients": [QQ.format(a) for a in b.coefficients],
                }
                for b in self.closed_form.blocks
            ]
        doc["predictions"] = {str(g): fmt(v) for g, v in sorted(self.predictions.items())}
        doc["almost_quantizable"] = self.almost_quantizable
        doc["strongly_quantizable"] = self.strongly_quantizable
        if self.diagnostic:
            doc["diagnostic"] = self.diagnostic
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> "QuantizationReport":
        seq = InvariantSequence.from_document(doc["sequence"])
        f = seq.field

        def vec(xs):
            return tuple(f.parse(x) for x in xs)

        rep = cls(sequence=seq, integer_subring=doc.get("integer_subring"))
        if "recurrence" in doc:
            r = doc["recurrence"]
            rep.recurrence = RecurrenceResult(
                order=r["order"],
                coefficients=vec(r["coefficients"]),
                values_consumed=r["values_consumed"],
                certified=r["certainty"] == "certified",
                hankel_invertible=r["hankel_invertible"],
                next_hankel_singular=r["next_hankel_singular"],
            )
        if "algebra" in doc:
            a = doc["algebra"]
            rep.algebra = WideFrobeniusAlgebra(vec(a["recurrence"]), vec(a["eta_values"]), f)
        if "monoidality" in doc:
            m = doc["monoidality"]
            wit = {k: (list(vec(x)) if isinstance(x, list) else x) for k, x in m["witnesses"].items()}
            rep.verdict = MonoidalityVerdict(
                wide=m["wide"],
                gram_nondegenerate=m["gram_nondegenerate"],
                condition_two=m["condition_two"],
                euler_check=m["euler_check"],
                verdict=Verdict(m["verdict"]),
                witnesses=wit,
            )
        if "closed_form" in doc:
            rep.closed_form = ClosedForm(
                tuple(
                    ClosedFormBlock(
                        QQ.parse(b["eigenvalue"]),
                        b["multiplicity"],
                        tuple(QQ.parse(a) for a in b["coefficients"]),
                    )
                    for b in doc["closed_form"]
                )
            )
        rep.predictions = {int(g): f.parse(v) for g, v in doc.get("predictions", {}).items()}
        rep.diagnostic = doc.get("diagnostic")
        return rep


def quantization_report(
    seq: InvariantSequence,
    predict_genera: Iterable[int] = (),
) -> QuantizationReport:
    """Run extraction, the monoidality test and the necessary conditions.

    "almost-quantizable" is declared when the recurrence is certified;
    "strongly quantizable" only when the monoidality verdict is Monoidal.
    Monoidality needs the genus-0 value, so it is skipped for offset data.
    """
    report = QuantizationReport(sequence=seq)
    if seq.genus_offset <= 1 and len(seq) > 1 - seq.genus_offset:
        report.integer_subring = integer_subring_necessary_check(seq.values[1 - seq.genus_offset])
    try:
        rec = extract_recurrence(seq)
    except InsufficientDataError as exc:
        report.diagnostic = str(exc)
        return report
    report.recurrence = rec
    report.algebra = build_algebra(seq, rec)
    if seq.genus_offset == 0:
        report.verdict = check_monoidality(report.algebra)
    else:
        report.diagnostic = "monoidality not evaluated: the data does not start at genus 0"
    report.closed_form = closed_form_rational(rec, seq)
    genera = sorted(set(predict_genera))
    if genera:
        vals = extend(seq, max(genera) - seq.genus_offset + 1, rec)
        report.predictions = {g: vals[g - seq.genus_offset] for g in genera if g >= seq.genus_offset}
    return report
