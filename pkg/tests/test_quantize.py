import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quantizable.exactmath import QQ, QQq, Polynomial, RationalFunction
from quantizable.frobenius import Verdict
from quantizable.quantize import (
    ClosedFormBlock,
    InconsistentRecurrenceError,
    InsufficientDataError,
    InvariantSequence,
    QuantizationReport,
    build_algebra,
    characteristic_polynomial,
    closed_form_rational,
    extend,
    extract_recurrence,
    predict,
    quantization_report,
    rational_roots,
)


def seq(*values, **kw):
    return InvariantSequence(tuple(values), **kw)


class TestExtraction:
    def test_constant(self):
        r = extract_recurrence(seq(1, 1, 1))
        assert r.order == 1 and r.coefficients == (1,) and r.certified

    def test_two_eigenvalues(self):
        s = seq(*[2**g + 3**g for g in range(6)])
        r = extract_recurrence(s)
        assert r.coefficients == (-6, 5)
        assert predict(s, 10, r) == 2**10 + 3**10

    def test_example_sequence(self):
        r = extract_recurrence(seq(1, 1, 3, 7, 17))
        assert r.order == 2 and r.coefficients == (1, 2)
        assert r.hankel_invertible and r.next_hankel_singular is True

    def test_next_hankel_needs_data(self):
        r = extract_recurrence(seq(1, 1, 3, 7))
        assert r.certified and r.next_hankel_singular is None

    def test_insufficient(self):
        with pytest.raises(InsufficientDataError):
            extract_recurrence(seq(1, 2, 5))
        with pytest.raises(InsufficientDataError):
            extract_recurrence(seq(1))

    def test_explicit_order_inconsistent(self):
        with pytest.raises(InconsistentRecurrenceError):
            extract_recurrence(seq(1, 2, 5, 7), order=1)

    def test_zero_sequence(self):
        r = extract_recurrence(seq(0, 0, 0, 0))
        assert r.order == 1 and not r.hankel_invertible and not r.certified

    def test_function_field(self):
        q = RationalFunction.q()
        vals = [q**g + 1 for g in range(6)]
        r = extract_recurrence(InvariantSequence(tuple(vals), QQq))
        assert r.order == 2
        assert r.coefficients == (-q, q + 1)

    def test_genus_offset_predict(self):
        s = InvariantSequence(tuple(Fraction(4) ** g for g in range(2, 6)), genus_offset=2)
        assert predict(s, 8) == 4**8
        assert predict(s, 2) == 16
        with pytest.raises(ValueError):
            predict(s, 1)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(-4, 4), min_size=1, max_size=3),
        st.lists(st.integers(-4, 4), min_size=3, max_size=3),
    )
    def test_extend_reproduces_recurrence(self, a, init):
        n = len(a)
        vals = [Fraction(x) for x in init[:n]]
        while len(vals) < 2 * n + 4:
            vals.append(sum(a[i] * vals[-n + i] for i in range(n)))
        s = InvariantSequence(tuple(vals[: 2 * n]))
        r = extract_recurrence(s)
        assert r.order <= n
        assert extend(s, len(vals), r) == vals


class TestClosedForm:
    def test_rational_roots(self):
        t = Polynomial.q()
        roots, rest = rational_roots((t - 2) ** 2 * (2 * t + 1) * t * (t * t + 1))
        assert roots == [(0, 1), (Fraction(-1, 2), 1), (2, 2)]
        assert rest.monic() == t * t + 1

    def test_distinct(self):
        s = seq(*[2**g + 3**g for g in range(6)])
        cf = closed_form_rational(extract_recurrence(s), s)
        assert cf.blocks == (ClosedFormBlock(2, 1, (1,)), ClosedFormBlock(3, 1, (1,)))

    def test_repeated_root(self):
        s = seq(*[g * 2**g for g in range(5)])
        cf = closed_form_rational(extract_recurrence(s), s)
        assert cf.blocks == (ClosedFormBlock(2, 2, (0, 2)),)
        assert all(cf.evaluate(g) == g * 2**g for g in range(12))

    def test_irrational(self):
        s = seq(1, 1, 3, 7, 17)
        assert closed_form_rational(extract_recurrence(s), s) is None

    def test_characteristic_polynomial(self):
        r = extract_recurrence(seq(1, 1, 3, 7, 17))
        t = Polynomial.q()
        assert characteristic_polynomial(r) == t * t - 2 * t - 1


class TestReport:
    def test_example_summary(self):
        rep = quantization_report(seq(1, 1, 3, 7, 17))
        assert rep.summary().startswith("n=2, almost-quantizable: yes, monoidal: no (condition 2 failed")
        assert rep.verdict.verdict is Verdict.NOT_MONOIDAL
        assert rep.integer_subring is True

    def test_constant_summary(self):
        rep = quantization_report(seq(1, 1, 1))
        assert rep.summary().startswith("n=1, almost-quantizable: yes, monoidal: yes")
        assert rep.strongly_quantizable

    def test_insufficient_report(self):
        rep = quantization_report(seq(1, 2, 5))
        assert rep.recurrence is None and rep.almost_quantizable == "unknown"
        assert rep.summary().startswith("insufficient data")

    def test_offset_skips_monoidality(self):
        rep = quantization_report(InvariantSequence((Fraction(4), Fraction(16)), genus_offset=1))
        assert rep.verdict is None and "genus 0" in rep.diagnostic

    def test_document_round_trip(self):
        rep = quantization_report(seq(*[2**g + 3**g for g in range(6)]), predict_genera=[7, 9])
        doc = rep.to_document()
        again = QuantizationReport.from_document(json.loads(json.dumps(doc)))
        assert again.to_document() == doc
        assert again.predictions == {7: 2**7 + 3**7, 9: 2**9 + 3**9}

    def test_function_field_round_trip(self):
        q = RationalFunction.q()
        s = InvariantSequence(tuple(q**g + 1 for g in range(6)), QQq)
        rep = quantization_report(s, [8])
        doc = rep.to_document()
        assert QuantizationReport.from_document(doc).to_document() == doc
        assert rep.predictions[8] == q**8 + 1
        assert rep.integer_subring is False

    def test_build_algebra(self):
        s = seq(1, 1, 3, 7, 17)
        w = build_algebra(s)
        assert w.eta_sequence(5) == list(s.values)


class TestSequenceDocuments:
    def test_round_trip(self):
        s = InvariantSequence((Fraction(1), Fraction(1, 2)), genus_offset=3)
        assert InvariantSequence.from_document(s.to_document()) == s

    def test_integers_accepted(self):
        s = InvariantSequence.from_document({"field": "Q", "values": [1, "2/3"]})
        assert s.values == (1, Fraction(2, 3))

    def test_missing_field(self):
        with pytest.raises(ValueError):
            InvariantSequence.from_document({"values": [1]})

    def test_bad_value(self):
        with pytest.raises(ValueError):
            InvariantSequence.from_document({"field": "Q", "values": [1.5]})

    def test_empty(self):
        with pytest.raises(ValueError):
            InvariantSequence(())
