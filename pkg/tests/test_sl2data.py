import pytest

from quantizable.exactmath import Polynomial, RationalFunction
from quantizable.quantize import InsufficientDataError, InvariantSequence, extract_recurrence
from quantizable.sl2data import (
    PUBLISHED_COEFFICIENTS,
    NonPolynomialResult,
    closed_formula_eval,
    load_dataset,
    published_coefficients,
    sl2_pipeline,
)

q = Polynomial.q()


@pytest.fixture(scope="module")
def data():
    return load_dataset()


@pytest.fixture(scope="module")
def pipeline():
    return sl2_pipeline(14)


class TestDataset:
    def test_shape(self, data):
        vals = data.values.values
        assert len(vals) == 12
        assert vals[0] == 1
        assert vals[1] == RationalFunction(q**4 + 4 * q**3 - q**2 - 4 * q)
        assert len(data.provenance) == 12 and data.notes

    def test_degrees(self, data):
        for g, v in enumerate(data.values.values[2:], 2):
            assert v.num.degree == 6 * g - 3
            assert v.num.leading == 1

    def test_genus4_row(self, data):
        assert data.values.values[4].num.degree == 21


class TestClosedFormula:
    def test_genus1(self):
        assert closed_formula_eval(1) == RationalFunction(q**4 + 4 * q**3 - q**2 - 4 * q)

    def test_matches_table(self, data):
        for g in range(1, 11):
            assert closed_formula_eval(g) == data.values.values[g], g

    def test_leading_term(self):
        for g in range(2, 15):
            v = closed_formula_eval(g).num
            assert v.degree == 6 * g - 3 and v.leading == 1

    def test_integer_coefficients(self):
        assert closed_formula_eval(7).num.integer_coefficients() is not None

    def test_shift_other_than_zero_fails(self):
        with pytest.raises(NonPolynomialResult):
            closed_formula_eval(3, r=1)

    def test_bad_genus(self):
        with pytest.raises(ValueError):
            closed_formula_eval(0)


class TestRecurrence:
    def test_published_ordering(self, data):
        # the data obey chi_g = sum_i P_i chi_{g-1-i}
        P = [RationalFunction(p) for p in published_coefficients()]
        vals = data.values.values
        for g in range(6, 12):
            assert vals[g] == sum((P[i] * vals[g - 1 - i] for i in range(6)), RationalFunction(0))

    def test_literal_ordering_is_falsified(self, data):
        # read literally, chi_g = P_0 chi_{g-6} + ... + P_5 chi_{g-1}: fails on every row
        P = [RationalFunction(p) for p in published_coefficients()]
        vals = data.values.values
        for g in range(6, 12):
            assert vals[g] != sum((P[i] * vals[g - 6 + i] for i in range(6)), RationalFunction(0))

    def test_seven_dependent_six_independent(self, data):
        rec = extract_recurrence(data.values)
        assert rec.order == 6 and rec.certified and rec.hankel_invertible

    def test_eleven_values_are_not_enough_to_certify(self, data):
        head = InvariantSequence(data.values.values[:11], data.values.field)
        with pytest.raises(InsufficientDataError):
            extract_recurrence(head)


class TestPipeline:
    def test_coefficients(self, pipeline):
        assert pipeline.coefficients == list(PUBLISHED_COEFFICIENTS)
        assert pipeline.coefficients[0] == "q^6 + 9*q^4 + 9*q^2 + 1"

    def test_predictions(self, pipeline):
        assert sorted(pipeline.predictions) == [12, 13, 14]
        for g, v in pipeline.predictions.items():
            assert v == closed_formula_eval(g)

    def test_genus11_both_ways(self, pipeline):
        assert pipeline.genus11_recurrence == pipeline.genus11_formula

    def test_rescaled_handle(self, pipeline):
        H = pipeline.rescaled_handle()
        assert H[1][0] == RationalFunction(q**3 - q)
        # last column holds a_i = P_{5-i}, so the corner is (q^3 - q) P_0
        assert H[5][5] == RationalFunction((q**3 - q) * published_coefficients()[0])

    def test_summary(self, pipeline):
        s = pipeline.report.summary()
        assert s.startswith("n=6, almost-quantizable: yes, monoidal: no")
        assert "euler_check failed" in s

    def test_needs_genus_12(self):
        with pytest.raises(ValueError):
            sl2_pipeline(11)
