from django.test import SimpleTestCase

from fingerprints.exceptions import NegativeRuntime, NonFiniteRuntime
from fingerprints.labels import ComplexityLabel, classify_runtime


class ClassifyRuntimeTests(SimpleTestCase):

    def test_bands(self):
        self.assertEqual(classify_runtime(4.9), ComplexityLabel.SIMPLE)
        self.assertEqual(classify_runtime(17.0), ComplexityLabel.MEDIUM)
        self.assertEqual(classify_runtime(31.0), ComplexityLabel.COMPLEX)

    def test_boundaries(self):
        runtimes = [0, 4.999, 5.0, 29.999, 30.0, 1000]
        self.assertEqual(
            [classify_runtime(r).label for r in runtimes],
            ["Simple", "Simple", "Medium", "Medium", "Complex", "Complex"],
        )

    def test_invalid(self):
        with self.assertRaises(NegativeRuntime):
            classify_runtime(-0.1)
        for value in (float("inf"), float("nan")):
            with self.assertRaises(NonFiniteRuntime):
                classify_runtime(value)

    def test_monotone(self):
        labels = [classify_runtime(r / 10) for r in range(0, 600)]
        self.assertEqual(labels, sorted(labels))
        self.assertLess(ComplexityLabel.SIMPLE, ComplexityLabel.MEDIUM)
        self.assertLess(ComplexityLabel.MEDIUM, ComplexityLabel.COMPLEX)

    def test_from_name(self):
        self.assertEqual(ComplexityLabel.from_name("Medium"), ComplexityLabel.MEDIUM)
        with self.assertRaises(ValueError):
            ComplexityLabel.from_name("Huge")
