"""Group-fairness auditing of binary decision procedures.

Thin wrapper over the C++ core. Populations are passed as CSV text
(``id,J,X,attrs``) and procedures as JSON text; reports come back as
plain dictionaries with rationals as ``{"exact": "a/b", "approx": float}``.
"""

import json as _json
from fractions import Fraction

from . import _core
from ._core import MeritfairError, to_diamond, export_diagram

__all__ = [
    "MeritfairError",
    "check_absolute_fairness",
    "check_pairwise_fairness",
    "classify",
    "construct_witness",
    "exact",
    "exact_rates",
    "example1",
    "exhaustive_search",
    "expected_contingency",
    "export_diagram",
    "run_cli",
    "simulate",
    "to_diamond",
    "verify_theorem",
]


def exact(value):
    """Fraction from a report rational ({"exact": "a/b", ...}) or None."""
    if value is None:
        return None
    return Fraction(value["exact"])


def classify(h, k, eps=0.0):
    return _json.loads(_core.classify(str(h), str(k), eps))


def example1():
    return _json.loads(_core.example1())


def exact_rates(population_csv, procedure_json, attribute="", value=""):
    return _json.loads(_core.exact_rates(population_csv, procedure_json, attribute, value))


def check_pairwise_fairness(population_csv, procedure_json, attribute, value_a, value_b, tolerance=0.0):
    return _json.loads(
        _core.check_pairwise_fairness(population_csv, procedure_json, attribute, value_a, value_b, tolerance)
    )


def check_absolute_fairness(population_csv, procedure_json, mode="singletons", max_n=15, tolerance=0.0):
    return _json.loads(_core.check_absolute_fairness(population_csv, procedure_json, mode, max_n, tolerance))


def expected_contingency(population_csv, procedure_json, attribute):
    return _json.loads(_core.expected_contingency(population_csv, procedure_json, attribute))


def simulate(population_csv, procedure_json, seed, trials, attribute="", value=""):
    return _json.loads(_core.simulate(population_csv, procedure_json, seed, trials, attribute, value))


def construct_witness(population_csv):
    return _json.loads(_core.construct_witness(population_csv))


def exhaustive_search(population_csv, max_n=15):
    return _json.loads(_core.exhaustive_search(population_csv, max_n))


def verify_theorem(n_individuals, trials, seed):
    return _json.loads(_core.verify_theorem(n_individuals, trials, seed))


def run_cli(args):
    """Runs the command line in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli(list(args))
