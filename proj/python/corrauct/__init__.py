"""Optimal single-item auctions for correlated priors.

Thin dict-level wrappers around the compiled core. Rationals travel as
"p/q" strings; `Fraction` converts them losslessly.
"""

import json
from fractions import Fraction

from _corrauct import (  # noqa: F401
    brute_json,
    certify_json,
    continuous_json,
    curve_csv,
    pairs_json,
    reduce_json,
    solve2_json,
    verify_json,
)

__all__ = [
    "Fraction",
    "best_pair",
    "brute_force",
    "certify",
    "rat",
    "reduce_cnf",
    "revenue_curve_csv",
    "solve2",
    "solve_continuous",
    "verify",
]


def rat(text):
    """Parse a "p/q" string into a Fraction."""
    return Fraction(text)


def solve2(prior):
    return json.loads(solve2_json(json.dumps(prior)))


def brute_force(prior):
    return json.loads(brute_json(json.dumps(prior)))


def best_pair(prior):
    return json.loads(pairs_json(json.dumps(prior)))


def solve_continuous(oracle, epsilon):
    return json.loads(continuous_json(oracle, epsilon))


def verify(mechanism, prior):
    return json.loads(verify_json(json.dumps(mechanism), json.dumps(prior)))


def certify(prior):
    return json.loads(certify_json(json.dumps(prior)))


def reduce_cnf(dimacs_text):
    return json.loads(reduce_json(dimacs_text))


def revenue_curve_csv(prior, bidder, fixed):
    return curve_csv(json.dumps(prior), bidder, list(fixed))
