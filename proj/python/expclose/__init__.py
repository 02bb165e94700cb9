"""Solve e^z = f(z) on algebraic varieties and audit solutions for integer relations.

Inputs and results are the same JSON records the command line reads and
writes; the wrappers here accept dicts or JSON text and return dicts.
"""

import json

from . import _expclose
from ._expclose import ExpcloseError

__all__ = ["ExpcloseError", "check", "triangularize", "solve", "audit", "sweep", "run_cli"]


def _text(record):
    return record if isinstance(record, str) else json.dumps(record)


def check(system, precision_bits=256, samples=5, rng_seed=0):
    return json.loads(_expclose.check(_text(system), precision_bits, samples, rng_seed))


def triangularize(system, precision_bits=256, samples=5, rng_seed=0):
    return json.loads(_expclose.triangularize(_text(system), precision_bits, samples, rng_seed))


def solve(system, seed, branch=(), precision_bits=256, max_iter=500, samples=5, rng_seed=0,
          require_both_dominant=False):
    return json.loads(_expclose.solve(_text(system), list(seed), list(branch), precision_bits, max_iter,
                                      samples, rng_seed, require_both_dominant))


def audit(solution, height_bound=100, precision_bits=256):
    return json.loads(_expclose.audit(_text(solution), height_bound, precision_bits))


def sweep(system, seed_box, budget=200, height_bound=100, density_degree=None, branch_policy="first",
          override_hypotheses=False, threads=1, precision_bits=256, rng_seed=0):
    box = [tuple(r) for r in seed_box]
    return json.loads(_expclose.sweep(_text(system), box, budget, height_bound, density_degree, branch_policy,
                                      override_hypotheses, threads, precision_bits, rng_seed))


def run_cli(args):
    return _expclose.run_cli([str(a) for a in args])
