"""Exact residue and jet computations on configuration spaces."""

import json

from . import _logres
from ._logres import InputError, MathError, lie_dim, suite_names

__all__ = ["InputError", "MathError", "lie_dim", "suite_names", "run_suite", "membership", "pair"]


def run_suite(name, **config):
    """Run a suite and return its report as a dict.

    Keywords: characteristic, g, n, bound, trials, seed, jobs, input (a file path).
    """
    return json.loads(_logres.run_suite(name, **config))


def membership(document):
    """Check a jet tuple document (dict or JSON text)."""
    return json.loads(_logres.membership(_text(document)))


def pair(document, word):
    """Pair a word such as [["e", 0], ["f", -1]] with a jet tuple; returns the scalar as a string or int."""
    return json.loads(_logres.pair(_text(document), _text(word)))


def _text(x):
    return x if isinstance(x, str) else json.dumps(x)
