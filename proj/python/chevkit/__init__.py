"""Chevalley group toolkit: exact matrices of adjoint Chevalley groups over local rings."""

import json as _json

from . import _chevkit
from ._chevkit import (
    NonUnit,
    NotCongruent,
    NotLocal,
    Order3Violation,
    SpecError,
    UnknownFixture,
    UnsupportedSystem,
    block_ids,
    condition_ids,
    fixture_ids,
)

__all__ = [
    "NonUnit", "NotCongruent", "NotLocal", "Order3Violation", "SpecError", "UnknownFixture",
    "UnsupportedSystem", "block_ids", "blocks", "centralizer", "condition_ids", "conjugacy_witness",
    "diagonalize", "fixture", "fixture_ids", "generator", "pipeline", "rigidity", "ring_info",
    "roots", "split3", "verify",
]


def _wrap(fn):
    def call(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


def _matrix_arg(m):
    return m if isinstance(m, str) else _json.dumps(m)


ring_info = _wrap(_chevkit.ring_info)
roots = _wrap(_chevkit.roots)
generator = _wrap(_chevkit.generator)
verify = _wrap(_chevkit.verify)
diagonalize = _wrap(_chevkit.diagonalize)
blocks = _wrap(_chevkit.blocks)
rigidity = _wrap(_chevkit.rigidity)
centralizer = _wrap(_chevkit.centralizer)
fixture = _wrap(_chevkit.fixture)


def pipeline(seed=7, samples=200, only=()):
    return _json.loads(_chevkit.pipeline(seed, samples, list(only)))


def split3(matrix):
    """Matrix as {"ring", "n", "entries"} (dict or JSON text)."""
    return _json.loads(_chevkit.split3(_matrix_arg(matrix)))


def conjugacy_witness(a, b):
    return _json.loads(_chevkit.conjugacy_witness(_matrix_arg(a), _matrix_arg(b)))
