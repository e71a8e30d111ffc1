"""Python access to the hdisp library. Descriptors are plain dicts in the CLI's JSON schema."""

import json

from . import _core
from ._core import HdispError

__all__ = ["HdispError", "ring_info", "witt", "frame_check", "classify", "zip_roundtrip",
           "is_orthogonal", "k3_deformations"]


def ring_info(ring):
    return json.loads(_core.ring_info(json.dumps(ring)))


def witt(op, ring, m, x, y=None):
    return json.loads(_core.witt_op(op, json.dumps(ring), m, json.dumps(x), json.dumps(y)))


def frame_check(frame, budget=None, seed=1):
    args = {} if budget is None else {"budget": budget}
    return json.loads(_core.frame_check(json.dumps(frame), seed=seed, **args))


def classify(frame, mu, group="GL", budget=None):
    args = {} if budget is None else {"budget": budget}
    return json.loads(_core.classify(json.dumps(frame), list(mu), group, **args))


def zip_roundtrip(display):
    return _core.zip_roundtrip(json.dumps(display))


def is_orthogonal(display):
    return _core.is_orthogonal(json.dumps(display))


def k3_deformations(display, ext, m=2):
    return json.loads(_core.k3_deformations(json.dumps(display), json.dumps(ext), m))
