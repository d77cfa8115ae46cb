"""Functional stable models on finite structures."""

import json

from ._fsmkit import (
    ContractError,
    DomainError,
    FragmentError,
    FsmkitError,
    ParseError,
    SortError,
    canonical,
    completion,
    se_refuted,
    to_smt,
    unfold,
)
from . import _fsmkit

__all__ = [
    "ContractError", "DomainError", "FragmentError", "FsmkitError", "ParseError", "SortError",
    "canonical", "check_stable", "completion", "is_tight", "se_refuted", "stable_models", "to_smt", "unfold",
]


def stable_models(text, relative_to=None, universe=None, method="reduct", jobs=1):
    """Stable models as interpretation dicts (see schemas/interpretation.schema.json)."""
    return json.loads(_fsmkit.stable_models_json(text, relative_to, universe or {}, method, jobs))


def check_stable(text, interpretation, relative_to=None, universe=None, method="reduct"):
    return _fsmkit.check_stable_json(text, json.dumps(interpretation), relative_to, universe or {}, method)


def is_tight(text, relative_to=None):
    return _fsmkit.tightness_cycle(text, relative_to) is None
