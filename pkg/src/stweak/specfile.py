"""JSON problem-spec documents.

    {"problem": {"kind": "tensor", "sequence": {...}}, "criterion": "abs"}

Numbers may be given as decimal strings ("0.25" is exactly 1/4).  Unknown
fields are rejected.
"""

import enum
import json
from fractions import Fraction

import numpy as np

from ._exact import as_fraction, json_number
from .errors import SpecError
from .hilbert import Criterion, GeneralProblem
from .integration import IntegrationBound, Variant
from .sobolev import Norm, SobolevProblem
from .spectra import sequence_from_json
from .tensor import TensorProblem

_KIND_FIELDS = {
    "tensor": {"kind", "sequence"},
    "general": {"kind", "dims"},
    "sobolev": {"kind", "alpha", "norm", "gamma", "beta"},
    "integration": {"kind", "variant", "C"},
}


def _number(doc, key, required=True):
    raw = doc.get(key)
    if raw is None:
        if required:
            raise SpecError(f"field {key!r} is required")
        return None
    if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
        raise SpecError(f"field {key!r} must be a number or decimal string")
    try:
        return as_fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad number for {key!r}: {raw!r}") from exc


def problem_from_json(doc):
    """Return ``(problem, criterion)`` from a parsed spec document."""
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    extra = set(doc) - {"problem", "criterion"}
    if extra:
        raise SpecError(f"unknown top-level fields: {sorted(extra)}")
    try:
        crit = Criterion.parse(doc.get("criterion", "abs"))
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    prob = doc.get("problem")
    if not isinstance(prob, dict):
        raise SpecError("'problem' must be an object")
    kind = prob.get("kind")
    if kind not in _KIND_FIELDS:
        raise SpecError(f"unknown problem kind {kind!r}")
    extra = set(prob) - _KIND_FIELDS[kind]
    if extra:
        raise SpecError(f"unknown fields for {kind} problem: {sorted(extra)}")
    try:
        if kind == "tensor":
            return TensorProblem(sequence_from_json(prob.get("sequence"))), crit
        if kind == "general":
            dims = prob.get("dims")
            if not isinstance(dims, list) or not dims:
                raise SpecError("'dims' must be a nonempty list")
            table = {}
            for entry in dims:
                if not isinstance(entry, dict) or set(entry) != {"d", "sequence"}:
                    raise SpecError("each dims entry needs exactly 'd' and 'sequence'")
                d = entry["d"]
                if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                    raise SpecError(f"bad dimension {d!r}")
                if d in table:
                    raise SpecError(f"dimension {d} listed twice")
                table[d] = sequence_from_json(entry["sequence"])
            return GeneralProblem(table), crit
        if kind == "sobolev":
            norm = prob.get("norm")
            if norm not in {n.value for n in Norm}:
                raise SpecError(f"unknown norm {norm!r}")
            return SobolevProblem(_number(prob, "alpha"), norm, _number(prob, "gamma", False),
                                  _number(prob, "beta", False)), crit
        variant = prob.get("variant", "a")
        if variant not in {v.value for v in Variant}:
            raise SpecError(f"unknown integration variant {variant!r}")
        C = _number(prob, "C", False)
        return IntegrationBound(Variant(variant), 5.0 if C is None else float(C)), crit
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from exc


def problem_to_json(problem, crit):
    return {"problem": problem.to_json(), "criterion": Criterion.parse(crit).value}


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc
    return problem_from_json(doc)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc}") from exc
    return loads(text)


def to_jsonable(obj):
    """``json.dumps`` default hook: exact strings for rationals."""
    if isinstance(obj, Fraction):
        return json_number(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (np.integer, np.floating)):
        return obj.item()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, tuple)):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")
