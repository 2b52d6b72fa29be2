"""JSON input formats and CSV output.

World file::

    {"states": ["w1", "w2"], "probs": [0.5, 0.5],
     "messages": [{"id": "x1", "truth_set": ["w1"]}],
     "fuzzy": {"memberships": {"w1": 0.2, "w2": 0.8}, "classes": [["w1"], ["w2"]]}}

Channel file::

    {"table": [[0.9, 0.1], [0.1, 0.9]],
     "output_semantics": [{"id": "y1", "truth_set": ["w1"]}, ...]}

Scenario file::

    {"n": 64, "k": 3, "gamma_bar": 10, "beta_bar": 0.1,
     "noise_var": 0.1, "space": "data", "calibrated": true}

``noise_var`` defaults to ``1 / gamma_bar``.
"""

import csv
import json
from pathlib import Path

from .capacity import Channel
from .cognition import AccuracyProfile
from .exceptions import StructuralError
from .sampling import SamplingScenario
from .world import FiniteWorld, FuzzyConcept, SemanticMessage, SemanticMessageSet

SIG_DIGITS = 12


def read_json(path):
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    try:
        with path.open(encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON ({exc})") from exc


def _field(doc, key, path):
    if not isinstance(doc, dict) or key not in doc:
        raise StructuralError(f"{path}: missing field '{key}'")
    return doc[key]


def _messages(items, path, key):
    try:
        return SemanticMessageSet(
            tuple(SemanticMessage(_field(m, "id", path), _field(m, "truth_set", path)) for m in items)
        )
    except StructuralError as exc:
        raise StructuralError(f"{path}: field '{key}': {exc}") from exc


def load_world(path):
    doc = read_json(path)
    try:
        world = FiniteWorld(_field(doc, "states", path), _field(doc, "probs", path))
    except ValueError as exc:
        raise type(exc)(f"{path}: fields 'states'/'probs': {exc}") from exc
    return world, doc


def load_messages(doc, path):
    return _messages(_field(doc, "messages", path), path, "messages")


def load_fuzzy(doc, path):
    fuzzy = _field(doc, "fuzzy", path)
    return FuzzyConcept(_field(fuzzy, "memberships", path), _field(fuzzy, "classes", path))


def load_channel(path):
    doc = read_json(path)
    table = _field(doc, "table", path)
    sem = _messages(_field(doc, "output_semantics", path), path, "output_semantics")
    try:
        return Channel(table, sem)
    except ValueError as exc:
        raise type(exc)(f"{path}: field 'table': {exc}") from exc


def load_accuracy(path):
    doc = read_json(path)
    if isinstance(doc, dict) and "accuracies" in doc:
        doc = doc["accuracies"]
    if not isinstance(doc, dict):
        raise StructuralError(f"{path}: expected an object mapping message id to accuracy")
    return AccuracyProfile(doc)


def load_scenario(path):
    doc = read_json(path)
    gamma = _field(doc, "gamma_bar", path)
    scenario = SamplingScenario(
        n=_field(doc, "n", path),
        k=_field(doc, "k", path),
        gamma_bar=gamma,
        beta_bar=_field(doc, "beta_bar", path),
        noise_var=doc.get("noise_var", 1.0 / float(gamma)),
        space=doc.get("space", "data"),
    )
    return scenario, bool(doc.get("calibrated", True))


def round_sig(obj, digits=SIG_DIGITS):
    """Recursively round floats to ``digits`` significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: round_sig(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_sig(v, digits) for v in obj]
    return obj


def dumps(doc):
    return json.dumps(round_sig(doc), indent=2, sort_keys=True) + "\n"


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    return value


def write_csv(records, fh, fieldnames):
    writer = csv.writer(fh, lineterminator="\r\n")
    writer.writerow(fieldnames)
    for rec in records:
        writer.writerow([_fmt(rec[f]) for f in fieldnames])


def emit_csv(records, path, fieldnames=None):
    """Write ``records`` (a list of dicts) as CSV with a header row.

    ``fieldnames`` defaults to the keys of the first record and must be
    given when ``records`` is empty.
    """
    records = list(records)
    if fieldnames is None:
        if not records:
            raise StructuralError("fieldnames are required for an empty record set")
        fieldnames = list(records[0])
    for i, rec in enumerate(records):
        if set(rec) != set(fieldnames):
            raise StructuralError(f"record {i} does not match the header {fieldnames}")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        write_csv(records, fh, fieldnames)
    return Path(path)
