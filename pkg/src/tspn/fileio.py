"""Versioned JSON file formats: instances, results, curves.

Floats are serialized with Python's shortest round-trip repr, so reading
a file back reproduces every double bit-for-bit and identical runs produce
byte-identical files. Writes go through a temp file plus rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

import numpy as np

from .geometry import Line, Point, Polyline, Ray
from .lines import TourResult

FORMAT_VERSION = 1


class InstanceFormatError(ValueError):
    """Malformed instance/result/curve file; carries the offending record
    index when one applies."""

    def __init__(self, message, record: int | None = None):
        self.record = record
        if record is not None:
            message = f"record {record}: {message}"
        super().__init__(message)


def _as_point(obj, record):
    if isinstance(obj, dict):
        try:
            return Point(float(obj["x"]), float(obj["y"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceFormatError(f"bad point {obj!r}", record) from exc
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        try:
            return Point(float(obj[0]), float(obj[1]))
        except (TypeError, ValueError) as exc:
            raise InstanceFormatError(f"bad point {obj!r}", record) from exc
    raise InstanceFormatError(f"bad point {obj!r}", record)


def _parse_line(rec, i) -> Line:
    if not isinstance(rec, dict):
        raise InstanceFormatError("line record must be an object", i)
    try:
        if "a" in rec:
            return Line(float(rec["a"]), float(rec["b"]), float(rec["c"]))
        if "p1" in rec:
            return Line.from_points(_as_point(rec["p1"], i), _as_point(rec["p2"], i))
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(str(exc), i) from exc
    raise InstanceFormatError("line record needs {a,b,c} or {p1,p2}", i)


def _parse_ray(rec, i) -> Ray:
    if not isinstance(rec, dict):
        raise InstanceFormatError("ray record must be an object", i)
    try:
        apex = _as_point(rec["apex"], i)
        if "dir" in rec:
            d = _as_point(rec["dir"], i)
            return Ray(apex, d.x, d.y)
        if "angle_degrees" in rec:
            return Ray.from_angle(apex, np.deg2rad(float(rec["angle_degrees"])))
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(str(exc), i) from exc
    raise InstanceFormatError("ray record needs {apex, dir} or {apex, angle_degrees}", i)


def parse_instance(obj):
    """Validate a decoded instance document; returns (kind, regions)."""
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance file must hold a JSON object")
    if obj.get("version") != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported version {obj.get('version')!r}")
    kind = obj.get("kind")
    if kind not in ("lines", "rays"):
        raise InstanceFormatError(f"kind must be 'lines' or 'rays', got {kind!r}")
    records = obj.get("regions")
    if not isinstance(records, list) or not records:
        raise InstanceFormatError("instance needs a nonempty 'regions' list")
    parse = _parse_line if kind == "lines" else _parse_ray
    return kind, [parse(rec, i) for i, rec in enumerate(records)]


def load_instance(path):
    """Returns (kind, regions, sha256-of-file-bytes)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    kind, regions = parse_instance(obj)
    return kind, regions, digest


def save_instance(path, kind: str, regions) -> None:
    if kind == "lines":
        records = [{"a": ln.a, "b": ln.b, "c": ln.c} for ln in regions]
    else:
        records = [
            {"apex": {"x": r.apex.x, "y": r.apex.y}, "dir": {"x": r.dx, "y": r.dy}}
            for r in regions
        ]
    atomic_write_text(path, _dumps({"version": FORMAT_VERSION, "kind": kind,
                                    "regions": records}))


def load_curve(path) -> Polyline:
    with open(path, "rb") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or obj.get("version") != FORMAT_VERSION:
        raise InstanceFormatError("curve file must be a v1 JSON object")
    verts = obj.get("vertices")
    if not isinstance(verts, list) or len(verts) < 2:
        raise InstanceFormatError("curve needs a 'vertices' list of >= 2 points")
    points = tuple(_as_point(v, i) for i, v in enumerate(verts))
    try:
        return Polyline(points)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def save_curve(path, curve: Polyline) -> None:
    atomic_write_text(path, _dumps({
        "version": FORMAT_VERSION,
        "vertices": [[p.x, p.y] for p in curve.vertices],
    }))


def result_to_dict(result: TourResult, *, kind: str, epsilon: float, seed: int,
                   m: int, instance_sha256: str, timing_seconds: float) -> dict:
    rect = result.rect
    cert = None
    if result.certificate is not None:
        c = result.certificate
        cert = {
            "output_value": c.output_value,
            "lower_bound": c.lower_bound,
            "ratio": c.ratio,
            "method": c.method,
        }
    return {
        "version": FORMAT_VERSION,
        "kind": kind,
        "mode": result.mode,
        "epsilon": epsilon,
        "seed": seed,
        "m": m,
        "winning_angle": {
            "index": result.winning_angle_index,
            "radians": rect.frame_angle,
        },
        "rectangle": {
            "frame_angle": rect.frame_angle,
            "x1": rect.x1,
            "x2": rect.x2,
            "y1": rect.y1,
            "y2": rect.y2,
            "corners": [[p.x, p.y] for p in rect.corners()],
        },
        "objective_value": result.objective_value,
        "path": None if result.path is None else [[p.x, p.y] for p in result.path.vertices],
        "degenerate": result.degenerate,
        "certificate": cert,
        "instance_sha256": instance_sha256,
        "timing": {"seconds": timing_seconds},
    }


def load_result(path) -> dict:
    with open(path, "rb") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or obj.get("version") != FORMAT_VERSION:
        raise InstanceFormatError("result file must be a v1 JSON object")
    return obj


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def save_result(path, doc: dict) -> None:
    atomic_write_text(path, _dumps(doc))


def atomic_write_text(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tspn-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def sha256_file(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
