"""Instance and solution files (JSON) and the random instance generator."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from .geometry import Point
from .graphs import GRAPH_BUILDERS, PlaneGraph, build_graph, edge_stats

FORMAT_VERSION = 1
DISTRIBUTIONS = ("unit-square", "unit-disk", "clustered")


class FormatError(ValueError):
    pass


def _enc(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    return float(x)


def _dec(x):
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as err:
            raise FormatError(f"bad rational {x!r}") from err
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FormatError(f"bad number {x!r}")
    return x


@dataclass(frozen=True)
class Instance:
    graph: PlaneGraph
    r: object
    meta: Dict = field(default_factory=dict, compare=False)

    @property
    def rational(self) -> bool:
        return any(isinstance(c, Fraction) for p in self.graph.vertices for c in p)

    def to_dict(self) -> Dict:
        return {
            "version": FORMAT_VERSION,
            "r": _enc(self.r),
            "vertices": [[_enc(p.x), _enc(p.y)] for p in self.graph.vertices],
            "edges": [list(e) for e in self.graph.edges],
            "meta": self.meta,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_dict(cls, doc: Dict) -> "Instance":
        _check_version(doc)
        try:
            verts = [Point(_dec(x), _dec(y)) for x, y in doc["vertices"]]
            edges = [(int(i), int(j)) for i, j in doc["edges"]]
            r = _dec(doc["r"])
        except (KeyError, TypeError, ValueError) as err:
            raise FormatError(f"malformed instance: {err}") from err
        return cls(PlaneGraph(tuple(verts), tuple(edges)), r, dict(doc.get("meta", {})))

    @classmethod
    def loads(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SolutionFile:
    centers: tuple
    r: object
    algorithm: str
    certificate: tuple
    stats: Dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict:
        return {
            "version": FORMAT_VERSION,
            "r": _enc(self.r),
            "centers": [[_enc(c[0]), _enc(c[1])] for c in self.centers],
            "algorithm": self.algorithm,
            "certificate": list(self.certificate),
            "stats": self.stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_dict(cls, doc: Dict) -> "SolutionFile":
        _check_version(doc)
        try:
            centers = tuple(Point(_dec(x), _dec(y)) for x, y in doc["centers"])
            return cls(centers, _dec(doc["r"]), str(doc["algorithm"]),
                       tuple(int(k) for k in doc.get("certificate", ())), dict(doc.get("stats", {})))
        except (KeyError, TypeError, ValueError) as err:
            raise FormatError(f"malformed solution: {err}") from err

    @classmethod
    def loads(cls, text: str) -> "SolutionFile":
        return cls.from_dict(json.loads(text))


def _check_version(doc):
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")


def to_float_point(p) -> Point:
    """Float copy of a point with float, rational or mpf coordinates."""
    return Point(float(p[0]), float(p[1]))


# ---------------------------------------------------------------------------
# Generator
# ---------------------------------------------------------------------------


def sample_points(n: int, distribution: str, rng: np.random.Generator) -> np.ndarray:
    if distribution == "unit-square":
        return rng.random((n, 2))
    if distribution == "unit-disk":
        rad = np.sqrt(rng.random(n))
        ang = rng.random(n) * 2 * math.pi
        return np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1)
    if distribution == "clustered":
        k = max(1, round(math.sqrt(n) / 2))
        centres = rng.random((k, 2))
        which = rng.integers(0, k, n)
        return centres[which] + rng.normal(0.0, 0.05, (n, 2))
    raise ValueError(f"unknown distribution {distribution!r}; choose from {', '.join(DISTRIBUTIONS)}")


def generate(kind: str, n: int, distribution: str = "unit-square", seed: int = 0,
             r: Optional[float] = None) -> Instance:
    """Seeded random proximity-graph instance.

    Without ``r`` the radius is the geometric mean of the shortest and
    longest edge, which always lies in ``[d_min, d_max]``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if kind not in GRAPH_BUILDERS:
        raise ValueError(f"unknown graph class {kind!r}; choose from {', '.join(GRAPH_BUILDERS)}")
    rng = np.random.default_rng(seed)
    arr = sample_points(n, distribution, rng)
    pts = [Point(float(x), float(y)) for x, y in arr]
    g = build_graph(kind, pts, seed=seed, perturb=True)
    s = edge_stats(g)
    if r is None:
        r = math.sqrt(s.d_min * s.d_max)
    meta = {"generator": "segstab.generate", "class": kind, "n": n, "distribution": distribution,
            "seed": seed, "d_min": s.d_min, "d_max": s.d_max, "mu": s.mu}
    return Instance(g, float(r), meta)


def parse_points(text: str) -> List[tuple]:
    """Points written as ``x,y;x,y;...`` (integers, decimals or ``num/den``)."""
    out = []
    for chunk in text.replace("\n", ";").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise FormatError(f"bad point {chunk!r}")
        out.append(tuple(Fraction(p.strip()) for p in parts))
    return out


def integer_points(points: Sequence) -> List[tuple]:
    out = []
    for p in points:
        if any(Fraction(c).denominator != 1 for c in p):
            raise FormatError(f"point {p} is not integral")
        out.append(tuple(int(c) for c in p))
    return out
