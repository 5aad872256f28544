"""TSPLIB subset reader/writer and the certificate file format.

Supported: ``TYPE: TSP``; ``EDGE_WEIGHT_TYPE`` of ``EXPLICIT`` (with
``EDGE_WEIGHT_FORMAT: FULL_MATRIX``), ``EUC_2D`` or ``MAN_2D`` with integer
coordinates. Two comment lines carry what TSPLIB cannot express::

    COMMENT SCALE=<int>   all stored lengths are true lengths times this
    COMMENT LP=<int>      exponent of the coordinate norm

Coordinates are read as exact integers; ``EUC_2D`` lengths are *not* rounded
as classic TSPLIB would do. Graphic instances are written as explicit
matrices. Anything outside this subset is rejected.
"""
from __future__ import annotations

import re

import numpy as np

from .instances import FAMILIES, Certificate
from .metrics import Instance, Metric


class TsplibError(ValueError):
    pass


_HEADER_KEYS = {"NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE", "EDGE_WEIGHT_FORMAT"}
_SECTIONS = {"NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION"}
_COORD_TYPES = {"EUC_2D": 2, "MAN_2D": 1}


def write_tsplib(instance: Instance) -> str:
    m = instance.metric
    lines = [f"NAME: {instance.name or 'instance'}", "TYPE: TSP",
             f"COMMENT SCALE={m.scale}"]
    if m.kind == "lp":
        lines.append(f"COMMENT LP={m.p}")
        lines.append(f"DIMENSION: {instance.n}")
        lines.append(f"EDGE_WEIGHT_TYPE: {'MAN_2D' if m.p == 1 else 'EUC_2D'}")
        lines.append("NODE_COORD_SECTION")
        for i, (x, y) in enumerate(instance.coords.tolist(), start=1):
            lines.append(f"{i} {x} {y}")
    else:
        lines.append(f"DIMENSION: {instance.n}")
        lines.append("EDGE_WEIGHT_TYPE: EXPLICIT")
        lines.append("EDGE_WEIGHT_FORMAT: FULL_MATRIX")
        lines.append("EDGE_WEIGHT_SECTION")
        for row in instance.key_matrix.tolist():
            lines.append(" ".join(map(str, row)))
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def _split_keyword(line: str) -> tuple[str, str]:
    if ":" in line:
        key, _, value = line.partition(":")
    else:
        key, _, value = line.partition(" ")
    return key.strip().upper(), value.strip()


def read_tsplib(text: str) -> Instance:
    header: dict[str, str] = {}
    comments: list[str] = []
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if re.match(r"^[-+]?\d", line):
            if current is None:
                raise TsplibError(f"data line outside any section: {line!r}")
            sections[current].extend(line.split())
            continue
        key, value = _split_keyword(line)
        if key == "EOF":
            current = None
            break
        if key in _SECTIONS:
            if key in sections:
                raise TsplibError(f"duplicate {key}")
            sections[key] = []
            current = key
            continue
        if key not in _HEADER_KEYS:
            raise TsplibError(f"unsupported keyword or section {key!r}")
        current = None
        if key == "COMMENT":
            comments.append(value)
        else:
            header[key] = value

    for key in ("TYPE", "DIMENSION", "EDGE_WEIGHT_TYPE"):
        if key not in header:
            raise TsplibError(f"missing {key}")
    if header["TYPE"].upper() != "TSP":
        raise TsplibError(f"unsupported TYPE {header['TYPE']!r}")
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise TsplibError(f"malformed DIMENSION {header['DIMENSION']!r}") from None
    if n < 1:
        raise TsplibError(f"DIMENSION must be positive, got {n}")

    scale, p = 1, None
    for c in comments:
        mt = re.fullmatch(r"(SCALE|LP)\s*=\s*(\d+)", c.strip(), flags=re.IGNORECASE)
        if mt is None:
            continue
        if mt.group(1).upper() == "SCALE":
            scale = int(mt.group(2))
        else:
            p = int(mt.group(2))

    name = header.get("NAME", "")
    wtype = header["EDGE_WEIGHT_TYPE"].upper()
    if wtype in _COORD_TYPES:
        default_p = _COORD_TYPES[wtype]
        if p is None:
            p = default_p
        elif wtype == "MAN_2D" and p != 1:
            raise TsplibError(f"MAN_2D contradicts LP={p}")
        tokens = _section(sections, "NODE_COORD_SECTION", 3 * n, f"{n} nodes")
        rows = np.array([_int(t) for t in tokens], dtype=np.int64).reshape(n, 3)
        if not np.array_equal(rows[:, 0], np.arange(1, n + 1)):
            raise TsplibError("NODE_COORD_SECTION node ids must run 1..DIMENSION in order")
        return Instance(n, Metric.lp(p, scale), rows[:, 1:], name=name)
    if wtype == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        if fmt != "FULL_MATRIX":
            raise TsplibError(f"unsupported EDGE_WEIGHT_FORMAT {fmt or '(missing)'!r}")
        tokens = _section(sections, "EDGE_WEIGHT_SECTION", n * n, f"{n * n} entries")
        mat = np.array([_int(t) for t in tokens], dtype=np.int64).reshape(n, n)
        if not np.array_equal(mat, mat.T):
            i, j = np.argwhere(mat != mat.T)[0]
            raise TsplibError(f"EDGE_WEIGHT_SECTION not symmetric at ({i + 1}, {j + 1})")
        return Instance(n, Metric.explicit(mat, scale), name=name)
    raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE {wtype!r}")


def _section(sections, name, count, what):
    if name not in sections:
        raise TsplibError(f"missing {name}")
    tokens = sections[name]
    if len(tokens) != count:
        raise TsplibError(f"{name} truncated or oversized: expected {what}, "
                          f"found {len(tokens)} values")
    return tokens


def _int(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise TsplibError(f"non-integer value {token!r}") from None


def write_certificate(cert: Certificate) -> str:
    lines = [f"FAMILY {cert.family} {cert.param} {cert.expected_length}"]
    lines.extend(f"{u} {v}" for u, v in cert.edges)
    return "\n".join(lines) + "\n"


def read_certificate(text: str) -> Certificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TsplibError("empty certificate file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "FAMILY":
        raise TsplibError(f"malformed certificate header {lines[0]!r}")
    family = head[1]
    if family not in FAMILIES:
        raise TsplibError(f"unknown certificate family {family!r}")
    param, expected = _int(head[2]), _int(head[3])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise TsplibError(f"malformed certificate edge line {ln!r}")
        edges.append((_int(parts[0]), _int(parts[1])))
    return Certificate(family, param, tuple(edges), expected)
