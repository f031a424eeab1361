"""Channel JSON format and the builtin channel address scheme.

A channel file is an object {"din": int, "dout": int, "kraus": [matrix, ...]}
where a matrix is an array of rows and each entry is a two-element array
[re, im].  Numbers are written with 17 significant digits so round trips are
exact.  The environment dimension is implied by the Kraus count.
"""

from __future__ import annotations

import json

import numpy as np

from .channels import KrausChannel, erasure_channel, horodecki_channel_4, identity_channel
from .linops import ValidationError


class ChannelFormatError(ValueError):
    """The channel JSON (or builtin address) could not be parsed."""


def channel_to_dict(c: KrausChannel) -> dict:
    return {
        "din": c.din,
        "dout": c.dout,
        "kraus": [[[[float(z.real), float(z.imag)] for z in row] for row in k] for k in c.kraus],
    }


def channel_to_json(c: KrausChannel) -> str:
    # float() repr already emits shortest-exact (>= 17 significant digits when needed)
    return json.dumps(channel_to_dict(c))


def channel_from_dict(d: dict) -> KrausChannel:
    for field in ("din", "dout", "kraus"):
        if field not in d:
            raise ChannelFormatError(f"missing field {field!r}")
    din, dout = d["din"], d["dout"]
    if not (isinstance(din, int) and din > 0 and isinstance(dout, int) and dout > 0):
        raise ChannelFormatError("fields 'din' and 'dout' must be positive integers")
    kraus_json = d["kraus"]
    if not isinstance(kraus_json, list) or not kraus_json:
        raise ChannelFormatError("field 'kraus' must be a nonempty array of matrices")
    ops = []
    for ki, mat in enumerate(kraus_json):
        if not isinstance(mat, list) or len(mat) != dout:
            raise ChannelFormatError(
                f"kraus[{ki}] has {len(mat) if isinstance(mat, list) else 'no'} rows, "
                f"expected dout={dout}")
        op = np.zeros((dout, din), dtype=complex)
        for ri, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != din:
                raise ChannelFormatError(
                    f"kraus[{ki}] row {ri} has length "
                    f"{len(row) if isinstance(row, list) else 'n/a'}, expected din={din}")
            for ci, entry in enumerate(row):
                if not (isinstance(entry, list) and len(entry) == 2):
                    raise ChannelFormatError(
                        f"kraus[{ki}] row {ri} entry {ci} must be a [re, im] pair")
                op[ri, ci] = complex(entry[0], entry[1])
        ops.append(op)
    try:
        return KrausChannel(tuple(ops))
    except ValidationError as exc:
        raise ChannelFormatError(str(exc)) from exc


def load_channel(path: str) -> KrausChannel:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ChannelFormatError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ChannelFormatError("channel file must contain a JSON object")
    return channel_from_dict(data)


def save_channel(c: KrausChannel, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(channel_to_json(c))
        fh.write("\n")


def resolve_channel(spec: str) -> KrausChannel:
    """Resolve a channel address: a JSON file path or a builtin name.

    Builtins: ``builtin:horodecki4``, ``builtin:identity:d``,
    ``builtin:erasure:d:p``.
    """
    if not spec.startswith("builtin:"):
        return load_channel(spec)
    parts = spec.split(":")
    name = parts[1] if len(parts) > 1 else ""
    try:
        if name == "horodecki4" and len(parts) == 2:
            return horodecki_channel_4()
        if name == "identity" and len(parts) == 3:
            return identity_channel(int(parts[2]))
        if name == "erasure" and len(parts) == 4:
            return erasure_channel(int(parts[2]), float(parts[3]))
    except (ValueError, ValidationError) as exc:
        raise ChannelFormatError(f"bad builtin address {spec!r}: {exc}") from exc
    raise ChannelFormatError(
        f"unknown builtin {spec!r}; expected builtin:horodecki4, "
        "builtin:identity:d or builtin:erasure:d:p")
