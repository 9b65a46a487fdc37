"""The ``.ecg`` text format and JSON certificate files.

::

    # comment
    n r
    u v c
    ...

Whitespace separated decimals, 0-indexed vertices, 1-indexed colors.  A
``#`` starts a comment that runs to the end of the line.  Writers emit edges
sorted by ``(u, v)`` with LF line endings.
"""

import json
from pathlib import Path

from .errors import InputError
from .graph import build_colored_graph, certificate_from_json


class FormatError(InputError):
    pass


def loads_ecg(text):
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers") from None
    if not rows:
        raise FormatError("missing 'n r' header")
    lineno, header = rows[0]
    if len(header) != 2:
        raise FormatError(f"line {lineno}: header must be 'n r'")
    n, r = header
    edges = []
    for lineno, row in rows[1:]:
        if len(row) != 3:
            raise FormatError(f"line {lineno}: edge lines must be 'u v c'")
        edges.append(tuple(row))
    return build_colored_graph(n, r, edges)


def dumps_ecg(cg, comment=None):
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{cg.n} {cg.r}")
    lines.extend(f"{u} {v} {c}" for u, v, c in cg.edges())
    return "\n".join(lines) + "\n"


def read_ecg(path):
    return loads_ecg(Path(path).read_text())


def write_ecg(cg, path, comment=None):
    Path(path).write_text(dumps_ecg(cg, comment), newline="\n")


def write_json(obj, path):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", newline="\n")


def read_certificate(path):
    try:
        return certificate_from_json(json.loads(Path(path).read_text()))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from None
