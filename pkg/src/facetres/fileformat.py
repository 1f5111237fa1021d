"""Plain-text complex files and report documents.

A complex file lists one facet per line as whitespace-separated vertex
tokens.  Blank lines and lines starting with ``#`` are skipped, and vertex
indices follow the order of first appearance.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import SimplicialComplex, build_complex
from .errors import EmptyInput, NotAntichain, ParseError

SCHEMA_VERSION = "facetres-report/1"


def parse_complex(text: str, normalize: bool = False) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(set(tokens)) != len(tokens):
            raise ParseError(f"line {lineno}: repeated vertex in {line!r}")
        facets.append(tokens)
    if not facets:
        raise ParseError("no facets found")
    try:
        return build_complex(facets, normalize=normalize)
    except NotAntichain as exc:
        raise ParseError(f"{exc} (use --normalize to drop non-maximal faces)") from exc
    except EmptyInput as exc:
        raise ParseError(str(exc)) from exc


def read_complex(path, normalize: bool = False) -> SimplicialComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_complex(text, normalize=normalize)


def serialize_complex(delta: SimplicialComplex, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment or "").splitlines()]
    for f in delta.facets:
        lines.append(" ".join(str(v) for v in delta.names(f)))
    return "\n".join(lines) + "\n"


def facet_sets(delta: SimplicialComplex) -> frozenset:
    """The complex as a set of vertex-name sets; equal for any vertex indexing."""
    return frozenset(frozenset(delta.names(f)) for f in delta.facets)


# -- reports ------------------------------------------------------------------

def new_report(command: str, **fields) -> dict:
    doc = {"schema": SCHEMA_VERSION, "command": command}
    doc.update(fields)
    return doc


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    return value


def report_json(doc: dict) -> str:
    return json.dumps(_plain(doc), indent=2)


def report_text(doc: dict) -> str:
    """Human-readable rendering: ``key: value`` lines, nested blocks indented,
    and preformatted tables (keys ending in ``_table``) printed verbatim."""
    lines: list = []

    def emit(d, indent):
        pad = "  " * indent
        for k, v in d.items():
            if k == "schema":
                continue
            if isinstance(v, dict):
                lines.append(f"{pad}{k}:")
                emit(v, indent + 1)
            elif isinstance(k, str) and k.endswith("_table") and isinstance(v, str):
                lines.append(f"{pad}{k}:")
                lines.extend(pad + "  " + row for row in v.splitlines())
            elif isinstance(v, (list, tuple)):
                lines.append(f"{pad}{k}: " + ", ".join(str(x) for x in v))
            else:
                lines.append(f"{pad}{k}: {v}")

    emit(doc, 0)
    return "\n".join(lines)
