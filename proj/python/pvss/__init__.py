"""Exact spectral-sequence engine for Z^n actions on K-theory.

Thin wrapper over the compiled core: every function takes the JSON text of a
system description (the same format the ``pvss`` CLI reads) and returns plain
Python dicts.  Matrix and torsion entries are decimal strings, so arbitrarily
large values survive the trip.
"""

import json

try:
    from ._pvss import (
        InsufficientDataError,
        ParseError,
        cohomology_json,
        crossed_json,
        pages_json,
        snf_json,
        validate,
    )
except ImportError:  # running from the build tree, module next to us on the path
    from _pvss import (
        InsufficientDataError,
        ParseError,
        cohomology_json,
        crossed_json,
        pages_json,
        snf_json,
        validate,
    )

__all__ = [
    "InsufficientDataError",
    "ParseError",
    "cohomology",
    "crossed",
    "pages",
    "snf",
    "validate",
]


def pages(text, strict=False):
    """All pages E_1 .. E_{n+1} of the spectral sequence."""
    return json.loads(pages_json(text, strict))


def crossed(text, strict=False, iterated=False):
    """K-theory of the crossed product, up to the reported extension ambiguity."""
    return json.loads(crossed_json(text, strict, iterated))


def cohomology(text):
    """Group cohomology H^p(Z^n; K_q) of the two coefficient modules."""
    return json.loads(cohomology_json(text))


def snf(matrix):
    """Smith normal form u * m * v = d of an integer matrix.

    Accepts a list of rows (ints or decimal strings) or the equivalent JSON
    text.
    """
    if not isinstance(matrix, str):
        matrix = json.dumps([[str(e) for e in row] for row in matrix])
    return json.loads(snf_json(matrix))
