"""Text and structured rendering of matrices and computation results.

Text matrices follow a column-aligned layout with row-degree labels when the
matrix carries them:

    {-2} | x0 x1   |
    {-2} | 0  2*x2 |

The structured document is a plain dict with the stable keys ``command``,
``dims``, ``matrices``, ``series``, ``status`` and ``orders_log``; every
polynomial appears as a string that parses back with parse_expr.
"""

import json

from .polyring import format_expr


def _degree_label(deg):
    if len(deg) == 1:
        return str(deg[0])
    return "(" + ",".join(str(c) for c in deg) + ")"


def format_matrix(M):
    """Multi-line text form of a PolyMatrix; '0' for an empty shape."""
    if M.rows == 0 or M.cols == 0:
        return "0"
    cells = [[format_expr(p, compact=True) for p in row] for row in M.entries]
    widths = [max(len(cells[i][j]) for i in range(M.rows))
              for j in range(M.cols)]
    labels = None
    if M.row_degrees is not None:
        labels = [_degree_label(d) for d in M.row_degrees]
        lw = max(len(s) for s in labels)
        labels = [s.rjust(lw) for s in labels]
    lines = []
    for i, row in enumerate(cells):
        body = " ".join(c.ljust(w) for c, w in zip(row, widths))
        prefix = "{%s} " % labels[i] if labels is not None else ""
        lines.append("%s| %s |" % (prefix, body))
    return "\n".join(lines)


def matrix_rows(M):
    """The matrix as a list of rows of polynomial strings."""
    return [[format_expr(p) for p in row] for row in M.entries]


def series_rows(pieces):
    """Per-order pieces as {order-string: rows}; accepts a list or dict."""
    if isinstance(pieces, dict):
        items = sorted(pieces.items())
    else:
        items = list(enumerate(pieces))
    return {str(k): matrix_rows(M) for k, M in items}


def document(command, dims=None, matrices=None, series=None,
             status="ok", orders_log=None):
    """Assemble the structured output document with its stable keys."""
    return {
        "command": command,
        "dims": dict(dims or {}),
        "matrices": {k: matrix_rows(v) if not isinstance(v, list) else v
                     for k, v in (matrices or {}).items()},
        "series": dict(series or {}),
        "status": status,
        "orders_log": list(orders_log or []),
    }


def dumps(doc):
    """Serialize a document deterministically."""
    return json.dumps(doc, indent=2) + "\n"
