"""Line-oriented input files describing a polynomial system.

A file declares the coefficient field (QQ is the only accepted value), the
variables, optional multidegrees, and the ideal generators:

    ring: QQ
    vars: x0 x1 x2 x3 x4
    degrees: 1 1 1 1 1
    generators:
      -x1^2+x0*x2
      -x1*x2+x0*x3

``degrees:`` takes one entry per variable, each a single integer or a
parenthesized tuple like (1,0,0), all of the same length.  Generator lines
must be indented.  ``#`` starts a comment; blank lines are ignored.
"""

import re

from .errors import ParseError
from .polyring import RingSpec, parse_expr

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_DEGREE_TOKEN_RE = re.compile(r"\(\s*[-0-9,\s]*\)|-?\d+")


class InputSystem:
    """A parsed input file: the ring and the ideal generators."""

    __slots__ = ("ring", "generators", "source")

    def __init__(self, ring, generators, source="<input>"):
        self.ring = ring
        self.generators = list(generators)
        self.source = source

    def __repr__(self):
        return "InputSystem(%d vars, %d generators)" % (
            len(self.ring.x_vars), len(self.generators))


def _strip_comment(line):
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _parse_degree_entry(tok, lineno):
    if tok.startswith("("):
        inner = tok[1:-1].strip()
        if not inner:
            raise ParseError("empty degree tuple", line=lineno)
        try:
            return tuple(int(c.strip()) for c in inner.split(","))
        except ValueError:
            raise ParseError("bad degree tuple %r" % tok, line=lineno)
    try:
        return (int(tok),)
    except ValueError:
        raise ParseError("bad degree entry %r" % tok, line=lineno)


def parse_input(text, source="<input>"):
    """Parse the contents of an input file into an InputSystem."""
    field = None
    var_names = None
    degrees = None
    degrees_line = None
    gen_lines = []
    in_generators = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indented = line[0] in " \t"
        stripped = line.strip()
        if in_generators and indented:
            gen_lines.append((lineno, stripped))
            continue
        in_generators = False
        if indented:
            raise ParseError("unexpected indented line", line=lineno)
        head, sep, rest = stripped.partition(":")
        if not sep:
            raise ParseError("expected 'key: value', got %r" % stripped,
                             line=lineno)
        key = head.strip()
        rest = rest.strip()
        if key == "ring":
            if rest != "QQ":
                raise ParseError(
                    "unsupported coefficient ring %r (only QQ)" % rest,
                    line=lineno)
            field = rest
        elif key == "vars":
            names = rest.split()
            if not names:
                raise ParseError("no variables declared", line=lineno)
            seen = set()
            for nm in names:
                if not _NAME_RE.match(nm):
                    raise ParseError("invalid variable name %r" % nm,
                                     line=lineno)
                if nm in seen:
                    raise ParseError("duplicate variable %r" % nm,
                                     line=lineno)
                seen.add(nm)
            var_names = tuple(names)
        elif key == "degrees":
            toks = _DEGREE_TOKEN_RE.findall(rest)
            if "".join(toks).replace(" ", "") != rest.replace(" ", ""):
                raise ParseError("malformed degrees line", line=lineno)
            degrees = [_parse_degree_entry(t, lineno) for t in toks]
            degrees_line = lineno
        elif key == "generators":
            if rest:
                raise ParseError("generators must follow on indented lines",
                                 line=lineno)
            in_generators = True
        else:
            raise ParseError("unknown directive %r" % key, line=lineno)

    if field is None:
        raise ParseError("missing 'ring:' line")
    if var_names is None:
        raise ParseError("missing 'vars:' line")
    if not gen_lines:
        raise ParseError("missing or empty 'generators:' block")

    if degrees is not None:
        if len(degrees) != len(var_names):
            raise ParseError(
                "%d degree entries for %d variables"
                % (len(degrees), len(var_names)), line=degrees_line)
        ranks = {len(d) for d in degrees}
        if len(ranks) != 1:
            raise ParseError("degree tuples of mismatched length",
                             line=degrees_line)
        try:
            ring = RingSpec(var_names, (), tuple(degrees))
        except Exception as e:
            raise ParseError("bad grading: %s" % e, line=degrees_line)
    else:
        ring = RingSpec(var_names, ())

    generators = []
    for lineno, src in gen_lines:
        try:
            p = parse_expr(src, ring)
        except ParseError as e:
            raise ParseError("in generator: %s" % e.args[0], line=lineno)
        if p.is_zero():
            raise ParseError("zero generator", line=lineno)
        if degrees is not None and p.multi_degree() is None:
            raise ParseError(
                "generator is not homogeneous for the declared degrees",
                line=lineno)
        generators.append(p)

    return InputSystem(ring, generators, source)


def load_input(path):
    """Read and parse an input file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_input(text, source=path)
    except ParseError as e:
        raise ParseError("%s: %s" % (path, e.args[0]),
                         position=e.position, line=None)
