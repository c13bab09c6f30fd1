"""Group descriptions and their round-tripping text grammar.

Grammar examples::

    A_5  S_4  D_8  C_6  SL(2,3)  GL(2,2)  PSL(2,7)
    file:gens.json
    prod(A_5,C_6)          direct product
    cprod(SL(2,3),SL(2,3)) central product gluing full (cyclic) centers
    tau(5,6)               (A_5 x A_6) extended by the coordinatewise
                           transposition-conjugation involution

``parse_spec(render_spec(s)) == s`` holds for every valid spec.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import InvalidSpecError
from . import fp


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int = 0
    p: int = 0
    path: str = ""
    parts: tuple = field(default_factory=tuple)

    def __str__(self):
        return render_spec(self)


_NAMED = {"A": "alternating", "S": "symmetric", "D": "dihedral", "C": "cyclic"}
_NAMED_REV = {v: k for k, v in _NAMED.items()}
_MATRIX_KINDS = ("SL", "GL", "PSL")


def render_spec(spec: GroupSpec) -> str:
    k = spec.kind
    if k in _NAMED_REV:
        return f"{_NAMED_REV[k]}_{spec.n}"
    if k in _MATRIX_KINDS:
        return f"{k}({spec.n},{spec.p})"
    if k == "file":
        return f"file:{spec.path}"
    if k == "product":
        return "prod(%s)" % ",".join(render_spec(s) for s in spec.parts)
    if k == "central_product":
        return "cprod(%s)" % ",".join(render_spec(s) for s in spec.parts)
    if k == "tau_product":
        return "tau(%s)" % ",".join(str(n) for n in spec.parts)
    raise InvalidSpecError("invalid-spec", f"unknown kind {k!r}")


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur or out:
        out.append("".join(cur))
    return out


def parse_spec(text: str) -> GroupSpec:
    text = text.strip()
    m = re.fullmatch(r"([ASDC])_(\d+)", text)
    if m:
        return validate_spec(GroupSpec(_NAMED[m.group(1)], n=int(m.group(2))))
    m = re.fullmatch(r"(SL|GL|PSL)\((\d+),(\d+)\)", text)
    if m:
        return validate_spec(
            GroupSpec(m.group(1), n=int(m.group(2)), p=int(m.group(3)))
        )
    if text.startswith("file:"):
        return GroupSpec("file", path=text[5:])
    m = re.fullmatch(r"(prod|cprod)\((.*)\)", text)
    if m:
        kind = "product" if m.group(1) == "prod" else "central_product"
        parts = tuple(parse_spec(a) for a in _split_args(m.group(2)))
        if not parts:
            raise InvalidSpecError("invalid-spec", f"empty {m.group(1)}() in {text!r}")
        return GroupSpec(kind, parts=parts)
    m = re.fullmatch(r"tau\((.*)\)", text)
    if m:
        body = m.group(1).strip()
        ns = tuple(int(x) for x in body.split(",")) if body else ()
        return validate_spec(GroupSpec("tau_product", parts=ns))
    raise InvalidSpecError("invalid-spec", f"cannot parse group spec {text!r}")


def validate_spec(spec: GroupSpec) -> GroupSpec:
    k = spec.kind
    if k in _NAMED_REV:
        if spec.n < 1:
            raise InvalidSpecError("invalid-spec", f"{k} needs n >= 1")
    elif k in _MATRIX_KINDS:
        if spec.n < 1:
            raise InvalidSpecError("invalid-spec", f"{k} needs n >= 1")
        if not fp.is_prime(spec.p):
            raise InvalidSpecError("invalid-spec", f"{spec.p} is not prime")
    elif k == "tau_product":
        if len(set(spec.parts)) != len(spec.parts):
            raise InvalidSpecError("repeated-n", "tau() degrees must be distinct")
        if any(n < 5 for n in spec.parts):
            raise InvalidSpecError("invalid-spec", "tau() degrees must be >= 5")
    elif k in ("product", "central_product"):
        for s in spec.parts:
            validate_spec(s)
    elif k != "file":
        raise InvalidSpecError("invalid-spec", f"unknown kind {k!r}")
    return spec


def expected_order(spec: GroupSpec):
    """Theoretical order for named kinds, None when it depends on file data."""
    k = spec.kind
    if k == "alternating":
        return max(1, math.factorial(spec.n) // 2)
    if k == "symmetric":
        return math.factorial(spec.n)
    if k == "dihedral":
        return 2 * spec.n
    if k == "cyclic":
        return spec.n
    if k == "SL":
        return fp.sl_order(spec.n, spec.p)
    if k == "GL":
        return fp.gl_order(spec.n, spec.p)
    if k == "PSL":
        return fp.psl_order(spec.n, spec.p)
    if k == "product":
        parts = [expected_order(s) for s in spec.parts]
        if any(v is None for v in parts):
            return None
        return math.prod(parts)
    if k == "tau_product":
        return 2 * math.prod(max(1, math.factorial(n) // 2) for n in spec.parts)
    if k == "central_product":
        return None
    return None
