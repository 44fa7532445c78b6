"""Command-line front end.

Every invocation prints one JSON document ``{command, input, result}`` or
``{command, input, error}``.  Integers are written as decimal strings so that
consumers with 64-bit integers never truncate.  ``--pretty`` switches to a
human-readable rendering.

Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import _kernels
from .errors import LatticeError
from .mukai_lattice import as_vector, euler_chi, pairing
from .reduction_engine import default_bfs_cap, orbit_bfs_oracle, reduce_vector
from .surface_model import all_types, lookup_type
from .transform_matrices import (
    Mat4,
    Rfm1,
    Rfm2,
    Shift,
    Twist,
    generator_matrix,
    kron_factor,
    rfm_matrix,
    tensor_group_member,
    twist_matrix,
)

_INT_LIST = re.compile(r"^\s*[\[(]?\s*-?\d+(\s*,\s*-?\d+)*\s*[\])]?\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1,0,0,0" through as a positional
        self._negative_number_matcher = re.compile(r"^-\d[\d,]*$")

    def error(self, message):
        raise UsageError(message)


def parse_ints(text: str, n: int | None = None, what: str = "integer list") -> list[int]:
    if not _INT_LIST.match(text):
        raise UsageError(f"cannot parse {what} {text!r}: expected comma-separated integers")
    vals = [int(x) for x in re.findall(r"-?\d+", text)]
    if n is not None and len(vals) != n:
        raise UsageError(f"{what} needs {n} integers, got {len(vals)}")
    return vals


def parse_generator(text: str):
    """``twist:u1,u2`` | ``shift:n`` | ``rfm1:c,a,d,b[,s]`` | ``rfm2:c,a,d,b[,s]``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "twist":
        return Twist(*parse_ints(rest, 2, "twist parameters"))
    if kind == "shift":
        return Shift(*parse_ints(rest, 1, "shift parameter"))
    if kind in ("rfm1", "rfm2"):
        vals = parse_ints(rest, None, f"{kind} parameters")
        if len(vals) not in (4, 5):
            raise UsageError(f"{kind} needs c,a,d,b[,s], got {len(vals)} integers")
        return (Rfm1 if kind == "rfm1" else Rfm2)(*vals)
    raise UsageError(f"unknown generator kind {kind!r}")


def _surface(args, required: bool = True):
    if args.type is None or args.char is None:
        if required:
            raise UsageError(f"command {args.command!r} needs both --type and --char")
        return None
    return lookup_type(args.type, args.char)


def _stringify(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


# -- commands -----------------------------------------------------------------


def cmd_types(args):
    return [st.to_record() for st in all_types()]


def cmd_info(args):
    return lookup_type(args.label, args.char).to_record()


def cmd_pair(args):
    return {"value": pairing(parse_ints(args.v, 4, "vector"), parse_ints(args.w, 4, "vector"))}


def cmd_chi(args):
    return {"value": euler_chi(parse_ints(args.v, 4, "vector"), parse_ints(args.w, 4, "vector"))}


def cmd_apply(args):
    v = as_vector(parse_ints(args.v, 4, "vector"))
    if _INT_LIST.match(args.op):
        M = Mat4.from_flat(parse_ints(args.op, 16, "matrix"))
        gen = None
    else:
        gen = parse_generator(args.op)
        st = _surface(args, required=isinstance(gen, (Rfm1, Rfm2)))
        M = generator_matrix(gen, st)
    out = {"matrix": list(M.entries), "vector": (M @ v).to_list()}
    if gen is not None:
        out["generator"] = gen.to_record()
    return out


def cmd_twist(args):
    return {"generator": Twist(args.u1, args.u2).to_record(), "matrix": list(twist_matrix(args.u1, args.u2).entries)}


def cmd_rfm(args):
    st = _surface(args)
    cls = Rfm1 if args.fibration == 1 else Rfm2
    g = cls(args.c, args.a, args.d, args.b, args.s)
    return {"generator": g.to_record(), "matrix": list(rfm_matrix(g, st).entries)}


def cmd_factor(args):
    fac = kron_factor(Mat4.from_flat(parse_ints(args.M, 16, "matrix")))
    if fac is None:
        return {"factorizable": False, "A": None, "B": None}
    return {"factorizable": True, "A": list(fac[0].flat()), "B": list(fac[1].flat())}


def cmd_member(args):
    st = _surface(args)
    M = Mat4.from_flat(parse_ints(args.M, 16, "matrix"))
    fac = kron_factor(M)
    return {
        "member": tensor_group_member(M, st),
        "factors": None if fac is None else [list(fac[0].flat()), list(fac[1].flat())],
        "lambda1": st.lambda1,
        "lambda2": st.lambda2,
    }


def cmd_reduce(args):
    st = _surface(args)
    return reduce_vector(parse_ints(args.v, 4, "vector"), st).to_record()


def cmd_orbit_oracle(args):
    st = _surface(args)
    if args.word_len < 1 or args.param_bound < 1:
        raise UsageError("--word-len and --param-bound must be >= 1")
    cap = default_bfs_cap(args.param_bound)
    v = parse_ints(args.v, 4, "vector")
    return {
        "reachable": orbit_bfs_oracle(v, st, args.word_len, args.param_bound, cap),
        "word_len": args.word_len,
        "param_bound": args.param_bound,
        "cap": cap,
        "backend": _kernels.BACKEND,
    }


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--type", help="surface type label, e.g. 2,1 or 2,mu2")
    common.add_argument("--char", type=int, help="base-field characteristic (0 or a prime)")

    p = _Parser(prog="fm-lattice", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("types", cmd_types, "dump the surface type registry")
    sp = add("info", cmd_info, "one surface type")
    sp.add_argument("label")
    sp = add("pair", cmd_pair, "Mukai pairing of two vectors")
    sp.add_argument("v")
    sp.add_argument("w")
    sp = add("chi", cmd_chi, "Euler form of two vectors")
    sp.add_argument("v")
    sp.add_argument("w")
    sp = add("apply", cmd_apply, "apply a 16-entry matrix or a generator spec to a vector")
    sp.add_argument("op")
    sp.add_argument("v")
    sp = add("twist", cmd_twist, "line-bundle twist matrix")
    sp.add_argument("u1", type=int)
    sp.add_argument("u2", type=int)
    sp = add("rfm", cmd_rfm, "relative Fourier-Mukai matrix")
    for name in ("c", "a", "d", "b"):
        sp.add_argument(name, type=int)
    sp.add_argument("--s", type=int, default=0, help="shear parameter")
    sp.add_argument("--fibration", type=int, choices=(1, 2), required=True)
    sp = add("factor", cmd_factor, "Kronecker factorization of a 4x4 matrix")
    sp.add_argument("M")
    sp = add("member", cmd_member, "membership in the tensor image group")
    sp.add_argument("M")
    sp = add("reduce", cmd_reduce, "reduce a Mukai vector to the point class")
    sp.add_argument("v")
    sp = add("orbit-oracle", cmd_orbit_oracle, "brute-force orbit search")
    sp.add_argument("v")
    sp.add_argument("--word-len", type=int, required=True)
    sp.add_argument("--param-bound", type=int, required=True)
    return p


def _render_pretty(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    if "error" in doc:
        err = doc["error"]
        lines.append(f"error: {err['type']}: {err['message']}")
        for k, v in (err.get("detail") or {}).items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)
    res = doc["result"]
    if doc["command"] == "types":
        cols = ["type", "char", "H", "|G0|", "ord(w)", "l1", "l2", "F1.F2", "mu", "multiplicities"]
        rows = [
            [",".join(map(str, r["type_label"])), r["char_constraint"]["text"], r["h_group"], r["g0_order"],
             r["ord_omega"], r["lambda1"], r["lambda2"], r["f1_dot_f2"], r["mu"],
             " or ".join("{" + ",".join(map(str, m)) + "}" for m in r["multiplicities"])]
            for r in res
        ]
        rows = [[str(x) for x in row] for row in rows]
        widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        lines.extend("  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in rows)
        return "\n".join(lines)
    items = res.items() if isinstance(res, dict) else [("result", res)]
    for k, v in items:
        if isinstance(v, list) and len(v) == 16 and all(isinstance(x, int) for x in v):
            w = max(len(str(x)) for x in v)
            lines.append(f"{k}:")
            for i in range(4):
                lines.append("  [" + " ".join(str(x).rjust(w) for x in v[4 * i : 4 * i + 4]) + "]")
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            lines.append(f"{k}:")
            lines.extend(f"  {item}" for item in v)
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    pretty = "--pretty" in argv
    doc = {"command": None, "input": argv}
    code = 0
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("no command given")
        doc["command"] = args.command
        doc["result"] = args.func(args)
    except UsageError as exc:
        doc["error"] = {"type": "UsageError", "message": str(exc), "detail": {}}
        code = 2
    except LatticeError as exc:
        doc["error"] = exc.to_record()
        code = 1
    except (ValueError, TypeError) as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc), "detail": {}}
        code = 1
    if pretty:
        stdout.write(_render_pretty(doc) + "\n")
    else:
        stdout.write(json.dumps(_stringify(doc)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
