"""Command line interface: ``f1rep <command> FILE [options]``.

Every command prints a human-readable report and, with ``--report PATH``,
writes the same fields as JSON. Exit codes: 0 computed, 1 semantic or
validation failure, 2 usage error or unreadable document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io, kernels
from .covering import METHODS, absolutely_indecomposable, covering_components
from .dot import export_dot
from .errors import F1RepError, InstanceFormatError
from .fixtures import ACYCLIC_TRIANGLE, TWO_LOOPS
from .generate import random_winding
from .hom import admissible_components, hom_dimension
from .nice import extract_obstruction, verify_obstruction
from .oracle import hom_nullspace_dim, parse_field
from .tensor import tensor
from .winding import connected_components, validate_winding

BASES = {"loops": TWO_LOOPS, "triangle": ACYCLIC_TRIANGLE}


class Report:
    """Collects printed lines and the machine-readable mirror."""

    def __init__(self, command: str):
        self.lines: list[str] = []
        self.data: dict = {"command": command}
        self.status = 0

    def say(self, line: str = "") -> None:
        self.lines.append(line)


def _pairs(pairs) -> str:
    return "{" + ", ".join(f"({v},{w})" for v, w in pairs) + "}"


def _pick_pair(inst: io.InstanceFile, args):
    names = list(inst.windings)
    left = args.left or names[0]
    right = args.right or (names[1] if len(names) > 1 and not args.left else left)
    return left, inst.winding(left), right, inst.winding(right)


def cmd_validate(inst, args, rep: Report):
    rep.data["windings"] = {}
    for name, w in inst.windings.items():
        r = validate_winding(w)
        rep.say(f"{name}: {'VALID' if r.ok else 'INVALID'}")
        for v in r.violations:
            rep.say(f"  {v}")
        rep.data["windings"][name] = {"valid": r.ok, "violations": [str(v) for v in r.violations]}
        if not r.ok:
            rep.status = 1


def cmd_components(inst, args, rep: Report):
    name = args.winding or next(iter(inst.windings))
    w = inst.winding(name).require_valid()
    comps = connected_components(w)
    rep.say(f"{name}: {len(comps)} component(s)")
    for k, c in enumerate(comps):
        rep.say(f"  {k}: {{{', '.join(c.vertices)}}}")
    rep.data.update(winding=name, components=[list(c.vertices) for c in comps])


def cmd_tensor(inst, args, rep: Report):
    ln, v, rn, w = _pick_pair(inst, args)
    t = tensor(v, w)
    rep.say(f"{ln} (x) {rn}: {t.n_vertices} vertices, {t.n_arrows} arrows, {t.ncomp} components")
    comps = []
    for c in range(t.ncomp):
        pairs = t.component_pairs(c)
        rep.say(f"  {c}: {_pairs(pairs)}")
        comps.append([list(p) for p in pairs])
    rep.data.update(left=ln, right=rn, vertices=t.n_vertices, arrows=t.n_arrows, components=comps)


def cmd_hom(inst, args, rep: Report):
    ln, v, rn, w = _pick_pair(inst, args)
    t = tensor(v, w)
    adm = admissible_components(v, w, t)
    rep.say(f"dim Hom({ln}, {rn}) = {len(adm)}")
    comps = []
    for r in adm:
        pairs = t.component_pairs(r.component)
        rep.say(f"  component {r.component}: {_pairs(pairs)}")
        comps.append({"component": r.component, "pairs": [list(p) for p in pairs]})
    rep.data.update(left=ln, right=rn, dimension=len(adm), components=comps)


def cmd_covering(inst, args, rep: Report):
    ln, v, rn, w = _pick_pair(inst, args)
    t = tensor(v, w)
    reports = covering_components(v, w, method=args.method, cross_check=args.check_cross, t=t)
    cov = [r for r in reports if r.is_covering]
    rep.say(f"{len(cov)} covering component(s) of {ln} (x) {rn} [{args.method}]")
    rows = []
    for r in reports:
        status = f"covering, degrees {r.degree_pi1}/{r.degree_pi2}" if r.is_covering else "not covering"
        rep.say(f"  {r.component}: {status}")
        rows.append(
            {"component": r.component, "covering": r.is_covering, "degree_pi1": r.degree_pi1, "degree_pi2": r.degree_pi2}
        )
    rep.data.update(left=ln, right=rn, method=args.method, covering_count=len(cov), components=rows)


def cmd_absindec(inst, args, rep: Report):
    name = args.winding or next(iter(inst.windings))
    v = inst.winding(name)
    t = tensor(v, v)
    ok = absolutely_indecomposable(v, cross_check=args.check_cross, t=t)
    rep.say("YES" if ok else "NO")
    reports = [r for r in covering_components(v, v, t=t) if r.is_covering]
    rep.say(f"covering components of {name} (x) {name}: {len(reports)}")
    comps = []
    for r in reports:
        pairs = t.component_pairs(r.component)
        rep.say(f"  {r.component} (degree {r.degree_pi1}): {_pairs(pairs)}")
        comps.append({"component": r.component, "degree": r.degree_pi1, "pairs": [list(p) for p in pairs]})
    rep.data.update(winding=name, absolutely_indecomposable=ok, covering_components=comps)


def cmd_oracle(inst, args, rep: Report):
    ln, v, rn, w = _pick_pair(inst, args)
    field = parse_field(args.field)
    combinatorial = hom_dimension(v, w)
    linear = hom_nullspace_dim(v, w, field)
    verdict = "AGREE" if combinatorial == linear else "DISAGREE"
    rep.say(f"{verdict} {combinatorial} = {linear}" if verdict == "AGREE" else f"{verdict} {combinatorial} != {linear}")
    rep.say(f"field {field.name}: combinatorial {combinatorial}, nullspace {linear}")
    rep.data.update(left=ln, right=rn, field=field.name, combinatorial=combinatorial, nullspace=linear, agree=verdict == "AGREE")
    if verdict != "AGREE":
        rep.status = 1


def cmd_obstruction(inst, args, rep: Report):
    name = args.winding or next(iter(inst.windings))
    v = inst.winding(name)
    o = extract_obstruction(v, search_length=args.search)
    if o is None:
        rep.say("none")
        rep.data.update(winding=name, obstruction=None)
        return
    ok = verify_obstruction(v, o)
    rep.say(f"E = {o.E}  ({o.E.source} -> {o.E.target})")
    rep.say(f"D = {o.D}  ({o.D.source} -> {o.D.target})")
    rep.say(f"s = {o.s}")
    rep.say(f"verified: {'yes' if ok else 'no'}")
    rep.data.update(winding=name, obstruction=io.obstruction_dict(name, o), verified=ok)
    if not ok:
        rep.status = 1


def cmd_dot(inst, args, rep: Report):
    if args.tensor:
        ln, v, rn, w = _pick_pair(inst, args)
        text = export_dot(tensor(v, w), f"{ln}_x_{rn}")
    else:
        name = args.winding or next(iter(inst.windings))
        text = export_dot(inst.winding(name), name)
    rep.lines.extend(text.rstrip("\n").split("\n"))
    rep.data["dot"] = text


def cmd_random(args, rep: Report):
    w = random_winding(BASES[args.base], args.vertices, args.density, args.seed)
    text = io.dumps(io.single("R", w))
    rep.lines.extend(text.rstrip("\n").split("\n"))
    rep.data.update(seed=args.seed, vertices=args.vertices, density=args.density, base=args.base)


def _density(s: str) -> float:
    x = float(s)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError("density must lie in [0, 1]")
    return x


def _nonneg(s: str) -> int:
    x = int(s)
    if x < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="write the report as JSON")
    common.add_argument("--check-cross", action="store_true", help="run the redundant covering detectors too")
    common.add_argument("--backend", choices=kernels.backends(), help="kernel backend")

    p = argparse.ArgumentParser(prog="f1rep", description="Windings of quiver representations over F1.")
    sub = p.add_subparsers(dest="command", required=True)

    def file_cmd(name, help, pair=False, single=False):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.add_argument("file", help="instance document (JSON)")
        if pair:
            sp.add_argument("--left", help="left winding name (default: first)")
            sp.add_argument("--right", help="right winding name (default: second, else first)")
        if single:
            sp.add_argument("--winding", help="winding name (default: first)")
        return sp

    file_cmd("validate", "check the winding conditions")
    file_cmd("components", "connected components of a winding", single=True)
    file_cmd("tensor", "components of a tensor product", pair=True)
    file_cmd("hom", "admissible components and the Hom dimension", pair=True)
    sp = file_cmd("covering", "covering components of a tensor product", pair=True)
    sp.add_argument("--method", choices=METHODS, default=METHODS[0])
    file_cmd("absindec", "absolute indecomposability test", single=True)
    sp = file_cmd("oracle", "cross-check the Hom dimension by linear algebra", pair=True)
    sp.add_argument("--field", default="q", help="q or fp:<prime> (default q)")
    sp = file_cmd("obstruction", "extract an obstruction to finite nice length", single=True)
    sp.add_argument("--search", type=_nonneg, default=0, metavar="N",
                    help="also search strings up to length N directly")
    sp = file_cmd("dot", "Graphviz rendering", pair=True, single=True)
    sp.add_argument("--tensor", action="store_true", help="render the tensor product of --left and --right")

    sp = sub.add_parser("random", help="emit a random instance document", parents=[common])
    sp.add_argument("--seed", type=_nonneg, default=0)
    sp.add_argument("--vertices", type=_nonneg, default=4, help="vertices per base vertex")
    sp.add_argument("--density", type=_density, default=0.5)
    sp.add_argument("--base", choices=sorted(BASES), default="loops")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "components": cmd_components,
    "tensor": cmd_tensor,
    "hom": cmd_hom,
    "covering": cmd_covering,
    "absindec": cmd_absindec,
    "oracle": cmd_oracle,
    "obstruction": cmd_obstruction,
    "dot": cmd_dot,
}


def _write_report(path, data) -> None:
    Path(path).write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(args.command)
    try:
        if args.command == "random":
            cmd_random(args, rep)
        else:
            inst = io.load(args.file)
            cmd = COMMANDS[args.command]
            previous = kernels.use_backend(args.backend) if args.backend else None
            try:
                cmd(inst, args, rep)
            finally:
                if previous is not None:
                    kernels.use_backend(previous)
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except F1RepError as exc:
        print(f"error: {exc}", file=err)
        rep.data.update(error=str(exc))
        if args.report:
            _write_report(args.report, {**rep.data, "exit": 1})
        return 1
    for line in rep.lines:
        print(line, file=out)
    if args.report:
        _write_report(args.report, {**rep.data, "exit": rep.status})
    return rep.status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
