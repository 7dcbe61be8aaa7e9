"""Command-line interface.

Every command builds a JSON-serialisable report from library calls; the
text format is rendered from that same report.  Exit status is 0 on
success, 1 for bad input and 2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import jsonschema
from referencing import Registry, Resource

from . import forms, handles, intmat, legendrian, linkdiag
from .alexander import alexander_polynomial, fox_milnor_test, knot_determinant
from .errors import InvariantViolation, KirbyCalcError

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2

SCHEMA_FILES = ("link", "form", "handles", "front", "genus_request", "moves")


class InputError(Exception):
    """Unreadable or schema-invalid input; maps to exit status 1."""


def _load_schemas():
    base = resources.files("kirbycalc") / "schemas"
    docs = {name: json.loads((base / f"{name}.json").read_text()) for name in SCHEMA_FILES}
    registry = Registry().with_resources(
        (f"{name}.json", Resource.from_contents(doc)) for name, doc in docs.items())
    return docs, registry


_SCHEMAS, _REGISTRY = _load_schemas()


def validate(doc: Any, kind: str) -> None:
    """Raise :class:`InputError` naming the JSON pointer of the first problem."""
    validator = jsonschema.Draft202012Validator(_SCHEMAS[kind], registry=_REGISTRY)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        pointer = "/" + "/".join(str(p) for p in e.absolute_path)
        raise InputError(f"schema error at {pointer}: {e.message}")


# -- input -----------------------------------------------------------------


def _read(path: Path) -> Any:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    if path.suffix == ".json":
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return text


def _link(src: Any, args) -> linkdiag.FramedLink:
    if isinstance(src, str):
        framings = args.framings
        return linkdiag.parse_pd(src, framings=framings, components=args.components)
    validate(src, "link")
    return linkdiag.link_from_json(src)


def _knot(src: Any, args) -> linkdiag.OrientedLinkDiagram:
    if isinstance(src, dict) and "events" in src:
        validate(src, "front")
        return legendrian.front_to_pd(legendrian.OrientedFront.from_json(src))
    return _link(src, args).diagram


def _form(src: Any, args) -> forms.SymmetricForm:
    if isinstance(src, dict) and "matrix" in src:
        validate(src, "form")
        return forms.SymmetricForm(src["matrix"])
    if isinstance(src, dict) and "two_handles" in src:
        validate(src, "handles")
        return handles.intersection_form_of_complex(handles.HandleComplex.from_json(src))
    fl = _link(src, args)
    return linkdiag.linking_matrix(fl)


def _front(src: Any) -> legendrian.OrientedFront:
    if not isinstance(src, dict):
        raise InputError("front input must be a JSON object with an 'events' list")
    validate(src, "front")
    return legendrian.OrientedFront.from_json(src)


# -- commands ---------------------------------------------------------------


def cmd_invariants(src, args) -> dict:
    fl = _link(src, args)
    d = fl.diagram
    signs, writhe = linkdiag.crossing_signs(d)
    n = d.n_components
    lk = [[0 if i == j else linkdiag.linking_number(d, i, j) for j in range(n)] for i in range(n)]
    return {"components": n, "crossings": len(d.crossings), "signs": list(signs),
            "writhe": writhe, "linking_numbers": lk, "framings": list(fl.framings),
            "linking_matrix": linkdiag.linking_matrix(fl).tolist()}


def cmd_form(src, args) -> dict:
    Q = _form(src, args)
    inv = forms.form_invariants(Q)
    out = {"matrix": Q.tolist(), "invariants": inv.to_json(),
           "obstructions": forms.obstruction_report(Q).to_json(),
           "e8": forms.recognise_e8(Q)}
    if inv.unimodular and inv.definiteness == "indefinite":
        out["classification"] = forms.classify_indefinite_unimodular(Q).to_json()
    out["characteristic"] = forms.characteristic_report(Q, args.vector).to_json()
    if args.complement is not None:
        G, B = forms.orthogonal_complement(Q, args.complement)
        out["complement"] = {"matrix": G.tolist(), "basis": B,
                             "invariants": forms.form_invariants(G).to_json(),
                             "e8": forms.recognise_e8(G)}
    return out


def cmd_homology(src, args) -> dict:
    if not isinstance(src, dict):
        raise InputError("homology input must be a handle-complex JSON object")
    validate(src, "handles")
    hc = handles.HandleComplex.from_json(src)
    out = {"pi1": handles.pi1_presentation(hc).to_json(),
           "boundary_matrix": handles.boundary_matrix_2(hc),
           "homology": handles.homology_summary(hc).to_json()}
    if hc.linking is not None or len(hc.two_handles) <= 1:
        out["intersection_form"] = handles.intersection_form_of_complex(hc).tolist()
    return out


def cmd_alexander(src, args) -> dict:
    p = alexander_polynomial(_knot(src, args))
    return {"alexander": p.to_json(), "alexander_text": str(p),
            "determinant": knot_determinant(p), "fox_milnor": fox_milnor_test(p).to_json()}


def cmd_slice(src, args) -> dict:
    out: Dict[str, Any] = {}
    if isinstance(src, dict) and "events" in src:
        of = _front(src)
        if of.n_components != 1:
            raise KirbyCalcError("slice obstructions need a single-component front")
        out["slice_bennequin"] = legendrian.slice_bennequin_bound(of).to_json()
        d = legendrian.front_to_pd(of)
    else:
        d = _knot(src, args)
    p = alexander_polynomial(d)
    fm = fox_milnor_test(p)
    out["alexander"] = str(p)
    out["fox_milnor"] = fm.to_json()
    obstructed = fm.not_slice or out.get("slice_bennequin", {}).get("obstructs_slice", False)
    out["verdict"] = "not slice" if obstructed else "inconclusive"
    return out


def _parse_stab(text: str) -> Tuple[int, int]:
    try:
        comp, sign = text.split(":")
        return int(comp), int(sign)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected COMPONENT:SIGN, got {text!r}") from exc


def cmd_legendrian(src, args) -> dict:
    of = _front(src)
    for comp, sign in args.stabilize or []:
        of = legendrian.stabilize(of, comp, sign)
    comps = [legendrian.classical_invariants(of, i).to_json() for i in range(of.n_components)]
    d = legendrian.front_to_pd(of)
    return {"front": of.to_json(), "components": comps,
            "pd": d.to_pd(),
            "stein_trace": legendrian.stein_trace(of).to_json()}


def cmd_genus(src, args) -> dict:
    if not isinstance(src, dict):
        raise InputError("genus-bounds input must be a JSON request object")
    validate(src, "genus_request")
    return legendrian.genus_bounds(src).to_json()


def cmd_moves(src, args) -> dict:
    if args.script is None:
        raise InputError("moves needs --script FILE")
    script = _read(Path(args.script))
    validate(script, "moves")
    Q = _form(src, args)
    start = Q
    A = [[int(i == j) for j in range(Q.n)] for i in range(Q.n)]
    steps = []
    for step in script:
        if step["op"] == "slide":
            Q, S = forms.handle_slide(Q, step["i"], step["j"], step["eps"])
            A = intmat.matmul(A, S)
        else:
            Q = forms.blow(Q, step["dir"], step.get("sign", 1), step.get("k"))
            # the basis change restarts from the blown-up or blown-down form
            start = Q
            A = [[int(i == j) for j in range(Q.n)] for i in range(Q.n)]
        steps.append({"step": step, "matrix": Q.tolist()})
    verified = forms.verify_congruence(start, Q, A)
    if not verified:
        raise InvariantViolation("accumulated basis change does not reproduce the final form")
    return {"initial": _form(src, args).tolist(), "reference": start.tolist(),
            "final": Q.tolist(), "basis_change": A, "verified": verified,
            "steps": steps, "invariants": forms.form_invariants(Q).to_json()}


COMMANDS: Dict[str, Callable] = {
    "invariants": cmd_invariants,
    "form": cmd_form,
    "homology": cmd_homology,
    "alexander": cmd_alexander,
    "slice-obstructions": cmd_slice,
    "legendrian": cmd_legendrian,
    "genus-bounds": cmd_genus,
    "moves": cmd_moves,
}


# -- output -----------------------------------------------------------------


def _flatten(prefix: str, value: Any, lines: List[str]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], lines)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, lines)
    else:
        lines.append(f"{prefix}: {json.dumps(value, sort_keys=True)}")


def render(report: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines: List[str] = []
    _flatten("", report, lines)
    return "\n".join(lines)


def _run_one(command: str, src: Any, args) -> Tuple[int, dict]:
    try:
        return EXIT_OK, COMMANDS[command](src, args)
    except InvariantViolation as exc:
        return EXIT_INTERNAL, {"error": f"internal invariant violated: {exc}"}
    except (InputError, KirbyCalcError, IndexError, KeyError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return EXIT_INPUT, {"error": f"{type(exc).__name__}: {msg}"}


def run(args) -> Tuple[int, Any]:
    """Execute a parsed command line; returns ``(exit status, report)``."""
    if args.pd is not None:
        return _run_one(args.command, args.pd, args)
    if args.inp is None:
        return EXIT_INPUT, {"error": "give --in PATH or --pd TEXT"}
    path = Path(args.inp)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.is_file())
        if not files:
            return EXIT_INPUT, {"error": f"directory {path} has no input files"}
        rows, worst = [], EXIT_OK
        for f in files:
            try:
                status, rep = _run_one(args.command, _read(f), args)
            except InputError as exc:
                status, rep = EXIT_INPUT, {"error": str(exc)}
            worst = max(worst, status)
            rows.append({"file": f.name, "status": "ok" if status == EXIT_OK else "error",
                         "result": rep})
        return worst, {"rows": rows}
    try:
        src = _read(path)
    except InputError as exc:
        return EXIT_INPUT, {"error": str(exc)}
    return _run_one(args.command, src, args)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kirbycalc", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--in", dest="inp", metavar="PATH",
                   help="input file (.json, or PD text otherwise) or a directory for batch mode")
    p.add_argument("--pd", metavar="TEXT", help="PD code given inline")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--framings", type=_int_list, help="framings for PD text input")
    p.add_argument("--components", type=int, help="component count for PD text input")
    p.add_argument("--vector", type=_int_list, help="form: test this vector for being characteristic")
    p.add_argument("--complement", type=_int_list, help="form: orthogonal complement of this vector")
    p.add_argument("--stabilize", type=_parse_stab, action="append", metavar="COMP:SIGN",
                   help="legendrian: stabilize before computing (repeatable)")
    p.add_argument("--script", metavar="FILE", help="moves: JSON move script")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    status, report = run(args)
    out = sys.stdout if status == EXIT_OK or "rows" in report else sys.stderr
    print(render(report, args.format), file=out)
    return status


if __name__ == "__main__":
    sys.exit(main())
