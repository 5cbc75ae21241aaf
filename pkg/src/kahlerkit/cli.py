"""Command-line front end.

Every subcommand prints either a plain-text table (default) or, with
``--format json``, an envelope ``{"command": ..., "status": ..., "result": ...}``
with sorted keys.  Exit status: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import cech, chern, exterior, flat_forms, hodge, morse, projective

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Outcome:
    result: dict
    ok: bool = True
    table: str = ""


def _ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"{name} must be an integer, got {text!r}") from exc


def _ambient_and_degrees(values: list[str]) -> tuple[int, list[int]]:
    m = _int(values[0], "ambient dimension")
    degrees: list[int] = []
    for v in values[1:]:
        degrees.extend(_ints(v))
    return m, degrees


def _kv_table(rows: list[tuple[str, object]]) -> str:
    w = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# --------------------------------------------------------------------------
# handlers


def cmd_hodge_diamond(args) -> Outcome:
    if args.pn is not None:
        n = args.pn
        if n < 0:
            raise InputError("n must be nonnegative")
        d = hodge.diamond_pn(n)
        betti = list(hodge.betti_from_diamond(d))
        violations = hodge.validate_diamond(d)
        result = {"space": f"P^{n}", "dimension": n, "diamond": d.as_lists(), "betti": betti, "violations": violations}
        table = d.pretty() + "\n\n" + _kv_table([("betti", _fmt_vec(betti)), ("violations", len(violations))])
        return Outcome(result, not violations, table)
    if args.hypersurface is not None:
        n, deg = args.hypersurface
        m, degrees = n + 1, [deg]
    else:
        m, degrees = _ambient_and_degrees(args.ci)
    dim = m - len(degrees)
    b = hodge.complete_intersection_betti(m, degrees)
    chi = chern.euler_characteristic(m, degrees)
    bX = hodge.betti_from_diamond(hodge.diamond_pn(m))
    # compare with the ambient P^{dim+1} cut out by all but the last equation when possible
    ambient = hodge.complete_intersection_betti(m, degrees[:-1]) if len(degrees) > 1 else bX
    lef = hodge.lefschetz_pattern_check(ambient, b, dim)
    result = {
        "ambient": f"P^{m}",
        "degrees": degrees,
        "dimension": dim,
        "euler_characteristic": chi,
        "betti": list(b),
        "lefschetz_pattern": {"passed": lef.passed, "failures": lef.failures},
    }
    table = _kv_table([
        ("ambient", f"P^{m}"),
        ("degrees", _fmt_vec(degrees)),
        ("dimension", dim),
        ("euler characteristic", chi),
        ("betti", _fmt_vec(list(b))),
        ("lefschetz pattern", "pass" if lef.passed else "FAIL: " + "; ".join(lef.failures)),
    ])
    return Outcome(result, lef.passed, table)


def cmd_chern(args) -> Outcome:
    if args.pn is not None:
        c = chern.chern_pn(args.pn)
        result = {"space": f"P^{args.pn}", "total_chern_class": list(c.coeffs), "c1_canonical": -c[1]}
        return Outcome(result, True, _kv_table([("c(P^%d)" % args.pn, str(c)), ("c1(K)", -c[1])]))
    if args.ci is not None:
        m, degrees = _ambient_and_degrees(args.ci)
        c = chern.chern_complete_intersection(m, degrees)
        result = {"ambient": f"P^{m}", "degrees": degrees, "total_chern_class": list(c.coeffs)}
        return Outcome(result, True, _kv_table([("c(T_Y)", str(c))]))
    if args.canonical is not None:
        m, degrees = _ambient_and_degrees(args.canonical)
        k = chern.canonical_degree(m, degrees)
        return Outcome({"ambient": f"P^{m}", "degrees": degrees, "canonical_degree": k}, True, _kv_table([("K", f"O({k})")]))
    m, degrees = _ambient_and_degrees(args.euler)
    chi = chern.euler_characteristic(m, degrees)
    return Outcome({"ambient": f"P^{m}", "degrees": degrees, "euler_characteristic": chi}, True, str(chi))


def cmd_h0(args) -> Outcome:
    if args.n < 1:
        raise InputError("n must be at least 1")
    value = projective.h0_dim(args.n, args.k)
    count = len(projective.homogeneous_monomials(args.n, args.k))
    result = {"n": args.n, "k": args.k, "h0": value, "monomial_count": count}
    return Outcome(result, value == count, str(value))


def cmd_picard(args) -> Outcome:
    comps = []
    for part in (args.divisor or "").split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"divisor component {part!r} should look like degree:multiplicity")
        d, a = part.split(":", 1)
        comps.append((_int(d, "degree"), _int(a, "multiplicity")))
    if args.n < 1:
        raise InputError("n must be at least 1")
    cls = projective.divisor_class(args.n, comps)
    result = {"n": args.n, "components": [list(c) for c in comps], "twist": cls.k, "h0": cls.h0()}
    return Outcome(result, True, _kv_table([("class", str(cls)), ("h0", cls.h0())]))


def cmd_cech(args) -> Outcome:
    path = Path(args.input)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    try:
        nerve, complex_ = cech.load_document(doc)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed document: {exc}") from exc
    dims = cech.cohomology_dims(complex_)
    result = {"nerve_counts": [len(level) for level in nerve.simplices], "dims": dims}
    rows = [(f"H^{k}", v) for k, v in enumerate(dims)]
    if args.integers:
        groups = cech.integer_cohomology(nerve)
        result["integer"] = [{"free": f, "torsion": t} for f, t in groups]
        rows += [(f"H^{k}(Z)", _group_str(f, t)) for k, (f, t) in enumerate(groups)]
    return Outcome(result, True, _kv_table(rows))


def _group_str(free: int, torsion: list[int]) -> str:
    parts = ["Z" if free == 1 else f"Z^{free}"] if free else []
    parts += [f"Z/{t}" for t in torsion]
    return " + ".join(parts) or "0"


def cmd_fubini_study(args) -> Outcome:
    rng = np.random.default_rng(args.seed)
    if args.check == "integral":
        tol = args.tol if args.tol is not None else 1e-6
        val = projective.fs_integral_p1(tol / 10)
        ok = abs(val - 1) <= tol
        return Outcome({"integral": val, "error": abs(val - 1), "tol": tol, "passed": ok}, ok,
                       _kv_table([("integral", f"{val:.15f}"), ("error", f"{abs(val - 1):.3e}")]))
    n = args.n
    if n < 1:
        raise InputError("n must be at least 1")
    pts = projective.random_chart_points(n, args.points, rng)
    if args.check == "point":
        tol = args.tol if args.tol is not None else 1e-5
        reports = [projective.fs_checks(p, args.step, tol) for p in pts]
        worst = max(r.closed_residual for r in reports)
        ok = all(r.passed for r in reports)
        min_eig = min(min(r.eigenvalues) for r in reports)
        result = {"n": n, "points": len(pts), "all_positive": all(r.positive for r in reports),
                  "min_eigenvalue": min_eig, "max_closed_residual": worst, "tol": tol, "passed": ok}
    else:
        tol = args.tol if args.tol is not None else 1e-4
        reports = [projective.chern_curvature_check(p, args.step, tol) for p in pts]
        worst = max(r.max_error for r in reports)
        ok = all(r.passed for r in reports)
        result = {"n": n, "points": len(pts), "max_error": worst, "tol": tol, "passed": ok}
    rows = [(k, f"{v:.3e}" if isinstance(v, float) else v) for k, v in sorted(result.items())]
    return Outcome(result, ok, _kv_table(rows))


def cmd_lefschetz(args) -> Outcome:
    if args.sl2 is not None:
        rep = exterior.verify_sl2(args.sl2)
        fails = {k: len(v) for k, v in rep.failures.items()}
        result = {"n": args.sl2, "basis_checked": rep.checked, "failures": fails, "passed": rep.passed}
        return Outcome(result, rep.passed, _kv_table([(k, "ok" if not v else f"{v} failures") for k, v in fails.items()]))
    if args.hard is not None:
        n, k = args.hard
        if not 0 <= k <= n:
            raise InputError("need 0 <= k <= n")
        ok = exterior.hard_lefschetz_check(n, k)
        return Outcome({"n": n, "k": k, "bijective": ok}, ok, f"L^{n - k}: degree {k} -> {2 * n - k}: {'bijective' if ok else 'NOT bijective'}")
    n = args.primitive_demo
    if n < 1:
        raise InputError("n must be at least 1")
    omega = exterior.kahler_form(n)
    samples = {"omega": omega, "omega^n": _wedge_power(omega, n), "dz1^dzbar1": exterior.ExtForm.monomial(n, (1,), (1,))}
    if n >= 2:
        samples["dz1^dz2"] = exterior.ExtForm.monomial(n, (1, 2), ())
    result, rows = {}, []
    for name, form in samples.items():
        parts = exterior.primitive_decompose(form)
        result[name] = [{"power": j, "primitive": str(p)} for j, p in parts]
        rows.append((name, " + ".join(f"L^{j}({p})" for j, p in parts) or "0"))
    return Outcome({"n": n, "decompositions": result}, True, _kv_table(rows))


def _wedge_power(a, k):
    out = exterior.ExtForm.one(a.dim)
    for _ in range(k):
        out = exterior.wedge(out, a)
    return out


def cmd_kahler_identities(args) -> Outcome:
    if args.n < 1 or args.max_degree < 0:
        raise InputError("need n >= 1 and max-degree >= 0")
    counts = {name: 0 for name in flat_forms.KAHLER_IDENTITIES}
    counts["laplacian"] = 0
    total = 0
    for a in flat_forms.monomial_forms(args.n, args.max_degree):
        rep = flat_forms.kahler_identity_check(a)
        total += 1
        for name in rep.failures():
            counts[name] = counts.get(name, 0) + 1
    anti = exterior.anticommutation_failures(args.n)
    ok = not any(counts.values()) and not anti
    result = {"n": args.n, "max_degree": args.max_degree, "forms_checked": total, "failures": counts,
              "anticommutation_failures": len(anti), "passed": ok}
    rows = [("forms checked", total)] + [(k, "ok" if not v else f"{v} failures") for k, v in counts.items()]
    rows.append(("anticommutators", "ok" if not anti else f"{len(anti)} failures"))
    return Outcome(result, ok, _kv_table(rows))


def _load_polynomial(path: str) -> morse.IntPolynomial:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(doc, dict) and "result" in doc:
        doc = doc["result"]
    if isinstance(doc, dict):
        if "indices" in doc:
            return morse.morse_polynomial(morse.MorseProfile(tuple(doc["indices"])))
        for key in ("coefficients", "betti", "morse_polynomial"):
            if key in doc:
                doc = doc[key]
                break
        else:
            raise InputError(f"{path}: expected a coefficient list or an object with 'coefficients', 'betti' or 'indices'")
    if not isinstance(doc, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in doc):
        raise InputError(f"{path}: coefficients must be a list of integers")
    return morse.IntPolynomial(tuple(doc))


def cmd_morse(args) -> Outcome:
    if args.sphere is not None:
        m = _int(args.sphere[0], "m")
        q = [float(x) for x in args.sphere[1].split(",")]
        if len(q) != m + 1:
            raise InputError(f"q must have {m + 1} coordinates")
        prof = morse.sphere_distance_morse([0.0] * (m + 1), 1.0, q)
        M = morse.morse_polynomial(prof)
        P = morse.sphere_betti(m)
    else:
        M, P = (_load_polynomial(p) for p in args.check)
        prof = None
    Q = morse.morse_inequality_check(M, P)
    weak = morse.weak_inequalities(M, P)
    ok = Q is not None
    result = {
        "morse_polynomial": list(M.coeffs),
        "poincare_polynomial": list(P.coeffs),
        "Q": None if Q is None else list(Q.coeffs),
        "weak_inequalities": {"passed": weak.passed, "first_violation": weak.first_violation},
        "passed": ok,
    }
    if prof is not None:
        result["indices"] = list(prof.indices)
    rows = [("M(t)", str(M)), ("P(t)", str(P)), ("Q(t)", "none (not divisible with nonnegative Q)" if Q is None else str(Q)),
            ("weak", "pass" if weak.passed else weak.first_violation)]
    if prof is not None:
        rows.insert(0, ("indices", _fmt_vec(prof.indices)))
    return Outcome(result, ok, _kv_table(rows))


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kahlerkit", description="Exact and numeric checks in Kahler and projective geometry.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.set_defaults(handler=handler)
        return p

    p = add("hodge-diamond", cmd_hodge_diamond, "Hodge diamond of P^n or Betti numbers of complete intersections")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pn", type=int, metavar="N")
    g.add_argument("--hypersurface", type=int, nargs=2, metavar=("N", "D"), help="dimension-N hypersurface of degree D")
    g.add_argument("--ci", nargs="+", metavar="ARG", help="M d1,d2,...")

    p = add("chern", cmd_chern, "Chern classes, canonical bundle and Euler characteristic")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pn", type=int, metavar="N")
    g.add_argument("--ci", nargs="+", metavar="ARG", help="M d1,d2,...")
    g.add_argument("--canonical", nargs="+", metavar="ARG", help="M d1,d2,...")
    g.add_argument("--euler", nargs="+", metavar="ARG", help="M d1,d2,...")

    p = add("h0", cmd_h0, "dimension of H^0(P^N, O(K))")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = add("picard", cmd_picard, "line bundle of a divisor on P^N")
    p.add_argument("n", type=int)
    p.add_argument("--divisor", default="", help="degree:multiplicity,...")

    p = add("cech", cmd_cech, "Cech cohomology from a JSON cover description")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--integers", action="store_true", help="also report integer cohomology")

    p = add("fubini-study", cmd_fubini_study, "numeric checks of the Fubini-Study metric")
    p.add_argument("--check", choices=("point", "integral", "curvature"), required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)

    p = add("lefschetz", cmd_lefschetz, "sl(2) relations, hard Lefschetz, primitive decompositions")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sl2", type=int, metavar="N")
    g.add_argument("--hard", type=int, nargs=2, metavar=("N", "K"))
    g.add_argument("--primitive-demo", type=int, metavar="N")

    p = add("kahler-identities", cmd_kahler_identities, "Kahler identities on polynomial forms of C^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=2)

    p = add("morse", cmd_morse, "Morse inequalities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", nargs=2, metavar=("M.json", "P.json"))
    g.add_argument("--sphere", nargs=2, metavar=("m", "q"), help="unit m-sphere and a point q=x0,x1,...")
    return parser


def _emit(command: str, status: str, result, fmt: str, table: str):
    if fmt == "json":
        envelope = {"command": command, "status": status, "result": result}
        sys.stdout.write(json.dumps(envelope, sort_keys=True, indent=2, default=_json_default) + "\n")
    elif table:
        sys.stdout.write(table + "\n")


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    return str(x)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    command = args.command
    try:
        out = args.handler(args)
    except (InputError, ValueError, ArithmeticError) as exc:
        print(f"kahlerkit {command}: {exc}", file=sys.stderr)
        _emit(command, "error", {"message": str(exc)}, args.format, "")
        return EXIT_INPUT
    status = "ok" if out.ok else "failed"
    _emit(command, status, out.result, args.format, out.table)
    if not out.ok:
        print(f"kahlerkit {command}: check failed", file=sys.stderr)
    return EXIT_OK if out.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
