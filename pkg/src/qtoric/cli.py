"""Command-line interface: ``qtoric <command> ...``.

Every command prints one JSON report to stdout.  Exit status is 0 on
success, 1 when a check or an operation fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import cohomology as coh
from . import io, linalg
from . import quasitoric as qt
from .analogous import c_matrix, classify_shift, face_rank_check, support_distances
from .errors import BadParameters, ParseError, QtoricError
from .moment_angle import dimension_check, format_system, quadratic_system, verify_samples
from .polytope import (
    CombPolytope,
    HPolytope,
    check_simple_structure,
    cube,
    face_poset,
    fine_order,
    fine_order_permutation,
    normal_form,
    simplex,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return linalg.format_rational(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


class Report:
    def __init__(self, command: str):
        self.command = command
        self.inputs: dict = {}
        self.results: dict = {}
        self.checks: list = []

    def add_input(self, path: str) -> None:
        self.inputs[path] = io.digest(path)

    def check(self, name: str, ok: bool, detail: Any = "") -> bool:
        self.checks.append({"name": name, "pass": bool(ok), "detail": jsonable(detail)})
        return ok

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": jsonable(self.results),
            "checks": self.checks,
            "ok": self.ok,
        }


# loading -----------------------------------------------------------------------


def load_omni(path: str, report: Report) -> qt.OmniQT:
    report.add_input(path)
    return io.omni_from_json(io.read_json(path))


def load_geometry(path: str, report: Report) -> HPolytope:
    """An H-descriptor, or the geometry attached to a manifold file."""
    report.add_input(path)
    obj = io.read_json(path)
    if isinstance(obj, dict) and "lambda_star" in obj:
        if obj.get("geometry") is None:
            raise ParseError(f"{path}: manifold has no geometry")
        obj = obj["geometry"]
    return io.hpolytope_from_json(obj)


def prepared(P: HPolytope) -> tuple[HPolytope, list]:
    """Finely ordered normal form, with the facet order applied."""
    order = list(range(1, P.m + 1))
    if not P.is_finely_ordered:
        first = min(P.vertex_sets)
        order = fine_order_permutation(P, first)
        P = fine_order(P, first)
    return normal_form(P), order


def summary(M: qt.OmniQT) -> dict:
    return {"n": M.n, "m": M.m, "q": M.q, "q_plus": M.q_plus, "q_minus": M.q_minus, "sigma_sum": M.sigma_sum}


def numbers_json(numbers: dict) -> dict:
    return {coh.partition_label(p): v for p, v in numbers.items()}


def emit(M: qt.OmniQT, out: str | None, report: Report) -> None:
    report.results["manifold"] = summary(M)
    if out:
        io.write_json(out, io.omni_to_json(M))
        report.results["written"] = out
    else:
        report.results["descriptor"] = io.omni_to_json(M)


# build ---------------------------------------------------------------------------


def _ints(params: Sequence[str], count: int | None, name: str) -> list:
    try:
        vals = [int(p) for p in params]
    except ValueError as exc:
        raise BadParameters(f"{name}: parameters must be integers") from exc
    if count is not None and len(vals) != count:
        raise BadParameters(f"{name}: expected {count} integer parameter(s)")
    return vals


def _bott_params(params: Sequence[str]) -> tuple[int, dict]:
    if not params:
        raise BadParameters("bott: usage bott N [i,j=d ...]")
    (n,) = _ints(params[:1], 1, "bott")
    d = {}
    for item in params[1:]:
        try:
            ij, val = item.split("=")
            i, j = (int(t) for t in ij.split(","))
            d[(i, j)] = int(val)
        except ValueError as exc:
            raise BadParameters(f"bott: bad twist {item!r}, expected i,j=d") from exc
    return n, d


BUILD_USAGE = {
    "cp": "cp N",
    "cp-eps": "cp-eps N e1 .. eN (each +1 or -1)",
    "cube": "cube N  (toric (CP^1)^N)",
    "bott": "bott N [i,j=d ...]",
    "bflag": "bflag N",
    "s2n": "s2n N  (bounding omniorientation on the cube)",
    "brs": "brs R S",
    "simplex-polytope": "simplex-polytope N",
    "cube-polytope": "cube-polytope N",
    "product": "product A.json B.json",
}


def build_object(name: str, params: Sequence[str], report: Report):
    if name == "cp":
        return qt.cp(*_ints(params, 1, name))
    if name == "cp-eps":
        vals = _ints(params, None, name)
        if not vals:
            raise BadParameters("cp-eps: missing N")
        return qt.cp_eps(vals[0], vals[1:])
    if name == "cube":
        return qt.toric_s2_product(*_ints(params, 1, name))
    if name == "bott":
        return qt.bott_tower(*_bott_params(params))
    if name == "bflag":
        return qt.bounded_flag(*_ints(params, 1, name))
    if name == "s2n":
        return qt.s_product(*_ints(params, 1, name))
    if name == "brs":
        return qt.b_rs(*_ints(params, 2, name))
    if name == "simplex-polytope":
        return simplex(*_ints(params, 1, name))
    if name == "cube-polytope":
        return cube(*_ints(params, 1, name))
    if name == "product":
        if len(params) != 2:
            raise BadParameters("product: expected two manifold files")
        a, b = (load_omni(p, report) for p in params)
        return qt.product_manifold(a, b)
    raise BadParameters(f"unknown builder {name!r}")


def cmd_build(args, report: Report) -> None:
    try:
        obj = build_object(args.name, args.params, report)
    except BadParameters as exc:
        raise BadParameters(f"{exc}\nusage: qtoric build {BUILD_USAGE.get(args.name, '<name> ...')}") from exc
    report.results["builder"] = args.name
    report.results["params"] = list(args.params)
    if isinstance(obj, HPolytope):
        report.results["polytope"] = {"n": obj.n, "m": obj.m, "q": obj.q}
        if args.out:
            io.write_json(args.out, io.hpolytope_to_json(obj))
            report.results["written"] = args.out
        else:
            report.results["descriptor"] = io.hpolytope_to_json(obj)
    else:
        emit(obj, args.out, report)


# sums ----------------------------------------------------------------------------


def cmd_sum(args, report: Report) -> None:
    a, b = load_omni(args.a, report), load_omni(args.b, report)
    emit(qt.connected_sum(a, b), args.out, report)


def cmd_boxsum(args, report: Report) -> None:
    a, b = load_omni(args.a, report), load_omni(args.b, report)
    emit(qt.box_sum(a, b), args.out, report)


def cmd_add(args, report: Report) -> None:
    a, b = load_omni(args.a, report), load_omni(args.b, report)
    M = qt.add_cobordism(a, b)
    emit(M, args.out, report)
    na, nb, nm = coh.chern_numbers(a), coh.chern_numbers(b), coh.chern_numbers(M)
    report.results["chern_numbers"] = numbers_json(nm)
    expected = {p: na[p] + nb[p] for p in na}
    report.check("chern numbers additive", nm == expected, numbers_json(expected))


# invariants ------------------------------------------------------------------------


def cmd_signs(args, report: Report) -> None:
    M = load_omni(args.file, report)
    report.results["signs"] = {io.vertex_key(w): s for w, s in zip(M.vertex_sets, M.signs)}
    report.results["manifold"] = summary(M)
    if M.geometry is not None:
        orientation = qt.geometric_orientation(M)
        recomputed = qt.compute_signs(M.geometry, M.char, orientation)
        report.results["orientation"] = orientation
        report.check("signs match the sign rule", recomputed == M.signs)


OPEN_QUESTION_CP2 = {
    "claimed_class": "[CP2] - 4[CP1]^2",
    "status": "unresolved; the derived characteristic numbers above are what is reported",
}


def cmd_chern(args, report: Report) -> None:
    M = load_omni(args.file, report)
    pres = coh.presentation(M)
    pairing = coh.Pairing(pres, M.sign_map)
    numbers = coh.chern_numbers(M)
    report.results["reference_vertex"] = list(pairing.reference_vertex)
    report.results["chern_numbers"] = numbers_json(numbers)
    report.results["manifold"] = summary(M)
    obstruction = coh.toric_obstruction(M)
    report.results["toric_obstruction"] = obstruction
    if M.n == 2:
        report.results["todd"] = obstruction["todd"]
        basis = coh.class_in_basis_n2(numbers)
        report.results["class"] = basis
        if M.m == 3 and M.q_minus > 0:
            note = dict(OPEN_QUESTION_CP2)
            note["derived_class"] = linear_combination(
                [basis["CP2"], basis["CP1xCP1"]], ["[CP2]", "[CP1]^2"]
            )
            report.results["open_question"] = note
    report.check("top chern number equals sign sum", numbers[(M.n,)] == M.sigma_sum)


def linear_combination(coeffs: Sequence, names: Sequence[str]) -> str:
    """``[1, 0, -2]`` with names ``a, b, c`` -> ``a - 2*c``."""
    text = ""
    for c, name in zip(coeffs, names):
        if not c:
            continue
        mag = abs(c)
        term = name if mag == 1 else f"{linalg.format_rational(mag)}*{name}"
        if not text:
            text = term if c > 0 else "-" + term
        else:
            text += (" + " if c > 0 else " - ") + term
    return text or "0"


def cmd_ring(args, report: Report) -> None:
    M = load_omni(args.file, report)
    pres = coh.presentation(M)
    names = [f"u{i}" for i in range(1, M.m + 1)]
    linear = [linear_combination(row, names) + " = 0" for row in pres.linear_relations]
    sr = ["*".join(f"u{i}" for i in nf) + " = 0" for nf in pres.sr_nonfaces]
    degrees = [args.degree] if args.degree is not None else list(range(M.n + 1))
    if any(not 0 <= d <= M.n for d in degrees):
        raise BadParameters(f"degree must lie in 0..{M.n}")
    basis = {}
    for d in degrees:
        piece = coh.graded_basis(pres, d)
        basis[f"H^{2 * d}"] = [coh.format_monomial(mono, names) for mono in piece.basis]
    report.results["generators"] = names
    report.results["linear_relations"] = linear
    report.results["monomial_relations"] = sr
    report.results["basis"] = basis
    report.results["reference_vertex"] = list(coh.Pairing(pres, M.sign_map).reference_vertex)


def geometry_checks(P: HPolytope, report: Report, samples: int, seed: int, prefix: str = "") -> None:
    P, order = prepared(P)
    C = c_matrix(P)
    CA = linalg.matmul(C, P.A)
    report.check(prefix + "C.A = 0", all(x == 0 for row in CA for x in row))
    r = linalg.rank(C)
    report.check(prefix + "rank C = m - n", r == P.m - P.n, r)
    frc = face_rank_check(C, P)
    report.check(prefix + "face ranks", frc.ok, {"faces": frc.checked, "failures": frc.failures})
    if samples > 0:
        rep = verify_samples(P, samples, seed)
        report.check(prefix + "quadric samples", rep["ok"], rep)


def cmd_quadrics(args, report: Report) -> None:
    P, order = prepared(load_geometry(args.polytope, report))
    system = quadratic_system(P)
    report.results["facet_order"] = order
    report.results["m"] = system.m
    report.results["equations"] = format_system(system)
    report.results["dimension"] = dimension_check(system)
    rep = verify_samples(P, args.samples, args.seed)
    report.results["verification"] = rep
    report.check("residuals and gradient ranks", rep["ok"])
    if args.export:
        io.write_json(args.export, io.system_to_json(system))
        report.results["exported"] = args.export


def cmd_analogous(args, report: Report) -> None:
    P, order = prepared(load_geometry(args.polytope, report))
    report.add_input(args.shift)
    h = io.shift_from_json(io.read_json(args.shift))
    if len(h) != P.m:
        raise ParseError(f"shift has length {len(h)}, expected {P.m}")
    h = [h[i - 1] for i in order]
    report.results["facet_order"] = order
    report.results["classification"] = classify_shift(P, h)
    report.results["support_distances"] = support_distances(P, h)
    report.results["c_matrix"] = io.matrix_to_json(c_matrix(P))


def euler_characteristic_ok(P: CombPolytope) -> tuple[bool, list]:
    """Euler relation on the f-vector of the boundary."""
    n = P.dim
    ranks = face_poset(P)
    f = [len(ranks[n - i]) for i in range(n)]  # f[i] = number of i-dimensional faces
    total = sum((-1) ** i * fi for i, fi in enumerate(f))
    return total == 1 - (-1) ** n, f


def cmd_verify(args, report: Report) -> None:
    M = load_omni(args.file, report)
    report.results["manifold"] = summary(M)
    bad = qt.validate_dichar(M.polytope, M.char)
    report.check("dicharacteristic", not bad, [{"vertex": list(w), "det": d} for w, d in bad])
    try:
        check_simple_structure(M.polytope)
        simple = True
    except QtoricError:
        simple = False
    report.check("simple polytope", simple)
    ok, f = euler_characteristic_ok(M.polytope)
    report.check("euler relation", ok, f)
    report.check("q = q_plus + q_minus", M.q == M.q_plus + M.q_minus)
    if not bad:
        numbers = coh.chern_numbers(M)
        report.results["chern_numbers"] = numbers_json(numbers)
        report.check("top chern number equals sign sum", numbers[(M.n,)] == M.sigma_sum)
        pairings = coh.vertex_pairings(M)
        mismatched = [list(w) for w in M.vertex_sets if pairings[w] != M.sign(w)]
        report.check("vertex monomials pair to signs", not mismatched, mismatched)
    if M.geometry is not None:
        if not bad:
            orientation = qt.geometric_orientation(M)
            report.check(
                "signs match the sign rule", qt.compute_signs(M.geometry, M.char, orientation) == M.signs
            )
        geometry_checks(M.geometry, report, args.samples, args.seed)


# entry point ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qtoric", description="Quasitoric manifolds from simple polytopes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build a manifold or polytope descriptor")
    b.add_argument("name", choices=sorted(BUILD_USAGE))
    b.add_argument("params", nargs="*")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    for name, func, help_ in (
        ("sum", cmd_sum, "connected sum at the initial vertices"),
        ("boxsum", cmd_boxsum, "box sum through an intermediate cube"),
        ("add", cmd_add, "manifold representing the sum of cobordism classes"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("a")
        s.add_argument("b")
        s.add_argument("--out")
        s.set_defaults(func=func)

    for name, func, help_ in (
        ("signs", cmd_signs, "vertex signs"),
        ("chern", cmd_chern, "characteristic numbers and Todd genus"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.set_defaults(func=func)

    r = sub.add_parser("ring", help="cohomology ring presentation and bases")
    r.add_argument("file")
    r.add_argument("--degree", type=int)
    r.set_defaults(func=cmd_ring)

    q = sub.add_parser("quadrics", help="moment-angle quadrics and their verification")
    q.add_argument("--polytope", required=True)
    q.add_argument("--samples", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--export")
    q.set_defaults(func=cmd_quadrics)

    a = sub.add_parser("analogous", help="classify a shifted polytope")
    a.add_argument("--polytope", required=True)
    a.add_argument("--shift", required=True)
    a.set_defaults(func=cmd_analogous)

    v = sub.add_parser("verify", help="run every consistency check on a manifold")
    v.add_argument("file")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    report = Report(args.command)
    try:
        args.func(args, report)
    except (ParseError, BadParameters, UsageError) as exc:
        print(f"qtoric {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QtoricError as exc:
        report.check(type(exc).__name__, False, str(exc))
    sys.stdout.write(io.dumps(report.to_json()))
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
