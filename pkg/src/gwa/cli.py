"""Command-line front end: parse inputs, run formula/oracle computations,
emit tables and machine-readable reports.

Commands map one-to-one onto the result families: `hh` and `coh` for the
untwisted dimension tables, `twisted` for diagonal twists, `invariants` for
the invariant-subalgebra construction, `group` for the finite-group count,
`verify` to cross-validate formula against oracle, and `selftest` for a
seeded property battery.  Exit codes: 0 success, 2 invalid input,
3 hypothesis violation, 4 stabilization failure, 5 formula/oracle
disagreement.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import shlex
import sys
import time
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .algebra import GWASpec, Torus
from .complexes import (
    COHOMOLOGY,
    HOMOLOGY,
    ComplexKind,
    bezout_d2_test,
    center_dim,
    euler_homotopy_check,
    oracle_dims,
)
from .errors import (
    GWAError,
    HypothesisError,
    InputError,
    InternalConsistencyError,
    StabilizationError,
)
from .formulas import coh_dims, duality_flag, hh_dims, twisted_dims
from .invariants import (
    GroupClassData,
    group_report,
    h0_bruteforce,
    invariant_gwa,
    twisted_h0_bruteforce,
    verify_invariant_identity,
)
from .linalg import KERNEL_IMPLEMENTATION, Schedule
from .poly import Poly, ShiftSigma, degree_invariants, format_poly, parse_poly
from .scalars import parse_rational, zeta

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_STABILIZATION = 4
EXIT_DISAGREEMENT = 5


@dataclass
class RunReport:
    """Everything one invocation computed, JSON-serializable and stable."""

    schema_version: int
    command: str
    input: dict
    n: int | None = None
    d: int | None = None
    results: list = dataclass_field(default_factory=list)
    agreement: bool | None = None
    duality: bool | None = None
    stabilization: dict = dataclass_field(default_factory=dict)
    extra: dict = dataclass_field(default_factory=dict)
    elapsed_seconds: float | None = None

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        lines = ["command,kind,source,degree,dim"]
        for res in self.results:
            for degree, dim in enumerate(res["dims"]):
                lines.append(
                    f"{self.command},{res['kind']},{res['source']},{degree},{dim}"
                )
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        lines = []
        echo = ", ".join(f"{k}={v}" for k, v in self.input.items())
        lines.append(f"input: {echo}")
        if self.n is not None:
            lines.append(f"n={self.n} d={self.d}")
        for res in self.results:
            dims = " ".join(str(v) for v in res["dims"])
            lines.append(f"{res['kind']:<22} {res['source']:<8} [{dims}]")
        if self.agreement is not None:
            lines.append(f"agreement: {self.agreement}")
        if self.duality is not None:
            lines.append(f"duality: {self.duality}")
        if self.stabilization:
            lines.append(f"stabilized at D={self.stabilization.get('stabilized_at')}")
        for key, value in self.extra.items():
            lines.append(f"{key}: {value}")
        if self.elapsed_seconds is not None:
            lines.append(f"time: {self.elapsed_seconds:.2f}s")
        return "\n".join(lines) + "\n"


def _schedule_for(n: int, args) -> Schedule:
    d_max = 240
    env = os.environ.get("GWA_DMAX")
    if env:
        try:
            d_max = int(env)
        except ValueError as exc:
            raise InputError(f"bad GWA_DMAX={env!r}") from exc
    if getattr(args, "d_max", None):
        d_max = args.d_max
    start = getattr(args, "d_start", None) or max(4 * n, 12)
    window = 3 if getattr(args, "paranoid", False) else 2
    return Schedule(start=start, window=window, d_max=d_max)


def _parse_spec(args) -> tuple[GWASpec, ShiftSigma]:
    a = parse_poly(args.a)
    h0 = parse_rational(args.h0)
    if not h0:
        raise HypothesisError("h0 must be nonzero")
    sigma = ShiftSigma(h0)
    if a.is_constant():
        raise HypothesisError("a must be non-constant")
    return GWASpec(a, sigma), sigma


def _twist_scalar(args):
    order = args.twist_order
    power = args.twist_power
    if order < 1:
        raise InputError("twist order must be positive")
    w = zeta(order, power)
    if w.is_rational():
        return w.rational_value()
    return w


def _stab_meta(stabs) -> dict:
    return {
        "stabilized_at": max(s.stabilized_at for s in stabs),
        "history": [[list(pair) for pair in s.history] for s in stabs],
    }


def cmd_hh(args) -> RunReport:
    spec, sigma = _parse_spec(args)
    report = RunReport(SCHEMA_VERSION, "hh", {"a": format_poly(spec.a), "h0": str(sigma.h0)})
    n, d = degree_invariants(spec.a, sigma)
    report.n, report.d = n, d
    formula = hh_dims(spec.a, sigma, args.p_max)
    report.results.append({"kind": "homology", "source": "formula", "dims": formula.dims})
    if not args.formula_only:
        stabs = oracle_dims(spec, HOMOLOGY, args.p_max, _schedule_for(n, args))
        dims = [int(v) for v in stabs]
        report.results.append({"kind": "homology", "source": "oracle", "dims": dims})
        report.stabilization = _stab_meta(stabs)
        report.agreement = dims == formula.dims
    report.duality = duality_flag(spec.a, sigma)
    return report


def cmd_coh(args) -> RunReport:
    spec, sigma = _parse_spec(args)
    report = RunReport(SCHEMA_VERSION, "coh", {"a": format_poly(spec.a), "h0": str(sigma.h0)})
    n, d = degree_invariants(spec.a, sigma)
    report.n, report.d = n, d
    formula = coh_dims(spec.a, sigma, args.p_max)
    report.results.append({"kind": "cohomology", "source": "formula", "dims": formula.dims})
    if not args.formula_only:
        stabs = oracle_dims(spec, COHOMOLOGY, args.p_max, _schedule_for(n, args))
        dims = [int(v) for v in stabs]
        report.results.append({"kind": "cohomology", "source": "oracle", "dims": dims})
        report.stabilization = _stab_meta(stabs)
        report.agreement = dims == formula.dims
    report.duality = duality_flag(spec.a, sigma)
    return report


def cmd_twisted(args) -> RunReport:
    spec, sigma = _parse_spec(args)
    w = _twist_scalar(args)
    if w == 1:
        raise HypothesisError("the twist must differ from the identity (w != 1)")
    report = RunReport(
        SCHEMA_VERSION,
        "twisted",
        {
            "a": format_poly(spec.a),
            "h0": str(sigma.h0),
            "twist_order": args.twist_order,
            "twist_power": args.twist_power,
        },
    )
    n, d = degree_invariants(spec.a, sigma)
    report.n, report.d = n, d
    variants = ["homology", "cohomology"] if args.kind == "both" else [args.kind]
    agreement = True
    stabs_all = []
    for variant in variants:
        formula = twisted_dims(spec.a, sigma, variant, args.p_max)
        report.results.append(
            {"kind": f"twisted-{variant}", "source": "formula", "dims": formula.dims}
        )
        if not args.formula_only:
            kind = ComplexKind(variant, Torus(w))
            stabs = oracle_dims(spec, kind, args.p_max, _schedule_for(n, args))
            dims = [int(v) for v in stabs]
            stabs_all.extend(stabs)
            report.results.append(
                {"kind": f"twisted-{variant}", "source": "oracle", "dims": dims}
            )
            agreement = agreement and dims == formula.dims
    if not args.formula_only:
        report.agreement = agreement
        report.stabilization = _stab_meta(stabs_all)
    return report


def cmd_invariants(args) -> RunReport:
    spec, sigma = _parse_spec(args)
    if args.r < 1:
        raise InputError("r must be >= 1")
    report = RunReport(
        SCHEMA_VERSION,
        "invariants",
        {"a": format_poly(spec.a), "h0": str(sigma.h0), "r": args.r},
    )
    n, d = degree_invariants(spec.a, sigma)
    report.n, report.d = n, d
    fixed = invariant_gwa(spec, args.r)
    identity_ok = verify_invariant_identity(spec, args.r)
    table = hh_dims(fixed.a, sigma, args.p_max)
    report.results.append(
        {"kind": "invariant-homology", "source": "formula", "dims": table.dims}
    )
    report.extra = {
        "a_tilde": format_poly(fixed.a, var="H"),
        "identity_check": identity_ok,
        "hh0_invariant": table.dims[0],
        "expected_hh0": args.r * n - 1,
    }
    if not identity_ok:
        raise InternalConsistencyError("invariant identity check failed")
    return report


def cmd_group(args) -> RunReport:
    spec, sigma = _parse_spec(args)
    if args.classes_file:
        with open(args.classes_file, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = (args.classes or "").replace(";", "\n")
    data = GroupClassData.parse(text)
    report = RunReport(
        SCHEMA_VERSION,
        "group",
        {"a": format_poly(spec.a), "h0": str(sigma.h0), "classes": text.strip()},
    )
    n, d = degree_invariants(spec.a, sigma)
    report.n, report.d = n, d
    result = group_report(spec, data)
    report.results.append(
        {"kind": "group-cohomology", "source": "formula", "dims": result.dims}
    )
    report.extra = {"a1": data.a1, "a2": data.a2}
    if "cyclic_crosscheck" in result.meta:
        report.extra["cyclic_crosscheck"] = result.meta["cyclic_crosscheck"]
    return report


def cmd_verify(args) -> RunReport:
    spec, sigma = _parse_spec(args)
    report = RunReport(
        SCHEMA_VERSION,
        "verify",
        {"a": format_poly(spec.a), "h0": str(sigma.h0), "kind": args.kind},
    )
    n, d = degree_invariants(spec.a, sigma)
    report.n, report.d = n, d
    kinds = ["homology", "cohomology"] if args.kind == "both" else [args.kind]
    agreement = True
    stabs_all = []
    for variant in kinds:
        formula = (hh_dims if variant == "homology" else coh_dims)(spec.a, sigma, args.p_max)
        kind = HOMOLOGY if variant == "homology" else COHOMOLOGY
        stabs = oracle_dims(spec, kind, args.p_max, _schedule_for(n, args))
        dims = [int(v) for v in stabs]
        stabs_all.extend(stabs)
        report.results.append({"kind": variant, "source": "formula", "dims": formula.dims})
        report.results.append({"kind": variant, "source": "oracle", "dims": dims})
        agreement = agreement and dims == formula.dims
    report.agreement = agreement
    report.duality = duality_flag(spec.a, sigma)
    report.stabilization = _stab_meta(stabs_all)
    return report


def cmd_selftest(args) -> RunReport:
    """Seeded property battery over a few built-in algebras."""
    import random

    rng = random.Random(args.seed)
    report = RunReport(SCHEMA_VERSION, "selftest", {"seed": args.seed})
    specs = [
        GWASpec(Poly.gen(), ShiftSigma(1)),
        GWASpec(Poly([-1, 0, 1]), ShiftSigma(1)),
        GWASpec(Poly([0, 0, 0, 1]), ShiftSigma(Fraction(1, 2))),
    ]
    checks = []
    for spec in specs:
        label = f"a={format_poly(spec.a)}, h0={spec.sigma.h0}"
        checks.append((f"euler homotopy [{label}]",
                       euler_homotopy_check(spec, samples=25, seed=rng.randrange(10**6))))
        checks.append((f"center dim 1 [{label}]", int(center_dim(spec)) == 1))
        checks.append((f"bezout matches gcd [{label}]",
                       bezout_d2_test(spec.a, spec.sigma)
                       == (degree_invariants(spec.a, spec.sigma)[1] == 0)))
        hh = hh_dims(spec.a, spec.sigma, 4)
        oracle = [int(v) for v in oracle_dims(spec, HOMOLOGY, 4)]
        checks.append((f"oracle = formula [{label}]", oracle == hh.dims))
        checks.append((f"h0 bruteforce [{label}]",
                       int(h0_bruteforce(spec)) == spec.n - 1))
        checks.append((f"twisted h0 [{label}]",
                       int(twisted_h0_bruteforce(spec, Fraction(-1))) == spec.n))
    passed = sum(1 for _, ok in checks if ok)
    report.extra = {
        "kernel_implementation": KERNEL_IMPLEMENTATION,
        "checks": [{"name": name, "ok": ok} for name, ok in checks],
        "passed": passed,
        "total": len(checks),
    }
    if passed != len(checks):
        raise InternalConsistencyError(
            f"selftest failures: {[name for name, ok in checks if not ok]}"
        )
    return report


COMMANDS = {
    "hh": cmd_hh,
    "coh": cmd_coh,
    "twisted": cmd_twisted,
    "invariants": cmd_invariants,
    "group": cmd_group,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def _add_common(parser, need_poly=True):
    if need_poly:
        parser.add_argument("--a", required=True, help='defining polynomial, e.g. "h^2-1" or "[ -1, 0, 1 ]"')
        parser.add_argument("--h0", default="1", help="shift step, nonzero rational (default 1)")
    parser.add_argument("--p-max", type=int, default=5, help="largest degree reported")
    parser.add_argument("--d-start", type=int, default=None, help="truncation schedule start")
    parser.add_argument("--d-max", type=int, default=None, help="truncation cap (also env GWA_DMAX)")
    parser.add_argument("--paranoid", action="store_true",
                        help="require three equal consecutive values to stabilize")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--csv", action="store_true", help="emit CSV rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwa",
        description="Hochschild (co)homology dimensions of generalized Weyl "
                    "algebras over k[h], by closed formulas and an independent "
                    "resolution-based oracle.",
    )
    parser.add_argument("--sweep", metavar="FILE",
                        help="run one job per line of FILE concurrently")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("hh", help="homology dimensions")
    _add_common(p)
    p.add_argument("--formula-only", action="store_true")

    p = sub.add_parser("coh", help="cohomology dimensions")
    _add_common(p)
    p.add_argument("--formula-only", action="store_true")

    p = sub.add_parser("twisted", help="dimensions with twisted coefficients")
    _add_common(p)
    p.add_argument("--twist-order", type=int, required=True,
                   help="order m of the root of unity")
    p.add_argument("--twist-power", type=int, default=1, help="power of zeta_m (default 1)")
    p.add_argument("--kind", choices=["homology", "cohomology", "both"], default="both")
    p.add_argument("--formula-only", action="store_true")

    p = sub.add_parser("invariants", help="invariant subalgebra under a cyclic action")
    _add_common(p)
    p.add_argument("--r", type=int, required=True, help="order of the cyclic group")

    p = sub.add_parser("group", help="invariant cohomology from conjugacy-class data")
    _add_common(p)
    p.add_argument("--classes", help='semicolon-separated lines "order=<m> omega=<yes|no>"')
    p.add_argument("--classes-file", help="file with one class per line")

    p = sub.add_parser("verify", help="formula vs oracle cross-validation")
    _add_common(p)
    p.add_argument("--kind", choices=["homology", "cohomology", "both"], default="both")

    p = sub.add_parser("selftest", help="seeded property battery")
    _add_common(p, need_poly=False)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _emit(report: RunReport, args) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(report.to_json() + "\n")
    elif getattr(args, "csv", False):
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_table())


def run_job(argv: list[str]) -> dict:
    """Run one parsed job; used by --sweep workers."""
    parser = build_parser()
    args = parser.parse_args(argv)
    report = COMMANDS[args.command](args)
    return json.loads(report.to_json())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.sweep:
        return _run_sweep(args.sweep)
    if not args.command:
        parser.print_help()
        return EXIT_INVALID_INPUT
    started = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except StabilizationError as exc:
        print(f"stabilization failure: {exc}", file=sys.stderr)
        return EXIT_STABILIZATION
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    report.elapsed_seconds = time.perf_counter() - started
    _emit(report, args)
    if report.agreement is False:
        print("formula/oracle disagreement", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _run_sweep(path: str) -> int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            jobs = [shlex.split(line) for line in fh if line.strip() and not line.startswith("#")]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    status = EXIT_OK
    with concurrent.futures.ProcessPoolExecutor() as pool:
        futures = {pool.submit(run_job, job): job for job in jobs}
        for future in concurrent.futures.as_completed(futures):
            job = futures[future]
            try:
                payload = future.result()
                print(json.dumps({"job": job, "report": payload}))
            except GWAError as exc:
                print(json.dumps({"job": job, "error": str(exc)}))
                status = EXIT_DISAGREEMENT
    return status


if __name__ == "__main__":
    sys.exit(main())
