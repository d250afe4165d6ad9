"""Command-line front end.

Exit codes: 0 success/verified, 1 usage or parse error, 2 violated
invariant or failed tolerance, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import io as tio
from .errors import MismatchReport, ToricDingError
from .extremal import dh_of_vector_field, extremal_affine, validate_fano
from .functionals import (
    d_na,
    d_z_na,
    dh_measure,
    e_na,
    inner_product,
    j_na,
    outside_calibrated_regime,
)
from .lattice import gabor_inner, weight_measure
from .normalcone import normal_cone_family, verdict, verify_family
from .twisting import TwistProblem, jna_twisted, reduce_jna


@dataclass
class RunConfig:
    command: str
    polytope_path: str
    tc_path: str | None = None
    k_ladder: list[int] = field(default_factory=list)
    c_grid: list[Fraction] = field(default_factory=list)
    output: str = "json"
    digits: int = 12
    tol: Fraction = Fraction(1, 16)
    rho: list[Fraction] | None = None
    vertex: str = "auto"
    plot_path: str | None = None
    csv_path: str | None = None
    segment: str | None = None

    def validate(self) -> None:
        if self.k_ladder:
            if any(k < 1 for k in self.k_ladder):
                raise tio.ParseError("k values must be >= 1")
            if any(b <= a for a, b in zip(self.k_ladder, self.k_ladder[1:])):
                raise tio.ParseError("k ladder must be strictly increasing")


def _fr(x: Fraction, digits: int) -> dict:
    return {"exact": tio.format_rational(x), "float": tio.format_float(x, digits)}


def cmd_analyze(cfg: RunConfig) -> int:
    P = validate_fano(tio.load_polytope(cfg.polytope_path))
    ext = extremal_affine(P)
    dh = dh_of_vector_field(P, ext.theta.gradient)
    out = {
        "dim": P.dim,
        "volume": _fr(P.volume(), cfg.digits),
        "anticanonical_degree": _fr(P.anticanonical_degree(), cfg.digits),
        "barycenter": tio.vector_to_strings(ext.b),
        "theta": tio.affine_to_dict(ext.theta),
        "vartheta": tio.format_rational(ext.vartheta),
        "vartheta_float": tio.format_float(ext.vartheta, cfg.digits),
        "dh_extremal": tio.dh_to_dict(dh, cfg.digits),
    }
    sys.stdout.write(tio.dumps(out))
    _emit_density_plot(cfg, dh)
    return 0


def cmd_tc_eval(cfg: RunConfig) -> int:
    P = validate_fano(tio.load_polytope(cfg.polytope_path))
    f = tio.load_test_config(cfg.tc_path, P)
    ext = extremal_affine(P)
    dh = dh_measure(f)
    out = {
        "e_na": _fr(e_na(f), cfg.digits),
        "j_na": _fr(j_na(f), cfg.digits),
        "d_na": _fr(d_na(f), cfg.digits),
        "d_z_na": _fr(d_z_na(f, ext), cfg.digits),
        "dh": tio.dh_to_dict(dh, cfg.digits),
        "outside_calibrated_regime": outside_calibrated_regime(f),
    }
    if cfg.rho is not None:
        out["inner_product_rho"] = _fr(inner_product(f, cfg.rho), cfg.digits)
    sys.stdout.write(tio.dumps(out))
    _emit_density_plot(cfg, dh)
    return 0


def cmd_reduce(cfg: RunConfig) -> int:
    P = validate_fano(tio.load_polytope(cfg.polytope_path))
    f = tio.load_test_config(cfg.tc_path, P)
    problem = TwistProblem.from_plconcave(f)
    rho_star, j_t = reduce_jna(f, problem)
    out = {
        "j_na": _fr(j_na(f), cfg.digits),
        "j_t_na": _fr(j_t, cfg.digits),
        "rho_star": tio.vector_to_strings(rho_star),
        "candidates_used": len(problem.candidates),
    }
    sys.stdout.write(tio.dumps(out))
    if cfg.segment and cfg.csv_path:
        a_txt, b_txt, n_txt = cfg.segment.split(";")
        a = tio.parse_rational_list(a_txt)
        b = tio.parse_rational_list(b_txt)
        steps = int(n_txt)
        with open(cfg.csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "j_twisted"])
            for i in range(steps + 1):
                t = Fraction(i, steps)
                rho = [x + t * (y - x) for x, y in zip(a, b)]
                writer.writerow([float(t), float(jna_twisted(f, rho, problem))])
    return 0


def cmd_normal_cone(cfg: RunConfig) -> int:
    P = validate_fano(tio.load_polytope(cfg.polytope_path))
    if cfg.vertex == "auto":
        family = normal_cone_family(P)
    else:
        idx = int(cfg.vertex)
        family = normal_cone_family(P, P.vertices()[idx])
    grid = cfg.c_grid or None
    if grid is None:
        cap = family.grid_cap()
        grid = [cap * Fraction(i, 4) for i in (1, 2, 3)]
    bad = [c for c in grid if not 0 < c < family.c_max]
    if bad:
        raise tio.ParseError(f"c values {bad} outside (0, {family.c_max})")
    report = verify_family(family, grid)
    stability = verdict(P, grid)
    out = {
        "vertex": tio.vector_to_strings(report.vertex),
        "ord": tio.affine_to_dict(report.ord),
        "c_max": tio.format_rational(report.c_max),
        "anticanonical_degree": tio.format_rational(report.Ln),
        "vartheta": tio.format_rational(report.vartheta),
        "rows": [
            {
                "c": tio.format_rational(r.c),
                "j_na": tio.format_rational(r.j),
                "j_t_na": tio.format_rational(r.j_t),
                "rho_star": tio.vector_to_strings(r.rho_star),
                "d_na": tio.format_rational(r.d),
                "pairing_with_extremal": tio.format_rational(r.pairing),
                "d_z_na": tio.format_rational(r.d_z),
                "dh_matches_closed_form": r.dh_matches,
            }
            for r in report.rows
        ],
        "expansion_coeffs": [tio.format_rational(c) for c in report.expansion_coeffs],
        "expansion_leading": tio.format_rational(report.leading_coeff),
        "expansion_leading_expected": tio.format_rational(report.leading_expected),
        "verdict": {
            "vartheta_float": tio.format_float(stability.vartheta, cfg.digits),
            "flags": stability.flags,
            "statements": stability.statements,
        },
    }
    sys.stdout.write(tio.dumps(out))
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["c", "j_na", "j_t_na", "d_na", "pairing_with_extremal", "d_z_na"])
            for r in report.rows:
                writer.writerow(
                    [float(r.c), float(r.j), float(r.j_t), float(r.d),
                     float(r.pairing), float(r.d_z)]
                )
    if cfg.plot_path:
        with open(cfg.plot_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["c", "j_na", "j_t_na", "d_na", "d_z_na"])
            for r in report.rows:
                writer.writerow([float(r.c), float(r.j), float(r.j_t), float(r.d), float(r.d_z)])
    return 0


def cmd_oracle(cfg: RunConfig) -> int:
    P = validate_fano(tio.load_polytope(cfg.polytope_path))
    f = tio.load_test_config(cfg.tc_path, P)
    if not cfg.k_ladder:
        raise tio.ParseError("oracle needs a nonempty k ladder")
    rho = cfg.rho if cfg.rho is not None else [1] + [0] * (P.dim - 1)
    if any(r.denominator != 1 for r in map(Fraction, rho)):
        raise tio.ParseError("oracle rho must be integral")
    rho = [int(r) for r in rho]
    measure = dh_measure(f)
    exact_mean = measure.mean()
    exact_second = measure.second_moment()
    exact_inner = inner_product(f, rho)
    rows = []
    for k in cfg.k_ladder:
        wm = weight_measure(f, k)
        gk = gabor_inner(f, rho, k)
        rows.append(
            {
                "k": k,
                "N_k": wm.N_k,
                "mean": wm.mean(),
                "second_moment": wm.second_moment(),
                "gabor_inner": gk,
                "exact_mean": exact_mean,
                "exact_second_moment": exact_second,
                "exact_inner": exact_inner,
                "err_mean": abs(wm.mean() - exact_mean),
                "err_second": abs(wm.second_moment() - exact_second),
                "err_inner": abs(gk - exact_inner),
            }
        )
    writer = csv.writer(sys.stdout)
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([row["k"], row["N_k"]] + [float(row[h]) for h in header[2:]])
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for row in rows:
                w.writerow([row["k"], row["N_k"]] + [float(row[h]) for h in header[2:]])
    final = rows[-1]
    ok = max(final["err_mean"], final["err_second"], final["err_inner"]) <= cfg.tol
    return 0 if ok else 2


def _emit_density_plot(cfg: RunConfig, dh) -> None:
    if not cfg.plot_path:
        return
    with open(cfg.plot_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lambda", "density"])
        for lam, dens in tio.density_samples(dh):
            writer.writerow([float(lam), float(dens)])
        writer.writerow([])
        writer.writerow(["atom_location", "atom_mass"])
        for loc, mass in dh.atoms:
            writer.writerow([float(loc), float(mass)])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricding",
        description="Exact Ding-stability invariants of toric Fano polytopes",
    )
    parser.add_argument("--digits", type=int, default=12, help="float display digits")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="extremal data and DH measure of a polytope")
    p.add_argument("polytope")
    p.add_argument("--emit-plot-data", dest="plot")

    p = sub.add_parser("tc-eval", help="non-Archimedean functionals of a configuration")
    p.add_argument("polytope")
    p.add_argument("tc")
    p.add_argument("--rho", help="comma-separated rational vector")
    p.add_argument("--emit-plot-data", dest="plot")

    p = sub.add_parser("reduce", help="reduced J-functional via exact LP")
    p.add_argument("polytope")
    p.add_argument("tc")
    p.add_argument("--segment", help="'a1,a2;b1,b2;N' sampling segment for J(rho)")
    p.add_argument("--segment-csv", dest="csvout")

    p = sub.add_parser("normal-cone", help="normal-cone family report and verdict")
    p.add_argument("--polytope", required=True)
    p.add_argument("--grid", help="comma-separated c values")
    p.add_argument("--vertex", default="auto", help="'auto' or vertex index")
    p.add_argument("--csv", dest="csvout")
    p.add_argument("--emit-plot-data", dest="plot")

    p = sub.add_parser("oracle", help="finite-level convergence table")
    p.add_argument("polytope")
    p.add_argument("tc")
    p.add_argument("--k-ladder", default="8,16,32,64")
    p.add_argument("--rho", help="comma-separated integer vector")
    p.add_argument("--tol", default="1/16")
    p.add_argument("--csv", dest="csvout")

    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        polytope_path=getattr(args, "polytope", ""),
        tc_path=getattr(args, "tc", None),
        digits=args.digits,
    )
    if getattr(args, "k_ladder", None):
        cfg.k_ladder = [int(s) for s in args.k_ladder.split(",") if s.strip()]
    if getattr(args, "grid", None):
        cfg.c_grid = tio.parse_rational_list(args.grid)
    if getattr(args, "rho", None):
        cfg.rho = tio.parse_rational_list(args.rho)
    if getattr(args, "tol", None):
        cfg.tol = tio.parse_rational(args.tol)
    cfg.vertex = getattr(args, "vertex", "auto")
    cfg.plot_path = getattr(args, "plot", None)
    cfg.csv_path = getattr(args, "csvout", None)
    cfg.segment = getattr(args, "segment", None)
    cfg.validate()
    return cfg


_DISPATCH = {
    "analyze": cmd_analyze,
    "tc-eval": cmd_tc_eval,
    "reduce": cmd_reduce,
    "normal-cone": cmd_normal_cone,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        cfg = config_from_args(args)
        return _DISPATCH[cfg.command](cfg)
    except (tio.ParseError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except MismatchReport as exc:
        sys.stderr.write(f"identity violation: {exc}\n")
        return 2
    except ToricDingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except Exception as exc:  # pragma: no cover
        sys.stderr.write(f"internal error: {exc!r}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
