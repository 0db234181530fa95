"""Command-line front end: CSV / JSON-lines tables and classification records.

Every command builds its full output in memory before writing, so a failure
never leaves a partial table behind.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import dynamics, relations, spectra
from .errors import QuantonDecayError
from .minkowski import (
    FourVector,
    Hyperplane,
    UnitTimelike,
    Velocity3,
    eta_from_velocity,
    time_gap_between_parallel,
)

FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class RunConfig:
    kind: str = spectra.BREIT_WIGNER
    M: float = 1.0
    Gamma: float = 0.05
    width: float = 0.02
    support: float | None = None
    nodes: int = spectra.DEFAULT_NODES
    table: str | None = None
    alpha: str = ""
    hbar: float = 1.0
    output: str | None = None
    format: str = "csv"

    @classmethod
    def from_json(cls, path: str) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data).validated()

    def validated(self) -> "RunConfig":
        if self.kind not in (spectra.BREIT_WIGNER, spectra.GAUSSIAN, spectra.TABULATED):
            raise ValueError(f"unknown spectrum kind {self.kind!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.kind == spectra.TABULATED and not self.table:
            raise ValueError("tabulated spectrum needs a table path")
        return self

    def density(self) -> spectra.SpectralDensity:
        if self.kind == spectra.BREIT_WIGNER:
            return spectra.make_breit_wigner(
                self.M, self.Gamma, 200.0 if self.support is None else self.support,
                int(self.nodes), alpha=self.alpha)
        if self.kind == spectra.GAUSSIAN:
            return spectra.make_gaussian(
                self.M, self.width, 10.0 if self.support is None else self.support,
                int(self.nodes), alpha=self.alpha)
        return spectra.load_tabulated(self.table, int(self.nodes), alpha=self.alpha)

    def reference_mass(self, d: spectra.SpectralDensity) -> float:
        return self.M if self.kind != spectra.TABULATED else d.mean


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from exc


def _vec3(text: str) -> list[float]:
    vals = _floats(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 components: {text!r}")
    return vals


def _vec4(text: str) -> list[float]:
    vals = _floats(text)
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"expected 4 components: {text!r}")
    return vals


class Table:
    def __init__(self, columns):
        self.columns = list(columns)
        self.rows = []
        self.comments = {}

    def add(self, *values):
        self.rows.append(values)

    def render(self, fmt_name: str) -> str:
        if fmt_name == "jsonl":
            out = [json.dumps(dict(zip(self.columns, (_json_value(v) for v in row))))
                   for row in self.rows]
            if self.comments:
                out.append(json.dumps({k: _json_value(v) for k, v in self.comments.items()}))
            return "".join(line + "\n" for line in out)
        out = [",".join(self.columns)]
        out += [",".join(fmt(v) for v in row) for row in self.rows]
        out += [f"# {k}={fmt(v)}" for k, v in self.comments.items()]
        return "".join(line + "\n" for line in out)


def _json_value(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def cmd_survival(cfg: RunConfig, s: float, t_max: float, n_points: int) -> Table:
    if n_points < 1:
        raise ValueError("n-points must be at least 1")
    d = cfg.density()
    taus = np.linspace(0.0, t_max, n_points)
    curve = dynamics.survival_curve(d, s, taus, cfg.hbar)
    table = Table(["tau", "re", "im", "prob"])
    for tau, amp, prob in zip(curve.times, curve.amplitudes, curve.probabilities):
        table.add(tau, amp.real, amp.imag, prob)
    return table


def cmd_lifetime_table(cfg: RunConfig, s_values, rel_tol: float = 1e-4) -> Table:
    d = cfg.density()
    mass = cfg.reference_mass(d)
    table = Table(["s", "T_closed", "T_numeric", "gamma_sharp"])
    worst = 0.0
    for s in s_values:
        closed = dynamics.lifetime_closed_form(d, s, cfg.hbar).value
        numeric = dynamics.lifetime_numeric(d, s, cfg.hbar, rel_tol).value
        worst = max(worst, abs(numeric - closed) / closed)
        table.add(s, closed, numeric, math.sqrt(mass * mass + s) / mass)
    table.comments["max_rel_diff"] = worst
    table.comments["rel_tol"] = rel_tol
    return table


def cmd_shirokov(cfg: RunConfig, u_values) -> Table:
    d = cfg.density()
    tau0 = dynamics.lifetime_closed_form(d, 0.0, cfg.hbar).value
    table = Table(["u", "eta0", "t_S_formula", "t_S_geometric", "half_life_coordinate_time"])
    for u in u_values:
        vel = Velocity3(u, 0.0, 0.0)
        eta = eta_from_velocity(vel)
        formula = dynamics.shirokov_time(tau0, vel)
        geometric = time_gap_between_parallel(Hyperplane(eta, 0.0), Hyperplane(eta, tau0))
        half = dynamics.velocity_eigenstate_half_life(d, vel, cfg.hbar)
        table.add(u, eta.t, formula, geometric, half)
    return table


def _eta_arg(u, eta) -> UnitTimelike:
    if eta is not None:
        return UnitTimelike(FourVector(*eta))
    return eta_from_velocity(Velocity3(*(u if u is not None else (0.0, 0.0, 0.0))))


def cmd_classify(etas, p=None, p_p=None, tol: float = 1e-9) -> dict:
    report = relations.classify_triple(*etas, tol=tol)
    record = report.to_dict()
    if p is not None or p_p is not None:
        p = p if p is not None else [0.0] * 4
        p_p = p_p if p_p is not None else [0.0] * 4
        record["support_satisfied"] = relations.support_condition_check(report, p, p_p, tol)
    return record


def cmd_velocity_pair(u, u_p, tol: float = 1e-9) -> dict:
    return relations.classify_velocity_pair(Velocity3(*u), Velocity3(*u_p), tol).to_dict()


def cmd_expectations(cfg: RunConfig, u, s_values, direction) -> Table:
    d = cfg.density()
    eta = eta_from_velocity(Velocity3(*u))
    n = np.asarray(direction, dtype=float)
    if not np.linalg.norm(n) > 0:
        raise ValueError("direction must be non-zero")
    n = n / np.linalg.norm(n)
    table = Table(["s", "mean_inverse_energy", "v_t", "v_x", "v_y", "v_z", "spread",
                   "inst_ux", "inst_uy", "inst_uz"])
    for s in s_values:
        if s < 0:
            raise dynamics.SpacelikeMomentumRequired("s must be >= 0")
        label = dynamics.SlmLabel.from_rest_momentum(eta, math.sqrt(s) * n, cfg.alpha)
        mean, spread = dynamics.velocity_expectation_and_spread(d, label)
        inst = dynamics.instantaneous_velocity_expectation(d, label)
        table.add(s, dynamics.mean_inverse_energy(d, label.s), *mean.as_array(), spread,
                  *inst.as_array())
    return table


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig keys")
    common.add_argument("--hbar", type=float)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=FORMATS)
    group = common.add_argument_group("spectrum")
    group.add_argument("--kind", choices=(spectra.BREIT_WIGNER, spectra.GAUSSIAN, spectra.TABULATED))
    group.add_argument("--mass", type=float, dest="M")
    group.add_argument("--gamma", type=float, dest="Gamma")
    group.add_argument("--width", type=float)
    group.add_argument("--support", type=float)
    group.add_argument("--nodes", type=int)
    group.add_argument("--table", help="two-column 'mu sigma' file for --kind tabulated")
    group.add_argument("--alpha", help="name of the quanton type")

    parser = argparse.ArgumentParser(prog="quanton-decay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("survival", parents=[common], help="survival amplitude curve")
    p.add_argument("--s", type=float, default=0.0, help="squared space-like momentum -p.p")
    p.add_argument("--t-max", type=float, default=40.0)
    p.add_argument("--n-points", type=int, default=401)

    p = sub.add_parser("lifetime", parents=[common], help="closed-form vs numeric lifetimes")
    p.add_argument("--s-values", type=_floats, default=[0.0, 1.0, 3.0])
    p.add_argument("--rel-tol", type=float, default=1e-4)

    p = sub.add_parser("shirokov", parents=[common], help="contracted lifetime of velocity eigenstates")
    p.add_argument("--u-values", type=_floats, default=[0.0, 0.3, 0.6, 0.9])

    p = sub.add_parser("classify", parents=[common], help="classify three hyperplane normals")
    for suffix in ("", "2", "3"):
        p.add_argument(f"--u{suffix}", type=_vec3, help="normal given as a velocity ux,uy,uz")
        p.add_argument(f"--eta{suffix}", type=_vec4, help="normal given as t,x,y,z")
    p.add_argument("--p", type=_vec4)
    p.add_argument("--p2", type=_vec4)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("velocity-pair", parents=[common], help="time dependence of <u'|Pi(t)|u>")
    p.add_argument("--u", type=_vec3, required=True)
    p.add_argument("--u2", type=_vec3, required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("expectations", parents=[common], help="velocity expectations of SLM states")
    p.add_argument("--u", type=_vec3, default=[0.0, 0.0, 0.0], help="velocity fixing eta")
    p.add_argument("--s-values", type=_floats, default=[0.0, 1.0, 3.0])
    p.add_argument("--direction", type=_vec3, default=[1.0, 0.0, 0.0],
                   help="momentum direction in the eta rest frame")
    return parser


_CONFIG_FLAGS = ("kind", "M", "Gamma", "width", "support", "nodes", "table", "alpha", "hbar",
                 "format")


def resolve_config(args) -> RunConfig:
    cfg = RunConfig.from_json(args.config) if args.config else RunConfig()
    overrides = {k: getattr(args, k) for k in _CONFIG_FLAGS if getattr(args, k, None) is not None}
    if args.out is not None:
        overrides["output"] = args.out
    return replace(cfg, **overrides).validated()


def run(args, cfg: RunConfig) -> str:
    cmd = args.command
    if cmd == "survival":
        return cmd_survival(cfg, args.s, args.t_max, args.n_points).render(cfg.format)
    if cmd == "lifetime":
        return cmd_lifetime_table(cfg, args.s_values, args.rel_tol).render(cfg.format)
    if cmd == "shirokov":
        return cmd_shirokov(cfg, args.u_values).render(cfg.format)
    if cmd == "expectations":
        return cmd_expectations(cfg, args.u, args.s_values, args.direction).render(cfg.format)
    if cmd == "classify":
        etas = [_eta_arg(getattr(args, f"u{sfx}"), getattr(args, f"eta{sfx}"))
                for sfx in ("", "2", "3")]
        record = cmd_classify(etas, args.p, args.p2, args.tol)
    else:
        record = cmd_velocity_pair(args.u, args.u2, args.tol)
    if cfg.format == "jsonl":
        return relations.json_record(record)
    return relations.format_record(record)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        text = run(args, cfg)
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (QuantonDecayError, ValueError, OSError) as exc:
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"quanton-decay: error: {type(exc).__name__}: {message}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
