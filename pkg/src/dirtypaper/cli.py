"""Command-line surface: capacity sweeps, equilibrium runs, verification.

Subcommands
-----------
capacity      closed-form capacities over a parameter grid, written as CSV
equilibrium   saddle-point search per grid point with a convergence trace CSV
verify        full claim suite plus Monte Carlo consistency checks
sample        raw-sample binary dump of the canonical system

Configuration is accepted both as flags and as a flat key=value file whose
keys mirror the sweep fields exactly (P_U, P_J, sigma2, sigmaS2, game, n,
base, seed, output); flags override the file.  Numeric CSV cells carry 12
significant digits.  Exit codes: 0 success, 2 invalid configuration,
3 verification failure, 4 non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

from .claims import default_claim_suite
from .game import (
    Game,
    NonConvergence,
    capacity_costa,
    capacity_costa_jammer,
    capacity_si_jammer,
    si_utility,
    solve_saddle,
)
from .sampling import nongaussian_probe, plugin_mi, sample_system, write_sample_dump
from .strategies import ChannelParams, dpc_user, iid_gaussian_jammer

EXIT_OK = 0
EXIT_BAD_CONFIG = 2
EXIT_VERIFY_FAILED = 3
EXIT_NO_CONVERGENCE = 4

_GAMES = {"costa": (Game.COSTA,), "si": (Game.SIDE_INFORMATION,),
          "both": (Game.COSTA, Game.SIDE_INFORMATION)}


class InvalidConfig(ValueError):
    pass


def _fmt(x) -> str:
    return format(float(x), ".12g")


def parse_grid(text: str) -> list[float]:
    """Parse a grid: 'start:stop:step' (inclusive stop) or a comma list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, stop, step = parts
            if step <= 0:
                raise InvalidConfig(f"grid step must be > 0 in {text!r}")
            count = int((stop - start) / step + 1e-9)
            if count < 0:
                raise InvalidConfig(f"empty grid {text!r}")
            return [start + i * step for i in range(count + 1)]
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except InvalidConfig:
        raise
    except ValueError:
        raise InvalidConfig(f"cannot parse grid {text!r}") from None


@dataclass
class SweepSpec:
    """Grids over the channel parameters plus run-wide settings."""

    P_U: list = field(default_factory=lambda: [1.0])
    P_J: list = field(default_factory=lambda: [1.0])
    sigma2: list = field(default_factory=lambda: [1.0])
    sigmaS2: list = field(default_factory=lambda: [1.0])
    game: str = "costa"
    n: int = 1
    base: str = "bits"
    seed: int = 42
    output: str = "out.csv"

    def __post_init__(self):
        for name in ("P_U", "P_J", "sigma2", "sigmaS2"):
            grid = getattr(self, name)
            if not grid:
                raise InvalidConfig(f"grid {name} is empty")
        if self.game not in _GAMES:
            raise InvalidConfig(f"game must be costa, si or both, not {self.game!r}")
        if self.base not in ("bits", "nats"):
            raise InvalidConfig(f"base must be bits or nats, not {self.base!r}")
        if self.n < 1:
            raise InvalidConfig("n must be a positive integer")

    def points(self):
        for p_u in self.P_U:
            for p_j in self.P_J:
                for s2 in self.sigma2:
                    for ss2 in self.sigmaS2:
                        yield p_u, p_j, s2, ss2

    def channel(self, point) -> ChannelParams:
        p_u, p_j, s2, ss2 = point
        try:
            return ChannelParams(
                n=self.n, p_u=p_u, p_j=p_j, sigma2=s2, sigma_s2=ss2, base=self.base
            )
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None


_GRID_KEYS = ("P_U", "P_J", "sigma2", "sigmaS2")


def load_config_file(path: str) -> dict:
    """Flat key=value text; keys must match the sweep fields exactly."""
    known = {f.name for f in fields(SweepSpec)}
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise InvalidConfig(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_spec(args) -> SweepSpec:
    values: dict = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for key in _GRID_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    for key in ("game", "n", "base", "seed", "output"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    try:
        for key in _GRID_KEYS:
            if key in values and isinstance(values[key], str):
                values[key] = parse_grid(values[key])
        if "n" in values:
            values["n"] = int(values["n"])
        if "seed" in values:
            values["seed"] = int(values["seed"])
    except ValueError:
        raise InvalidConfig("n and seed must be integers") from None
    return SweepSpec(**values)


def _pool():
    return ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1))


def _write_report(blocks: list[dict], path: str | None) -> None:
    text = "\n\n".join(
        "\n".join(f"{k}={v}" for k, v in block.items()) for block in blocks
    )
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_capacity(args) -> int:
    spec = build_spec(args)

    def one(point):
        ch = spec.channel(point)
        return [
            _fmt(point[0]), _fmt(point[1]), _fmt(point[2]), _fmt(point[3]),
            _fmt(capacity_costa_jammer(ch)),
            _fmt(capacity_si_jammer(ch)),
            _fmt(capacity_costa(ch)),
        ]

    with _pool() as pool:
        rows = list(pool.map(one, spec.points()))
    with open(spec.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["P_U", "P_J", "sigma2", "sigmaS2",
             "C_costa_jammer", "C_si_jammer", "C_costa_nojam"]
        )
        writer.writerows(rows)
    return EXIT_OK


def cmd_equilibrium(args) -> int:
    spec = build_spec(args)
    games = _GAMES[spec.game]

    def one(task):
        idx, point, game = task
        ch = spec.channel(point)
        try:
            report = solve_saddle(
                ch, game, max_rounds=args.max_rounds, tol=args.tol,
                seed=(spec.seed, idx),
            )
            return point, game, report, None
        except NonConvergence as exc:
            return point, game, None, exc

    tasks = [
        (i, point, game)
        for i, point in enumerate(spec.points())
        for game in games
    ]
    with _pool() as pool:
        results = list(pool.map(one, tasks))

    trace_header = ["P_U", "P_J", "sigma2", "sigmaS2", "game", "round",
                    "utility_after_user_BR", "utility_after_jammer_BR",
                    "beta", "alpha", "gap"]
    blocks = []
    any_failed = False
    with open(spec.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(trace_header)
        for point, game, report, failure in results:
            trace = report.trace if report is not None else (failure.trace or [])
            for row in trace:
                writer.writerow(
                    [_fmt(v) for v in point]
                    + [game.value, row["round"],
                       _fmt(row["utility_after_user_br"]),
                       _fmt(row["utility_after_jammer_br"]),
                       _fmt(row["beta"]), _fmt(row["alpha"]), _fmt(row["gap"])]
                )
            ch = spec.channel(point)
            closed = capacity_costa_jammer(ch)
            block = {
                "P_U": _fmt(point[0]), "P_J": _fmt(point[1]),
                "sigma2": _fmt(point[2]), "sigmaS2": _fmt(point[3]),
                "game": game.value,
                "closed_form": _fmt(closed),
                "converged": str(report is not None).lower(),
            }
            if report is not None:
                block.update(
                    value=_fmt(report.value),
                    abs_error=_fmt(abs(report.value - closed)),
                    duality_gap=_fmt(report.duality_gap),
                    rounds=str(report.iterations),
                )
            else:
                any_failed = True
                block["error"] = str(failure)
            blocks.append(block)
    _write_report(blocks, args.report)
    return EXIT_NO_CONVERGENCE if any_failed else EXIT_OK


def _verify_mc_blocks(ch: ChannelParams, seed: int, scale: float) -> list[dict]:
    count = max(5000, int(round(100_000 * scale)))
    user, jammer = dpc_user(ch), iid_gaussian_jammer(ch)
    exact = si_utility(ch, user, jammer)
    blocks = []
    for run, offset in enumerate((0, 1, 2)):
        batch = sample_system(ch, user, jammer, count, seed + offset)
        est = plugin_mi(batch, "X", "Y", "S", ch.base)
        err = abs(est.estimate / ch.n - exact)
        blocks.append(
            {
                "check": f"plugin_mi_consistency_{run}",
                "draws": str(count),
                "estimate": _fmt(est.estimate / ch.n),
                "exact": _fmt(exact),
                "standard_error": _fmt(est.standard_error / ch.n),
                "worst_slack": _fmt(3.0 * est.standard_error / ch.n - err),
                "passed": str(err <= 3.0 * est.standard_error / ch.n).lower(),
            }
        )
    for shape in ("gaussian", "uniform", "two-point"):
        probe = nongaussian_probe(ch, user, shape, count, seed + 17)
        blocks.append(
            {
                "check": f"nongaussian_probe_{shape}",
                "estimate": _fmt(probe.estimate),
                "gaussian_utility": _fmt(probe.gaussian_utility),
                "standard_error": _fmt(probe.standard_error),
                "worst_slack": _fmt(probe.margin + 3.0 * probe.standard_error),
                "passed": str(probe.passed).lower(),
            }
        )
    return blocks


def cmd_verify(args) -> int:
    fault = 0.1 if args.inject_fault else 0.0
    reports = default_claim_suite(
        seed=args.seed, trial_scale=args.trial_scale, alpha_fault=fault
    )
    blocks = [
        {
            "claim": rep.claim_id,
            "trials": str(rep.trials),
            "worst_slack": _fmt(rep.worst_slack),
            "tolerance": _fmt(rep.tolerance),
            "passed": str(rep.passed).lower(),
            **(
                {"counterexample": repr(rep.counterexample)}
                if rep.counterexample is not None
                else {}
            ),
        }
        for rep in reports
    ]
    blocks += _verify_mc_blocks(ChannelParams(), args.seed, args.trial_scale)
    ok = all(block["passed"] == "true" for block in blocks)
    blocks.append({"check": "overall", "passed": str(ok).lower()})
    _write_report(blocks, args.report)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_sample(args) -> int:
    spec = build_spec(args)
    point = next(iter(spec.points()))
    ch = spec.channel(point)
    batch = sample_system(
        ch, dpc_user(ch), iid_gaussian_jammer(ch), args.N, spec.seed
    )
    write_sample_dump(batch, spec.output, base=spec.base)
    return EXIT_OK


def _add_spec_flags(sub, output_default: str):
    sub.add_argument("--config", help="flat key=value config file")
    for key in _GRID_KEYS:
        sub.add_argument(f"--{key}", help="grid: start:stop:step or v1,v2,...")
    sub.add_argument("--game", choices=sorted(_GAMES))
    sub.add_argument("--n", type=int)
    sub.add_argument("--base", choices=["bits", "nats"])
    sub.add_argument("--seed", type=int)
    sub.add_argument("--output", default=output_default)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dirtypaper",
        description="capacities, saddle points and claim verification for "
        "state-channel jamming games",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    cap = subs.add_parser("capacity", help="closed-form capacity sweep to CSV")
    _add_spec_flags(cap, "capacity.csv")
    cap.set_defaults(func=cmd_capacity)

    eq = subs.add_parser("equilibrium", help="saddle-point runs with trace CSV")
    _add_spec_flags(eq, "equilibrium.csv")
    eq.add_argument("--tol", type=float, default=1e-6)
    eq.add_argument("--max-rounds", type=int, default=32)
    eq.add_argument("--report", help="write the key=value report here instead of stdout")
    eq.set_defaults(func=cmd_equilibrium)

    ver = subs.add_parser("verify", help="run the claim suite and Monte Carlo checks")
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--trial-scale", type=float, default=1.0)
    ver.add_argument("--report", help="write the key=value report here instead of stdout")
    ver.add_argument(
        "--inject-fault",
        action="store_true",
        help="test hook: shift the canonical coefficient so the suite must fail",
    )
    ver.set_defaults(func=cmd_verify)

    samp = subs.add_parser("sample", help="dump raw draws of the canonical system")
    _add_spec_flags(samp, "samples.bin")
    samp.add_argument("--N", type=int, default=100_000)
    samp.set_defaults(func=cmd_sample)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidConfig as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except NonConvergence as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
