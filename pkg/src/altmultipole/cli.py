"""Command-line front end.

Subcommands: `expand compare` (kernel-route error scan), `bessel table`
(sine-power coefficients), `solve` (one pseudopotential energy), and
`tables` (published-table reproduction).  Exit codes: 0 success, 1
computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .errors import (
    ConfigurationError,
    DomainError,
    ModelDomainError,
    OverlapNotPositiveDefiniteError,
    SingularityError,
    UnsupportedConfigurationError,
)
from .expansion import error_scan
from .helium import (
    CONFIG_KEYS,
    DESK_BASIS,
    CorrectionLevel,
    ModelParams,
    StateLabel,
    excitation_energy_ev,
    load_config,
    reproduce_table,
    total_energy,
)
from .radial import BasisSpec, Geometric, GeometricThenLinear, Linear
from .specfun import SeriesTruncation, bessel_coefficients

_COMPUTE_ERRORS = (
    DomainError,
    SingularityError,
    ConfigurationError,
    ModelDomainError,
    UnsupportedConfigurationError,
    OverlapNotPositiveDefiniteError,
)


@dataclass(frozen=True)
class RunConfig:
    """Parsed command with every option resolved (flags over config file)."""

    command: str
    options: dict


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="altmultipole",
        description="Coulomb-kernel expansion diagnostics and the screened-charge "
        "pseudopotential for two-electron atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--format", choices=["pretty", "csv", "json"], default="pretty")
        p.add_argument("--out", help="write output to this path instead of stdout")

    def add_basis(p):
        p.add_argument("--splines", type=int, help="number of B-splines (default 300)")
        p.add_argument("--order", type=int, help="spline order (default 8)")
        p.add_argument("--box", type=float, help="box radius in bohr (default 100)")
        p.add_argument("--r-first", type=float, dest="r_first",
                       help="first breakpoint of the near-origin grid")
        p.add_argument("--config", help="flat key = value config file")

    p_expand = sub.add_parser("expand", help="kernel expansion diagnostics")
    sub_expand = p_expand.add_subparsers(dest="subcommand", required=True)
    p_cmp = sub_expand.add_parser("compare", help="error scan of every route")
    p_cmp.add_argument("--grid-t", type=_float_list, default=[0.1, 0.3, 0.5, 0.7, 0.9],
                       dest="grid_t", help="comma-separated radius ratios in (0, 1]")
    p_cmp.add_argument("--grid-x", type=_float_list,
                       default=[-0.9, -0.5, 0.0, 0.5, 0.9],
                       dest="grid_x", help="comma-separated cos(theta) values")
    p_cmp.add_argument("--lmax", type=int, default=20)
    p_cmp.add_argument("--smax", type=int, default=20)
    add_output(p_cmp)

    p_bessel = sub.add_parser("bessel", help="sine-power radial series")
    sub_bessel = p_bessel.add_subparsers(dest="subcommand", required=True)
    p_tab = sub_bessel.add_parser("table", help="series coefficients for one order")
    p_tab.add_argument("--l", type=int, required=True)
    p_tab.add_argument("--terms", type=int, required=True)
    add_output(p_tab)

    p_solve = sub.add_parser("solve", help="one pseudopotential energy")
    p_solve.add_argument("--z", type=int, help="nuclear charge 1..6")
    p_solve.add_argument("--state", choices=["1s2", "2s2", "2p2"])
    p_solve.add_argument("--level", choices=["h0", "h1", "h2", "h3", "h4", "h5"])
    p_solve.add_argument("--mode", choices=["diag", "pert"])
    add_basis(p_solve)
    add_output(p_solve)

    p_tables = sub.add_parser("tables", help="reproduce a published table")
    p_tables.add_argument("--id", type=int, choices=[1, 2], required=True)
    p_tables.add_argument("--mode", choices=["diag", "pert"])
    add_basis(p_tables)
    add_output(p_tables)

    return parser


def _merge_config(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> dict:
    """Resolve options: config-file values fill in flags left unset."""
    cfg: dict[str, object] = {}
    if getattr(ns, "config", None):
        try:
            cfg = load_config(ns.config)
        except (ConfigurationError, OSError) as exc:
            parser.error(str(exc))

    def pick(flag: str, key: str, default):
        value = getattr(ns, flag, None)
        if value is not None:
            return value
        if key in cfg:
            return cfg[key]
        return default

    options = dict(vars(ns))
    options.pop("config", None)
    if ns.command in ("solve", "tables"):
        options["z"] = pick("z", "z", 2)
        options["state"] = pick("state", "state", "1s2")
        options["level"] = pick("level", "level", "h0")
        options["mode"] = pick("mode", "mode", "diag")
        options["gamma"] = cfg.get("gamma")
        options["c"] = cfg.get("c")
        options["mass_ratio"] = cfg.get("mass_ratio")
        options["chi"] = cfg.get("chi", True)
        order = pick("order", "basis.order", DESK_BASIS.order)
        count = pick("splines", "basis.count", DESK_BASIS.n_splines)
        box = pick("box", "basis.box", DESK_BASIS.r_box)
        r_first = pick("r_first", "basis.r_first", None)
        scheme_name = cfg.get("basis.scheme", "geometric-then-linear")
        try:
            if scheme_name == "linear":
                scheme = Linear()
            elif scheme_name == "geometric":
                if r_first is None:
                    parser.error("geometric scheme needs basis.r_first")
                scheme = Geometric(r_first=r_first, ratio=2.0)
            elif scheme_name == "geometric-then-linear":
                scheme = GeometricThenLinear(r_first=r_first)
            else:
                parser.error(f"unknown basis.scheme {scheme_name!r}")
            options["basis"] = BasisSpec(
                order=order, n_splines=count, r_box=box, scheme=scheme
            )
        except ConfigurationError as exc:
            parser.error(str(exc))
    return options


def parse(argv: list[str]) -> RunConfig:
    """argv (without the program name) to a validated RunConfig.

    Usage problems terminate with exit status 2 through argparse.
    """
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "solve" or ns.command == "tables":
        options = _merge_config(parser, ns)
        if not 1 <= options["z"] <= 6:
            parser.error("--z must lie in 1..6")
    elif ns.command == "expand":
        options = dict(vars(ns))
        if ns.lmax < 0 or ns.smax < 0 or ns.smax > 200:
            parser.error("--lmax must be >= 0 and --smax in 0..200")
        for t in ns.grid_t:
            if not 0.0 < t <= 1.0:
                parser.error("--grid-t values must lie in (0, 1]")
        for x in ns.grid_x:
            if abs(x) > 1.0:
                parser.error("--grid-x values must lie in [-1, 1]")
    else:  # bessel
        options = dict(vars(ns))
        if ns.l < 0 or ns.terms < 1:
            parser.error("--l must be >= 0 and --terms >= 1")
    return RunConfig(command=ns.command, options=options)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params_from_options(opt: dict) -> ModelParams:
    kwargs = {"z": opt["z"], "chi_enabled": bool(opt.get("chi", True))}
    if opt.get("gamma") is not None:
        kwargs["gamma"] = opt["gamma"]
    if opt.get("c") is not None:
        kwargs["c"] = opt["c"]
    if opt.get("mass_ratio") is not None:
        kwargs["mass_ratio"] = opt["mass_ratio"]
    return ModelParams(**kwargs)


def execute(cfg: RunConfig) -> int:
    """Run a parsed command; returns the exit status."""
    opt = cfg.options
    fmt = opt.get("format", "pretty")
    out = opt.get("out")

    if cfg.command == "expand":
        report = error_scan(
            opt["grid_t"],
            opt["grid_x"],
            [SeriesTruncation(s_max=opt["smax"], l_max=opt["lmax"])],
        )
        if fmt == "csv":
            _emit(report.to_csv(), out)
            if out:
                stem = out.rsplit(".", 1)[0]
                with open(f"{stem}_bessel.csv", "w", newline="") as fh:
                    fh.write(report.bessel_csv())
        elif fmt == "json":
            _emit(report.to_json(), out)
        else:
            worst: dict[str, float] = {}
            for row in report.method_rows:
                worst[row.method] = max(worst.get(row.method, 0.0), row.rel_error)
            lines = ["worst relative error per method over the grid"]
            for method, err in sorted(worst.items()):
                lines.append(f"  {method:<12} {err:.6e}")
            lines.append("series vs projection oracle, worst per order")
            worst_l: dict[int, float] = {}
            for brow in report.bessel_rows:
                worst_l[brow.l] = max(worst_l.get(brow.l, 0.0), brow.abs_error)
            for l, err in sorted(worst_l.items()):
                lines.append(f"  l={l:<3} {err:.6e}")
            lines.append("partial sums only; no limit is claimed for the series")
            _emit("\n".join(lines) + "\n", out)
        return 0

    if cfg.command == "bessel":
        table = bessel_coefficients(opt["l"], opt["terms"])
        if fmt == "csv":
            lines = ["s,power,coefficient,exact"]
            for s, (c, ex) in enumerate(zip(table.coeffs, table.exact)):
                lines.append(f"{s},{table.power(s)},{c:.12g},{ex}")
            _emit("\n".join(lines) + "\n", out)
        elif fmt == "json":
            import json

            _emit(
                json.dumps(
                    {
                        "l": table.l,
                        "terms": [
                            {"s": s, "power": table.power(s), "coefficient": c,
                             "exact": str(ex)}
                            for s, (c, ex) in enumerate(zip(table.coeffs, table.exact))
                        ],
                    },
                    indent=2,
                )
                + "\n",
                out,
            )
        else:
            lines = [f"sine-power coefficients, order l={table.l}"]
            for s, (c, ex) in enumerate(zip(table.coeffs, table.exact)):
                lines.append(f"  sin^{table.power(s)}(2a): {c:.10g}  ({ex})")
            _emit("\n".join(lines) + "\n", out)
        return 0

    if cfg.command == "solve":
        params = _params_from_options(opt)
        state = StateLabel.parse(opt["state"])
        level = CorrectionLevel.parse(opt["level"])
        basis = opt["basis"]
        eb = total_energy(params, state, level, basis, opt["mode"])
        exc_ev = excitation_energy_ev(params, state, level, basis, opt["mode"])
        if fmt == "csv":
            lines = [
                "z,state,level,mode,eps,v0,v1,v2,v3,v4,total,excitation_ev,grid_tag",
                f"{eb.z},{eb.state.label},{eb.level.label},{eb.mode},"
                f"{eb.eps:.10g},{eb.v0:.10g},{eb.v1:.10g},{eb.v2:.10g},"
                f"{eb.v3:.10g},{eb.v4:.10g},{eb.total:.10g},{exc_ev:.10g},"
                f"{eb.grid_tag}",
            ]
            _emit("\n".join(lines) + "\n", out)
        elif fmt == "json":
            import json

            _emit(
                json.dumps(
                    {
                        "z": eb.z,
                        "state": eb.state.label,
                        "level": eb.level.label,
                        "mode": eb.mode,
                        "eps": eb.eps,
                        "v0": eb.v0,
                        "v1": eb.v1,
                        "v2": eb.v2,
                        "v3": eb.v3,
                        "v4": eb.v4,
                        "total": eb.total,
                        "excitation_ev": exc_ev,
                        "grid_tag": eb.grid_tag,
                    },
                    indent=2,
                )
                + "\n",
                out,
            )
        else:
            lines = [
                f"Z={eb.z} state={eb.state.label} level={eb.level.label} mode={eb.mode}",
                f"  single-particle eigenvalue  {eb.eps:.8f} hartree",
                f"  total energy                {eb.total:.6f} hartree",
            ]
            if eb.state != StateLabel(1, 0):
                lines.append(f"  excitation above ground     {exc_ev:.4f} eV")
            lines.append(f"  grid {eb.grid_tag}")
            _emit("\n".join(lines) + "\n", out)
        return 0

    if cfg.command == "tables":
        basis = opt["basis"]
        artifact = reproduce_table(opt["id"], basis, opt["mode"])
        if fmt == "csv":
            _emit(artifact.to_csv(), out)
        elif fmt == "json":
            _emit(artifact.to_json(), out)
        else:
            _emit(artifact.pretty(), out)
        return 0

    raise ConfigurationError(f"unknown command {cfg.command!r}")


def main(argv: list[str] | None = None) -> int:
    cfg = parse(sys.argv[1:] if argv is None else argv)
    try:
        return execute(cfg)
    except _COMPUTE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
