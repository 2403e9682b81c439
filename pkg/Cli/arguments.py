import argparse

from Errors import SpecError
from Lattice_type.Types import Boundary, ExtrapolationForm
from Options.configure import load_config


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default="", help="flat 'key = value' file; flags win on conflict")
    parser.add_argument("--output", default="", help="output path (CSV); companions share its stem")
    parser.add_argument("--cache-dir", default="", help="directory for cached ground-state vectors")
    parser.add_argument("--threads", type=int, default=None, help="parallel sweep points (default: all cores)")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--log-file", default="")
    parser.add_argument("--tol", type=float, default=None, help="residual tolerance (default 1e-10 ||H||_1)")
    parser.add_argument("--seed", type=int, default=1234)
    parser.add_argument("--max-iterations", type=int, default=5000)
    parser.add_argument("--basis-cap", type=int, default=64)


def _space(parser: argparse.ArgumentParser, degree: bool = True, extent: bool = True) -> None:
    parser.add_argument("--dim", type=int, required=True, choices=(1, 2, 3))
    if extent:
        parser.add_argument("--extent", type=int, required=True)
    if degree:
        parser.add_argument("--degree", type=int, default=1)
        parser.add_argument("--potential", type=float, default=0.0, help="on-site attraction g in units of t")
    parser.add_argument("--boundary", default=Boundary.PERIODIC, choices=Boundary.values())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singular-lattice",
                                     description="Bound states at lattice singularities and their equivalent potentials.")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="lowest eigenpairs of one space")
    _common(solve)
    _space(solve)
    solve.add_argument("--k", type=int, default=1)
    solve.add_argument("--reduce-sheets", action="store_true", help="solve in the sheet-symmetric sector (k=1)")
    solve.add_argument("--wavefunction", default="", help="write the ground state as CSV")
    solve.add_argument("--dump-graph", default="", help="write the site graph as CSV")

    analytic = commands.add_parser("analytic", help="closed-form D=1 bound states")
    _common(analytic)
    group = analytic.add_mutually_exclusive_group(required=True)
    group.add_argument("--degree", type=int, nargs="+")
    group.add_argument("--potential-tilde", type=float, nargs="+", help="g~ = g / 2t")

    profile = commands.add_parser("profile", help="radial profile, Bessel fit and energy decomposition")
    _common(profile)
    _space(profile)

    sweep_m = commands.add_parser("sweep-m", help="sweep the singularity degree")
    _common(sweep_m)
    _space(sweep_m, degree=False)
    sweep_m.add_argument("--degrees", type=int, nargs="+", required=True)

    sweep_g = commands.add_parser("sweep-g", help="sweep the on-site potential")
    _common(sweep_g)
    _space(sweep_g, degree=False)
    sweep_g.add_argument("--potentials", type=float, nargs="+", required=True)
    sweep_g.add_argument("--cooper", action="store_true", help="also fit E_bind = A exp(-B/g)")

    extrapolate = commands.add_parser("extrapolate", help="1/L extrapolation and bound/delocalized classification")
    _common(extrapolate)
    _space(extrapolate, extent=False)
    extrapolate.add_argument("--extents", type=int, nargs="+", default=None)
    extrapolate.add_argument("--form", default=None, choices=ExtrapolationForm.values(),
                             help="one fit form for both observables")
    _bound(extrapolate)

    equivalence = commands.add_parser("equivalence", help="equivalent potential g_M for each degree")
    _common(equivalence)
    _space(equivalence, degree=False)
    equivalence.add_argument("--degrees", type=int, nargs="+", required=True)
    equivalence.add_argument("--tol-g", type=float, default=1e-4)

    critical = commands.add_parser("critical", help="bracket the critical 3D potential")
    _common(critical)
    critical.add_argument("--dim", type=int, default=3, choices=(3,))
    critical.add_argument("--extents", type=int, nargs="+", default=None)
    critical.add_argument("--tol-g", type=float, default=0.05)
    critical.add_argument("--g-low", type=float, default=0.0)
    critical.add_argument("--g-high", type=float, default=12.0)
    critical.add_argument("--form", default=None, choices=ExtrapolationForm.values(),
                          help="one fit form for both observables")
    _bound(critical)

    collapse = commands.add_parser("collapse", help="compare singularity and potential (gamma, E_bind) curves")
    _common(collapse)
    _space(collapse, degree=False)
    collapse.add_argument("--degrees", type=int, nargs="+", required=True)
    collapse.add_argument("--potentials", type=float, nargs="+", required=True)
    return parser


def _bound(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps-energy", type=float, default=1e-3, help="binding threshold in units of t")
    parser.add_argument("--eps-radius", type=float, default=0.02, help="r_avg/L threshold")


def config_tokens(subparser: argparse.ArgumentParser, values: dict[str, str]) -> list[str]:
    """Turn config entries into flag tokens for ``subparser``; they are placed before the real flags."""
    actions = {action.dest: action for action in subparser._actions if action.option_strings}
    tokens: list[str] = []
    for key, value in values.items():
        action = actions.get(key)
        if action is None or key == "config":
            raise SpecError(f"unknown config key {key!r} for this command")
        flag = action.option_strings[-1]
        if action.nargs == 0:
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(flag)
            continue
        parts = value.replace(",", " ").split()
        tokens.append(flag)
        tokens.extend(parts)
    return tokens


def parse(argv: list[str]) -> argparse.Namespace:
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default="")
    known, _ = pre.parse_known_args(argv)
    commands = parser._subparsers._group_actions[0].choices
    if not known.config or not argv or argv[0] not in commands:
        return parser.parse_args(argv)
    tokens = config_tokens(commands[argv[0]], load_config(known.config))
    return parser.parse_args([argv[0], *tokens, *argv[1:]])
