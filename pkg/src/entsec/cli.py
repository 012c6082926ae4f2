"""Command-line entry point: ``entsec <subcommand> ...``.

Exit codes: 0 success, 2 input error, 3 numerical inconsistency,
4 resolution error.
"""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass

import numpy as np

from . import secopt, slocc, states, symgeo, tqft
from .bundle import charts as ch
from .bundle import clutching as cl
from .bundle.invariants import clutching_degree
from .errors import InputError, NumericalInconsistencyError, ResolutionError
from .jsonfmt import dumps, write_atomic

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_RESOLUTION = 0, 2, 3, 4

CHERN_MAPS = {
    "constant": lambda: cl.constant_map(2),
    "hopf": lambda: cl.power_map(1),
    "square": lambda: cl.power_map(2),
    "inverse": lambda: cl.power_map(-1),
    "pullback": lambda: ch.pullback_t4(ch.hopf_bundle()).clutching,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    out: str | None
    seed: int = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entsec", description="Entanglement of sections: classification, geometry and obstructions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser(
        "classify",
        help="SLOCC class of a three-qubit state",
        description="Classify a three-qubit state into one of the six SLOCC classes (A-B-C, A-BC, B-CA, "
        "C-AB, W, GHZ) from one-body ranks and the simple vectors in range(rho_BC). "
        "For example |000>+|111> gives GHZ and |001>+|010>+|100> gives W.",
    )
    c.add_argument("--state", required=True, help='state JSON {"dims":[2,2,2],"re":[...],"im":[...]}')
    c.add_argument("--rtol", type=_positive, default=states.RANK_RTOL, help="relative rank threshold")
    c.add_argument("--disc-tol", type=_positive, default=slocc.DISC_TOL, help="relative discriminant threshold")
    c.add_argument("--out")

    e = sub.add_parser(
        "entropy",
        help="entanglement entropy of a reduced state",
        description="Von Neumann entropy (natural log) of the reduced density matrix on the kept factors, "
        "with the Schmidt coefficients of the same cut. A Bell pair gives ln 2.",
    )
    e.add_argument("--state", required=True)
    e.add_argument("--keep", default="0", help="comma-separated kept factor indices (default 0)")
    e.add_argument("--out")

    s = sub.add_parser(
        "symflow",
        help="retraction flows on symmetric two-qubit states (CSV)",
        description="Follow a symmetric state a|00>+b(|01>+|10>)+c|11> along the flow to maximal "
        "entanglement (f_s(x) = (1+s sqrt x)/(1+s x)) or to the product quadric (g_s(x) = exp(s x)). "
        "Emits CSV rows s,a_re,a_im,b_re,b_im,c_re,c_im,sigma_min,unitarity_defect,E.",
    )
    s.add_argument("--a", type=_complex, required=True)
    s.add_argument("--b", type=_complex, required=True)
    s.add_argument("--c", type=_complex, required=True)
    s.add_argument("--flow", choices=("max", "product"), default="max")
    s.add_argument("--s-max", type=_positive, default=None, help="largest s (default 1e6 for max, 200 for product)")
    s.add_argument("--steps", type=int, default=25, help="points on the geometric s ladder")
    s.add_argument("--out")

    k = sub.add_parser(
        "chern",
        help="degree of a clutching map S^3 -> SU(2)",
        description="Second Chern number of a rank-2 bundle over S^4 as the degree of its clutching map, "
        "(1/24 pi^2) int tr((c^-1 dc)^3) on a Hopf-coordinate grid. The Hopf map gives 1, q -> q^2 gives 2, "
        "a constant map 0; 'pullback' is the Hopf data carried to T^4 through the collapse map.",
    )
    k.add_argument("--map", choices=sorted(CHERN_MAPS), default="hopf")
    k.add_argument("--resolution", type=int, default=48)
    k.add_argument("--out")

    o = sub.add_parser(
        "optimize",
        help="search for low-entanglement sections",
        description="Min-max entanglement search over nonvanishing sections of a charted bundle. "
        "example2_tensor: Hopf (x) conj(Hopf) over S^4; example2p_sym2: sym^2(Hopf), forced to reach "
        "maximal entanglement; example2p_singlet: the singlet section of Lambda^2; example1_line: the "
        "trivializing section of A (x) conj(A) over S^2; t4_pullback_control: the tensor experiment over T^4; "
        "trivial_control: a trivial C^2 (x) C^2 bundle where a product section exists.",
    )
    o.add_argument("--experiment", required=True, choices=secopt.EXPERIMENTS)
    o.add_argument("--resolution", type=int, default=None)
    o.add_argument("--restarts", type=int, default=20)
    o.add_argument("--iterations", type=int, default=5000)
    o.add_argument("--degree", type=int, default=secopt.OptConfig.degree)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--measure", choices=secopt.MEASURES, default="concurrence")
    o.add_argument("--workers", type=int, default=None)
    o.add_argument("--out")

    b = sub.add_parser(
        "borromean",
        help="Borromean-rings state of a rank-2 TQFT",
        description="Build the state (d,1,1,d,1,d,d,2) from the eight fillings of the Borromean rings, its "
        "rho_BC, the quadratic (1-d^2)p^2 + d p + d^2 - 2 for simple vectors and its discriminant; the class "
        "is GHZ for every 0 < d < 1. --sweep classifies d = 0.001 ... 0.999.",
    )
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", type=float)
    g.add_argument("--preset", choices=sorted(tqft.PRESETS))
    b.add_argument("--sweep", action="store_true")
    b.add_argument("--out")
    return p


def _cmd_classify(args) -> str:
    psi = states.read_state(args.state)
    info = slocc.analyze3(psi, args.rtol, args.disc_tol)
    return dumps(info.to_dict())


def _cmd_entropy(args) -> str:
    psi = states.read_state(args.state)
    try:
        keep = tuple(int(x) for x in args.keep.split(","))
    except ValueError as exc:
        raise InputError(f"bad --keep {args.keep!r}") from exc
    rho = states.partial_trace(psi, keep)
    rest = tuple(i for i in range(psi.n_factors) if i not in keep)
    sd = states.schmidt(psi.normalize(), (keep, rest))
    return dumps({"entropy": states.entropy(rho), "keep": list(keep), "schmidt": sd.coeffs})


def _cmd_symflow(args) -> str:
    st = symgeo.SymState.normalized(args.a, args.b, args.c)
    m = symgeo.to_m(st)
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    s_max = args.s_max or (1e6 if args.flow == "max" else 200.0)
    ladder = np.concatenate([[0.0], np.geomspace(1e-3, s_max, args.steps - 1)])
    flow = symgeo.flow_to_max if args.flow == "max" else symgeo.flow_to_product
    buf = io.StringIO()
    buf.write("s,a_re,a_im,b_re,b_im,c_re,c_im,sigma_min,unitarity_defect,E\n")
    for s in ladder:
        f = flow(m, float(s))
        sv = np.linalg.svd(f, compute_uv=False)
        row = [s, f[0, 0].real, f[0, 0].imag, f[0, 1].real, f[0, 1].imag, f[1, 1].real, f[1, 1].imag,
               sv[1], symgeo.unitarity_defect(f), symgeo.entanglement(f)]
        buf.write(",".join(format(float(x), ".17g") for x in row) + "\n")
    return buf.getvalue()


def _cmd_chern(args) -> str:
    if args.resolution < 2:
        raise InputError("--resolution must be at least 2")
    res = clutching_degree(CHERN_MAPS[args.map](), resolution=args.resolution)
    return dumps(res.to_dict())


def _cmd_optimize(args) -> str:
    cfg = secopt.OptConfig(resolution=args.resolution, restarts=args.restarts, iterations=args.iterations,
                           seed=args.seed, degree=args.degree, measure=args.measure, workers=args.workers)
    return dumps(secopt.experiment(args.experiment, cfg).to_dict())


def _cmd_borromean(args) -> str:
    params = tqft.TqftParams.from_preset(args.preset) if args.preset else tqft.TqftParams(args.delta)
    out = tqft.report(params)
    if args.sweep:
        out["sweep"] = tqft.sweep()
    return dumps(out)


_COMMANDS = {
    "classify": _cmd_classify,
    "entropy": _cmd_entropy,
    "symflow": _cmd_symflow,
    "chern": _cmd_chern,
    "optimize": _cmd_optimize,
    "borromean": _cmd_borromean,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.command, args.out, getattr(args, "seed", 0))
        text = _COMMANDS[cfg.command](args)
        if cfg.out:
            write_atomic(cfg.out, text)
        else:
            stdout.write(text)
        return EXIT_OK
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (InputError, OSError) as exc:
        print(f"entsec: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalInconsistencyError as exc:
        print(f"entsec: numerical inconsistency: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ResolutionError as exc:
        print(f"entsec: resolution error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
