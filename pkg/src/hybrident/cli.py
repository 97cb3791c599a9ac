"""Command-line sweeps and one-shot analyses.

Every sweep writes a table: a header of fixed column names, then one row per
grid point in row-major order over the axes as listed in the command's help.
Numbers carry 12 significant digits. Exit codes: 0 success, 2 validation
failure (bad input data or an oracle deviation), 64 usage error.
"""

import argparse
import csv
import io
import json
import os
import sys

import jsonschema
import numpy as np

from . import channels, fock, measures, states, witness
from .errors import HybridEntError, TrulyHybridInput
from .gram import DEFAULT_RANK_TOL

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_USAGE = 64
ORACLE_TOL = 1e-6
DEFAULT_CUTOFF = 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument helpers --------------------------------------------------------

def parse_range(text):
    try:
        start, stop = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop, got {text!r}") from None
    return start, stop


def parse_floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def parse_complexes(text):
    try:
        return [complex(v.strip().replace(" ", "")) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers, got {text!r}") from None


def _axis(rng, steps, name, lo=-np.inf, hi=np.inf, open_lo=False, open_hi=False):
    start, stop = rng
    for v in (start, stop):
        if v < lo or v > hi or (open_lo and v == lo) or (open_hi and v == hi):
            left = "(" if open_lo else "["
            right = ")" if open_hi else "]"
            raise UsageError(f"--{name} range {start}:{stop} leaves {left}{lo}, {hi}{right}")
    return np.linspace(start, stop, steps)


def _default_cutoff():
    env = os.environ.get("HYBRIDENT_CUTOFF")
    if env is None:
        return DEFAULT_CUTOFF
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"HYBRIDENT_CUTOFF must be an integer, got {env!r}") from None


# -- output ------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v) + 0.0, ".12g")


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, str):
        return v
    v = float(format(float(v) + 0.0, ".12g"))
    return v if np.isfinite(v) else str(v)


def render(table, fmt, meta=None):
    columns, rows = table
    if fmt == "json":
        doc = {"columns": list(columns), "rows": [[_json_value(v) for v in r] for r in rows]}
        if meta:
            doc["meta"] = meta
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(v) for v in r])
    return buf.getvalue()


# -- commands ----------------------------------------------------------------

def cmd_gs(args):
    with open(args.state) as fh:
        text = fh.read()
    state = states.state_from_json(text)
    if not state.components:
        raise TrulyHybridInput("state has no finite decomposition to orthonormalize")
    refs, gram, emb = states.embedding_of(state, args.rank_tol)
    rows = [("rank", emb.rank, len(refs), emb.tolerance_used, 0.0)]
    for name, mat in (("gram", gram.entries), ("embedding", emb.coefficients)):
        for i in range(mat.shape[0]):
            for j in range(mat.shape[1]):
                rows.append((name, i, j, mat[i, j].real, mat[i, j].imag))
    return ("matrix", "i", "j", "re", "im"), rows


def cmd_entropy_sweep(args):
    rows = []
    for a in _axis(args.alpha, args.steps, "alpha", lo=0.0):
        vec, dims = measures.embed_pure(states.qutrit_qumode_state(a))
        rows.append((a, measures.entropy_of_entanglement(vec, dims)))
    return ("alpha", "ebits"), rows


def cmd_logneg_grid(args):
    rows = []
    for p in _axis(args.p, args.steps, "p", 0.0, 1.0):
        for a in _axis(args.alpha, args.steps, "alpha", lo=0.0):
            rho = measures.embed_state(states.mixed_qubit_qumode_state(p, a))
            rows.append((p, a, measures.log_negativity(rho)))
    return ("p", "alpha", "E_N"), rows


def cmd_thermal_witness(args):
    alphas = _axis(args.alpha, args.steps, "alpha", lo=0.0)
    if args.surface:
        rows = []
        for a in alphas:
            for eta in _axis(args.eta_range, args.steps, "eta-range", 0.0, 1.0, open_hi=True):
                rows.append((a, eta, witness.witness_threshold(a, eta)))
        return ("alpha", "eta", "n_th_threshold"), rows
    nths = _axis(args.n_th, args.steps, "n-th", lo=0.0)
    if args.regions is not None:
        etas = args.regions
        for eta in etas:
            if not 0.0 <= eta <= 1.0:
                raise UsageError(f"--regions value {eta} outside [0, 1]")
        rows = []
        for eta in etas:
            for a in alphas:
                for n in nths:
                    r = witness.s_closed_thermal(channels.ChannelParams(a, eta, n))
                    rows.append((eta, a, n, r.s_value, r.detected))
        return ("eta", "alpha", "n_th", "s", "detected"), rows
    if not 0.0 <= args.eta <= 1.0:
        raise UsageError(f"--eta {args.eta} outside [0, 1]")
    rows = []
    for a in alphas:
        for n in nths:
            r = witness.s_closed_thermal(channels.ChannelParams(a, args.eta, n))
            rows.append((a, n, r.s_value, r.detected))
    return ("alpha", "n_th", "s", "detected"), rows


def cmd_thermal_concurrence(args):
    rows = []
    for a in _axis(args.alpha, args.steps, "alpha", lo=0.0):
        for eta in _axis(args.eta, args.steps, "eta", 0.0, 1.0):
            rows.append((a, eta, measures.concurrence(channels.zero_temp_output(a, eta))))
    return ("alpha", "eta", "C"), rows


def cmd_geometric_witness(args):
    rows = []
    for x in _axis(args.x, args.steps, "x", 0.0, 1.0, open_lo=True, open_hi=True):
        for a in _axis(args.alpha, args.steps, "alpha", lo=0.0):
            r = witness.s_prime_geometric(x, a)
            rows.append((x, a, r.s_value, r.detected))
    return ("x", "alpha", "s_prime", "detected"), rows


def cmd_tangle_grid(args):
    rows = []
    for qf in _axis(args.q_phi, args.steps, "q-phi", 0.0, 1.0):
        for qs in _axis(args.q_psi, args.steps, "q-psi", 0.0, 1.0):
            t = measures.tripartite_tangle(qf, qs)
            rows.append((qf, qs, t.tau_res, t.c2_ab, t.c2_ac, t.c2_total))
    return ("Q_phi", "Q_psi", "tau_res", "C2_AB", "C2_AC", "C2_total"), rows


def _oracle_points(args):
    for v in args.etas:
        if not 0.0 <= v <= 1.0:
            raise UsageError(f"--etas value {v} outside [0, 1]")
    if any(v < 0 for v in args.n_ths) or any(v < 0 for v in args.alphas):
        raise UsageError("--alphas and --n-ths must be nonnegative")
    points = [(a, e, n) for a in args.alphas for e in args.etas for n in args.n_ths]
    if args.random_points:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.random_points):
            points.append((rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.4)))
    return points


def cmd_oracle_compare(args):
    space = fock.TruncatedFockSpace(args.cutoff)
    rows = []
    worst = 0.0
    for a, e, n in _oracle_points(args):
        params = channels.ChannelParams(a, e, n)
        s_num = witness.s_oracle_thermal(params, space, args.buffer).s_value
        s_cf = witness.s_closed_thermal(params).s_value
        dev = abs(s_num - s_cf)
        worst = max(worst, dev)
        rows.append((a, e, n, s_num, s_cf, dev))
    args.failed = worst > ORACLE_TOL
    return ("alpha", "eta", "n_th", "s_oracle", "s_closed", "deviation"), rows


def cmd_wigner(args):
    if args.ket is not None:
        state = np.asarray(args.ket, dtype=complex)
        norm = np.linalg.norm(state)
        if norm == 0:
            raise UsageError("--ket must not be the zero vector")
        state = state / norm
    else:
        diag = np.asarray(args.diag, dtype=float)
        if np.any(diag < 0) or diag.sum() <= 0:
            raise UsageError("--diag entries must be nonnegative with positive sum")
        state = np.diag(diag / diag.sum()).astype(complex)
    rows = []
    for x in _axis(args.x, args.steps, "x"):
        for p in _axis(args.p, args.steps, "p"):
            rows.append((x, p, float(fock.wigner(state, x, p))))
    return ("x", "p", "W"), rows


# -- parser ------------------------------------------------------------------

def _common(sub, steps=21):
    sub.add_argument("--out", help="write output here instead of stdout")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--steps", type=int, default=steps, help="grid points per swept axis (>= 2)")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--cutoff", type=int, default=None,
                     help=f"Fock cutoff (default: $HYBRIDENT_CUTOFF or {DEFAULT_CUTOFF})")
    sub.add_argument("--buffer", type=int, default=fock.DEFAULT_BUFFER)


def build_parser():
    parser = _Parser(prog="hybrident", description="Qudit-qumode hybrid entanglement toolkit.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = subs.add_parser("gs", help="Gram matrix, rank and inverse Gram-Schmidt rows of a state file")
    s.add_argument("state", help="hybrid state JSON file")
    s.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    _common(s)
    s.set_defaults(func=cmd_gs)

    s = subs.add_parser("entropy-sweep", help="entropy of the qutrit-qumode state vs alpha")
    s.add_argument("--alpha", type=parse_range, default=(0.0, 3.0))
    _common(s, steps=61)
    s.set_defaults(func=cmd_entropy_sweep)

    s = subs.add_parser("logneg-grid", help="log negativity of the mixed qubit-qumode state (axes p, alpha)")
    s.add_argument("--p", type=parse_range, default=(0.0, 1.0))
    s.add_argument("--alpha", type=parse_range, default=(0.0, 3.0))
    _common(s)
    s.set_defaults(func=cmd_logneg_grid)

    s = subs.add_parser("thermal-witness", help="determinant witness for the thermal channel (axes alpha, n_th)")
    s.add_argument("--alpha", type=parse_range, default=(0.0, 1.5))
    s.add_argument("--n-th", type=parse_range, default=(0.0, 0.5))
    s.add_argument("--eta", type=float, default=2 / 3)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--surface", action="store_true",
                      help="emit the detection threshold over (alpha, eta) instead")
    mode.add_argument("--regions", type=parse_floats, default=None,
                      help="comma-separated transmissivities; axes eta, alpha, n_th")
    s.add_argument("--eta-range", type=parse_range, default=(0.0, 0.95),
                   help="eta axis for --surface")
    _common(s)
    s.set_defaults(func=cmd_thermal_witness)

    s = subs.add_parser("thermal-concurrence", help="concurrence without thermal photons (axes alpha, eta)")
    s.add_argument("--alpha", type=parse_range, default=(0.0, 2.0))
    s.add_argument("--eta", type=parse_range, default=(0.0, 1.0))
    _common(s)
    s.set_defaults(func=cmd_thermal_concurrence)

    s = subs.add_parser("geometric-witness", help="bound s' for the geometric mixture (axes x, alpha)")
    s.add_argument("--x", type=parse_range, default=(0.02, 0.9))
    s.add_argument("--alpha", type=parse_range, default=(0.0, 2.0))
    _common(s)
    s.set_defaults(func=cmd_geometric_witness)

    s = subs.add_parser("tangle-grid", help="tripartite tangle over overlap magnitudes (axes Q_phi, Q_psi)")
    s.add_argument("--q-phi", type=parse_range, default=(0.0, 1.0))
    s.add_argument("--q-psi", type=parse_range, default=(0.0, 1.0))
    _common(s)
    s.set_defaults(func=cmd_tangle_grid)

    s = subs.add_parser("oracle-compare", help="dilation oracle vs closed-form determinant")
    s.add_argument("--alphas", type=parse_floats, default=[0.2, 0.44, 0.8])
    s.add_argument("--etas", type=parse_floats, default=[1 / 3, 2 / 3])
    s.add_argument("--n-ths", type=parse_floats, default=[0.0, 0.1, 0.3])
    s.add_argument("--random-points", type=int, default=0,
                   help="extra points drawn with --seed")
    _common(s)
    s.set_defaults(func=cmd_oracle_compare)

    s = subs.add_parser("wigner", help="Wigner function of a finite Fock state (axes x, p)")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--ket", type=parse_complexes, default=None, help="Fock amplitudes, e.g. 1,0,1j")
    src.add_argument("--diag", type=parse_floats, default=[1.0], help="Fock populations of a diagonal state")
    s.add_argument("--x", type=parse_range, default=(-3.0, 3.0))
    s.add_argument("--p", type=parse_range, default=(-3.0, 3.0))
    _common(s)
    s.set_defaults(func=cmd_wigner)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.failed = False
    try:
        if args.steps < 2:
            raise UsageError("--steps must be >= 2")
        if args.cutoff is None:
            args.cutoff = _default_cutoff()
        if args.cutoff < 2 or args.buffer < 0:
            raise UsageError("--cutoff must be >= 2 and --buffer >= 0")
        table = args.func(args)
    except UsageError as exc:
        print(f"hybrident {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"hybrident {args.command}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"hybrident {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except jsonschema.ValidationError as exc:
        print(f"hybrident {args.command}: schema violation: {exc.message}", file=sys.stderr)
        return EXIT_VALIDATION
    except (HybridEntError, ValueError) as exc:
        print(f"hybrident {args.command}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    meta = {"command": args.command, "seed": args.seed, "cutoff": args.cutoff, "buffer": args.buffer}
    text = render(table, args.format, meta)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.failed:
        print(f"hybrident {args.command}: deviation above {ORACLE_TOL:g}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
