"""Command-line front end.

Input files are JSON:

  graph     {"vertices": k, "edges": [[i, j], ...]}   with 1-based pairs
  config    {"dim": n, "points": [[...], ...]}        one row per point; each
            entry is a number or an exact rational written "a/b"
  subspace  {"basis": [[[...], ...], ...]}            each basis motion is an
            n x k matrix given row-major

With --format jsonl every command prints one JSON object per line, the
first being a manifest of the run; output depends only on the inputs and
the seed, never on timing.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .admissibility import (check_admissibility, classify_admissible,
                            construct_admissible_family,
                            proportional_pair_space, single_vertex_space)
from .applications import conic_probe_graphs, edge_conic_space, skew_matrix_space
from .errors import (BadSupportError, DegenerateConfigError,
                     HypothesisViolatedError, NotIsostaticError,
                     OnAffineSpanError, ParallelSpanError, ParseError,
                     SingularMatrixError)
from .linalg import frac
from .motions import MotionSpace, PointConfiguration
from .rigidity import (Framework, Graph, analyze, henneberg_extend,
                       implied_pairs, is_generically_rigid, is_implied_edge)
from .sampling import random_config, random_general_config, subrng
from .verify import CHECK_NAMES, run_battery

EXIT_TABLE = """\
exit codes:
  0  success, or the reported property holds
  1  the reported property is false
  2  usage error (flags, sizes, extension support)
  3  an input file or builtin token failed to parse
  4  the input is degenerate for the requested computation
"""

DEGENERATE_ERRORS = (DegenerateConfigError, HypothesisViolatedError,
                     NotIsostaticError, OnAffineSpanError, ParallelSpanError,
                     SingularMatrixError)


@dataclass
class Manifest:
    command: str
    inputs: list
    seed: int
    samples: int | None
    backend: str
    tolerance: float | None


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in seq]
    return value


class Output:
    """Mutually exclusive text / line-delimited JSON channels."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def line(self, text: str) -> None:
        if self.fmt == "text":
            print(text)

    def record(self, _label: str, **fields) -> None:
        if self.fmt == "jsonl":
            payload = {"record": _label}
            payload.update(fields)
            print(json.dumps(_jsonable(payload), sort_keys=True))


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _is_index(value) -> bool:
    return type(value) is int


def load_graph(path: str) -> Graph:
    data = _load_json(path)
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    _expect(_is_index(data.get("vertices")), f"{path}: field 'vertices' must be an integer")
    edges = data.get("edges")
    _expect(isinstance(edges, list), f"{path}: field 'edges' must be a list")
    for pos, pair in enumerate(edges):
        _expect(isinstance(pair, list) and len(pair) == 2
                and all(_is_index(v) for v in pair),
                f"{path}: edges[{pos}] must be a pair of integers")
    try:
        return Graph.from_edges(data["vertices"], [tuple(e) for e in edges])
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_scalar(value, exact: bool, where: str):
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number or 'a/b' string")
    if isinstance(value, str):
        try:
            out = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: bad rational {value!r}") from exc
        return out if exact else float(out)
    if isinstance(value, int):
        return Fraction(value) if exact else float(value)
    if isinstance(value, float):
        return frac(value) if exact else value
    raise ParseError(f"{where}: expected a number or 'a/b' string")


def load_config(path: str, exact: bool) -> PointConfiguration:
    data = _load_json(path)
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    dim = data.get("dim")
    _expect(_is_index(dim) and dim >= 1, f"{path}: field 'dim' must be a positive integer")
    points = data.get("points")
    _expect(isinstance(points, list) and points, f"{path}: field 'points' must be a non-empty list")
    mat = np.empty((dim, len(points)), dtype=object if exact else float)
    for j, row in enumerate(points):
        _expect(isinstance(row, list) and len(row) == dim,
                f"{path}: points[{j}] must be a list of {dim} coordinates")
        for i, value in enumerate(row):
            mat[i, j] = _parse_scalar(value, exact, f"{path}: points[{j}][{i}]")
    return PointConfiguration(mat)


def load_subspace(path: str, p: PointConfiguration, exact: bool,
                  tol: float | None) -> MotionSpace:
    data = _load_json(path)
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    basis = data.get("basis")
    _expect(isinstance(basis, list) and basis, f"{path}: field 'basis' must be a non-empty list")
    motions = []
    for b, rows in enumerate(basis):
        _expect(isinstance(rows, list) and len(rows) == p.dim,
                f"{path}: basis[{b}] must have {p.dim} rows")
        u = np.empty((p.dim, p.count), dtype=object if exact else float)
        for i, row in enumerate(rows):
            _expect(isinstance(row, list) and len(row) == p.count,
                    f"{path}: basis[{b}][{i}] must have {p.count} entries")
            for j, value in enumerate(row):
                u[i, j] = _parse_scalar(value, exact, f"{path}: basis[{b}][{i}][{j}]")
        motions.append(u)
    return MotionSpace.from_motions(p, motions, tol)


def write_graph(path: str, g: Graph) -> None:
    payload = {"vertices": g.vertex_count,
               "edges": [list(e) for e in g.sorted_edges()]}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")


def builtin_space(token: str, p: PointConfiguration, seed: int):
    """Builtin subspace tokens: example1, example2:K, constructed:SEED."""
    if token == "example1":
        return single_vertex_space(p)
    if token.startswith("example2:"):
        text = token.split(":", 1)[1]
        try:
            ratio = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"builtin {token!r}: bad ratio {text!r}") from exc
        return proportional_pair_space(p, ratio)
    if token.startswith("constructed:"):
        text = token.split(":", 1)[1]
        try:
            family_seed = int(text)
        except ValueError as exc:
            raise ParseError(f"builtin {token!r}: bad seed {text!r}") from exc
        return construct_admissible_family(p, trials=1, seed=family_seed)[0]
    raise ParseError(f"unknown builtin subspace {token!r}; use example1, "
                     "example2:K, or constructed:SEED")


def _manifest(args, inputs: list) -> dict:
    return asdict(Manifest(command=args.command, inputs=inputs, seed=args.seed,
                           samples=args.samples, backend=args.backend,
                           tolerance=args.tol))


def cmd_analyze(args, out: Output) -> int:
    g = load_graph(args.graph)
    exact = args.backend == "exact"
    inputs = [args.graph]
    if args.config:
        p = load_config(args.config, exact)
        inputs.append(args.config)
    else:
        p = random_config(args.dim, g.vertex_count,
                          subrng(args.seed, "cli-analyze", 0), exact=exact)
    report = analyze(Framework(g, p), args.tol)
    out.record("manifest", **_manifest(args, inputs))
    out.record("analysis", vertices=g.vertex_count, edges=g.edge_count,
               dim=p.dim, flex_dim=report.flex_dim,
               trivial_dim=report.trivial_dim, rigid=report.is_rigid,
               isostatic=report.is_isostatic)
    out.line(f"vertices: {g.vertex_count}")
    out.line(f"edges: {g.edge_count}")
    out.line(f"flex_dim: {report.flex_dim}")
    out.line(f"trivial_dim: {report.trivial_dim}")
    out.line(f"rigid: {_bool_text(report.is_rigid)}")
    out.line(f"isostatic: {_bool_text(report.is_isostatic)}")
    return 0 if report.is_rigid else 1


def _parse_edge_token(token: str) -> tuple[int, int]:
    parts = token.split(",")
    if len(parts) != 2:
        raise ValueError(f"edge {token!r} must look like 'i,j'")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"edge {token!r} must contain integers") from exc


def cmd_henneberg(args, out: Output) -> int:
    g = load_graph(args.graph)
    removed = [_parse_edge_token(t) for t in args.remove]
    extension = henneberg_extend(g, args.support, removed, args.dim)
    rigid = is_generically_rigid(extension, args.dim, args.seed)
    if args.output:
        write_graph(args.output, extension)
    out.record("manifest", **_manifest(args, [args.graph]))
    out.record("extension", vertices=extension.vertex_count,
               edges=[list(e) for e in extension.sorted_edges()],
               output=args.output, rigid=rigid)
    out.line(f"vertices: {extension.vertex_count}")
    out.line(f"edges: {extension.edge_count}")
    if args.output:
        out.line(f"wrote: {args.output}")
    out.line(f"rigid: {_bool_text(rigid)}")
    return 0 if rigid else 1


def cmd_admissible(args, out: Output) -> int:
    exact = args.backend == "exact"
    inputs = []
    if args.config:
        p = load_config(args.config, exact)
        inputs.append(args.config)
    else:
        p = random_general_config(3, 5, args.seed, "cli-admissible", exact=exact,
                                  bound=1000)
    if args.subspace:
        space = load_subspace(args.subspace, p, exact, args.tol)
        inputs.append(args.subspace)
    else:
        space = builtin_space(args.builtin, p, args.seed)
        inputs.append(args.builtin)
    samples = args.samples if args.samples is not None else 20
    report = check_admissibility(p, space, samples=samples, seed=args.seed,
                                 tol=args.tol)
    out.record("manifest", **_manifest(args, inputs))
    out.record("admissibility", candidate_dim=report.candidate_dim,
               intersects_trivial=report.intersects_trivial,
               samples_tested=report.samples_tested,
               sample_ranks=report.sample_ranks,
               max_mismatch_rank=report.max_mismatch_rank,
               failures=len(report.witness_failures),
               admissible=report.admissible)
    out.line(f"candidate_dim: {report.candidate_dim}")
    out.line(f"intersects_trivial: {_bool_text(report.intersects_trivial)}")
    out.line(f"samples_tested: {report.samples_tested}")
    out.line("sample_ranks: " + " ".join(str(r) for r in report.sample_ranks))
    out.line(f"max_mismatch_rank: {report.max_mismatch_rank}")
    out.line(f"admissible: {_bool_text(report.admissible)}")
    if report.admissible and space.dim == 2:
        cls = classify_admissible(p, space, args.tol)
        plane = None if cls.plane is None else [list(row) for row in cls.plane.basis]
        weights = None if cls.weights is None else list(cls.weights)
        out.record("classification", kind=cls.kind, plane=plane,
                   weights=weights, details=cls.details)
        out.line(f"classification: {cls.kind.value}")
        if weights is not None:
            out.line("weights: " + " ".join(str(w) for w in weights))
    return 0 if report.admissible else 1


def cmd_implied(args, out: Output) -> int:
    g = load_graph(args.graph)
    out.record("manifest", **_manifest(args, [args.graph]))
    if args.pair:
        i, j = args.pair
        implied = is_implied_edge(g, i, j, args.dim, args.seed)
        out.record("implied", pair=[min(i, j), max(i, j)], implied=implied)
        out.line(f"pair: {min(i, j)},{max(i, j)}")
        out.line(f"implied: {_bool_text(implied)}")
        return 0 if implied else 1
    vertices = range(1, g.vertex_count + 1)
    candidates = [(i, j) for i in vertices for j in vertices
                  if i < j and not g.has_edge(i, j)]
    found = sorted(implied_pairs(g, candidates, args.dim, args.seed))
    out.record("implied", pairs=[list(e) for e in found])
    out.line(f"implied_nonedges: {len(found)}")
    for i, j in found:
        out.line(f"  {i},{j}")
    return 0


def cmd_conic(args, out: Output) -> int:
    exact = args.backend == "exact"
    inputs = []
    if args.config:
        p = load_config(args.config, exact)
        inputs.append(args.config)
    else:
        p = random_general_config(3, 5, args.seed, "cli-conic", exact=exact,
                                  bound=1000)
    if args.probe:
        edges = conic_probe_graphs()[args.probe]
        inputs.append(args.probe)
    else:
        g = load_graph(args.edge_file)
        edges = g.sorted_edges()
        inputs.append(args.edge_file)
    space = edge_conic_space(p, edges, args.tol)
    skew = space.equals(skew_matrix_space(3, exact), args.tol)
    basis = [[list(row) for row in mat] for mat in
             (vec.reshape(3, 3) for vec in space.basis)]
    out.record("manifest", **_manifest(args, inputs))
    out.record("conic", dim=space.dim, skew_space=skew, basis=basis)
    out.line(f"dim: {space.dim}")
    out.line(f"skew_space: {_bool_text(skew)}")
    return 0 if skew else 1


def cmd_verify(args, out: Output) -> int:
    names = tuple(args.checks) if args.checks else CHECK_NAMES
    out.record("manifest", **_manifest(args, []))
    results = run_battery(args.seed, args.samples, names)
    failed = 0
    for index, res in enumerate(results, start=1):
        failed += 0 if res.passed else 1
        out.record("check", index=index, **res.record())
        status = "pass" if res.passed else "FAIL"
        out.line(f"[{index:2d}/{len(results)}] {res.name:<28s} {status}  "
                 f"({res.seconds:6.2f}s)  {res.details}")
    out.record("summary", total=len(results), failed=failed,
               passed=len(results) - failed)
    out.line(f"passed {len(results) - failed}/{len(results)}")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all randomized sampling (default 0)")
    common.add_argument("--samples", type=int, default=None,
                        help="override per-operation sample counts")
    common.add_argument("--backend", choices=("exact", "float"), default="exact",
                        help="arithmetic backend (default exact)")
    common.add_argument("--tol", type=float, default=None,
                        help="rank tolerance for the float backend")
    common.add_argument("--format", dest="fmt", choices=("text", "jsonl"),
                        default="text", help="output format (default text)")

    parser = argparse.ArgumentParser(
        prog="rigidlab",
        description="Infinitesimal rigidity and admissible motion subspaces.",
        epilog=EXIT_TABLE,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser(
        "analyze", parents=[common],
        help="flex dimension and rigidity of a graph (exit 0 iff rigid)")
    p_an.add_argument("graph", help="graph JSON file")
    p_an.add_argument("config", nargs="?", default=None,
                      help="configuration JSON file (default: seeded random)")
    p_an.add_argument("-n", "--dim", type=int, default=3,
                      help="ambient dimension for the random configuration")
    p_an.set_defaults(func=cmd_analyze)

    p_he = sub.add_parser(
        "henneberg", parents=[common],
        help="extend by a new vertex and report generic rigidity (exit 0 iff rigid)")
    p_he.add_argument("graph", help="graph JSON file")
    p_he.add_argument("-x", "--support", type=int, nargs="+", required=True,
                      help="support vertices of the new cone vertex")
    p_he.add_argument("-f", "--remove", nargs="*", default=[],
                      help="edges to delete inside the support, each as 'i,j'")
    p_he.add_argument("-n", "--dim", type=int, default=3,
                      help="ambient dimension (default 3)")
    p_he.add_argument("-o", "--output", default=None,
                      help="write the extended graph to this JSON file")
    p_he.set_defaults(func=cmd_henneberg)

    p_ad = sub.add_parser(
        "admissible", parents=[common],
        help="sampled admissibility of a motion subspace (exit 0 iff admissible)")
    p_ad.add_argument("config", nargs="?", default=None,
                      help="3x5 configuration JSON file (default: seeded random)")
    group = p_ad.add_mutually_exclusive_group(required=True)
    group.add_argument("--subspace", help="subspace JSON file")
    group.add_argument("--builtin",
                       help="example1 | example2:K | constructed:SEED")
    p_ad.set_defaults(func=cmd_admissible)

    p_im = sub.add_parser(
        "implied", parents=[common],
        help="implied vertex pairs of a graph (with --pair: exit 0 iff implied)")
    p_im.add_argument("graph", help="graph JSON file")
    p_im.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"),
                      help="test one vertex pair instead of listing all")
    p_im.add_argument("-n", "--dim", type=int, default=3,
                      help="ambient dimension (default 3)")
    p_im.set_defaults(func=cmd_implied)

    p_co = sub.add_parser(
        "conic", parents=[common],
        help="edge-direction conic space (exit 0 iff exactly the skew space)")
    p_co.add_argument("config", nargs="?", default=None,
                      help="3x5 configuration JSON file (default: seeded random)")
    group = p_co.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", dest="edge_file",
                       help="graph JSON file supplying the edges")
    group.add_argument("--probe", choices=sorted(conic_probe_graphs()),
                       help="one of the builtin six-edge graphs")
    p_co.set_defaults(func=cmd_conic)

    p_ve = sub.add_parser(
        "verify", parents=[common],
        help="run the verification battery (exit 0 iff all checks pass)")
    p_ve.add_argument("--checks", nargs="+", choices=CHECK_NAMES, default=None,
                      help="run only the named checks")
    p_ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples is not None and args.samples < 1:
        parser.error("--samples must be a positive integer")
    out = Output(args.fmt)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"rigidlab: parse error: {exc}", file=sys.stderr)
        return 3
    except DEGENERATE_ERRORS as exc:
        print(f"rigidlab: degenerate input: {exc}", file=sys.stderr)
        return 4
    except (BadSupportError, ValueError) as exc:
        print(f"rigidlab: usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
