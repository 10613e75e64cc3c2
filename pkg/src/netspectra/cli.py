"""Command-line front end: ingest or generate networks, compute spectra and
rank observables, and emit plot-ready CSV files.

Every run writes a JSON manifest recording the command, parameters, input
digests, seed, tool version, and output digests; rerunning with the same
inputs and flags reproduces the output files byte for byte (only the
manifest's timing field differs).  Exit codes: 0 success, 1 I/O or parse
failure, 2 capability/size failure, 3 numerical non-convergence.

Heavy imports happen after argument parsing so ``--threads`` can cap the
BLAS thread pools through environment variables before numpy loads.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__

EXIT_OK = 0
EXIT_IO = 1
EXIT_SIZE = 2
EXIT_NUMERIC = 3

_MANIFEST_NAME = "manifest.json"
_MANIFEST_REF = f"manifest: {_MANIFEST_NAME}"


class _Parser(argparse.ArgumentParser):
    # usage errors are parse failures (exit 1), not size failures (exit 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _parse_floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")


def _parse_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _cap_threads(n: int) -> None:
    for var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
        "VECLIB_MAXIMUM_THREADS",
    ):
        os.environ[var] = str(n)


def _write_manifest_file(
    path: Path,
    command: str,
    args,
    started: float,
    outputs: list[Path],
    inputs=(),
    extra: dict | None = None,
) -> None:
    parameters = {
        k: v for k, v in vars(args).items() if k not in ("func", "threads") and not callable(v)
    }
    manifest = {
        "schema_version": 1,
        "tool": "netspectra",
        "tool_version": __version__,
        "command": command,
        "parameters": parameters,
        "seed": parameters.get("seed"),
        "input_digests": {str(p): _sha256(p) for p in inputs},
        "outputs": {p.name: _sha256(p) for p in outputs},
        "wall_time_s": time.time() - started,
    }
    if extra:
        manifest.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_manifest(out_dir: Path, command: str, args, started, outputs, inputs=(), extra=None):
    _write_manifest_file(
        out_dir / _MANIFEST_NAME, command, args, started, outputs, inputs, extra
    )


def _ingest(args):
    from . import netcore

    graph = netcore.load_edge_list(
        args.input,
        index_base=args.index_base,
        dedupe=not args.no_dedupe,
        allow_self_loops=not args.drop_self_loops,
    )
    if args.filter_min_outdegree:
        graph, _ = netcore.filter_min_outdegree(graph)
    return graph


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_spectrum(args) -> int:
    from . import gmatrix, spectra

    started = time.time()
    graph = _ingest(args)
    g = gmatrix.GoogleMatrix.from_graph(graph, args.alpha)
    spec = spectra.eigendecompose(g.to_dense(args.dense_limit), args.tol)
    gammas, zero_modes = spectra.relaxation_rates(spec, args.lambda_cutoff)
    hist = spectra.density_of_states(
        gammas, zero_modes, window=args.window, gamma_max=args.gamma_max
    )
    report = spectra.degeneracy_clusters(spec, args.degeneracy_tol)
    par_gammas, pars = spectra.eigenvector_pars(spec, args.lambda_cutoff)
    out = _out_dir(args)
    spectra.spectrum_to_csv(
        spec, out / "eigenvalues.csv", args.lambda_cutoff, header_comment=_MANIFEST_REF
    )
    spectra.dos_to_csv(hist, out / "dos.csv", header_comment=_MANIFEST_REF)
    spectra.degeneracy_to_csv(report, out / "degeneracy.csv", header_comment=_MANIFEST_REF)
    spectra.eigenvector_pars_to_csv(
        par_gammas, pars, out / "eigenvector_par.csv", header_comment=_MANIFEST_REF
    )
    files = ["eigenvalues.csv", "dos.csv", "degeneracy.csv", "eigenvector_par.csv"]
    _write_manifest(
        out, "spectrum", args, started, [out / f for f in files], inputs=[args.input]
    )
    print(f"spectrum: n={graph.n_nodes} alpha={args.alpha} -> {out}")
    return EXIT_OK


def cmd_pagerank(args) -> int:
    from . import gmatrix, ranking

    started = time.time()
    graph = _ingest(args)
    g = gmatrix.GoogleMatrix.from_graph(graph, args.alpha)
    rank = ranking.pagerank_power(g, tol=args.tol, max_iter=args.max_iter)
    out = _out_dir(args)
    ranking.rank_to_csv(rank, out / "pagerank.csv", header_comment=_MANIFEST_REF)
    _write_manifest(
        out,
        "pagerank",
        args,
        started,
        [out / "pagerank.csv"],
        inputs=[args.input],
        extra={"iterations": rank.iterations, "residual": rank.residual, "converged": rank.converged},
    )
    print(
        f"pagerank: n={graph.n_nodes} alpha={args.alpha} iterations={rank.iterations} "
        f"residual={rank.residual:.3e} -> {out}"
    )
    if not rank.converged:
        print("pagerank: iteration did not reach tolerance", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_fidelity(args) -> int:
    from . import ranking

    started = time.time()
    graph = _ingest(args)
    grid = ranking.fidelity_grid(graph, args.alphas, tol=args.tol, max_iter=args.max_iter)
    out = _out_dir(args)
    ranking.fidelity_grid_to_csv(grid, out / "fidelity.csv", header_comment=_MANIFEST_REF)
    _write_manifest(out, "fidelity", args, started, [out / "fidelity.csv"], inputs=[args.input])
    print(f"fidelity: n={graph.n_nodes} grid {len(args.alphas)}x{len(args.alphas)} -> {out}")
    return EXIT_OK


def cmd_par_curve(args) -> int:
    from . import ranking

    started = time.time()
    graph = _ingest(args)
    points = ranking.par_vs_alpha(graph, args.alphas, tol=args.tol, max_iter=args.max_iter)
    out = _out_dir(args)
    ranking.par_curve_to_csv(points, out / "par_curve.csv", header_comment=_MANIFEST_REF)
    _write_manifest(out, "par-curve", args, started, [out / "par_curve.csv"], inputs=[args.input])
    print(f"par-curve: n={graph.n_nodes} {len(points)} alpha values -> {out}")
    if not all(p.converged for p in points):
        print("par-curve: some alpha values did not converge", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_degree_dist(args) -> int:
    from . import netcore

    started = time.time()
    graph = _ingest(args)
    out = _out_dir(args)
    files = []
    for direction in ("in", "out"):
        dist = netcore.degree_distribution(graph, direction)
        path = out / f"degree_{direction}.csv"
        netcore.degree_distribution_to_csv(dist, path, header_comment=_MANIFEST_REF)
        files.append(path)
    _write_manifest(
        out,
        "degree-dist",
        args,
        started,
        files,
        inputs=[args.input],
        extra={"mean_degree": graph.n_edges / max(graph.n_nodes, 1)},
    )
    print(f"degree-dist: n={graph.n_nodes} <k>={graph.n_edges / max(graph.n_nodes, 1):.6g} -> {out}")
    return EXIT_OK


def cmd_randomize(args) -> int:
    from . import netcore

    started = time.time()
    graph = _ingest(args)
    shuffled = netcore.maslov_randomize(
        graph, n_swaps=args.swaps, rng_seed=args.seed,
        allow_self_loops=not args.drop_self_loops,
    )
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    sidecar = out_path.with_name(out_path.name + ".manifest.json")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# manifest: {sidecar.name}\n")
        netcore.save_edge_list(shuffled, fh)
    _write_manifest_file(sidecar, "randomize", args, started, [out_path], inputs=[args.input])
    print(f"randomize: {graph.n_edges} edges, {args.swaps if args.swaps is not None else 10 * graph.n_edges} swap attempts -> {out_path}")
    return EXIT_OK


def cmd_generate(args) -> int:
    from . import genmodels, netcore

    started = time.time()
    colors = None
    if args.model == "ab":
        params = genmodels.AbParams(
            n_target=args.n, m=args.m, p=args.p, q=args.q, seed=args.seed
        )
        graph = genmodels.generate_ab(params)
    elif args.model == "color":
        params = genmodels.ColorParams(
            ab=genmodels.AbParams(
                n_target=args.n, m=args.m, p=args.p, q=args.q, seed=args.seed
            ),
            eta=args.eta,
            epsilon=args.epsilon,
            initial_colors=args.initial_colors,
        )
        graph, colors = genmodels.generate_color(params)
    else:
        params = genmodels.AlParams(n_target=args.n, m=args.m, seed=args.seed)
        graph = genmodels.generate_al(params)
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    sidecar = out_path.with_name(out_path.name + ".params.json")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# manifest: {sidecar.name}\n")
        netcore.save_edge_list(graph, fh, colors=colors)
    _write_manifest_file(sidecar, f"generate {args.model}", args, started, [out_path])
    print(f"generate {args.model}: n={graph.n_nodes} edges={graph.n_edges} -> {out_path}")
    return EXIT_OK


def cmd_truncate_spectrum(args) -> int:
    from . import spectra

    started = time.time()
    graph = _ingest(args)
    cmp = spectra.truncated_spectrum_compare(
        graph, args.alpha, args.sizes, tol=args.tol, dense_limit=args.dense_limit
    )
    out = _out_dir(args)
    files = [out / "eigenvalues_full.csv"]
    spectra.spectrum_to_csv(cmp.full, files[0], header_comment=_MANIFEST_REF)
    hausdorff = {}
    for res in cmp.results:
        path = out / f"eigenvalues_m{res.m}.csv"
        spectra.spectrum_to_csv(res.spectrum, path, header_comment=_MANIFEST_REF)
        files.append(path)
        hausdorff[str(res.m)] = res.hausdorff
    _write_manifest(
        out,
        "truncate-spectrum",
        args,
        started,
        files,
        inputs=[args.input],
        extra={"hausdorff": hausdorff},
    )
    print(
        "truncate-spectrum: "
        + " ".join(f"m={m}: hausdorff={h:.6g}" for m, h in hausdorff.items())
        + f" -> {out}"
    )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="netspectra", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"netspectra {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="cap BLAS thread pools")

    ingest = argparse.ArgumentParser(add_help=False)
    ingest.add_argument("input", help="edge-list file")
    ingest.add_argument("--index-base", type=int, choices=(0, 1), default=0)
    ingest.add_argument("--no-dedupe", action="store_true", help="keep parallel edges")
    ingest.add_argument("--drop-self-loops", action="store_true")
    ingest.add_argument(
        "--filter-min-outdegree",
        action="store_true",
        help="drop nodes without outlinks (single pass) before computing",
    )

    outdir = argparse.ArgumentParser(add_help=False)
    outdir.add_argument("--out-dir", default=".", help="directory for CSV outputs")

    p = sub.add_parser(
        "spectrum", parents=[common, ingest, outdir], help="full complex spectrum and observables"
    )
    p.add_argument("--alpha", type=float, default=0.85)
    p.add_argument("--tol", type=float, default=1e-9, help="residual contract, relative to ||G||_F")
    p.add_argument("--dense-limit", type=int, default=30000)
    p.add_argument("--window", type=float, default=0.1, help="rate-density smoothing window")
    p.add_argument("--gamma-max", type=float, default=10.0)
    p.add_argument("--degeneracy-tol", type=float, default=1e-8)
    p.add_argument("--lambda-cutoff", type=float, default=1e-8, help="zero-mode magnitude cutoff")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("pagerank", parents=[common, ingest, outdir], help="rank vector by power iteration")
    p.add_argument("--alpha", type=float, default=0.85)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=10000)
    p.set_defaults(func=cmd_pagerank)

    p = sub.add_parser("fidelity", parents=[common, ingest, outdir], help="rank overlap grid over damping values")
    p.add_argument("--alphas", type=_parse_floats, required=True, help='e.g. "0.49,0.59,0.69"')
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=10000)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("par-curve", parents=[common, ingest, outdir], help="rank participation ratio vs damping")
    p.add_argument("--alphas", type=_parse_floats, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=10000)
    p.set_defaults(func=cmd_par_curve)

    p = sub.add_parser("degree-dist", parents=[common, ingest, outdir], help="in/out degree distributions")
    p.set_defaults(func=cmd_degree_dist)

    p = sub.add_parser("randomize", parents=[common, ingest], help="degree-preserving edge rewiring")
    p.add_argument("--swaps", type=int, default=None, help="swap attempts (default 10x edges)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output edge-list file")
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("generate", parents=[common], help="random-network generators")
    gsub = p.add_subparsers(dest="model", required=True, metavar="MODEL")
    for model, desc in (
        ("ab", "scale-free growth with link addition and rewiring"),
        ("color", "community-constrained scale-free growth"),
        ("al", "independent preferential links with multiplicities"),
    ):
        gp = gsub.add_parser(model, parents=[common], help=desc)
        gp.add_argument("--n", type=int, required=True, help="target node count")
        gp.add_argument("--m", type=int, default=5, help="links per event")
        if model in ("ab", "color"):
            gp.add_argument("--p", type=float, default=0.2, help="link-addition probability")
            gp.add_argument("--q", type=float, default=0.1, help="rewiring probability")
        if model == "color":
            gp.add_argument("--eta", type=float, default=1e-2, help="new-color probability")
            gp.add_argument("--epsilon", type=float, default=1e-3, help="cross-color link survival probability")
            gp.add_argument("--initial-colors", type=int, default=3)
        gp.add_argument("--seed", type=int, required=True)
        gp.add_argument("--out", required=True, help="output edge-list file")
        gp.set_defaults(func=cmd_generate, model=model)

    p = sub.add_parser(
        "truncate-spectrum",
        parents=[common, ingest, outdir],
        help="spectra of rank-truncated operators vs the full one",
    )
    p.add_argument("--alpha", type=float, default=0.85)
    p.add_argument("--sizes", type=_parse_ints, required=True, help='e.g. "8192,4096"')
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--dense-limit", type=int, default=30000)
    p.set_defaults(func=cmd_truncate_spectrum)

    return parser


def _classify_error(exc: BaseException) -> int:
    from .gmatrix import SizeLimitError
    from .spectra import EigensolverError

    if isinstance(exc, SizeLimitError):
        print(f"netspectra: {exc}", file=sys.stderr)
        return EXIT_SIZE
    if isinstance(exc, EigensolverError):
        print(f"netspectra: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if isinstance(exc, (OSError, ValueError)):
        print(f"netspectra: {exc}", file=sys.stderr)
        return EXIT_IO
    raise exc


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "threads", None):
        _cap_threads(args.threads)
    try:
        return args.func(args)
    except Exception as exc:
        return _classify_error(exc)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
