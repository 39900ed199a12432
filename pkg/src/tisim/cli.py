"""Command-line interface.

Exit codes: 0 success, 2 input/parse error, 3 budget exceeded,
4 numerical non-convergence.
"""

import argparse
import itertools
import logging
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    DEFAULT_SEED,
    csv_text,
    decane_rows,
    run_experiment_decane,
    run_experiment_n7,
    run_experiment_random,
    run_experiment_t7,
)
from .enumeration import enumerate_alkanes, enumerate_connected_graphs, enumerate_trees, load_family
from .exceptions import TisimError
from .ged import ged
from .graph import encode_graph6
from .indices import compute_vector, resolve_index_set
from .random_models import ModelSpec, generate_batch, write_batch
from .similarity import SimilarityConfig, pair_table, rescale_similarities

log = logging.getLogger("tisim")


def _emit(text, out):
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _config(args):
    return SimilarityConfig(args.indices, args.p, args.scaling, strict=not args.lenient)


def cmd_indices(args):
    graphs = load_family(args.family)
    ids = resolve_index_set(args.indices)
    rows = [[g.label] + list(compute_vector(g, ids).values) for g in graphs]
    _emit(csv_text(["label"] + [i.value for i in ids], rows), args.out)


def cmd_simmatrix(args):
    table = pair_table(load_family(args.family), _config(args), family_id=args.family, n_jobs=args.jobs)
    if args.rescale:
        rescale_similarities(table)
    _emit(table.to_csv(), args.out)


def cmd_ged(args):
    graphs = load_family(args.family)
    rows = []
    for a, b in itertools.combinations(graphs, 2):
        d = ged(a, b).ged
        rows.append((a.label, b.label, d, 1.0 / (d + 1)))
    _emit(csv_text(["label_a", "label_b", "ged", "s_ged"], rows), args.out)


def cmd_enumerate(args):
    if args.kind == "trees":
        graphs = enumerate_trees(args.n, args.max_degree)
    elif args.kind == "connected":
        graphs = enumerate_connected_graphs(args.n)
    else:
        graphs = enumerate_alkanes(args.carbons)
    _emit("".join(encode_graph6(g) + "\n" for g in graphs), args.out)
    log.info("%d graphs", len(graphs))


def cmd_generate(args):
    model = args.model.upper()
    spec = ModelSpec(model, args.n, p=args.p if model != "BA" else None,
                     m=args.m if model == "BA" else None, k=args.k if model == "WS" else None,
                     seed=args.seed)
    graphs = generate_batch(spec, args.count, args.seed)
    if args.out is None:
        _emit("".join(encode_graph6(g) + "\n" for g in graphs), None)
    else:
        write_batch(graphs, spec, args.seed, args.out)


def cmd_experiment(args):
    out = args.out_dir
    if args.name == "t7":
        result = run_experiment_t7(out, scaling=args.scaling, p=args.p, n_jobs=args.jobs)
    elif args.name == "n7":
        result = run_experiment_n7(out, scaling=args.scaling, n_jobs=args.jobs)
    elif args.name == "random":
        result = run_experiment_random(args.seed, out, scaling=args.scaling, p=args.p, n_jobs=args.jobs)
    else:
        result = run_experiment_decane(out, scaling=args.scaling, n_jobs=args.jobs)
    for name, path in sorted(result.files.items()):
        print(path)


def cmd_chemsim(args):
    _, _, _, rows = decane_rows(args.carbons, scaling=args.scaling, n_jobs=args.jobs)
    _emit(csv_text(["label_a", "label_b", "s2", "tanimoto_morgan"], rows), args.out)


def _add_similarity_flags(p, with_p=True):
    p.add_argument("--indices", choices=["core", "extended"], default="core")
    if with_p:
        p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--scaling", choices=["per-graph", "per-family"], default="per-graph")
    p.add_argument("--lenient", action="store_true", help="map degenerate scaling to zero instead of failing")


def build_parser():
    parser = argparse.ArgumentParser(prog="tisim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tisim {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indices", help="index table (CSV) for a graph6 family file")
    p.add_argument("family")
    p.add_argument("--indices", choices=["core", "extended"], default="core")
    p.add_argument("--out")
    p.set_defaults(func=cmd_indices)

    p = sub.add_parser("simmatrix", help="pairwise d_p / s_p table (CSV)")
    p.add_argument("family")
    _add_similarity_flags(p)
    p.add_argument("--rescale", action="store_true", help="add the min-max rescaled s_prime column")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simmatrix)

    p = sub.add_parser("ged", help="exact graph edit distance table (CSV)")
    p.add_argument("family")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ged)

    p = sub.add_parser("enumerate", help="write a graph family as graph6")
    p.add_argument("kind", choices=["trees", "connected", "alkanes"])
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--carbons", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("generate", help="seeded random networks as graph6 (+ metadata sidecar)")
    p.add_argument("model", choices=["er", "ba", "ws"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, help="edge probability (er) or rewiring probability (ws)")
    p.add_argument("--m", type=int, help="edges per new node (ba)")
    p.add_argument("--k", type=int, help="ring degree (ws)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("experiment", help="reproduce one of the experiments")
    p.add_argument("name", choices=["t7", "n7", "random", "decane"])
    p.add_argument("--scaling", choices=["per-graph", "per-family"], default="per-graph")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out-dir", default="results")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("chemsim", help="s_2 vs Morgan-style Tanimoto for alkane skeletons")
    p.add_argument("--carbons", type=int, default=10)
    p.add_argument("--scaling", choices=["per-graph", "per-family"], default="per-graph")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chemsim)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except TisimError as exc:
        print(f"tisim: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"tisim: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
