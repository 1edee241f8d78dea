"""Command-line front end.

Subcommands:

* ``qn --n N``                     canonical text of the four-variable polynomial
* ``qnk --n N [--k K] [--shifted]``  table rows (plain or shifted)
* ``table --which q1|q2 --max-n N``  the full triangle plus per-n sum rows
* ``enumerate --n N [--root R] [--improper K] [--really-improper K]``
* ``stats --input FILE``           statistics bundle for a tree JSON file
* ``bijection --map NAME --input FILE [--i I --j J]``
* ``verify --identity NAME|all [--max-n N] [--jobs J] [--allow-skip]``

Exit codes: 0 everything passed; 1 at least one identity failed or a bound
was exceeded without ``--allow-skip``; 2 usage or input errors.  All output
is deterministic: canonical polynomial text and JSON with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bijections, halfmobile, harness, qpolys, treecore
from .polyring import PolyError
from .treecore import BoundExceeded


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON at line {exc.lineno}, "
                         f"column {exc.colno}") from exc


# -- polynomial emission --------------------------------------------------------


def cmd_qn(args, parser) -> int:
    print(qpolys.q_n(args.n).render())
    return 0


def cmd_qnk(args, parser) -> int:
    ks = [args.k] if args.k is not None else range(args.n)
    for k in ks:
        poly = qpolys.q_nk(args.n, k, shifted=args.shifted)
        print(f"{args.n},{k}: {poly.render()}")
    return 0


def cmd_table(args, parser) -> int:
    shifted = args.which == "q2"
    for n in range(1, args.max_n + 1):
        total = None
        for k in range(n):
            poly = qpolys.q_nk(n, k, shifted=shifted)
            total = poly if total is None else total + poly
            print(f"{n},{k}: {poly.render()}")
        print(f"{n},sum: {total.render()}")
    return 0


# -- enumeration ------------------------------------------------------------------


def cmd_enumerate(args, parser) -> int:
    spec = treecore.EnumSpec(labels=frozenset(range(1, args.n + 1)),
                             root=args.root,
                             improper_count=args.improper,
                             really_improper_count=args.really_improper)
    enum = treecore.TreeEnumerator(max_labels=args.max_labels)
    stream = treecore.enumerate_trees(spec, enum)
    if args.count_only:
        print(sum(1 for _ in stream))
        return 0
    for tree in stream:
        if args.format == "json":
            _emit(tree.to_obj())
        else:
            print(repr(tree))
    return 0


def cmd_stats(args, parser) -> int:
    tree = treecore.tree_from_obj(_load_json(args.input))
    st = treecore.stats(tree)
    _emit({
        "beta": {str(v): b for v, b in st.beta.items()},
        "deg": {str(v): d for v, d in st.deg.items()},
        "young": {str(v): y for v, y in st.young_per_vertex.items()},
        "elder_vertices": sorted(st.elder_vertices),
        "really_elder_vertices": sorted(st.really_elder_vertices),
        "improper_edges": sorted(map(list, st.improper_edges)),
        "really_improper_edges": sorted(map(list, st.really_improper_edges)),
        "eld": st.eld_total,
        "reld": st.reld_total,
        "leaves": sorted(st.leaves),
        "increasing": st.increasing,
    })
    return 0


# -- bijections --------------------------------------------------------------------


def cmd_bijection(args, parser) -> int:
    data = _load_json(args.input)
    name = args.map
    if name == "psi":
        word = bijections.psi(bijections.Permutation(data))
        _emit(list(word))
    elif name == "psi-inv":
        _emit(list(bijections.psi_inv(data).word))
    elif name == "theta":
        _emit(halfmobile.theta(treecore.tree_from_obj(data)).to_obj())
    elif name == "theta-inv":
        _emit(halfmobile.theta_inv(halfmobile.forest_from_obj(data)).to_obj())
    elif name == "phi":
        _emit(bijections.phi(treecore.tree_from_obj(data)).to_obj())
    elif name == "contract":
        if args.i is None or args.j is None:
            parser.error("contract needs --i and --j")
        _emit(bijections.contract(treecore.tree_from_obj(data), args.i, args.j).to_obj())
    elif name == "root-swap":
        old = 1 if args.i is None else args.i
        new = 2 if args.j is None else args.j
        _emit(bijections.root_swap(treecore.tree_from_obj(data), old, new).to_obj())
    else:  # pragma: no cover - argparse choices guard this
        parser.error(f"unknown map {name!r}")
    return 0


# -- verification -------------------------------------------------------------------


def parse_config(path: str) -> dict[str, dict[str, int]]:
    """key=value lines of the form identity.param=value; '#' starts a comment."""
    overrides: dict[str, dict[str, int]] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected identity.param=value")
        key, _, value = line.partition("=")
        ident, _, param = key.strip().rpartition(".")
        if not ident or not param:
            raise ValueError(f"{path}:{lineno}: expected identity.param=value")
        try:
            overrides.setdefault(ident, {})[param] = int(value.strip())
        except ValueError:
            raise ValueError(f"{path}:{lineno}: value must be an integer") from None
    return overrides


def cmd_verify(args, parser) -> int:
    if args.list:
        for name, entry in harness.REGISTRY.items():
            defaults = " ".join(f"{k}={v}" for k, v in entry.defaults.items())
            print(f"{name:18s} {defaults:34s} {entry.description}")
        return 0
    if args.identity == "all":
        names = list(harness.REGISTRY)
    else:
        names = args.identity.split(",")
        for name in names:
            try:
                harness.resolve(name)
            except KeyError:
                parser.error(f"unknown identity {name!r} "
                             f"(see `verify --list` for the registry)")
    overrides: dict[str, dict] = {}
    if args.config:
        for ident, params in parse_config(args.config).items():
            try:
                canonical = harness.resolve(ident).name
            except KeyError:
                parser.error(f"{args.config}: unknown identity {ident!r}")
            overrides.setdefault(canonical, {}).update(params)
    if args.max_n is not None:
        for name in names:
            entry = harness.resolve(name)
            for key in ("max_n", "max_vertices"):
                if key in entry.defaults:
                    overrides.setdefault(entry.name, {})[key] = args.max_n
                    break
    if args.qtable_cache and Path(args.qtable_cache).exists():
        qpolys.load_default_cache(args.qtable_cache)
    reports = harness.run_suite(names, overrides, jobs=args.jobs)
    if args.qtable_cache:
        qpolys.save_default_cache(args.qtable_cache)
    report_file = open(args.report, "a") if args.report else None
    try:
        for report in reports:
            for inst in report.instances:
                if report_file:
                    report_file.write(json.dumps(inst.to_obj(), sort_keys=True) + "\n")
                if inst.status != harness.PASS:
                    print(f"{inst.status.upper()} {report.identity} "
                          f"{json.dumps(inst.instance, sort_keys=True)} "
                          f"witness={json.dumps(inst.witness, sort_keys=True)}")
                elif args.verbose:
                    print(f"pass {report.identity} "
                          f"{json.dumps(inst.instance, sort_keys=True)}")
            counts = {s: sum(1 for i in report.instances if i.status == s)
                      for s in (harness.PASS, harness.FAIL, harness.SKIP)}
            summary = (f"{report.status.upper():5s} {report.identity:18s} "
                       f"{counts['pass']:4d} pass {counts['fail']:3d} fail "
                       f"{counts['bound-exceeded']:3d} skipped "
                       f"{report.seconds:7.2f}s")
            print(summary)
            if report_file:
                report_file.write(json.dumps(
                    {"identity": report.identity, "summary": report.status,
                     "params": report.params, "instances": len(report.instances)},
                    sort_keys=True) + "\n")
    finally:
        if report_file:
            report_file.close()
    code = harness.suite_status(reports, allow_skip=args.allow_skip)
    print(f"overall: {'pass' if code == 0 else 'FAIL'} ({len(reports)} identities)")
    return code


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramapoly",
        description="Exact plane-tree polynomial families and their verification suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qn", help="print the four-variable polynomial")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_qn)

    p = sub.add_parser("qnk", help="print table entries in {x, t}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--shifted", action="store_true",
                   help="substitute x -> x - t - 1")
    p.set_defaults(func=cmd_qnk)

    p = sub.add_parser("table", help="print the whole triangle with sum rows")
    p.add_argument("--which", choices=["q1", "q2"], required=True,
                   help="q1 = plain table, q2 = shifted table")
    p.add_argument("--max-n", type=int, default=4)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="stream plane trees on {1..n}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--root", type=int)
    p.add_argument("--improper", type=int)
    p.add_argument("--really-improper", type=int, dest="really_improper")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--max-labels", type=int, default=None,
                   help="override the enumeration hard cap")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stats", help="statistics bundle for a tree JSON file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bijection", help="apply a constructive map to a JSON input")
    p.add_argument("--map", required=True,
                   choices=["theta", "theta-inv", "psi", "psi-inv", "phi",
                            "contract", "root-swap"])
    p.add_argument("--input", required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--identity", default="all",
                   help="registry name, comma list, or 'all'")
    p.add_argument("--max-n", type=int, default=None,
                   help="override the main bound of each selected identity")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-skip", action="store_true",
                   help="exit 0 even when bounds were exceeded")
    p.add_argument("--report", help="append JSON-lines records to this file")
    p.add_argument("--config", help="key=value overrides (identity.param=value)")
    p.add_argument("--qtable-cache", dest="qtable_cache",
                   help="JSON cache of table polynomials to load/refresh")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--list", action="store_true", help="list registry and exit")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 0 if getattr(args, "allow_skip", False) else 1
    except BrokenPipeError:
        return 0
    except (PolyError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
