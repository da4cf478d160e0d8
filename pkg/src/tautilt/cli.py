"""Command line front end.

Exit status is 0 only when every requested check holds and any needed
enumeration completed; 1 signals a failed check or bad input, 2 an
enumeration that ran out of budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from .algebra import DEFAULT_LENGTH_CAP, AlgebraError
from .formats import load_algebra
from .homology import (
    DEFAULT_EXT_BOUND,
    global_dimension_probe,
    gp_verdict,
    injective_dimension_probe,
    is_self_injective,
)
from .linalg import field_from_spec
from .modules import (
    ModuleError,
    from_json,
    injective,
    loewy_label,
    projective,
    projective_vertex_of,
    regular_module,
    simple,
)
from .tilting import (
    DEFAULT_MAX_NODES,
    PairError,
    bongartz_completion,
    cm_tau_finiteness,
    dagger,
    enumerate_exchange_graph,
    gp_filter,
    indecomposable_gp_tau_rigid,
    is_tau_rigid,
    same_pair,
)
from .torsion import torsion_report

EXIT_OK, EXIT_FAIL, EXIT_INCOMPLETE = 0, 1, 2


class RunConfig:
    def __init__(self, args):
        self.field = field_from_spec(args.field) if args.field else None
        self.ext_bound = args.ext_bound
        self.length_cap = args.length_cap
        self.budget = args.budget
        self.emit = args.emit
        self.cache = Path(args.cache) if args.cache else None
        for name in ("ext_bound", "length_cap", "budget"):
            if getattr(self, name) < 1:
                raise ValueError("--%s must be positive" % name.replace("_", "-"))


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


class _Cache:
    """Per-algebra directory keyed by the presentation hash; entries keyed by command and flags."""

    def __init__(self, cfg: RunConfig, algebra, command: str, extra: str = ""):
        self.path = None
        if cfg.cache is None:
            return
        tag = "%s|%s|%d|%d|%s" % (command, cfg.emit, cfg.ext_bound, cfg.budget, extra)
        name = hashlib.sha256(tag.encode()).hexdigest()[:16]
        self.path = cfg.cache / algebra.key / (command + "-" + name + ".out")

    def get(self):
        if self.path is not None and self.path.exists():
            status, _, text = self.path.read_text(encoding="utf-8").partition("\n")
            return int(status), text
        return None

    def put(self, status: int, text: str):
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text("%d\n%s" % (status, text), encoding="utf-8")


def _load(cfg: RunConfig, source: str):
    return load_algebra(source, field=cfg.field, length_cap=cfg.length_cap)


def _cached(cfg, algebra, command, fn, extra=""):
    c = _Cache(cfg, algebra, command, extra)
    hit = c.get()
    if hit is not None:
        sys.stdout.write(hit[1])
        return hit[0]
    status, text = fn()
    c.put(status, text)
    sys.stdout.write(text)
    return status


# -- commands ---------------------------------------------------------------------


def cmd_check(cfg: RunConfig, args) -> int:
    A = _load(cfg, args.file)
    n = len(A.quiver)
    sizes = {"%s,%s" % (A.vertices[i], A.vertices[j]): len(A.basis_between(i, j)) for i in range(n) for j in range(n)}
    idr = injective_dimension_probe(A, "right", cfg.ext_bound)
    idl = injective_dimension_probe(A, "left", cfg.ext_bound)
    si = bool(is_self_injective(A))
    gl = global_dimension_probe(A, cfg.ext_bound)
    rep = {"name": A.name, "dimension": A.dimension, "basis_sizes": sizes, "radical_square_zero": A.is_radical_square_zero(),
           "self_injective": si, "injective_dimension": {"right": idr, "left": idl}, "global_dimension": gl}
    if cfg.emit == "json":
        sys.stdout.write(_dump(rep))
        return EXIT_OK
    parts = ["dim %d" % A.dimension]
    if A.is_radical_square_zero():
        parts.append("rad^2=0")
    if idr is not None and idl is not None:
        parts.append("%d-Gorenstein (id=%s right, %s left)" % (max(idr, idl), idr, idl) if idr != idl
                     else "%d-Gorenstein (id=%d both sides)" % (idr, idr))
    else:
        parts.append("id right=%s left=%s (beyond bound %d)" % (idr, idl, cfg.ext_bound))
    parts.append("self-injective" if si else "not self-injective")
    parts.append("gldim=%d" % gl if gl is not None else "gldim > %d" % cfg.ext_bound)
    sys.stdout.write(", ".join(parts) + "\n")
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig, args) -> int:
    A = _load(cfg, args.file)

    def run():
        G = enumerate_exchange_graph(A, cfg.budget, cfg.ext_bound)
        text = {"json": lambda: G.dumps() + "\n", "dot": G.to_dot, "text": G.to_text}[cfg.emit]()
        return (EXIT_OK if G.complete else EXIT_INCOMPLETE), text

    return _cached(cfg, A, "enumerate", run)


def _gp_report(A, cfg):
    G = enumerate_exchange_graph(A, cfg.budget, cfg.ext_bound)
    if not G.complete:
        return EXIT_INCOMPLETE, _dump({"error": "enumeration incomplete", "reason": G.stop_reason})
    f = gp_filter(G)
    rep = {
        "gp_support_tau_tilting": [p.label() for p in f.all],
        "gp_tau_tilting": [p.label() for p in f.tau_tilting],
        "gp_tau_tilting_projective_free": [p.label() for p in f.tau_tilting
                                           if all(it.module is not None and projective_free(it.module)
                                                  for it in p.items)],
        "undecided": [p.label() for p in f.undecided],
        "indecomposable_gp_tau_rigid": [loewy_label(X) for X in indecomposable_gp_tau_rigid(G)],
        "torsion": torsion_report(G, cfg.ext_bound),
    }
    ok = all(r["dual_side_agrees"] for r in rep["torsion"])
    if cfg.emit == "json":
        return (EXIT_OK if ok else EXIT_FAIL), _dump(rep)
    lines = ["GP support tau-tilting pairs: %d" % len(rep["gp_support_tau_tilting"])]
    lines += ["  " + s for s in rep["gp_support_tau_tilting"]]
    lines.append("GP tau-tilting: %d (projective-free: %s)" % (len(rep["gp_tau_tilting"]),
                                                              ", ".join(rep["gp_tau_tilting_projective_free"]) or "none"))
    lines.append("indecomposable GP tau-rigid: " + ", ".join(rep["indecomposable_gp_tau_rigid"]))
    for r in rep["torsion"]:
        lines.append("  %s gorenstein=%s trivial=%s dual-side=%s" % (r["label"], r["gorenstein"], r["trivial"],
                                                                    "agree" if r["dual_side_agrees"] else "MISMATCH"))
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines) + "\n"


def projective_free(X) -> bool:
    return projective_vertex_of(X) is None


def cmd_gp_report(cfg: RunConfig, args) -> int:
    A = _load(cfg, args.file)
    return _cached(cfg, A, "gp-report", lambda: _gp_report(A, cfg))


def _dagger_report(A, cfg):
    G = enumerate_exchange_graph(A, cfg.budget, cfg.ext_bound)
    Gop = enumerate_exchange_graph(A.opposite(), cfg.budget, cfg.ext_bound)
    if not (G.complete and Gop.complete):
        return EXIT_INCOMPLETE, _dump({"error": "enumeration incomplete"})
    rows, bad = [], 0
    hit = set()
    for k, p in enumerate(G.nodes):
        d = dagger(p)
        j = Gop.find(d)
        inv = same_pair(dagger(d), p)
        same_gp = d.gp.status == p.gp.status
        ok = j is not None and inv and same_gp and j not in hit
        if j is not None:
            hit.add(j)
        bad += not ok
        rows.append({"node": p.label(), "image": d.label(), "image_node": j, "involution": inv,
                     "gp": p.gp.status, "image_gp": d.gp.status, "ok": ok})
    counts = (len(gp_filter(G).all), len(gp_filter(Gop).all))
    bad += len(hit) != len(Gop.nodes) or counts[0] != counts[1]
    rep = {"nodes": len(G.nodes), "opposite_nodes": len(Gop.nodes), "gp_counts": list(counts),
           "mismatches": bad, "matching": rows}
    if cfg.emit == "json":
        text = _dump(rep)
    else:
        lines = ["%d <-> %d nodes, GP support tau-tilting %d <-> %d, mismatches %d"
                 % (len(G.nodes), len(Gop.nodes), counts[0], counts[1], bad)]
        lines += ["  %s -> %s %s" % (r["node"], r["image"], "ok" if r["ok"] else "MISMATCH") for r in rows]
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if bad == 0 else EXIT_FAIL), text


def cmd_dagger(cfg: RunConfig, args) -> int:
    A = _load(cfg, args.file)
    return _cached(cfg, A, "dagger", lambda: _dagger_report(A, cfg))


def parse_module_spec(A, spec: str):
    """``S<v>``, ``P<v>``, ``I<v>`` for simple, projective, injective at vertex ``v``;
    ``A`` or ``Lambda`` for the regular module; otherwise a path to a JSON module."""
    s = spec.strip()
    if s in ("A", "Lambda", "regular"):
        return regular_module(A)
    kinds = {"S": simple, "P": projective, "I": injective}
    if s[:1] in kinds and s[1:] in A.quiver.vertex_index:
        return kinds[s[:1]](A, s[1:])
    p = Path(s)
    if p.exists():
        return from_json(json.loads(p.read_text(encoding="utf-8")), A)
    raise ModuleError("cannot interpret module %r (use S<v>, P<v>, I<v>, A or a JSON file)" % spec)


def cmd_bongartz(cfg: RunConfig, args) -> int:
    A = _load(cfg, args.file)
    M = parse_module_spec(A, args.module)
    if not is_tau_rigid(M):
        sys.stderr.write("module %s is not tau-rigid\n" % loewy_label(M))
        return EXIT_FAIL
    G = enumerate_exchange_graph(A, cfg.budget, cfg.ext_bound)
    if not G.complete:
        sys.stderr.write("enumeration incomplete (%s)\n" % G.stop_reason)
        return EXIT_INCOMPLETE
    B = bongartz_completion(M, G)
    rep = {"module": loewy_label(M), "completion": B.label(),
           "summands": [{"module": loewy_label(X), "gp": gp_verdict(X, cfg.ext_bound).status} for X in B.summands],
           "verdict": B.gp.to_json()}
    if cfg.emit == "json":
        sys.stdout.write(_dump(rep))
    else:
        sys.stdout.write("Bongartz completion of %s: %s\nverdict: %s\n" % (rep["module"], B.label(), B.gp.status))
        for s in rep["summands"]:
            sys.stdout.write("  %s %s\n" % (s["module"], s["gp"]))
    return EXIT_OK


def cmd_cm_finite(cfg: RunConfig, args) -> int:
    A = _load(cfg, args.file)

    def run():
        v = cm_tau_finiteness(A, cfg.budget, cfg.ext_bound)
        w = cm_tau_finiteness(A.opposite(), cfg.budget, cfg.ext_bound)
        rep = {"algebra": v.to_json(), "opposite": w.to_json(), "agree": v.status == w.status}
        if cfg.emit == "json":
            text = _dump(rep)
        else:
            text = "%s via %s (opposite: %s via %s)\n" % (v.status, v.route or "-", w.status, w.route or "-")
        return (EXIT_OK if v.status != "Undecided" and rep["agree"] else EXIT_FAIL), text

    return _cached(cfg, A, "cm-finite", run)


def cmd_paper_examples(cfg: RunConfig, args) -> int:
    from .worked_examples import run_all
    results = run_all(cfg.ext_bound)
    if cfg.emit == "json":
        sys.stdout.write(_dump([{"check": n, "passed": ok, "detail": d} for n, ok, d in results]))
    else:
        for n, ok, d in results:
            sys.stdout.write("%s %s: %s\n" % ("PASS" if ok else "FAIL", n, d))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


COMMANDS = {
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "gp-report": cmd_gp_report,
    "dagger": cmd_dagger,
    "bongartz": cmd_bongartz,
    "cm-finite": cmd_cm_finite,
    "paper-examples": cmd_paper_examples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="Q or Fp:<p> (overrides the file's field line)")
    common.add_argument("--ext-bound", type=int, default=DEFAULT_EXT_BOUND, help="Ext vanishing bound (default 12)")
    common.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP, help="path length cap (default 30)")
    common.add_argument("--budget", type=int, default=DEFAULT_MAX_NODES, help="enumeration node budget")
    common.add_argument("--emit", choices=("json", "dot", "text"), default="text")
    common.add_argument("--cache", default=None, help="cache directory")
    p = argparse.ArgumentParser(prog="tautilt", description="Exact tau-tilting and Gorenstein computations.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("check", "enumerate", "gp-report", "dagger", "cm-finite"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file", help="algebra file, or the name of a bundled example")
    s = sub.add_parser("bongartz", parents=[common])
    s.add_argument("file")
    s.add_argument("module", help="S<v>, P<v>, I<v>, A, or a JSON module file")
    sub.add_parser("paper-examples", parents=[common], help="regression run over the bundled examples")
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args)
        return COMMANDS[args.command](cfg, args)
    except (AlgebraError, ModuleError, PairError, ValueError, FileNotFoundError) as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
