"""Regenerate the shipped AR-quiver catalogue under src/arsobstruct/data.

Each odd-dimensional entry is obtained from the doubled Dynkin diagram (the
translation quiver with tau = id of the even-dimensional case) by the
skew-group construction for the diagram involution rho:

* a rho-free pair {M, rho M} becomes one vertex [M] with tau fixed;
* a rho-fixed vertex M splits into M+ and M-, swapped by tau.

Arrows between split vertices follow a bipartite colouring of the tree:
a colour-0 vertex maps straight (M+ -> N+), a colour-1 vertex crosses.

Usage: python tools/generate_catalogue.py [--check]
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from arsobstruct.quiver import (  # noqa: E402
    Arrow,
    Quiver,
    ValuedQuiver,
    build_translation_quiver,
    detect_loops,
    format_translation_quiver,
)

DATA = ROOT / "src" / "arsobstruct" / "data"
MAX_A = 40
MAX_D = 41

CITATIONS = {
    "source": "Dieterich-Wiedemann classification of AR-quivers of simple curve singularities, transported by Knoerrer periodicity",
    "frakS": "small resolution for A_odd and D_even in dimension 3 (cf. P:BIKR)",
    "loop": "A_even AR-quiver carries a loop (T:ARnoLoops applies)",
    "count": "vertex count of the transcribed AR-quiver; transcribed, not used by decisions",
}


@dataclass
class Dynkin:
    """A Dynkin tree with its involution and the labelling plan.

    ``plan`` lists the vertex orbits in label order; ``anchor`` gets colour 0.
    """

    vertices: list[str]
    edges: list[tuple[str, str]]
    rho: dict[str, str]
    plan: list[str]
    anchor: str
    first_label: int


def _chain(names: list[str]) -> list[tuple[str, str]]:
    return list(zip(names, names[1:]))


def dynkin(family: str, n: int) -> Dynkin:
    if family == "A":
        vs = [f"v{i}" for i in range(1, n + 1)]
        rho = {f"v{i}": f"v{n + 1 - i}" for i in range(1, n + 1)}
        plan = [f"v{i}" for i in range(1, (n + 1) // 2 + 1)]
        return Dynkin(vs, _chain(vs), rho, plan, f"v{(n + 1) // 2}", 1)
    if family == "D":
        chain = [f"c{k}" for k in range(1, n - 1)]
        vs = chain + ["u", "w"]
        edges = _chain(chain) + [(chain[-1], "u"), (chain[-1], "w")]
        rho = {v: v for v in vs}
        if n % 2:
            rho.update(u="w", w="u")
            plan = chain + ["u"]
        else:
            plan = chain + ["u", "w"]
        return Dynkin(vs, edges, rho, plan, chain[-1], 0)
    if family == "E" and n == 6:
        vs = ["c", "d", "a2", "a1", "b2", "b1"]
        edges = [("c", "d"), ("c", "a2"), ("a2", "a1"), ("c", "b2"), ("b2", "b1")]
        rho = {"c": "c", "d": "d", "a2": "b2", "b2": "a2", "a1": "b1", "b1": "a1"}
        return Dynkin(vs, edges, rho, ["d", "a2", "c", "a1"], "c", 1)
    if family == "E" and n in (7, 8):
        long_arm = ["l4", "l3", "l2", "l1"][8 - n:]
        vs = long_arm + ["c", "d", "b2", "b1"]
        edges = _chain(long_arm + ["c"]) + [("c", "d"), ("c", "b1"), ("b1", "b2")]
        rho = {v: v for v in vs}
        # E_7 keeps the E_8 labels 3..16 so the reduction is label-compatible
        return Dynkin(vs, edges, rho, vs, "c", 1 if n == 8 else 3)
    raise ValueError(f"no Dynkin diagram {family}{n}")


def _colouring(d: Dynkin) -> dict[str, int]:
    adj: dict[str, list[str]] = {v: [] for v in d.vertices}
    for x, y in d.edges:
        adj[x].append(y)
        adj[y].append(x)
    colour = {d.anchor: 0}
    stack = [d.anchor]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in colour:
                colour[y] = 1 - colour[x]
                stack.append(y)
    return colour


def ar_quiver(family: str, n: int):
    d = dynkin(family, n)
    colour = _colouring(d)
    label_of: dict[str, object] = {}  # fixed -> (plus, minus); free -> label
    counter = d.first_label
    for v in d.plan:
        if d.rho[v] == v:
            a, b = counter, counter + 1
            plus, minus = (a, b) if a % 2 else (b, a)
            label_of[v] = (str(plus), str(minus))
            counter += 2
        else:
            label_of[v] = str(counter)
            label_of[d.rho[v]] = str(counter)
            counter += 1
    vertices: list[str] = []
    tau: dict[str, str] = {}
    for v in d.plan:
        lab = label_of[v]
        if isinstance(lab, tuple):
            vertices += [lab[0], lab[1]]
            tau[lab[0]], tau[lab[1]] = lab[1], lab[0]
        else:
            vertices.append(lab)
            tau[lab] = lab

    pairs: set[tuple[str, str]] = set()
    for x, y in d.edges + [(y, x) for x, y in d.edges]:
        lx, ly = label_of[x], label_of[y]
        if isinstance(lx, tuple) and isinstance(ly, tuple):
            if colour[x] == 0:
                pairs |= {(lx[0], ly[0]), (lx[1], ly[1])}
            else:
                pairs |= {(lx[0], ly[1]), (lx[1], ly[0])}
        elif isinstance(lx, tuple):
            pairs |= {(lx[0], ly), (lx[1], ly)}
        elif isinstance(ly, tuple):
            pairs |= {(lx, ly[0]), (lx, ly[1])}
        else:
            pairs.add((lx, ly))
    order = {v: k for k, v in enumerate(vertices)}
    arrows = [Arrow(f"{s}_{t}", s, t) for s, t in sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))]
    return build_translation_quiver(ValuedQuiver(Quiver(tuple(vertices), tuple(arrows))), tau)


def entries():
    yield from (("A", n) for n in range(1, MAX_A + 1))
    yield from (("D", n) for n in range(4, MAX_D + 1))
    yield from (("E", n) for n in (6, 7, 8))


def metadata(family: str, n: int, tq) -> dict:
    in_frak = (family == "A" and n % 2 == 1) or (family == "D" and n % 2 == 0)
    meta = {
        "type": f"{family}{n}",
        "has_loop": bool(detect_loops(tq)),
        "indecomposable_count": len(tq.vertices),
        "in_frakS": in_frak,
        "citations": {"ar_quiver": CITATIONS["source"], "indecomposable_count": CITATIONS["count"]},
    }
    if in_frak:
        meta["citations"]["in_frakS"] = CITATIONS["frakS"]
    if meta["has_loop"]:
        meta["citations"]["has_loop"] = CITATIONS["loop"]
    return meta


def render(family: str, n: int) -> tuple[str, str]:
    tq = ar_quiver(family, n)
    header = [f"AR-quiver of the odd-dimensional {family}_{n} singularity category", "valuations all 1"]
    text = format_translation_quiver(tq, header)
    meta = json.dumps(metadata(family, n, tq), indent=2, sort_keys=False) + "\n"
    return text, meta


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="fail if the checked-in files differ")
    args = ap.parse_args(argv)
    DATA.mkdir(parents=True, exist_ok=True)
    stale = []
    for family, n in entries():
        text, meta = render(family, n)
        for suffix, body in ((".tq", text), (".json", meta)):
            path = DATA / f"{family}{n}{suffix}"
            if args.check:
                if not path.exists() or path.read_text() != body:
                    stale.append(path.name)
            else:
                path.write_text(body)
    if stale:
        print("stale catalogue files: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
