"""Decision procedure: singularity descriptor in, verdict with certificate out.

Each certificate step names one citation anchor, an opaque LaTeX label such
as ``T:Main``, so a reader can locate the justification.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Union

from .catalogue import ADEType, get_entry, knoerrer_normalize
from .errors import ArsError, DescriptorError, EvenDimension
from .geometry import BranchSystem, CurveConfiguration, classify_curve_config, recognize_cAn
from .mesh import is_reducible, reduce_ade

NODAL = "nodal_unobstructed"
OBSTRUCTED = "obstructed"
OUT_OF_SCOPE = "out_of_scope"
UNDETERMINED = "undetermined"

MAIN_ANCHOR = "T:Main"
CITE = {
    "KnoerrerNormalize": "cite:Knoerrer",
    "CatalogueLoop": "T:ARnoLoops",
    "AuslanderSolbergReduction": "C:ReduceType",
    "FrakSContrapositive": "P:ClusterTiltingObject2",
    "CurveTwoCycle": "P:QuiverClusterT",
    "CurveLoop": "rem:geom-argument",
    "BranchRecognition": "P:BIKR",
}
# anchors attached to verdicts without a witness step
NODAL_CITES = {"ade": "L:Yoshino", "branches": "P:BIKR", "curves": "C:SingleVertex"}
NO_LOOPS_OR_2_CYCLES = "C:Noloops2cycles"


@dataclass(frozen=True)
class ADEDescriptor:
    type: ADEType
    dim: int

    @classmethod
    def parse(cls, text: str, dim: int) -> "ADEDescriptor":
        return cls(ADEType.parse(text), dim)

    def to_json(self) -> dict:
        return {"kind": "ade", "type": str(self.type), "dim": self.dim}

    def __str__(self) -> str:
        return f"{self.type} in dimension {self.dim}"


def _branches_json(b: BranchSystem) -> dict:
    return {"kind": "branches", "polynomials": b.describe(), "dim": 3}


def _curves_json(c: CurveConfiguration) -> dict:
    return {
        "kind": "curves",
        "curves": list(c.curves),
        "meets": [list(e) for e in c.edges],
        "normal_bundles": {x: c.normal_bundle[x] for x in c.curves},
        "dim": 3,
    }


SingularityDescriptor = Union[ADEDescriptor, BranchSystem, CurveConfiguration]


def descriptor_json(s: SingularityDescriptor) -> dict:
    if isinstance(s, ADEDescriptor):
        return s.to_json()
    if isinstance(s, BranchSystem):
        return _branches_json(s)
    return _curves_json(s)


@dataclass(frozen=True)
class CertificateStep:
    kind: str
    payload: dict
    cite: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "payload": self.payload, "cite": self.cite}


def _step(kind: str, payload: dict) -> CertificateStep:
    return CertificateStep(kind, payload, CITE[kind])


@dataclass(frozen=True)
class Verdict:
    input: dict
    normalized: dict
    outcome: str
    certificate: tuple[CertificateStep, ...] = ()
    citations: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "normalized": self.normalized,
            "outcome": self.outcome,
            "certificate": [s.to_json() for s in self.certificate],
            "citations": list(self.citations),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    @property
    def witness_kind(self) -> str | None:
        return self.certificate[-1].kind if self.certificate else None


def _verdict(inp: dict, norm: dict, outcome: str, steps: list[CertificateStep], extra: list[str] = ()) -> Verdict:
    cites = [MAIN_ANCHOR]
    for s in steps:
        if s.cite not in cites:
            cites.append(s.cite)
    for c in extra:
        if c not in cites:
            cites.append(c)
    return Verdict(inp, norm, outcome, tuple(steps), tuple(cites))


def _frak_s_step(t: ADEType, catalogue) -> CertificateStep:
    entry = get_entry(t, catalogue)
    return _step("FrakSContrapositive", {
        "type": str(t),
        "in_frakS": entry.in_frakS,
        "nodal": False,
        "conclusion": "a cluster-tilting quiver of this non-nodal type has a loop or a 2-cycle",
        "metadata_citation": entry.citations.get("in_frakS", ""),
    })


def _decide_ade(s: ADEDescriptor, catalogue) -> Verdict:
    inp = s.to_json()
    try:
        t, d1 = knoerrer_normalize(s.type, s.dim)
    except EvenDimension:
        return _verdict(inp, {"type": str(s.type), "dim": s.dim}, OUT_OF_SCOPE, [])
    norm = {"type": str(t), "dim": d1}
    steps = [_step("KnoerrerNormalize", {"type": str(t), "from_dim": s.dim, "to_dim": d1})]
    entry = get_entry(t, catalogue)
    if t == ADEType("A", 1):
        return _verdict(inp, norm, NODAL, steps, [NODAL_CITES["ade"]])
    if entry.has_loop:
        loops = sorted(v for v in entry.ar_quiver.vertices if entry.ar_quiver.quiver.arrows_between(v, v))
        steps.append(_step("CatalogueLoop", {"type": str(t), "loop_vertices": loops}))
        return _verdict(inp, norm, OBSTRUCTED, steps)
    target = t
    if not entry.in_frakS and is_reducible(t):
        target, log = reduce_ade(t, catalogue)
        for st in log:
            steps.append(_step("AuslanderSolbergReduction", st.to_json()))
    if not get_entry(target, catalogue).in_frakS:  # pragma: no cover - every shipped type is covered above
        return _verdict(inp, norm, UNDETERMINED, steps)
    steps.append(_frak_s_step(target, catalogue))
    return _verdict(inp, norm, OBSTRUCTED, steps, [NO_LOOPS_OR_2_CYCLES])


def _decide_branches(b: BranchSystem) -> Verdict:
    inp = _branches_json(b)
    rec = recognize_cAn(b)
    norm = {"kind": "cA", "cA_index": rec.cA_index, "dim": 3}
    steps = [_step("BranchRecognition", rec.to_json())]
    if rec.transverse_node:
        return _verdict(inp, norm, NODAL, steps)
    steps.append(_step("FrakSContrapositive", {
        "type": f"cA_{rec.cA_index}",
        "in_frakS": True,
        "nodal": False,
        "conclusion": "a cluster-tilting quiver of this non-nodal germ has a loop or a 2-cycle",
    }))
    return _verdict(inp, norm, OBSTRUCTED, steps, [NO_LOOPS_OR_2_CYCLES])


def _decide_curves(c: CurveConfiguration) -> Verdict:
    inp = _curves_json(c)
    cl = classify_curve_config(c)
    norm = {"kind": "curves", "curves": len(c.curves), "dim": 3}
    if cl.outcome == "nodal":
        return _verdict(inp, norm, NODAL, [], [NODAL_CITES["curves"]])
    if cl.outcome == "undetermined":
        return _verdict(inp, norm, UNDETERMINED, [])
    kind = "CurveTwoCycle" if cl.witness["kind"] == "two_cycle" else "CurveLoop"
    step = _step(kind, {"vertices": cl.witness["vertices"], "reason": cl.reason})
    return _verdict(inp, norm, OBSTRUCTED, [step], [NO_LOOPS_OR_2_CYCLES])


def decide(s: SingularityDescriptor, catalogue: str | os.PathLike | None = None) -> Verdict:
    try:
        if isinstance(s, ADEDescriptor):
            return _decide_ade(s, catalogue)
        if isinstance(s, BranchSystem):
            return _decide_branches(s)
        if isinstance(s, CurveConfiguration):
            return _decide_curves(s)
    except ArsError as exc:
        raise DescriptorError(descriptor_json(s), exc) from exc
    raise TypeError(f"unsupported descriptor {type(s).__name__}")


_OUTCOME_TEXT = {
    NODAL: "nodal, no obstruction applies",
    OBSTRUCTED: "obstructed: no tilting object, no Kawamata-type decomposition, no algebraic absorption",
    OUT_OF_SCOPE: "out of scope (even dimension)",
    UNDETERMINED: "undetermined from the given data",
}


def _describe_step(step: CertificateStep) -> str:
    p = step.payload
    k = step.kind
    if k == "KnoerrerNormalize":
        return f"Knoerrer periodicity: {p['type']} in dimension {p['from_dim']} has the singularity category of dimension {p['to_dim']}"
    if k == "CatalogueLoop":
        return f"the AR-quiver of {p['type']} has a loop at {', '.join(p['loop_vertices'])}; stable GP categories have no loops"
    if k == "AuslanderSolbergReduction":
        orbits = ", ".join("(" + ",".join(o) + ")" for o in p["removed_orbits"])
        return f"remove tau-orbits {orbits} from {p['from']}: AR-quiver of {p['to']}"
    if k == "FrakSContrapositive":
        return f"{p['type']} has a small resolution and is not a node: {p['conclusion']}"
    if k == "BranchRecognition":
        kind = "transverse node" if p["transverse_node"] else f"cA_{p['cA_index']} germ with a small resolution"
        return f"{p['branches']} mutually prime smooth branches: {kind}"
    if k == "CurveTwoCycle":
        return f"curves {' and '.join(p['vertices'])} meet, forcing a 2-cycle in the cluster-tilting quiver"
    if k == "CurveLoop":
        return f"curve {p['vertices'][0]} has normal bundle other than O(-1)+O(-1), forcing a loop"
    return json.dumps(p, sort_keys=True)  # pragma: no cover


def explain(v: Verdict) -> str:
    inp = v.input
    if inp["kind"] == "ade":
        head = f"{inp['type']} in dimension {inp['dim']}"
    elif inp["kind"] == "branches":
        head = "branch system " + "; ".join(inp["polynomials"])
    else:
        head = "curve configuration " + ", ".join(inp["curves"])
    lines = [head, f"outcome: {v.outcome} ({_OUTCOME_TEXT[v.outcome]})"]
    if v.outcome == NODAL and inp["kind"] == "ade":
        lines.append("A_1 is the node; the obstructions do not apply")
    for k, step in enumerate(v.certificate, 1):
        lines.append(f"  {k}. [{step.kind}] {_describe_step(step)}  ({step.cite})")
    lines.append("citations: " + ", ".join(v.citations))
    return "\n".join(lines) + "\n"
