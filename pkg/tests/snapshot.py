"""Renders the deterministic outputs of the acceptance computations as text."""

import io
import json

from arsobstruct.catalogue import ADEType
from arsobstruct.cli import run
from arsobstruct.engine import ADEDescriptor, decide
from arsobstruct.mesh import reduce_ade
from arsobstruct.path_algebra import instantiate
from arsobstruct.representations import simple_ext_matrix

from conftest import INPUTS
from corpus import calibration_corpus
from oracles import flowchart_grid


def snapshot() -> str:
    parts = []
    for f, n, d in flowchart_grid():
        parts.append(decide(ADEDescriptor(ADEType(f, n), d)).dumps())
    for name in ("D5", "D7", "E6", "E7", "E8"):
        target, steps = reduce_ade(name)
        parts.append(json.dumps([s.to_json() for s in steps]) + str(sorted(steps[-1].mapping.items())))
    for name, p in calibration_corpus():
        parts.append(f"{name} {simple_ext_matrix(instantiate(p), 1)}")
    out = io.StringIO()
    run(["algebra", "gp", str(INPUTS / "gentle_two_nodes.alg"), "--bound", "2,2,2", "--format", "json"], out)
    parts.append(out.getvalue())
    return "\n".join(parts)


if __name__ == "__main__":
    print(snapshot(), end="")
