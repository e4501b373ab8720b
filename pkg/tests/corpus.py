"""Hand-picked presentations for the Ext/arrow calibration."""

from arsobstruct.catalogue import get_entry
from arsobstruct.mesh import mesh_presentation
from arsobstruct.path_algebra import parse_presentation
from arsobstruct.quiver import parse_translation_quiver

from conftest import INPUTS

TEXTS = {
    "hereditary kA2": "vertex 1 2\narrow a 1 2\n",
    "hereditary A3 linear": "vertex 1 2 3\narrow a 1 2\narrow b 2 3\n",
    "hereditary Kronecker": "vertex 1 2\narrow a 1 2\narrow b 1 2\n",
    "self-injective k[x]/x^2": "vertex v\narrow x v v\nrelation x*x\n",
    "self-injective k[x]/x^3": "vertex v\narrow x v v\nrelation x*x*x\n",
    "self-injective 2-cycle rad^2=0": "vertex 1 2\narrow a 1 2\narrow b 2 1\nrelation a*b\nrelation b*a\n",
    "self-injective 3-cycle rad^2=0": (
        "vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\nrelation a*b\nrelation b*c\nrelation c*a\n"
    ),
    "exterior algebra on two generators": (
        "vertex v\narrow x v v\narrow y v v\nrelation x*x\nrelation y*y\nrelation x*y + y*x\n"
    ),
    "commutative square": (
        "vertex 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n"
    ),
    "non-homogeneous x^2 - x^3": "vertex v\narrow x v v\narrow y v v\nrelation x*x - x*x*x\nrelation y*y\nrelation x*y\nrelation y*x\n",
}


def calibration_corpus():
    """(name, presentation) pairs: hereditary, self-injective, gentle and mesh examples."""
    out = [(name, parse_presentation(text)) for name, text in TEXTS.items()]
    gentle = INPUTS / "gentle_two_nodes.alg"
    out.append(("gentle two nodes", parse_presentation(gentle.read_text())))
    tq = parse_translation_quiver((INPUTS / "two_cycle.tq").read_text())
    out.append(("mesh of the 2-cycle", mesh_presentation(tq)))
    for name in ("A3", "D4", "E6"):
        out.append((f"mesh of {name}", mesh_presentation(get_entry(name).ar_quiver)))
    return out
